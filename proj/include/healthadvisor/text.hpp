#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace healthadvisor {

using TokenSet = std::set<std::string>;
using SynonymMap = std::map<std::string, std::string>;

inline bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

inline char to_lower_ascii(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

// Lowercases and splits on every non-alphanumeric character, so "Parkinson's
// disease" becomes {"parkinson", "s", "disease"} and "respiration_rate"
// becomes {"respiration", "rate"}.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (is_word_char(c)) {
            current.push_back(to_lower_ascii(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

// Sentence boundaries are '.', '!', '?' and newline. Blank segments are
// dropped; surviving sentences are indexed by position in the result.
inline std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    std::string current;
    auto flush = [&] {
        if (current.find_first_not_of(" \t\r") != std::string::npos) {
            sentences.push_back(current);
        }
        current.clear();
    };
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?' || c == '\n') {
            flush();
        } else {
            current.push_back(c);
        }
    }
    flush();
    return sentences;
}

// Fixed stopword list used by token normalization.
inline const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = {
        "a",     "about", "an",    "and",  "are",   "as",    "at",    "be",
        "been",  "but",   "by",    "can",  "could", "do",    "does",  "for",
        "from",  "had",   "has",   "have", "he",    "her",   "his",   "if",
        "in",    "into",  "is",    "it",   "its",   "may",   "more",  "most",
        "not",   "of",    "on",    "or",   "our",   "she",   "should", "so",
        "some",  "such",  "that",  "the",  "their", "them",  "then",  "these",
        "they",  "this",  "to",    "was",  "we",    "were",  "which", "while",
        "will",  "with",  "would",
    };
    return words;
}

inline bool is_stopword(const std::string& token) {
    return stopwords().count(token) > 0;
}

// lowercase -> strip punctuation -> split -> drop stopwords -> apply the
// synonym map once. Idempotent as long as synonym targets are canonical
// (enforced when the map is loaded).
inline TokenSet normalize_tokens(std::string_view text, const SynonymMap& synonyms = {}) {
    TokenSet result;
    for (auto& token : tokenize(text)) {
        if (is_stopword(token)) continue;
        auto it = synonyms.find(token);
        result.insert(it != synonyms.end() ? it->second : token);
    }
    return result;
}

// Deterministic identifier from free text: "Preventice BodyGuardian" ->
// "preventice_bodyguardian".
inline std::string slugify(std::string_view text) {
    std::string slug;
    for (auto& token : tokenize(text)) {
        if (!slug.empty()) slug.push_back('_');
        slug += token;
    }
    return slug;
}

// Shortest round-trip decimal form, stable across runs.
inline std::string format_double(double value) {
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

}  // namespace healthadvisor
