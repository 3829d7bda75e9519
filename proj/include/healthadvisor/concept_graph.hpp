#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "healthadvisor/csv.hpp"
#include "healthadvisor/errors.hpp"
#include "healthadvisor/text.hpp"

namespace healthadvisor {

// Fixed concept chain: Cause -> Disorder -> Symptom -> Measurement ->
// Wearable. Edges may only connect adjacent types, which makes every graph a
// DAG by construction.
enum class EntityType : int {
    Cause = 0,
    Disorder = 1,
    Symptom = 2,
    Measurement = 3,
    Wearable = 4,
};

inline constexpr std::array<EntityType, 5> kEntityChain = {
    EntityType::Cause, EntityType::Disorder, EntityType::Symptom,
    EntityType::Measurement, EntityType::Wearable,
};

inline const char* to_string(EntityType type) {
    switch (type) {
        case EntityType::Cause: return "cause";
        case EntityType::Disorder: return "disorder";
        case EntityType::Symptom: return "symptom";
        case EntityType::Measurement: return "measurement";
        case EntityType::Wearable: return "wearable";
    }
    return "?";
}

inline std::optional<EntityType> entity_type_from_string(std::string_view name) {
    for (auto type : kEntityChain) {
        if (name == to_string(type)) return type;
    }
    return std::nullopt;
}

inline bool chain_adjacent(EntityType from, EntityType to) {
    return static_cast<int>(to) == static_cast<int>(from) + 1;
}

// --- rules ----------------------------------------------------------------

struct RuleEntry {
    std::string surface;               // normalized, space joined
    std::vector<std::string> tokens;   // surface split with the shared tokenizer
    std::string canonical;
};

// Gazetteer dictionaries per entity type. Wearable entries are only ever
// injected from a catalog, the rule document may author the other four types.
class RuleSet {
public:
    void add(EntityType type, std::string_view surface, const std::string& canonical) {
        std::vector<std::string> tokens = tokenize(surface);
        if (tokens.empty()) {
            throw ValidationError("rule surface is empty: '" + std::string(surface) + "'");
        }
        if (canonical.empty() || canonical.find_first_of(" \t\n#") != std::string::npos) {
            throw ValidationError("bad canonical id: '" + canonical + "'");
        }
        std::string normalized;
        for (const auto& t : tokens) {
            if (!normalized.empty()) normalized.push_back(' ');
            normalized += t;
        }
        auto& dict = dictionaries_[type];
        for (const auto& entry : dict) {
            if (entry.canonical == canonical) {
                throw ValidationError(std::string("duplicate canonical id under ") +
                                      to_string(type) + ": " + canonical);
            }
            if (entry.surface == normalized) {
                throw ValidationError(std::string("duplicate surface under ") +
                                      to_string(type) + ": '" + normalized + "'");
            }
        }
        dict.push_back({std::move(normalized), std::move(tokens), canonical});
    }

    const std::vector<RuleEntry>& entries(EntityType type) const {
        static const std::vector<RuleEntry> empty;
        auto it = dictionaries_.find(type);
        return it == dictionaries_.end() ? empty : it->second;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& [type, dict] : dictionaries_) n += dict.size();
        return n;
    }

    static RuleSet from_json(const nlohmann::json& doc) {
        RuleSet rules;
        if (!doc.is_object() || !doc.contains("entities") || !doc["entities"].is_array()) {
            throw ValidationError("rule document needs a top-level 'entities' list");
        }
        try {
            for (const auto& entry : doc["entities"]) {
                const std::string type_name = entry.at("type").get<std::string>();
                auto type = entity_type_from_string(type_name);
                if (!type) throw ValidationError("unknown entity type: " + type_name);
                if (*type == EntityType::Wearable) {
                    throw ValidationError("wearable entries come from the catalog, "
                                          "not the rule document");
                }
                rules.add(*type, entry.at("surface").get<std::string>(),
                          entry.at("canonical").get<std::string>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("malformed rule document: ") + e.what());
        }
        return rules;
    }

    static RuleSet load(const std::filesystem::path& path) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_text_file(path));
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(path.string() + ": " + e.what());
        }
        return from_json(doc);
    }

private:
    std::map<EntityType, std::vector<RuleEntry>> dictionaries_;
};

// --- mentions -------------------------------------------------------------

struct Mention {
    EntityType entity_type;
    std::string canonical;
    std::size_t sentence_index = 0;
    std::size_t token_start = 0;
    std::size_t token_end = 0;  // exclusive
};

// Per type: longest match first, left to right, non-overlapping. Matches of
// different types may overlap freely.
inline std::vector<Mention> extract_mentions(const std::vector<std::string>& tokens,
                                             const RuleSet& rules,
                                             std::size_t sentence_index = 0) {
    std::vector<Mention> mentions;
    for (auto type : kEntityChain) {
        const auto& dict = rules.entries(type);
        if (dict.empty()) continue;
        std::size_t i = 0;
        while (i < tokens.size()) {
            const RuleEntry* best = nullptr;
            for (const auto& entry : dict) {
                const std::size_t len = entry.tokens.size();
                if (best && len <= best->tokens.size()) continue;
                if (i + len > tokens.size()) continue;
                if (std::equal(entry.tokens.begin(), entry.tokens.end(),
                               tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
                    best = &entry;
                }
            }
            if (best) {
                mentions.push_back({type, best->canonical, sentence_index, i,
                                    i + best->tokens.size()});
                i += best->tokens.size();
            } else {
                ++i;
            }
        }
    }
    return mentions;
}

// --- graph ----------------------------------------------------------------

struct NodeRef {
    EntityType type;
    std::string canonical;

    auto operator<=>(const NodeRef&) const = default;

    std::string str() const { return std::string(to_string(type)) + ":" + canonical; }
};

struct GraphEdge {
    NodeRef from;
    NodeRef to;
    std::string provenance;  // sentence id ("doc:3") or "catalog"

    auto operator<=>(const GraphEdge&) const = default;
};

class ConceptGraph {
public:
    void add_node(EntityType type, const std::string& canonical,
                  const std::string& display = "") {
        NodeRef ref{type, canonical};
        auto it = nodes_.find(ref);
        if (it == nodes_.end()) {
            nodes_.emplace(std::move(ref), display.empty() ? canonical : display);
        } else if (!display.empty()) {
            it->second = display;
        }
    }

    void add_edge(const NodeRef& from, const NodeRef& to, const std::string& provenance) {
        if (!chain_adjacent(from.type, to.type)) {
            throw DomainError("edge violates the concept chain: " + from.str() +
                              " -> " + to.str());
        }
        add_node(from.type, from.canonical);
        add_node(to.type, to.canonical);
        edges_.insert({from, to, provenance});
        adjacency_[from].insert(to);
    }

    bool has_node(EntityType type, const std::string& canonical) const {
        return nodes_.count({type, canonical}) > 0;
    }

    const std::string& display_name(const NodeRef& ref) const {
        auto it = nodes_.find(ref);
        if (it == nodes_.end()) throw DomainError("unknown node: " + ref.str());
        return it->second;
    }

    const std::set<NodeRef>& out_neighbors(const NodeRef& ref) const {
        static const std::set<NodeRef> empty;
        auto it = adjacency_.find(ref);
        return it == adjacency_.end() ? empty : it->second;
    }

    std::vector<NodeRef> nodes_of_type(EntityType type) const {
        std::vector<NodeRef> refs;
        for (const auto& [ref, display] : nodes_) {
            if (ref.type == type) refs.push_back(ref);
        }
        return refs;
    }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::set<GraphEdge>& edges() const { return edges_; }
    const std::map<NodeRef, std::string>& nodes() const { return nodes_; }

    // Edge list, one line per edge "from -> to # provenance", plus a bare
    // "type:canonical" line for each node that touches no edge. Lines are
    // sorted, so equal graphs export byte-identical documents.
    std::string export_edge_list() const {
        std::vector<std::string> lines;
        std::set<NodeRef> touched;
        for (const auto& edge : edges_) {
            lines.push_back(edge.from.str() + " -> " + edge.to.str() + " # " +
                            edge.provenance);
            touched.insert(edge.from);
            touched.insert(edge.to);
        }
        for (const auto& [ref, display] : nodes_) {
            if (!touched.count(ref)) lines.push_back(ref.str());
        }
        std::sort(lines.begin(), lines.end());
        std::string out;
        for (const auto& line : lines) {
            out += line;
            out += '\n';
        }
        return out;
    }

    static ConceptGraph from_edge_list(std::string_view text, const std::string& source = "graph");
    static ConceptGraph load(const std::filesystem::path& path) {
        return from_edge_list(read_text_file(path), path.string());
    }
    void save(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ValidationError("cannot write file: " + path.string());
        out << export_edge_list();
    }

private:
    std::map<NodeRef, std::string> nodes_;  // ref -> display name
    std::set<GraphEdge> edges_;
    std::map<NodeRef, std::set<NodeRef>> adjacency_;
};

namespace detail {

inline NodeRef parse_node_ref(std::string_view text, const std::string& source,
                              std::size_t line) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ValidationError(source + ":" + std::to_string(line) +
                              ": expected type:canonical, got '" + std::string(text) + "'");
    }
    auto type = entity_type_from_string(text.substr(0, colon));
    if (!type) {
        throw ValidationError(source + ":" + std::to_string(line) +
                              ": unknown entity type in '" + std::string(text) + "'");
    }
    std::string canonical(text.substr(colon + 1));
    if (canonical.empty()) {
        throw ValidationError(source + ":" + std::to_string(line) + ": empty canonical id");
    }
    return {*type, std::move(canonical)};
}

}  // namespace detail

inline ConceptGraph ConceptGraph::from_edge_list(std::string_view text,
                                                 const std::string& source) {
    ConceptGraph graph;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            if (start > text.size()) break;
            continue;
        }
        const auto arrow = line.find(" -> ");
        if (arrow == std::string_view::npos) {
            NodeRef ref = detail::parse_node_ref(line, source, line_no);
            graph.add_node(ref.type, ref.canonical);
            continue;
        }
        std::string_view rest = line.substr(arrow + 4);
        std::string provenance;
        const auto hash = rest.find(" # ");
        if (hash != std::string_view::npos) {
            provenance = std::string(rest.substr(hash + 3));
            rest = rest.substr(0, hash);
        }
        NodeRef from = detail::parse_node_ref(line.substr(0, arrow), source, line_no);
        NodeRef to = detail::parse_node_ref(rest, source, line_no);
        if (!chain_adjacent(from.type, to.type)) {
            throw ValidationError(source + ":" + std::to_string(line_no) +
                                  ": edge violates the concept chain");
        }
        graph.add_edge(from, to, provenance);
    }
    return graph;
}

// --- construction ---------------------------------------------------------

struct CorpusDocument {
    std::string id;
    std::string text;
};

// Sentence-level co-occurrence: every pair of mentions with chain-adjacent
// types yields a forward edge, regardless of surface order in the sentence.
inline ConceptGraph build_graph(const std::vector<CorpusDocument>& corpus,
                                const RuleSet& rules) {
    ConceptGraph graph;
    for (const auto& doc : corpus) {
        const auto sentences = split_sentences(doc.text);
        for (std::size_t s = 0; s < sentences.size(); ++s) {
            const auto tokens = tokenize(sentences[s]);
            const auto mentions = extract_mentions(tokens, rules, s);
            const std::string provenance = doc.id + ":" + std::to_string(s);
            for (const auto& mention : mentions) {
                graph.add_node(mention.entity_type, mention.canonical);
            }
            for (const auto& a : mentions) {
                for (const auto& b : mentions) {
                    if (chain_adjacent(a.entity_type, b.entity_type)) {
                        graph.add_edge({a.entity_type, a.canonical},
                                       {b.entity_type, b.canonical}, provenance);
                    }
                }
            }
        }
    }
    return graph;
}

// Loads every regular file in the directory in filename order.
inline std::vector<CorpusDocument> load_corpus_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw ValidationError("corpus directory not found: " + dir.string());
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<CorpusDocument> corpus;
    for (const auto& path : paths) {
        corpus.push_back({path.stem().string(), read_text_file(path)});
    }
    return corpus;
}

// All Measurement nodes reachable from the disorder through its symptoms,
// sorted and deduplicated. Unknown disorders yield an empty list.
inline std::vector<std::string> measurements_for(const ConceptGraph& graph,
                                                 const std::string& disorder) {
    NodeRef start{EntityType::Disorder, disorder};
    if (!graph.has_node(start.type, start.canonical)) return {};
    std::set<std::string> found;
    for (const auto& symptom : graph.out_neighbors(start)) {
        for (const auto& measurement : graph.out_neighbors(symptom)) {
            if (measurement.type == EntityType::Measurement) {
                found.insert(measurement.canonical);
            }
        }
    }
    return {found.begin(), found.end()};
}

}  // namespace healthadvisor
