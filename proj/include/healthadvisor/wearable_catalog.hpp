#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "healthadvisor/concept_graph.hpp"
#include "healthadvisor/csv.hpp"
#include "healthadvisor/errors.hpp"
#include "healthadvisor/text.hpp"

namespace healthadvisor {

struct WearableRecord {
    std::string name;
    std::string manufacturer;
    std::string capabilities;
    std::string url;
    TokenSet capability_tokens;  // normalize(capabilities), synonyms applied
};

// Synonym CSV "token,canonical": single lowercase tokens, targets must be
// canonical themselves (idempotent after one application) and must survive
// normalization.
inline SynonymMap load_synonyms_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv_file(path);
    if (table.header != std::vector<std::string>{"token", "canonical"}) {
        throw ValidationError(table.source + ":1: bad header, expected 'token,canonical'");
    }
    SynonymMap synonyms;
    for (const auto& row : table.rows) {
        const std::string& from = row.fields[0];
        const std::string& to = row.fields[1];
        auto check_token = [&](const std::string& t) {
            auto tokens = tokenize(t);
            if (tokens.size() != 1 || tokens[0] != t) {
                throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                      ": '" + t + "' is not a single normalized token");
            }
        };
        check_token(from);
        check_token(to);
        if (is_stopword(to)) {
            throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                  ": synonym target '" + to + "' is a stopword");
        }
        if (!synonyms.emplace(from, to).second) {
            throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                  ": duplicate synonym for '" + from + "'");
        }
    }
    for (const auto& [from, to] : synonyms) {
        auto it = synonyms.find(to);
        if (it != synonyms.end() && it->second != to) {
            throw ValidationError(path.string() + ": synonym target '" + to +
                                  "' is itself remapped; the map must be idempotent");
        }
    }
    return synonyms;
}

class WearableCatalog {
public:
    WearableCatalog() = default;

    static WearableCatalog from_csv(const CsvTable& table, SynonymMap synonyms = {}) {
        if (table.header != std::vector<std::string>{"name", "manufacturer",
                                                     "capabilities", "url"}) {
            throw ValidationError(table.source +
                                  ":1: bad header, expected 'name,manufacturer,capabilities,url'");
        }
        WearableCatalog catalog;
        catalog.synonyms_ = std::move(synonyms);
        std::set<std::string> names;
        for (const auto& row : table.rows) {
            WearableRecord record;
            record.name = row.fields[0];
            record.manufacturer = row.fields[1];
            record.capabilities = row.fields[2];
            record.url = row.fields[3];
            if (record.name.empty()) {
                throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                      ": empty device name");
            }
            if (!names.insert(record.name).second) {
                throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                      ": duplicate device name '" + record.name + "'");
            }
            record.capability_tokens = normalize_tokens(record.capabilities, catalog.synonyms_);
            if (record.capability_tokens.empty()) {
                throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                      ": device '" + record.name +
                                      "' has no usable capability tokens");
            }
            catalog.records_.push_back(std::move(record));
        }
        return catalog;
    }

    static WearableCatalog load(const std::filesystem::path& path, SynonymMap synonyms = {}) {
        return from_csv(read_csv_file(path), std::move(synonyms));
    }

    const std::vector<WearableRecord>& records() const { return records_; }
    const SynonymMap& synonyms() const { return synonyms_; }

    const WearableRecord* find(const std::string& name) const {
        for (const auto& record : records_) {
            if (record.name == name) return &record;
        }
        return nullptr;
    }

    // Device names as Wearable gazetteer entries, for corpus extraction.
    void add_wearable_rules(RuleSet& rules) const {
        for (const auto& record : records_) {
            rules.add(EntityType::Wearable, record.name, slugify(record.name));
        }
    }

private:
    std::vector<WearableRecord> records_;
    SynonymMap synonyms_;
};

struct MatchResult {
    std::string measurement;
    std::string wearable;
    double score = 0.0;
};

inline double jaccard(const TokenSet& a, const TokenSet& b) {
    std::size_t intersection = 0;
    for (const auto& t : a) intersection += b.count(t);
    const std::size_t union_size = a.size() + b.size() - intersection;
    return union_size == 0 ? 0.0
                           : static_cast<double>(intersection) /
                                 static_cast<double>(union_size);
}

// A device matches when the measurement tokens are contained in its
// capability tokens (score 1) or the Jaccard similarity clears the
// threshold (score = similarity). Sorted by score desc, then name.
inline std::vector<MatchResult> match_wearables(const WearableCatalog& catalog,
                                                const TokenSet& measurement_tokens,
                                                double threshold,
                                                const std::string& measurement_id = "") {
    if (measurement_tokens.empty()) {
        throw DomainError("measurement token set is empty");
    }
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw DomainError("match threshold must be in (0, 1]");
    }
    std::vector<MatchResult> results;
    for (const auto& record : catalog.records()) {
        const bool subset =
            std::includes(record.capability_tokens.begin(), record.capability_tokens.end(),
                          measurement_tokens.begin(), measurement_tokens.end());
        if (subset) {
            results.push_back({measurement_id, record.name, 1.0});
            continue;
        }
        const double similarity = jaccard(measurement_tokens, record.capability_tokens);
        if (similarity >= threshold) {
            results.push_back({measurement_id, record.name, similarity});
        }
    }
    std::sort(results.begin(), results.end(), [](const MatchResult& a, const MatchResult& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.wearable < b.wearable;
    });
    return results;
}

// Returns a new graph with a Wearable node and Measurement->Wearable edge per
// match; the input graph is left untouched. Measurements whose canonical id
// normalizes to nothing are skipped (they can never match).
inline ConceptGraph extend_graph(const ConceptGraph& graph, const WearableCatalog& catalog,
                                 double threshold) {
    ConceptGraph extended = graph;
    for (const auto& measurement : graph.nodes_of_type(EntityType::Measurement)) {
        const TokenSet tokens = normalize_tokens(measurement.canonical, catalog.synonyms());
        if (tokens.empty()) continue;
        for (const auto& match : match_wearables(catalog, tokens, threshold)) {
            NodeRef wearable{EntityType::Wearable, slugify(match.wearable)};
            extended.add_node(wearable.type, wearable.canonical, match.wearable);
            extended.add_edge(measurement, wearable, "catalog");
        }
    }
    return extended;
}

// --- demand counters ------------------------------------------------------

// Line format "canonical_id count"; rewritten atomically via rename.
class DemandCounters {
public:
    static DemandCounters load(const std::filesystem::path& path) {
        DemandCounters counters;
        std::string text = read_text_file(path);
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            std::istringstream fields(line);
            std::string id;
            std::int64_t count = -1;
            if (!(fields >> id >> count) || count < 0) {
                throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                      ": expected 'canonical_id count'");
            }
            counters.counts_[id] = count;
        }
        return counters;
    }

    static DemandCounters load_or_empty(const std::filesystem::path& path) {
        if (!std::filesystem::exists(path)) return {};
        return load(path);
    }

    void save(const std::filesystem::path& path) const {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) throw ValidationError("cannot write file: " + tmp.string());
            for (const auto& [id, count] : counts_) {
                out << id << ' ' << count << '\n';
            }
        }
        std::filesystem::rename(tmp, path);
    }

    void increment(const std::string& id, std::int64_t by = 1) { counts_[id] += by; }

    std::int64_t get(const std::string& id) const {
        auto it = counts_.find(id);
        return it == counts_.end() ? 0 : it->second;
    }

    const std::map<std::string, std::int64_t>& counts() const { return counts_; }

private:
    std::map<std::string, std::int64_t> counts_;
};

// --- gap report -----------------------------------------------------------

struct GapReport {
    struct Entry {
        std::string measurement;
        std::int64_t demand_count = 0;

        bool operator==(const Entry&) const = default;
    };

    std::vector<Entry> entries;  // demand desc, then name asc
    std::chrono::system_clock::time_point generated_at;
};

// Every Measurement node with no outgoing Wearable edge, with its demand
// count (0 when never requested).
inline GapReport gap_report(const ConceptGraph& graph, const DemandCounters& demand) {
    GapReport report;
    report.generated_at = std::chrono::system_clock::now();
    for (const auto& measurement : graph.nodes_of_type(EntityType::Measurement)) {
        bool has_wearable = false;
        for (const auto& neighbor : graph.out_neighbors(measurement)) {
            if (neighbor.type == EntityType::Wearable) {
                has_wearable = true;
                break;
            }
        }
        if (!has_wearable) {
            report.entries.push_back({measurement.canonical, demand.get(measurement.canonical)});
        }
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const GapReport::Entry& a, const GapReport::Entry& b) {
                  if (a.demand_count != b.demand_count) return a.demand_count > b.demand_count;
                  return a.measurement < b.measurement;
              });
    return report;
}

// "measurement,demand_count" lines; the timestamp is deliberately not
// serialized so identical inputs export identical bytes.
inline std::string export_gap_report(const GapReport& report) {
    std::string out;
    for (const auto& entry : report.entries) {
        out += entry.measurement;
        out += ',';
        out += std::to_string(entry.demand_count);
        out += '\n';
    }
    return out;
}

}  // namespace healthadvisor
