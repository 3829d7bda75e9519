#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "healthadvisor/concept_graph.hpp"
#include "healthadvisor/csv.hpp"
#include "healthadvisor/dataset.hpp"
#include "healthadvisor/decision_tree.hpp"
#include "healthadvisor/errors.hpp"
#include "healthadvisor/text.hpp"
#include "healthadvisor/wearable_catalog.hpp"

namespace healthadvisor {

struct PipelineConfig {
    int top_k = 3;
    double min_probability = 0.1;
    double match_threshold = 0.5;

    void validate() const {
        if (top_k < 1) throw DomainError("top_k must be at least 1");
        if (!(min_probability >= 0.0 && min_probability < 1.0)) {
            throw DomainError("min_probability must be in [0, 1)");
        }
        if (!(match_threshold > 0.0 && match_threshold <= 1.0)) {
            throw DomainError("match_threshold must be in (0, 1]");
        }
    }
};

// Bridges classifier class names ("Lung Disease") to graph disorder ids
// ("lung_disease"). Unlisted names fall back to their slug.
class AliasTable {
public:
    static AliasTable from_csv(const CsvTable& table) {
        if (table.header != std::vector<std::string>{"class_name", "canonical_id"}) {
            throw ValidationError(table.source +
                                  ":1: bad header, expected 'class_name,canonical_id'");
        }
        AliasTable aliases;
        for (const auto& row : table.rows) {
            const std::string& name = row.fields[0];
            const std::string& canonical = row.fields[1];
            if (name.empty() || canonical.empty()) {
                throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                      ": empty alias field");
            }
            if (canonical.find(' ') != std::string::npos ||
                canonical.find('#') != std::string::npos) {
                throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                      ": canonical id '" + canonical +
                                      "' may not contain spaces or '#'");
            }
            if (!aliases.entries_.emplace(name, canonical).second) {
                throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                      ": duplicate alias for '" + name + "'");
            }
        }
        return aliases;
    }

    static AliasTable load(const std::filesystem::path& path) {
        return from_csv(read_csv_file(path));
    }

    std::string resolve(const std::string& class_name) const {
        auto it = entries_.find(class_name);
        return it == entries_.end() ? slugify(class_name) : it->second;
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

struct WearableMatch {
    std::string name;
    double score = 0.0;

    bool operator==(const WearableMatch&) const = default;
};

// One (condition, measurement) pair on a risk chain; wearables may be empty
// when nothing in the catalog covers the measurement.
struct ChainEntry {
    std::string condition;
    std::string measurement;
    std::vector<WearableMatch> wearables;

    bool operator==(const ChainEntry&) const = default;
};

struct Recommendation {
    std::string profile_id;
    RiskVector risks;                           // selected prefix only
    std::vector<ChainEntry> chains;             // risk order, measurements sorted
    std::vector<std::string> unmet_measurements;  // sorted, deduplicated
    std::string error;                          // batch mode: per-profile failure
};

// Full pipeline for one profile: predict risks, keep the top_k entries at or
// above min_probability, walk each condition's graph chains to measurements,
// and match each measurement against the catalog. Unmatched measurements are
// recorded once per profile and bump the demand counters when given.
inline Recommendation recommend(const std::string& profile_id, const PersonProfile& profile,
                                const DecisionTree& tree, const ConceptGraph& graph,
                                const WearableCatalog& catalog, const AliasTable& aliases,
                                const PipelineConfig& config,
                                DemandCounters* counters = nullptr) {
    config.validate();
    Recommendation rec;
    rec.profile_id = profile_id;

    RiskVector all = tree.predict(profile);
    for (const auto& entry : all.entries) {
        if (entry.probability < config.min_probability) break;
        rec.risks.entries.push_back(entry);
        if (rec.risks.entries.size() == static_cast<std::size_t>(config.top_k)) break;
    }

    std::set<std::string> unmet;
    for (const auto& risk : rec.risks.entries) {
        const std::string disorder = aliases.resolve(risk.condition);
        for (const auto& measurement : measurements_for(graph, disorder)) {
            ChainEntry chain{risk.condition, measurement, {}};
            const TokenSet tokens = normalize_tokens(measurement, catalog.synonyms());
            if (!tokens.empty()) {
                for (const auto& match :
                     match_wearables(catalog, tokens, config.match_threshold, measurement)) {
                    chain.wearables.push_back({match.wearable, match.score});
                }
            }
            if (chain.wearables.empty()) unmet.insert(measurement);
            rec.chains.push_back(std::move(chain));
        }
    }
    rec.unmet_measurements.assign(unmet.begin(), unmet.end());
    if (counters != nullptr) {
        for (const auto& measurement : rec.unmet_measurements) {
            counters->increment(measurement);
        }
    }
    return rec;
}

// Element-wise recommend; a failing profile yields a Recommendation carrying
// only its id and error message instead of aborting the batch.
inline std::vector<Recommendation> batch_recommend(
    const ProfileBatch& batch, const DecisionTree& tree, const ConceptGraph& graph,
    const WearableCatalog& catalog, const AliasTable& aliases, const PipelineConfig& config,
    DemandCounters* counters = nullptr) {
    std::vector<Recommendation> out;
    out.reserve(batch.profiles.size());
    for (std::size_t i = 0; i < batch.profiles.size(); ++i) {
        try {
            out.push_back(recommend(batch.person_ids[i], batch.profiles[i], tree, graph,
                                    catalog, aliases, config, counters));
        } catch (const std::runtime_error& e) {
            Recommendation failed;
            failed.profile_id = batch.person_ids[i];
            failed.error = e.what();
            out.push_back(std::move(failed));
        }
    }
    return out;
}

inline nlohmann::ordered_json recommendation_to_json(const Recommendation& rec) {
    nlohmann::ordered_json doc;
    doc["profile_id"] = rec.profile_id;
    auto risks = nlohmann::ordered_json::array();
    for (const auto& entry : rec.risks.entries) {
        risks.push_back({{"condition", entry.condition}, {"probability", entry.probability}});
    }
    doc["risks"] = std::move(risks);
    auto chains = nlohmann::ordered_json::array();
    for (const auto& chain : rec.chains) {
        nlohmann::ordered_json c;
        c["condition"] = chain.condition;
        c["measurement"] = chain.measurement;
        auto wearables = nlohmann::ordered_json::array();
        for (const auto& match : chain.wearables) {
            wearables.push_back({{"name", match.name}, {"score", match.score}});
        }
        c["wearables"] = std::move(wearables);
        chains.push_back(std::move(c));
    }
    doc["chains"] = std::move(chains);
    doc["unmet_measurements"] = rec.unmet_measurements;
    if (!rec.error.empty()) doc["error"] = rec.error;
    return doc;
}

inline std::string export_recommendation(const Recommendation& rec) {
    return recommendation_to_json(rec).dump(2) + "\n";
}

inline std::string export_recommendations(const std::vector<Recommendation>& recs) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& rec : recs) doc.push_back(recommendation_to_json(rec));
    return doc.dump(2) + "\n";
}

}  // namespace healthadvisor
