#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "healthadvisor/csv.hpp"
#include "healthadvisor/errors.hpp"

namespace healthadvisor {

inline constexpr std::array<const char*, 8> kAgeGroups = {
    "0-14", "15-24", "25-34", "35-44", "45-54", "55-64", "65-74", "75+",
};

inline constexpr std::array<const char*, 7> kAttributeNames = {
    "age_group",      "gender",     "ethnicity",           "state",
    "occupation",     "marital_status", "prior_health_records",
};

inline bool is_age_group(const std::string& value) {
    return std::find(kAgeGroups.begin(), kAgeGroups.end(), value) != kAgeGroups.end();
}

struct AttributeSchema {
    struct Attribute {
        std::string name;
        std::set<std::string> allowed_values;
    };

    std::vector<Attribute> attributes;
    std::vector<std::string> class_names;  // kept sorted

    std::optional<std::size_t> attribute_index(const std::string& name) const {
        for (std::size_t i = 0; i < attributes.size(); ++i) {
            if (attributes[i].name == name) return i;
        }
        return std::nullopt;
    }

    bool has_class(const std::string& name) const {
        return std::binary_search(class_names.begin(), class_names.end(), name);
    }
};

// One individual's categorical attributes, keyed by attribute name. Values
// outside the schema's allowed set are legal at prediction time.
struct PersonProfile {
    std::map<std::string, std::string> values;

    const std::string& at(const std::string& attribute) const {
        auto it = values.find(attribute);
        if (it == values.end()) {
            throw DomainError("profile is missing attribute: " + attribute);
        }
        return it->second;
    }

    bool matches_schema(const AttributeSchema& schema) const {
        if (values.size() != schema.attributes.size()) return false;
        for (const auto& attr : schema.attributes) {
            if (!values.count(attr.name)) return false;
        }
        return true;
    }
};

struct LabeledRow {
    PersonProfile profile;
    std::string label;
};

struct LabeledDataset {
    AttributeSchema schema;
    std::vector<LabeledRow> rows;
};

// Non-negative integer class counts; probabilities are always derived from
// these so distributions stay exact and order independent.
struct ClassDistribution {
    std::map<std::string, std::int64_t> counts;

    std::int64_t total() const {
        std::int64_t sum = 0;
        for (const auto& [name, count] : counts) sum += count;
        return sum;
    }

    void add(const std::string& label, std::int64_t n = 1) { counts[label] += n; }
};

struct RiskEntry {
    std::string condition;
    double probability = 0.0;

    bool operator==(const RiskEntry&) const = default;
};

// Sorted by probability descending, ties by condition name ascending.
struct RiskVector {
    std::vector<RiskEntry> entries;

    const RiskEntry& top() const {
        if (entries.empty()) throw DomainError("empty risk vector");
        return entries.front();
    }

    double probability_of(const std::string& condition) const {
        for (const auto& e : entries) {
            if (e.condition == condition) return e.probability;
        }
        return 0.0;
    }
};

// With laplace smoothing every schema class gets (count+1)/(total+K);
// without it only observed classes appear, at their raw frequencies.
inline RiskVector make_risk_vector(const ClassDistribution& distribution,
                                   const std::vector<std::string>& class_names,
                                   bool laplace) {
    RiskVector rv;
    const double total = static_cast<double>(distribution.total());
    if (laplace) {
        const double denom = total + static_cast<double>(class_names.size());
        for (const auto& name : class_names) {
            auto it = distribution.counts.find(name);
            const double count = it == distribution.counts.end()
                                     ? 0.0
                                     : static_cast<double>(it->second);
            rv.entries.push_back({name, (count + 1.0) / denom});
        }
    } else {
        if (total <= 0) throw DomainError("distribution has no observations");
        for (const auto& [name, count] : distribution.counts) {
            if (count > 0) rv.entries.push_back({name, static_cast<double>(count) / total});
        }
    }
    std::stable_sort(rv.entries.begin(), rv.entries.end(),
                     [](const RiskEntry& a, const RiskEntry& b) {
                         if (a.probability != b.probability) return a.probability > b.probability;
                         return a.condition < b.condition;
                     });
    return rv;
}

namespace detail {

// Integer-interned view of a dataset; training and OneR work on this.
struct IndexedDataset {
    std::vector<std::string> attribute_names;                // schema order
    std::vector<std::vector<std::string>> value_names;       // per attribute, sorted
    std::vector<std::string> class_names;                    // sorted
    std::vector<std::vector<std::int32_t>> rows;             // rows x attributes
    std::vector<std::int32_t> labels;
};

inline IndexedDataset index_dataset(const LabeledDataset& dataset) {
    IndexedDataset out;
    const auto& schema = dataset.schema;
    out.class_names = schema.class_names;
    std::map<std::string, std::int32_t> class_ids;
    for (std::size_t i = 0; i < out.class_names.size(); ++i) {
        class_ids[out.class_names[i]] = static_cast<std::int32_t>(i);
    }

    std::vector<std::map<std::string, std::int32_t>> value_ids(schema.attributes.size());
    out.attribute_names.reserve(schema.attributes.size());
    out.value_names.resize(schema.attributes.size());
    for (std::size_t a = 0; a < schema.attributes.size(); ++a) {
        out.attribute_names.push_back(schema.attributes[a].name);
    }

    out.rows.reserve(dataset.rows.size());
    out.labels.reserve(dataset.rows.size());
    for (const auto& row : dataset.rows) {
        std::vector<std::int32_t> indexed(schema.attributes.size());
        for (std::size_t a = 0; a < schema.attributes.size(); ++a) {
            const std::string& value = row.profile.at(schema.attributes[a].name);
            auto it = value_ids[a]
                          .emplace(value, static_cast<std::int32_t>(value_ids[a].size()))
                          .first;
            indexed[a] = it->second;
        }
        out.rows.push_back(std::move(indexed));
        auto label_it = class_ids.find(row.label);
        if (label_it == class_ids.end()) {
            throw DomainError("label not in schema: " + row.label);
        }
        out.labels.push_back(label_it->second);
    }

    // Insertion into the maps above depends on row order; re-number by sorted
    // value so the interned ids are permutation invariant.
    for (std::size_t a = 0; a < value_ids.size(); ++a) {
        std::vector<std::int32_t> remap(value_ids[a].size());
        std::int32_t next = 0;
        for (auto& [value, id] : value_ids[a]) {
            out.value_names[a].push_back(value);
            remap[static_cast<std::size_t>(id)] = next++;
        }
        for (auto& row : out.rows) {
            row[a] = remap[static_cast<std::size_t>(row[a])];
        }
    }
    return out;
}

}  // namespace detail

// --- Training data CSV ----------------------------------------------------

inline const std::vector<std::string>& training_header() {
    static const std::vector<std::string> header = {
        "person_id",      "age_group", "gender",
        "ethnicity",      "state",     "occupation",
        "marital_status", "prior_health_records", "condition",
    };
    return header;
}

inline const std::vector<std::string>& profile_header() {
    static const std::vector<std::string> header = {
        "person_id",      "age_group", "gender",
        "ethnicity",      "state",     "occupation",
        "marital_status", "prior_health_records",
    };
    return header;
}

struct TrainingData {
    std::vector<std::string> person_ids;  // parallel to dataset.rows
    LabeledDataset dataset;
};

struct ProfileBatch {
    std::vector<std::string> person_ids;
    std::vector<PersonProfile> profiles;
};

namespace detail {

inline void check_header(const CsvTable& table, const std::vector<std::string>& expected) {
    if (table.header != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) want += ',';
            want += expected[i];
        }
        throw ValidationError(table.source + ":1: bad header, expected '" + want + "'");
    }
}

inline PersonProfile profile_from_row(const CsvTable& table, const CsvRow& row) {
    PersonProfile profile;
    for (std::size_t a = 0; a < kAttributeNames.size(); ++a) {
        const std::string& value = row.fields[a + 1];  // fields[0] is person_id
        if (value.empty()) {
            throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                  ": empty value for " + kAttributeNames[a]);
        }
        profile.values[kAttributeNames[a]] = value;
    }
    const std::string& age = profile.values["age_group"];
    if (!is_age_group(age)) {
        throw ValidationError(table.source + ":" + std::to_string(row.line) +
                              ": unknown age_group '" + age + "'");
    }
    return profile;
}

}  // namespace detail

// Schema inference: allowed values are the observed ones, except age_group
// which always carries the full bucket list; classes are sorted.
inline AttributeSchema infer_schema(const std::vector<LabeledRow>& rows) {
    AttributeSchema schema;
    for (const auto* name : kAttributeNames) {
        schema.attributes.push_back({name, {}});
    }
    schema.attributes[0].allowed_values.insert(kAgeGroups.begin(), kAgeGroups.end());
    std::set<std::string> classes;
    for (const auto& row : rows) {
        for (std::size_t a = 1; a < schema.attributes.size(); ++a) {
            schema.attributes[a].allowed_values.insert(
                row.profile.at(schema.attributes[a].name));
        }
        classes.insert(row.label);
    }
    schema.class_names.assign(classes.begin(), classes.end());
    return schema;
}

inline TrainingData load_training_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv_file(path);
    detail::check_header(table, training_header());
    TrainingData data;
    for (const auto& row : table.rows) {
        LabeledRow labeled;
        labeled.profile = detail::profile_from_row(table, row);
        labeled.label = row.fields.back();
        if (labeled.label.empty()) {
            throw ValidationError(table.source + ":" + std::to_string(row.line) +
                                  ": empty condition label");
        }
        data.person_ids.push_back(row.fields.front());
        data.dataset.rows.push_back(std::move(labeled));
    }
    data.dataset.schema = infer_schema(data.dataset.rows);
    return data;
}

inline ProfileBatch load_profiles_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv_file(path);
    detail::check_header(table, profile_header());
    ProfileBatch batch;
    for (const auto& row : table.rows) {
        batch.person_ids.push_back(row.fields.front());
        batch.profiles.push_back(detail::profile_from_row(table, row));
    }
    return batch;
}

inline void write_training_csv(std::ostream& os, const TrainingData& data) {
    write_csv_row(os, training_header());
    for (std::size_t i = 0; i < data.dataset.rows.size(); ++i) {
        const auto& row = data.dataset.rows[i];
        std::vector<std::string> fields;
        fields.push_back(i < data.person_ids.size() ? data.person_ids[i]
                                                    : "p" + std::to_string(i + 1));
        for (const auto* name : kAttributeNames) {
            fields.push_back(row.profile.at(name));
        }
        fields.push_back(row.label);
        write_csv_row(os, fields);
    }
}

inline void write_training_csv(const std::filesystem::path& path, const TrainingData& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    write_training_csv(out, data);
}

}  // namespace healthadvisor
