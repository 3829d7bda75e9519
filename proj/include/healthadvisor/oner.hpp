#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "healthadvisor/dataset.hpp"
#include "healthadvisor/errors.hpp"

namespace healthadvisor {

// Holte-style single attribute rule: each value of the chosen attribute maps
// to the majority class among rows carrying that value. Values that never
// occurred in training fall back to the global majority class.
struct OneRModel {
    AttributeSchema schema;
    std::string attribute;
    std::map<std::string, std::string> rule;  // attribute value -> condition
    std::string default_class;

    const std::string& predict_label(const PersonProfile& profile) const {
        if (!profile.matches_schema(schema)) {
            throw DomainError("profile does not match the model schema");
        }
        auto it = rule.find(profile.at(attribute));
        return it == rule.end() ? default_class : it->second;
    }

    // One-hot vector, so OneR plugs into the same evaluation as the tree.
    RiskVector predict(const PersonProfile& profile) const {
        RiskVector rv;
        rv.entries.push_back({predict_label(profile), 1.0});
        return rv;
    }
};

namespace detail {

// Majority label id; ties go to the smallest id, which is the
// lexicographically smallest label (class ids are sorted).
inline std::size_t majority_index(const std::vector<std::int64_t>& counts) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < counts.size(); ++i) {
        if (counts[i] > counts[best]) best = i;
    }
    return best;
}

}  // namespace detail

inline OneRModel train_oner(const LabeledDataset& dataset) {
    if (dataset.rows.empty()) throw DomainError("cannot train on an empty dataset");
    const detail::IndexedDataset data = detail::index_dataset(dataset);
    const std::size_t n_classes = data.class_names.size();

    std::vector<std::int64_t> global_counts(n_classes, 0);
    for (auto label : data.labels) ++global_counts[static_cast<std::size_t>(label)];
    const std::string default_class = data.class_names[detail::majority_index(global_counts)];

    std::vector<std::size_t> attr_order(data.attribute_names.size());
    for (std::size_t i = 0; i < attr_order.size(); ++i) attr_order[i] = i;
    std::sort(attr_order.begin(), attr_order.end(), [&](std::size_t a, std::size_t b) {
        return data.attribute_names[a] < data.attribute_names[b];
    });

    OneRModel model;
    model.schema = dataset.schema;
    model.default_class = default_class;
    std::int64_t best_errors = -1;

    for (auto a : attr_order) {
        const std::size_t n_values = data.value_names[a].size();
        std::vector<std::vector<std::int64_t>> counts(
            n_values, std::vector<std::int64_t>(n_classes, 0));
        for (std::size_t r = 0; r < data.rows.size(); ++r) {
            ++counts[static_cast<std::size_t>(data.rows[r][a])]
                    [static_cast<std::size_t>(data.labels[r])];
        }
        std::int64_t errors = 0;
        std::map<std::string, std::string> rule;
        for (std::size_t v = 0; v < n_values; ++v) {
            const std::size_t majority = detail::majority_index(counts[v]);
            rule[data.value_names[a][v]] = data.class_names[majority];
            for (std::size_t c = 0; c < n_classes; ++c) {
                if (c != majority) errors += counts[v][c];
            }
        }
        if (best_errors < 0 || errors < best_errors) {
            best_errors = errors;
            model.attribute = data.attribute_names[a];
            model.rule = std::move(rule);
        }
    }

    // The rule covers every allowed value of the chosen attribute.
    const auto attr_idx = dataset.schema.attribute_index(model.attribute);
    for (const auto& value : dataset.schema.attributes[*attr_idx].allowed_values) {
        model.rule.emplace(value, default_class);
    }
    return model;
}

}  // namespace healthadvisor
