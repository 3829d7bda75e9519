#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "healthadvisor/dataset.hpp"
#include "healthadvisor/entropy.hpp"
#include "healthadvisor/errors.hpp"

namespace healthadvisor {

struct TreeConfig {
    int max_depth = 16;
    double min_gain = 0.0;
    bool laplace = false;

    void validate() const {
        if (max_depth < 1) throw DomainError("max_depth must be >= 1");
        if (min_gain < 0.0) throw DomainError("min_gain must be >= 0");
    }
};

// Multiway categorical tree: one child per attribute value observed during
// training. Internal nodes keep their local class distribution as the
// fallback for attribute values never seen at that branch.
class DecisionTree {
public:
    struct Node {
        std::string split_attribute;  // empty for leaves
        ClassDistribution distribution;
        std::map<std::string, Node> children;  // keyed by attribute value

        bool is_leaf() const { return split_attribute.empty(); }
    };

    AttributeSchema schema;
    TreeConfig config;
    std::size_t training_rows = 0;
    Node root;

    RiskVector predict(const PersonProfile& profile) const {
        if (!profile.matches_schema(schema)) {
            throw DomainError("profile does not match the model schema");
        }
        const Node* node = &root;
        while (!node->is_leaf()) {
            auto child = node->children.find(profile.at(node->split_attribute));
            if (child == node->children.end()) break;  // unseen value
            node = &child->second;
        }
        return make_risk_vector(node->distribution, schema.class_names, config.laplace);
    }

    nlohmann::json to_json() const;
    static DecisionTree from_json(const nlohmann::json& doc);

    void save(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ValidationError("cannot write file: " + path.string());
        out << to_json().dump(2) << '\n';
    }

    static DecisionTree load(const std::filesystem::path& path);
};

namespace detail {

class TreeBuilder {
public:
    TreeBuilder(const IndexedDataset& data, const TreeConfig& config)
        : data_(data), config_(config), n_classes_(data.class_names.size()) {
        attr_order_.resize(data.attribute_names.size());
        std::iota(attr_order_.begin(), attr_order_.end(), std::size_t{0});
        std::sort(attr_order_.begin(), attr_order_.end(), [&](std::size_t a, std::size_t b) {
            return data_.attribute_names[a] < data_.attribute_names[b];
        });
    }

    DecisionTree::Node build(const std::vector<std::size_t>& rows,
                             std::vector<bool>& used, int depth) const {
        DecisionTree::Node node;
        std::vector<std::int64_t> label_counts(n_classes_, 0);
        for (auto r : rows) ++label_counts[static_cast<std::size_t>(data_.labels[r])];
        std::size_t distinct = 0;
        for (std::size_t c = 0; c < n_classes_; ++c) {
            if (label_counts[c] > 0) {
                node.distribution.add(data_.class_names[c], label_counts[c]);
                ++distinct;
            }
        }

        if (distinct <= 1 || depth >= config_.max_depth) return node;

        const double node_entropy = entropy_from_counts(label_counts);
        double best_gain = -1.0;
        std::size_t best_attr = 0;
        bool found = false;
        // Lexicographic iteration + strict improvement = lexicographic
        // smallest attribute wins gain ties.
        for (auto a : attr_order_) {
            if (used[a]) continue;
            const double gain = node_entropy - conditional_entropy_for(rows, a);
            if (!found || gain > best_gain) {
                best_gain = gain;
                best_attr = a;
                found = true;
            }
        }
        if (!found || best_gain <= config_.min_gain) return node;

        std::map<std::int32_t, std::vector<std::size_t>> partition;
        for (auto r : rows) partition[data_.rows[r][best_attr]].push_back(r);

        node.split_attribute = data_.attribute_names[best_attr];
        used[best_attr] = true;
        for (auto& [value_id, subset] : partition) {
            node.children.emplace(
                data_.value_names[best_attr][static_cast<std::size_t>(value_id)],
                build(subset, used, depth + 1));
        }
        used[best_attr] = false;
        return node;
    }

private:
    double conditional_entropy_for(const std::vector<std::size_t>& rows,
                                   std::size_t attr) const {
        const std::size_t n_values = data_.value_names[attr].size();
        std::vector<std::vector<std::int64_t>> counts(
            n_values, std::vector<std::int64_t>(n_classes_, 0));
        for (auto r : rows) {
            ++counts[static_cast<std::size_t>(data_.rows[r][attr])]
                    [static_cast<std::size_t>(data_.labels[r])];
        }
        return conditional_entropy_terms(counts, static_cast<std::int64_t>(rows.size()));
    }

    const IndexedDataset& data_;
    const TreeConfig& config_;
    std::size_t n_classes_;
    std::vector<std::size_t> attr_order_;
};

}  // namespace detail

// Greedy maximum information gain induction. Deterministic: statistics are
// count based and children are emitted in value order, so shuffling the
// training rows yields a structurally identical tree.
inline DecisionTree train_tree(const LabeledDataset& dataset, const TreeConfig& config = {}) {
    config.validate();
    if (dataset.rows.empty()) throw DomainError("cannot train on an empty dataset");

    DecisionTree tree;
    tree.schema = dataset.schema;
    tree.config = config;
    tree.training_rows = dataset.rows.size();

    const detail::IndexedDataset indexed = detail::index_dataset(dataset);
    detail::TreeBuilder builder(indexed, config);
    std::vector<std::size_t> all_rows(indexed.rows.size());
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    std::vector<bool> used(indexed.attribute_names.size(), false);
    tree.root = builder.build(all_rows, used, 0);
    return tree;
}

inline RiskVector predict_risks(const DecisionTree& tree, const PersonProfile& profile) {
    return tree.predict(profile);
}

// --- persistence ----------------------------------------------------------

namespace detail {

inline nlohmann::json node_to_json(const DecisionTree::Node& node) {
    nlohmann::json j;
    nlohmann::json counts(nlohmann::json::value_t::object);
    for (const auto& [label, count] : node.distribution.counts) counts[label] = count;
    j["counts"] = std::move(counts);
    if (!node.is_leaf()) {
        j["split"] = node.split_attribute;
        nlohmann::json children(nlohmann::json::value_t::object);
        for (const auto& [value, child] : node.children) {
            children[value] = node_to_json(child);
        }
        j["children"] = std::move(children);
    }
    return j;
}

inline DecisionTree::Node node_from_json(const nlohmann::json& j,
                                         const AttributeSchema& schema,
                                         std::set<std::string>& path_attributes) {
    if (!j.is_object() || !j.contains("counts") || !j["counts"].is_object()) {
        throw ValidationError("model node is missing its class counts");
    }
    DecisionTree::Node node;
    for (const auto& [label, count] : j["counts"].items()) {
        if (!count.is_number_integer() || count.get<std::int64_t>() < 0) {
            throw ValidationError("model counts must be non-negative integers");
        }
        if (!schema.has_class(label)) {
            throw ValidationError("model counts reference unknown class: " + label);
        }
        node.distribution.add(label, count.get<std::int64_t>());
    }
    if (j.contains("split")) {
        node.split_attribute = j["split"].get<std::string>();
        if (!schema.attribute_index(node.split_attribute)) {
            throw ValidationError("model splits on unknown attribute: " + node.split_attribute);
        }
        if (!path_attributes.insert(node.split_attribute).second) {
            throw ValidationError("attribute repeats on a path: " + node.split_attribute);
        }
        if (!j.contains("children") || !j["children"].is_object() || j["children"].size() < 2) {
            throw ValidationError("internal node needs at least two children");
        }
        for (const auto& [value, child] : j["children"].items()) {
            node.children.emplace(value, node_from_json(child, schema, path_attributes));
        }
        path_attributes.erase(node.split_attribute);
    } else if (j.contains("children")) {
        throw ValidationError("leaf node must not have children");
    }
    return node;
}

}  // namespace detail

inline nlohmann::json DecisionTree::to_json() const {
    nlohmann::json j;
    j["format"] = "healthadvisor-model";
    j["version"] = 1;
    nlohmann::json attrs(nlohmann::json::value_t::array);
    for (const auto& attr : schema.attributes) {
        nlohmann::json a;
        a["name"] = attr.name;
        a["values"] = attr.allowed_values;  // std::set serializes sorted
        attrs.push_back(std::move(a));
    }
    j["schema"]["attributes"] = std::move(attrs);
    j["schema"]["classes"] = schema.class_names;
    j["config"]["max_depth"] = config.max_depth;
    j["config"]["min_gain"] = config.min_gain;
    j["config"]["laplace"] = config.laplace;
    j["meta"]["training_rows"] = training_rows;
    j["tree"] = detail::node_to_json(root);
    return j;
}

inline DecisionTree DecisionTree::from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("format", "") != "healthadvisor-model") {
        throw ValidationError("not a healthadvisor model document");
    }
    if (doc.value("version", 0) != 1) {
        throw ValidationError("unsupported model version");
    }
    DecisionTree tree;
    try {
        for (const auto& attr : doc.at("schema").at("attributes")) {
            AttributeSchema::Attribute a;
            a.name = attr.at("name").get<std::string>();
            for (const auto& v : attr.at("values")) {
                a.allowed_values.insert(v.get<std::string>());
            }
            tree.schema.attributes.push_back(std::move(a));
        }
        tree.schema.class_names =
            doc.at("schema").at("classes").get<std::vector<std::string>>();
        tree.config.max_depth = doc.at("config").at("max_depth").get<int>();
        tree.config.min_gain = doc.at("config").at("min_gain").get<double>();
        tree.config.laplace = doc.at("config").at("laplace").get<bool>();
        tree.training_rows = doc.at("meta").at("training_rows").get<std::size_t>();
        std::set<std::string> path;
        tree.root = detail::node_from_json(doc.at("tree"), tree.schema, path);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed model document: ") + e.what());
    }
    return tree;
}

inline DecisionTree DecisionTree::load(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return from_json(doc);
}

}  // namespace healthadvisor
