#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "healthadvisor/dataset.hpp"
#include "healthadvisor/errors.hpp"

namespace healthadvisor {

// E = -sum_j p_j log2 p_j over positive counts, with 0*log2(0) = 0.
inline double entropy_from_counts(const std::vector<std::int64_t>& counts) {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    if (total <= 0) throw DomainError("entropy of an empty multiset");
    double e = 0.0;
    for (auto c : counts) {
        if (c <= 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        e -= p * std::log2(p);
    }
    return e;
}

inline double entropy(const std::vector<std::string>& labels) {
    if (labels.empty()) throw DomainError("entropy of an empty multiset");
    std::map<std::string, std::int64_t> histogram;
    for (const auto& label : labels) ++histogram[label];
    std::vector<std::int64_t> counts;
    counts.reserve(histogram.size());
    for (const auto& [label, count] : histogram) counts.push_back(count);
    return entropy_from_counts(counts);
}

namespace detail {

// Weighted child entropies are summed in sorted order so attributes that
// induce the same partition produce bit-identical conditional entropy (the
// lexicographic tie-break in training depends on exact ties).
inline double sum_sorted(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
}

// counts_by_value: per attribute value, label counts at this node.
inline double conditional_entropy_terms(
    const std::vector<std::vector<std::int64_t>>& counts_by_value, std::int64_t total) {
    std::vector<double> terms;
    terms.reserve(counts_by_value.size());
    for (const auto& counts : counts_by_value) {
        std::int64_t subtotal = 0;
        for (auto c : counts) subtotal += c;
        if (subtotal == 0) continue;
        const double weight = static_cast<double>(subtotal) / static_cast<double>(total);
        terms.push_back(weight * entropy_from_counts(counts));
    }
    return sum_sorted(terms);
}

}  // namespace detail

// E_A = sum_v |D_v|/|D| * E(D_v) over values v present in the dataset.
inline double conditional_entropy(const LabeledDataset& dataset, const std::string& attribute) {
    if (dataset.rows.empty()) throw DomainError("conditional entropy of an empty dataset");
    if (!dataset.schema.attribute_index(attribute)) {
        throw DomainError("unknown attribute: " + attribute);
    }
    std::map<std::string, std::map<std::string, std::int64_t>> partition;
    for (const auto& row : dataset.rows) {
        ++partition[row.profile.at(attribute)][row.label];
    }
    std::vector<std::vector<std::int64_t>> counts_by_value;
    counts_by_value.reserve(partition.size());
    for (const auto& [value, histogram] : partition) {
        std::vector<std::int64_t> counts;
        counts.reserve(histogram.size());
        for (const auto& [label, count] : histogram) counts.push_back(count);
        counts_by_value.push_back(std::move(counts));
    }
    return detail::conditional_entropy_terms(counts_by_value,
                                             static_cast<std::int64_t>(dataset.rows.size()));
}

// G(D, A) = E(D) - E_A(D).
inline double information_gain(const LabeledDataset& dataset, const std::string& attribute) {
    if (dataset.rows.empty()) throw DomainError("information gain of an empty dataset");
    std::vector<std::string> labels;
    labels.reserve(dataset.rows.size());
    for (const auto& row : dataset.rows) labels.push_back(row.label);
    return entropy(labels) - conditional_entropy(dataset, attribute);
}

}  // namespace healthadvisor
