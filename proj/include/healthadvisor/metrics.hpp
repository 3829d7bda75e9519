#pragma once

#include <cmath>
#include <string>

#include "healthadvisor/dataset.hpp"
#include "healthadvisor/errors.hpp"

namespace healthadvisor {

struct EvalMetrics {
    double accuracy = 0.0;
    double rmse = 0.0;
};

// accuracy: fraction of rows whose top prediction equals the label.
// rmse: per-class probabilistic error against the one-hot truth,
//   sqrt( (1/(N*K)) * sum_rows sum_classes (p_hat - truth)^2 )
// with K the number of classes in the model schema. Works for any model
// exposing .schema and .predict(profile) -> RiskVector.
template <typename Model>
EvalMetrics evaluate(const Model& model, const LabeledDataset& dataset) {
    if (dataset.rows.empty()) throw DomainError("cannot evaluate on an empty dataset");
    const std::size_t k = model.schema.class_names.size();
    if (k == 0) throw DomainError("model has no classes");

    std::size_t correct = 0;
    double squared_error = 0.0;
    for (const auto& row : dataset.rows) {
        if (!model.schema.has_class(row.label)) {
            throw DomainError("label not in model schema: " + row.label);
        }
        const RiskVector rv = model.predict(row.profile);
        if (rv.top().condition == row.label) ++correct;
        // Classes absent from the vector have p_hat = 0 and contribute only
        // through the one-hot term, so sum over the sparse entries suffices:
        // sum_c (p_c - t_c)^2 = sum_c p_c^2 - 2*p(label) + 1.
        double sum_sq = 0.0;
        double p_label = 0.0;
        for (const auto& entry : rv.entries) {
            sum_sq += entry.probability * entry.probability;
            if (entry.condition == row.label) p_label = entry.probability;
        }
        squared_error += sum_sq - 2.0 * p_label + 1.0;
    }

    const double n = static_cast<double>(dataset.rows.size());
    EvalMetrics metrics;
    metrics.accuracy = static_cast<double>(correct) / n;
    metrics.rmse = std::sqrt(std::max(0.0, squared_error) / (n * static_cast<double>(k)));
    return metrics;
}

}  // namespace healthadvisor
