#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "healthadvisor/dataset.hpp"
#include "healthadvisor/errors.hpp"

namespace healthadvisor::synthetic {

inline constexpr std::array<const char*, 50> kConditions = {
    "Lung Disease", "Shock in body", "Arthritis", "Lumbar Back disease",
    "Parkinson's disease", "Falls", "Chronic Pain", "Asthma",
    "Coronary Heart Disease", "Diabetes", "Hypertension", "Stroke",
    "Obesity", "Osteoporosis", "Anemia", "Migraine",
    "Epilepsy", "Depression", "Anxiety Disorder", "Insomnia",
    "Sleep Apnea", "Bronchitis", "Pneumonia", "Tuberculosis",
    "Influenza", "Sinusitis", "Dermatitis", "Psoriasis",
    "Eczema", "Gastritis", "Stomach Ulcer", "Hepatitis",
    "Cirrhosis", "Kidney Stones", "Renal Failure", "Urinary Tract Infection",
    "Prostate Disorder", "Thyroid Disorder", "Gout", "Sciatica",
    "Scoliosis", "Tendonitis", "Bursitis", "Carpal Tunnel Syndrome",
    "Glaucoma", "Cataract", "Macular Degeneration", "Hearing Loss",
    "Vertigo", "Dementia",
};

inline constexpr std::array<const char*, 2> kGenders = {"F", "M"};

inline constexpr std::array<const char*, 6> kEthnicities = {
    "African American", "Asian", "Caucasian", "Hispanic", "Latino",
    "Native American",
};

inline constexpr std::array<const char*, 12> kStates = {
    "Alabama", "Arizona",   "California", "Colorado", "Florida",  "Georgia",
    "Illinois", "Louisiana", "New York",   "Ohio",     "Texas",    "Washington",
};

inline constexpr std::array<const char*, 10> kOccupations = {
    "Accountant", "Banker",  "Chef",    "Construction Worker", "Farmer",
    "Nurse",      "Retired", "Software Engineer", "Student",   "Teacher",
};

inline constexpr std::array<const char*, 4> kMaritalStatuses = {
    "Divorced", "Married", "Single", "Widowed",
};

inline constexpr std::array<const char*, 10> kPriorRecords = {
    "Asthma",    "Back Pain", "Diabetes", "Fracture in leg",
    "High Blood Pressure", "Instability in body", "None", "Obesity",
    "Smoking",   "Traffic Accident",
};

// 8 age groups x 10 prior records x 12 states = 960 signal combinations.
inline constexpr std::int64_t kSignalCombos =
    static_cast<std::int64_t>(kAgeGroups.size() * kPriorRecords.size() * kStates.size());

inline std::string condition_for_combo(std::int64_t combo, std::size_t n_classes) {
    return kConditions[static_cast<std::size_t>(combo) % n_classes];
}

// Deterministic synthetic cohort. The condition is a pure function of
// (age_group, prior_health_records, state); the other attributes are noise.
// Row i draws a combination whose label is class i % n_classes, so every
// class is observed whenever n_rows >= n_classes. All randomness comes from
// raw mt19937 outputs (never uniform_int_distribution, whose mapping is
// implementation defined), so the bytes are stable across platforms.
inline TrainingData generate(std::uint32_t seed, std::size_t n_rows, std::size_t n_classes) {
    if (n_classes < 1 || n_classes > kConditions.size()) {
        throw DomainError("n_classes must be between 1 and " +
                          std::to_string(kConditions.size()));
    }
    if (n_rows < n_classes) {
        throw DomainError("n_rows must be at least n_classes so every class appears");
    }
    std::mt19937 rng(seed);
    const auto k = static_cast<std::int64_t>(n_classes);

    TrainingData data;
    data.person_ids.reserve(n_rows);
    data.dataset.rows.reserve(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        const std::int64_t target = static_cast<std::int64_t>(i) % k;
        // Combos labelled `target` are target, target+k, ... below 960.
        const std::int64_t choices = (kSignalCombos - 1 - target) / k + 1;
        const std::int64_t combo =
            target + k * static_cast<std::int64_t>(rng() % static_cast<std::uint32_t>(choices));
        const auto age = static_cast<std::size_t>(combo / 120);
        const auto prior = static_cast<std::size_t>((combo % 120) / 12);
        const auto state = static_cast<std::size_t>(combo % 12);

        LabeledRow row;
        row.profile.values["age_group"] = kAgeGroups[age];
        row.profile.values["gender"] = kGenders[rng() % kGenders.size()];
        row.profile.values["ethnicity"] = kEthnicities[rng() % kEthnicities.size()];
        row.profile.values["state"] = kStates[state];
        row.profile.values["occupation"] = kOccupations[rng() % kOccupations.size()];
        row.profile.values["marital_status"] = kMaritalStatuses[rng() % kMaritalStatuses.size()];
        row.profile.values["prior_health_records"] = kPriorRecords[prior];
        row.label = condition_for_combo(combo, n_classes);

        char id[24];
        std::snprintf(id, sizeof(id), "p%06zu", i + 1);
        data.person_ids.emplace_back(id);
        data.dataset.rows.push_back(std::move(row));
    }
    data.dataset.schema = infer_schema(data.dataset.rows);
    return data;
}

}  // namespace healthadvisor::synthetic
