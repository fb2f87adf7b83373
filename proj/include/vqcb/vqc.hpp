#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vqcb/circuits.hpp"
#include "vqcb/optimize.hpp"
#include "vqcb/preprocess.hpp"
#include "vqcb/statevector.hpp"

namespace vqcb {

inline constexpr double kProbClamp = 1e-12;

// Feature map + ansatz + parameters + decision rule. The latent dimension,
// feature-map width, and ansatz width must all agree.
struct VqcModel {
    FeatureMapSpec feature_map;
    AnsatzSpec ansatz;
    ParamVector theta;
    double threshold = 0.5;
};

struct Metrics {
    double accuracy = 0.0;
    // confusion[truth][predicted]: [[TN, FP], [FN, TP]]
    std::array<std::array<long, 2>, 2> confusion{};
    long n_events = 0;
};

struct FitOutcome {
    VqcModel model;  // input model with the best parameters found
    OptResult opt;
};

// Encoder -> bound ansatz -> parity readout for one latent vector.
double forward(const VqcModel& model, const std::vector<double>& z);

// Shot-based variant of forward: estimates the signal probability from a
// finite multinomial sample instead of the exact expectation.
double forward_sampled(const VqcModel& model, const std::vector<double>& z,
                       long shots, std::mt19937_64& rng);

// Mean clamped binary cross-entropy over the dataset, fixed-order reduction.
double loss(const VqcModel& model, const Matrix& z, const std::vector<int>& y);

// Trains theta by minimizing the cross-entropy with the configured
// optimizer. Encoded states are cached once, so each objective evaluation
// only re-runs the ansatz.
FitOutcome fit(const VqcModel& model, const Matrix& z, const std::vector<int>& y,
               const OptimizerConfig& cfg);

// Label 1 iff forward(z) >= threshold (ties go to 1).
int predict(const VqcModel& model, const std::vector<double>& z);

Metrics evaluate(const VqcModel& model, const Matrix& z, const std::vector<int>& y);

// Per-event signal probabilities, one forward pass per row.
std::vector<double> predict_probabilities(const VqcModel& model, const Matrix& z);

}  // namespace vqcb
