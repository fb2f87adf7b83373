#include "vqcb/vqc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "vqcb/errors.hpp"

namespace vqcb {

namespace {

void check_model(const VqcModel& model) {
    if (model.feature_map.n_qubits != model.ansatz.n_qubits) {
        throw ConfigError("feature map and ansatz disagree on qubit count");
    }
}

std::vector<double> matrix_row(const Matrix& z, std::size_t i) {
    std::vector<double> row(z.cols);
    for (std::size_t j = 0; j < z.cols; ++j) row[j] = z.at(i, j);
    return row;
}

// Encodes every event once; training then only re-runs the ansatz.
std::vector<StateVector> encode_states(const FeatureMapSpec& spec, const Matrix& z) {
    std::vector<StateVector> states;
    states.reserve(z.rows);
    for (std::size_t i = 0; i < z.rows; ++i) {
        const Circuit fm = build_feature_map(spec, matrix_row(z, i));
        states.push_back(run_circuit(fm, init_zero_state(spec.n_qubits)));
    }
    return states;
}

double clamped_bce(double p, int y) {
    const double q = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
    return y == 1 ? -std::log(q) : -std::log(1.0 - q);
}

double loss_from_encoded(const Circuit& bound_ansatz,
                         const std::vector<StateVector>& encoded,
                         const std::vector<int>& y) {
    double total = 0.0;
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        const double p = signal_probability(run_circuit(bound_ansatz, encoded[i]));
        total += clamped_bce(p, y[i]);
    }
    return total / static_cast<double>(encoded.size());
}

void check_dataset(const Matrix& z, const std::vector<int>& y, int n_qubits) {
    if (z.rows == 0) throw DataError("empty dataset");
    if (z.rows != y.size()) throw DataError("latent rows and labels disagree");
    if (static_cast<int>(z.cols) != n_qubits) {
        throw DataError("latent dimension " + std::to_string(z.cols) +
                        " does not match n_qubits " + std::to_string(n_qubits));
    }
}

}  // namespace

double forward(const VqcModel& model, const std::vector<double>& z) {
    check_model(model);
    const Circuit fm = build_feature_map(model.feature_map, z);
    const Circuit ansatz = bind_parameters(build_ansatz(model.ansatz), model.theta);
    StateVector state = init_zero_state(model.feature_map.n_qubits);
    state = run_circuit(fm, std::move(state));
    state = run_circuit(ansatz, std::move(state));
    return signal_probability(state);
}

double forward_sampled(const VqcModel& model, const std::vector<double>& z,
                       long shots, std::mt19937_64& rng) {
    check_model(model);
    const Circuit fm = build_feature_map(model.feature_map, z);
    const Circuit ansatz = bind_parameters(build_ansatz(model.ansatz), model.theta);
    StateVector state = init_zero_state(model.feature_map.n_qubits);
    state = run_circuit(fm, std::move(state));
    state = run_circuit(ansatz, std::move(state));

    const auto counts = sample_counts(state, shots, rng);
    long parity_sum = 0;
    for (const auto& [bits, count] : counts) {
        parity_sum += (std::popcount(bits) & 1) ? -static_cast<long>(count)
                                                : static_cast<long>(count);
    }
    const double expectation = static_cast<double>(parity_sum) / static_cast<double>(shots);
    return std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
}

double loss(const VqcModel& model, const Matrix& z, const std::vector<int>& y) {
    check_model(model);
    check_dataset(z, y, model.feature_map.n_qubits);
    const auto encoded = encode_states(model.feature_map, z);
    const Circuit bound = bind_parameters(build_ansatz(model.ansatz), model.theta);
    return loss_from_encoded(bound, encoded, y);
}

FitOutcome fit(const VqcModel& model, const Matrix& z, const std::vector<int>& y,
               const OptimizerConfig& cfg) {
    check_model(model);
    check_dataset(z, y, model.feature_map.n_qubits);

    const auto encoded = encode_states(model.feature_map, z);
    const Circuit symbolic = build_ansatz(model.ansatz);

    ObjectiveHandle objective(
        model.ansatz.parameter_count(), [&](const ParamVector& theta) {
            return loss_from_encoded(bind_parameters(symbolic, theta), encoded, y);
        });

    FitOutcome outcome;
    outcome.opt = minimize(objective, cfg);
    outcome.model = model;
    outcome.model.theta = outcome.opt.best_params;
    return outcome;
}

int predict(const VqcModel& model, const std::vector<double>& z) {
    return forward(model, z) >= model.threshold ? 1 : 0;
}

std::vector<double> predict_probabilities(const VqcModel& model, const Matrix& z) {
    check_model(model);
    if (static_cast<int>(z.cols) != model.feature_map.n_qubits) {
        throw DataError("latent dimension does not match model");
    }
    const auto encoded = encode_states(model.feature_map, z);
    const Circuit bound = bind_parameters(build_ansatz(model.ansatz), model.theta);
    std::vector<double> probs;
    probs.reserve(z.rows);
    for (const auto& state : encoded) {
        probs.push_back(signal_probability(run_circuit(bound, state)));
    }
    return probs;
}

Metrics evaluate(const VqcModel& model, const Matrix& z, const std::vector<int>& y) {
    check_model(model);
    check_dataset(z, y, model.feature_map.n_qubits);
    const auto probs = predict_probabilities(model, z);

    Metrics metrics;
    metrics.n_events = static_cast<long>(z.rows);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const int truth = y[i] == 1 ? 1 : 0;
        const int pred = probs[i] >= model.threshold ? 1 : 0;
        ++metrics.confusion[truth][pred];
    }
    metrics.accuracy =
        static_cast<double>(metrics.confusion[0][0] + metrics.confusion[1][1]) /
        static_cast<double>(metrics.n_events);
    return metrics;
}

}  // namespace vqcb
