#include "vqcb/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "vqcb/errors.hpp"
#include "vqcb/rng.hpp"

namespace vqcb {

namespace {

constexpr int kMaxQubits = 20;

void check_target(const StateVector& state, int q, const char* what) {
    if (q < 0 || q >= state.n_qubits) {
        throw StructuralError(std::string(what) + " index " + std::to_string(q) +
                              " out of range for " + std::to_string(state.n_qubits) +
                              " qubits");
    }
}

}  // namespace

StateVector init_zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(n_qubits));
    }
    StateVector state;
    state.n_qubits = n_qubits;
    state.amplitudes.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    state.amplitudes[0] = cplx{1.0, 0.0};
    return state;
}

double norm_squared(const StateVector& state) {
    double total = 0.0;
    for (const auto& a : state.amplitudes) total += std::norm(a);
    return total;
}

void apply_gate(StateVector& state, const GateOp& op) {
    if (op.is_symbolic()) {
        throw BindingError("cannot apply gate with unbound parameter slot " +
                           std::to_string(op.param_slot));
    }
    auto& amp = state.amplitudes;
    const std::size_t dim = amp.size();

    switch (op.kind) {
        case GateKind::H: {
            check_target(state, op.q0, "H target");
            const std::size_t bit = std::size_t{1} << op.q0;
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & bit) == 0) {
                    const cplx a = amp[i];
                    const cplx b = amp[i | bit];
                    amp[i] = inv_sqrt2 * (a + b);
                    amp[i | bit] = inv_sqrt2 * (a - b);
                }
            }
            break;
        }
        case GateKind::RY: {
            check_target(state, op.q0, "RY target");
            const std::size_t bit = std::size_t{1} << op.q0;
            const double c = std::cos(op.angle / 2.0);
            const double s = std::sin(op.angle / 2.0);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & bit) == 0) {
                    const cplx a = amp[i];
                    const cplx b = amp[i | bit];
                    amp[i] = c * a - s * b;
                    amp[i | bit] = s * a + c * b;
                }
            }
            break;
        }
        case GateKind::Phase: {
            check_target(state, op.q0, "Phase target");
            const std::size_t bit = std::size_t{1} << op.q0;
            const cplx phase = std::polar(1.0, op.angle);
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & bit) amp[i] *= phase;
            }
            break;
        }
        case GateKind::Cnot: {
            check_target(state, op.q0, "Cnot control");
            check_target(state, op.q1, "Cnot target");
            if (op.q0 == op.q1) {
                throw StructuralError("Cnot control and target must be distinct");
            }
            const std::size_t cbit = std::size_t{1} << op.q0;
            const std::size_t tbit = std::size_t{1} << op.q1;
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & cbit) && !(i & tbit)) {
                    std::swap(amp[i], amp[i | tbit]);
                }
            }
            break;
        }
    }
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
    if (circuit.n_symbolic_params != 0) {
        throw BindingError("circuit has " + std::to_string(circuit.n_symbolic_params) +
                           " unbound parameters");
    }
    if (circuit.n_qubits != initial.n_qubits) {
        throw StructuralError("circuit acts on " + std::to_string(circuit.n_qubits) +
                              " qubits but state has " +
                              std::to_string(initial.n_qubits));
    }
    for (const auto& op : circuit.ops) {
        apply_gate(initial, op);
    }
    return initial;
}

double parity_expectation(const StateVector& state) {
    double value = 0.0;
    for (std::size_t b = 0; b < state.dim(); ++b) {
        const double p = std::norm(state.amplitudes[b]);
        value += (std::popcount(b) & 1) ? -p : p;
    }
    return std::clamp(value, -1.0, 1.0);
}

double signal_probability(const StateVector& state) {
    return std::clamp(0.5 * (1.0 + parity_expectation(state)), 0.0, 1.0);
}

std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     long shots,
                                                     std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    return sample_counts(state, shots, rng);
}

std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     long shots,
                                                     std::mt19937_64& rng) {
    if (shots < 1) {
        throw ConfigError("shots must be >= 1, got " + std::to_string(shots));
    }
    // Inverse-CDF draw over the cumulative probabilities.
    std::vector<double> cdf(state.dim());
    double acc = 0.0;
    for (std::size_t b = 0; b < state.dim(); ++b) {
        acc += std::norm(state.amplitudes[b]);
        cdf[b] = acc;
    }
    const double total = acc;

    std::map<std::uint64_t, std::uint64_t> counts;
    for (long s = 0; s < shots; ++s) {
        const double u = uniform_unit(rng) * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t b = static_cast<std::size_t>(it - cdf.begin());
        if (b >= state.dim()) b = state.dim() - 1;
        ++counts[b];
    }
    return counts;
}

std::array<cplx, 4> single_qubit_matrix(GateKind kind, double angle) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::H:
            return {cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                    cplx{-inv_sqrt2, 0}};
        case GateKind::RY: {
            const double c = std::cos(angle / 2.0);
            const double s = std::sin(angle / 2.0);
            return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
        }
        case GateKind::Phase:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, angle)};
        case GateKind::Cnot:
            break;
    }
    throw StructuralError("Cnot has no single-qubit matrix");
}

}  // namespace vqcb
