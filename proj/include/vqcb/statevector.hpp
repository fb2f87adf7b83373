#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace vqcb {

using cplx = std::complex<double>;

// Gate alphabet: Hadamard, Ry rotation, diagonal phase P(phi) = diag(1, e^{i phi}),
// and CNOT. Everything the encoder and ansatz need.
enum class GateKind { H, RY, Phase, Cnot };

struct GateOp {
    GateKind kind;
    int q0 = 0;           // target qubit (H, RY, Phase) or control (Cnot)
    int q1 = -1;          // Cnot target
    double angle = 0.0;   // radians; meaningful for RY and Phase once bound
    int param_slot = -1;  // >= 0 marks a symbolic RY angle awaiting binding

    bool is_symbolic() const { return param_slot >= 0; }
};

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> ops;
    int n_symbolic_params = 0;
};

// Dense statevector of 2^n complex amplitudes. Index b encodes the basis
// bitstring with qubit 0 as the least-significant bit.
struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

// |0...0> on n qubits, 1 <= n <= 20.
StateVector init_zero_state(int n_qubits);

double norm_squared(const StateVector& state);

// Applies one gate in place, striding over amplitude pairs. No 2^n x 2^n
// matrix is ever materialized.
void apply_gate(StateVector& state, const GateOp& op);

// Runs a fully bound circuit on an initial state.
StateVector run_circuit(const Circuit& circuit, StateVector initial);

// <Z^{(x)n}> = sum_b |amp_b|^2 (-1)^popcount(b). Always in [-1, 1].
double parity_expectation(const StateVector& state);

// P(y=1) = (1 + parity) / 2, clamped into [0, 1] against rounding.
double signal_probability(const StateVector& state);

// Multinomial sample of basis-state measurements, deterministic per seed.
std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     long shots,
                                                     std::uint64_t rng_seed);
std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     long shots,
                                                     std::mt19937_64& rng);

// Row-major 2x2 matrix of a single-qubit gate kind at the given angle.
// Cnot is not a single-qubit gate and is rejected.
std::array<cplx, 4> single_qubit_matrix(GateKind kind, double angle);

}  // namespace vqcb
