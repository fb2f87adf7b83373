#pragma once

// Small generators shared by the test binaries.

#include <cmath>
#include <random>
#include <vector>

#include "vqcb/rng.hpp"
#include "vqcb/statevector.hpp"

namespace testhelp {

inline vqcb::StateVector random_state(int n_qubits, std::mt19937_64& rng) {
    vqcb::StateVector state = vqcb::init_zero_state(n_qubits);
    double norm_sq = 0.0;
    for (auto& amp : state.amplitudes) {
        amp = {vqcb::normal_unit(rng), vqcb::normal_unit(rng)};
        norm_sq += std::norm(amp);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& amp : state.amplitudes) amp *= inv;
    return state;
}

inline vqcb::GateOp random_gate(int n_qubits, std::mt19937_64& rng) {
    vqcb::GateOp op;
    const int pick = static_cast<int>(vqcb::uniform_index(rng, n_qubits > 1 ? 4 : 3));
    op.q0 = static_cast<int>(vqcb::uniform_index(rng, n_qubits));
    switch (pick) {
        case 0:
            op.kind = vqcb::GateKind::H;
            break;
        case 1:
            op.kind = vqcb::GateKind::RY;
            op.angle = vqcb::uniform_range(rng, -6.3, 6.3);
            break;
        case 2:
            op.kind = vqcb::GateKind::Phase;
            op.angle = vqcb::uniform_range(rng, -6.3, 6.3);
            break;
        default:
            op.kind = vqcb::GateKind::Cnot;
            op.q1 = static_cast<int>(vqcb::uniform_index(rng, n_qubits - 1));
            if (op.q1 >= op.q0) ++op.q1;  // distinct target
            break;
    }
    return op;
}

inline vqcb::Circuit random_bound_circuit(int n_qubits, int n_gates, std::mt19937_64& rng) {
    vqcb::Circuit circuit;
    circuit.n_qubits = n_qubits;
    for (int i = 0; i < n_gates; ++i) circuit.ops.push_back(random_gate(n_qubits, rng));
    return circuit;
}

}  // namespace testhelp
