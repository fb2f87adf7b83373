#pragma once

#include <string>
#include <vector>

#include "vqcb/statevector.hpp"

namespace vqcb {

enum class Entanglement { Full, Linear };

// Data-encoding map: per repetition, a Hadamard layer, single-qubit phases
// P(2*phi1(z_j)), and for each entangled pair (j,k) the block
// CNOT(j,k) P(2*phi2(z_j,z_k)) on k, CNOT(j,k).
// Conventions: phi1(z) = z, phi2(zj, zk) = (pi - zj)(pi - zk).
struct FeatureMapSpec {
    int n_qubits = 0;
    int reps = 1;
    Entanglement entanglement = Entanglement::Full;
};

// Trainable block: an Ry layer on every qubit, then `reps` repetitions of
// [CNOT entangler chain, Ry layer]. Parameter count is n_qubits * (reps + 1).
struct AnsatzSpec {
    int n_qubits = 0;
    int reps = 1;  // depth d
    Entanglement entanglement = Entanglement::Linear;

    int parameter_count() const { return n_qubits * (reps + 1); }
};

using ParamVector = std::vector<double>;

double single_phase(double z);
double pair_phase(double zj, double zk);

// Entangled qubit pairs for a spec: all (j,k), j<k, for Full; (q, q+1) for Linear.
std::vector<std::pair<int, int>> entangled_pairs(int n_qubits, Entanglement ent);

// Fully bound encoding circuit for one feature vector of length n_qubits.
Circuit build_feature_map(const FeatureMapSpec& spec, const std::vector<double>& z);

// Symbolic ansatz with parameter_count() open slots, assigned layer-major,
// qubit index ascending within each layer.
Circuit build_ansatz(const AnsatzSpec& spec);

// Replaces symbolic slots by theta values in slot order. Pure: the input
// circuit is untouched.
Circuit bind_parameters(const Circuit& circuit, const ParamVector& theta);

// One-gate-per-line textual diagram, e.g. "RY(theta[3]) q1".
std::string format_circuit(const Circuit& circuit);

}  // namespace vqcb
