#include "vqcb/circuits.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vqcb/errors.hpp"

namespace vqcb {

double single_phase(double z) { return z; }

double pair_phase(double zj, double zk) {
    return (std::numbers::pi - zj) * (std::numbers::pi - zk);
}

std::vector<std::pair<int, int>> entangled_pairs(int n_qubits, Entanglement ent) {
    std::vector<std::pair<int, int>> pairs;
    if (ent == Entanglement::Full) {
        for (int j = 0; j < n_qubits; ++j)
            for (int k = j + 1; k < n_qubits; ++k) pairs.emplace_back(j, k);
    } else {
        for (int q = 0; q + 1 < n_qubits; ++q) pairs.emplace_back(q, q + 1);
    }
    return pairs;
}

Circuit build_feature_map(const FeatureMapSpec& spec, const std::vector<double>& z) {
    if (spec.n_qubits < 1 || spec.reps < 1) {
        throw ConfigError("feature map needs n_qubits >= 1 and reps >= 1");
    }
    if (static_cast<int>(z.size()) != spec.n_qubits) {
        throw DataError("feature vector length " + std::to_string(z.size()) +
                        " does not match n_qubits " + std::to_string(spec.n_qubits));
    }
    for (double v : z) {
        if (!std::isfinite(v)) throw DataError("feature value is not finite");
    }

    Circuit circuit;
    circuit.n_qubits = spec.n_qubits;
    const auto pairs = entangled_pairs(spec.n_qubits, spec.entanglement);
    for (int rep = 0; rep < spec.reps; ++rep) {
        for (int q = 0; q < spec.n_qubits; ++q) {
            circuit.ops.push_back({GateKind::H, q});
        }
        for (int q = 0; q < spec.n_qubits; ++q) {
            circuit.ops.push_back({GateKind::Phase, q, -1, 2.0 * single_phase(z[q])});
        }
        for (const auto& [j, k] : pairs) {
            const double angle = 2.0 * pair_phase(z[j], z[k]);
            circuit.ops.push_back({GateKind::Cnot, j, k});
            circuit.ops.push_back({GateKind::Phase, k, -1, angle});
            circuit.ops.push_back({GateKind::Cnot, j, k});
        }
    }
    return circuit;
}

Circuit build_ansatz(const AnsatzSpec& spec) {
    if (spec.n_qubits < 1 || spec.reps < 1) {
        throw ConfigError("ansatz needs n_qubits >= 1 and reps >= 1");
    }
    Circuit circuit;
    circuit.n_qubits = spec.n_qubits;
    const auto pairs = entangled_pairs(spec.n_qubits, spec.entanglement);

    int slot = 0;
    auto ry_layer = [&] {
        for (int q = 0; q < spec.n_qubits; ++q) {
            GateOp op{GateKind::RY, q};
            op.param_slot = slot++;
            circuit.ops.push_back(op);
        }
    };

    ry_layer();
    for (int rep = 0; rep < spec.reps; ++rep) {
        for (const auto& [j, k] : pairs) {
            circuit.ops.push_back({GateKind::Cnot, j, k});
        }
        ry_layer();
    }
    circuit.n_symbolic_params = slot;
    return circuit;
}

Circuit bind_parameters(const Circuit& circuit, const ParamVector& theta) {
    if (static_cast<int>(theta.size()) != circuit.n_symbolic_params) {
        throw BindingError("expected " + std::to_string(circuit.n_symbolic_params) +
                           " parameters, got " + std::to_string(theta.size()));
    }
    Circuit bound = circuit;
    for (auto& op : bound.ops) {
        if (op.is_symbolic()) {
            op.angle = theta[static_cast<std::size_t>(op.param_slot)];
            op.param_slot = -1;
        }
    }
    bound.n_symbolic_params = 0;
    return bound;
}

std::string format_circuit(const Circuit& circuit) {
    std::ostringstream out;
    out << "circuit: " << circuit.n_qubits << " qubits, " << circuit.ops.size()
        << " ops, " << circuit.n_symbolic_params << " symbolic params\n";
    for (const auto& op : circuit.ops) {
        switch (op.kind) {
            case GateKind::H:
                out << "H q" << op.q0;
                break;
            case GateKind::RY:
                if (op.is_symbolic()) {
                    out << "RY(theta[" << op.param_slot << "]) q" << op.q0;
                } else {
                    out << "RY(" << op.angle << ") q" << op.q0;
                }
                break;
            case GateKind::Phase:
                out << "P(" << op.angle << ") q" << op.q0;
                break;
            case GateKind::Cnot:
                out << "CNOT q" << op.q0 << " -> q" << op.q1;
                break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace vqcb
