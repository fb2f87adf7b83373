#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace oracle {

CMat identity(std::size_t dim) {
    CMat m(dim, CVec(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
    return m;
}

CMat kron(const CMat& a, const CMat& b) {
    const std::size_t ar = a.size(), ac = a[0].size();
    const std::size_t br = b.size(), bc = b[0].size();
    CMat m(ar * br, CVec(ac * bc, 0.0));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l) m[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return m;
}

CMat matmul(const CMat& a, const CMat& b) {
    const std::size_t n = a.size(), m = b[0].size(), inner = b.size();
    CMat out(n, CVec(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

CVec matvec(const CMat& m, const CVec& v) {
    CVec out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

CMat h_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}

CMat ry_gate(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {{c, -s}, {s, c}};
}

CMat phase_gate(double phi) {
    return {{1.0, 0.0}, {0.0, std::polar(1.0, phi)}};
}

CMat embed_single(const CMat& gate, int q, int n) {
    // Index bit q is the gate's qubit, so the gate sits between identities
    // on the higher bits (left kron factor) and the lower bits (right).
    CMat m = identity(std::size_t{1} << q);
    m = kron(gate, m);
    m = kron(identity(std::size_t{1} << (n - 1 - q)), m);
    return m;
}

CMat embed_cnot(int control, int target, int n) {
    const CMat p0{{1.0, 0.0}, {0.0, 0.0}};
    const CMat p1{{0.0, 0.0}, {0.0, 1.0}};
    const CMat x{{0.0, 1.0}, {1.0, 0.0}};
    const CMat keep = embed_single(p0, control, n);
    const CMat flip = matmul(embed_single(p1, control, n), embed_single(x, target, n));
    CMat m = keep;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) m[i][j] += flip[i][j];
    return m;
}

CMat circuit_matrix(const vqcb::Circuit& circuit) {
    CMat m = identity(std::size_t{1} << circuit.n_qubits);
    for (const auto& op : circuit.ops) {
        CMat gate;
        switch (op.kind) {
            case vqcb::GateKind::H:
                gate = embed_single(h_gate(), op.q0, circuit.n_qubits);
                break;
            case vqcb::GateKind::RY:
                gate = embed_single(ry_gate(op.angle), op.q0, circuit.n_qubits);
                break;
            case vqcb::GateKind::Phase:
                gate = embed_single(phase_gate(op.angle), op.q0, circuit.n_qubits);
                break;
            case vqcb::GateKind::Cnot:
                gate = embed_cnot(op.q0, op.q1, circuit.n_qubits);
                break;
        }
        m = matmul(gate, m);
    }
    return m;
}

CVec apply_circuit_dense(const vqcb::Circuit& circuit, CVec state) {
    return matvec(circuit_matrix(circuit), state);
}

double parity_by_enumeration(const CVec& state) {
    double total = 0.0;
    for (std::size_t b = 0; b < state.size(); ++b) {
        int ones = 0;
        for (std::size_t bit = b; bit != 0; bit >>= 1) ones += static_cast<int>(bit & 1);
        total += std::norm(state[b]) * (ones % 2 == 0 ? 1.0 : -1.0);
    }
    return total;
}

void power_eigen(const vqcb::Matrix& sym, std::vector<double>& values, vqcb::Matrix& vectors) {
    const std::size_t n = sym.rows;
    if (sym.cols != n) throw std::invalid_argument("power_eigen needs a square matrix");

    // Deflate a working copy one dominant eigenpair at a time.
    std::vector<std::vector<double>> work(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) work[i][j] = sym.at(i, j);

    values.assign(n, 0.0);
    vectors = vqcb::Matrix(n, n);

    // Fixed pseudo-random start vector, reseeded per eigenpair.
    std::uint64_t state = 0x243f6a8885a308d3ULL;
    const auto next_unit = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    };

    for (std::size_t pair = 0; pair < n; ++pair) {
        std::vector<double> v(n);
        for (double& x : v) x = next_unit();

        double lambda = 0.0;
        for (int iter = 0; iter < 100000; ++iter) {
            std::vector<double> w(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) w[i] += work[i][j] * v[j];
            double norm = 0.0;
            for (double x : w) norm += x * x;
            norm = std::sqrt(norm);
            if (norm < 1e-300) {
                // Remaining spectrum is (numerically) zero.
                lambda = 0.0;
                break;
            }
            for (double& x : w) x /= norm;
            double delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(w[i] - v[i]));
            v = w;
            lambda = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) lambda += v[i] * work[i][j] * v[j];
            if (delta < 1e-15 && iter > 10) break;
        }

        values[pair] = lambda;
        for (std::size_t i = 0; i < n; ++i) vectors.at(i, pair) = v[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) work[i][j] -= lambda * v[i] * v[j];
    }
}

double finite_difference(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> x, int k, double h) {
    x[k] += h;
    const double plus = f(x);
    x[k] -= 2.0 * h;
    const double minus = f(x);
    return (plus - minus) / (2.0 * h);
}

}  // namespace oracle
