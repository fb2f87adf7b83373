#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"
#include "vqcb/errors.hpp"
#include "vqcb/statevector.hpp"

using namespace vqcb;

namespace {

double max_amp_diff(const StateVector& state, const oracle::CVec& expected) {
    double worst = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        worst = std::max(worst, std::abs(state.amplitudes[i] - expected[i]));
    }
    return worst;
}

oracle::CVec as_cvec(const StateVector& state) {
    return {state.amplitudes.begin(), state.amplitudes.end()};
}

}  // namespace

TEST_CASE("init_zero_state puts all weight on bitstring 0") {
    for (int n : {1, 2, 4}) {
        const StateVector s = init_zero_state(n);
        CHECK(s.dim() == (std::size_t{1} << n));
        CHECK(s.amplitudes[0] == cplx{1.0, 0.0});
        for (std::size_t i = 1; i < s.dim(); ++i) CHECK(s.amplitudes[i] == cplx{0.0, 0.0});
    }
}

TEST_CASE("init_zero_state rejects out-of-range widths") {
    CHECK_THROWS_AS(init_zero_state(0), ConfigError);
    CHECK_THROWS_AS(init_zero_state(-3), ConfigError);
    CHECK_THROWS_AS(init_zero_state(21), ConfigError);
}

TEST_CASE("RY(0) is the identity") {
    std::mt19937_64 rng(7);
    StateVector s = testhelp::random_state(3, rng);
    const StateVector before = s;
    apply_gate(s, GateOp{GateKind::RY, 1, -1, 0.0, -1});
    for (std::size_t i = 0; i < s.dim(); ++i) CHECK(s.amplitudes[i] == before.amplitudes[i]);
}

TEST_CASE("RY(pi) flips |0> to |1>") {
    StateVector s = init_zero_state(1);
    apply_gate(s, GateOp{GateKind::RY, 0, -1, std::acos(-1.0), -1});
    CHECK(std::abs(s.amplitudes[0]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(s.amplitudes[1] - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("H then CNOT builds the Bell state") {
    StateVector s = init_zero_state(2);
    apply_gate(s, GateOp{GateKind::H, 0, -1, 0.0, -1});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitudes[0] - cplx{inv_sqrt2, 0.0}) < 1e-12);
    CHECK(std::abs(s.amplitudes[1] - cplx{inv_sqrt2, 0.0}) < 1e-12);

    apply_gate(s, GateOp{GateKind::Cnot, 0, 1, 0.0, -1});
    CHECK(std::abs(s.amplitudes[0] - cplx{inv_sqrt2, 0.0}) < 1e-12);
    CHECK(std::abs(s.amplitudes[1]) < 1e-12);
    CHECK(std::abs(s.amplitudes[2]) < 1e-12);
    CHECK(std::abs(s.amplitudes[3] - cplx{inv_sqrt2, 0.0}) < 1e-12);
}

TEST_CASE("random single gates match the dense oracle on 3 qubits") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        StateVector s = testhelp::random_state(3, rng);
        const oracle::CVec before = as_cvec(s);
        const GateOp op = testhelp::random_gate(3, rng);

        Circuit single;
        single.n_qubits = 3;
        single.ops.push_back(op);
        const oracle::CVec expected = oracle::apply_circuit_dense(single, before);

        apply_gate(s, op);
        CHECK(max_amp_diff(s, expected) < 1e-12);
    }
}

TEST_CASE("apply_gate rejects bad targets and symbolic ops") {
    StateVector s = init_zero_state(2);
    CHECK_THROWS_AS(apply_gate(s, GateOp{GateKind::H, 2, -1, 0.0, -1}), StructuralError);
    CHECK_THROWS_AS(apply_gate(s, GateOp{GateKind::H, -1, -1, 0.0, -1}), StructuralError);
    CHECK_THROWS_AS(apply_gate(s, GateOp{GateKind::Cnot, 0, 0, 0.0, -1}), StructuralError);
    CHECK_THROWS_AS(apply_gate(s, GateOp{GateKind::Cnot, 0, 5, 0.0, -1}), StructuralError);
    CHECK_THROWS_AS(apply_gate(s, GateOp{GateKind::RY, 0, -1, 0.0, 0}), BindingError);
}

TEST_CASE("empty circuit is the identity") {
    std::mt19937_64 rng(3);
    const StateVector s = testhelp::random_state(2, rng);
    Circuit empty;
    empty.n_qubits = 2;
    const StateVector out = run_circuit(empty, s);
    for (std::size_t i = 0; i < s.dim(); ++i) CHECK(out.amplitudes[i] == s.amplitudes[i]);
}

TEST_CASE("H twice is the identity") {
    Circuit c;
    c.n_qubits = 1;
    c.ops.push_back(GateOp{GateKind::H, 0, -1, 0.0, -1});
    c.ops.push_back(GateOp{GateKind::H, 0, -1, 0.0, -1});
    const StateVector out = run_circuit(c, init_zero_state(1));
    CHECK(std::abs(out.amplitudes[0] - cplx{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(out.amplitudes[1]) < 1e-12);
}

TEST_CASE("run_circuit rejects unbound circuits and width mismatches") {
    Circuit c;
    c.n_qubits = 2;
    c.ops.push_back(GateOp{GateKind::RY, 0, -1, 0.0, 0});
    c.n_symbolic_params = 1;
    CHECK_THROWS_AS(run_circuit(c, init_zero_state(2)), BindingError);

    Circuit ok;
    ok.n_qubits = 3;
    CHECK_THROWS_AS(run_circuit(ok, init_zero_state(2)), StructuralError);
}

TEST_CASE("100 random circuits at up to 4 qubits match the Kronecker oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(uniform_index(rng, 4));
        const int n_gates = 5 + static_cast<int>(uniform_index(rng, 30));
        const Circuit c = testhelp::random_bound_circuit(n, n_gates, rng);
        StateVector s = testhelp::random_state(n, rng);

        const oracle::CVec expected = oracle::apply_circuit_dense(c, as_cvec(s));
        const StateVector out = run_circuit(c, std::move(s));
        CHECK(max_amp_diff(out, expected) < 1e-10);
    }
}

TEST_CASE("norm drift stays below 1e-9 over ten thousand gates") {
    std::mt19937_64 rng(5);
    StateVector s = testhelp::random_state(6, rng);
    for (int i = 0; i < 10000; ++i) apply_gate(s, testhelp::random_gate(6, rng));
    CHECK(std::abs(norm_squared(s) - 1.0) < 1e-9);
}

TEST_CASE("single-qubit matrices are unitary") {
    std::mt19937_64 rng(9);
    const auto check_unitary = [](const std::array<cplx, 4>& u) {
        // U^dagger U, row-major 2x2.
        const cplx a = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
        const cplx b = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
        const cplx c = std::conj(u[1]) * u[0] + std::conj(u[3]) * u[2];
        const cplx d = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
        CHECK(std::abs(a - cplx{1.0, 0.0}) < 1e-12);
        CHECK(std::abs(b) < 1e-12);
        CHECK(std::abs(c) < 1e-12);
        CHECK(std::abs(d - cplx{1.0, 0.0}) < 1e-12);
    };
    check_unitary(single_qubit_matrix(GateKind::H, 0.0));
    for (int i = 0; i < 20; ++i) {
        const double angle = uniform_range(rng, -10.0, 10.0);
        check_unitary(single_qubit_matrix(GateKind::RY, angle));
        check_unitary(single_qubit_matrix(GateKind::Phase, angle));
    }
    CHECK_THROWS_AS(single_qubit_matrix(GateKind::Cnot, 0.0), StructuralError);
}

TEST_CASE("parity expectation on reference states") {
    CHECK(parity_expectation(init_zero_state(4)) == 1.0);

    StateVector uniform = init_zero_state(3);
    for (int q = 0; q < 3; ++q) apply_gate(uniform, GateOp{GateKind::H, q, -1, 0.0, -1});
    CHECK(std::abs(parity_expectation(uniform)) < 1e-12);
}

TEST_CASE("parity expectation matches basis-state enumeration") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector s = testhelp::random_state(4, rng);
        const double expected = oracle::parity_by_enumeration(as_cvec(s));
        CHECK(parity_expectation(s) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(parity_expectation(s) >= -1.0);
        CHECK(parity_expectation(s) <= 1.0);
    }
}

TEST_CASE("parity is invariant under a global phase") {
    std::mt19937_64 rng(77);
    StateVector s = testhelp::random_state(4, rng);
    const double before = parity_expectation(s);
    const cplx phase = std::polar(1.0, 1.234);
    for (auto& amp : s.amplitudes) amp *= phase;
    CHECK(parity_expectation(s) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("signal probability on reference states") {
    CHECK(signal_probability(init_zero_state(3)) == 1.0);

    StateVector uniform = init_zero_state(2);
    for (int q = 0; q < 2; ++q) apply_gate(uniform, GateOp{GateKind::H, q, -1, 0.0, -1});
    CHECK(signal_probability(uniform) == doctest::Approx(0.5).epsilon(1e-12));

    StateVector one = init_zero_state(1);
    apply_gate(one, GateOp{GateKind::RY, 0, -1, std::acos(-1.0), -1});
    CHECK(signal_probability(one) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sampling |0...0> lands every shot on bitstring 0") {
    const auto counts = sample_counts(init_zero_state(3), 1000, 42);
    REQUIRE(counts.size() == 1);
    CHECK(counts.at(0) == 1000);
}

TEST_CASE("sampling the Bell state splits between 00 and 11") {
    StateVector bell = init_zero_state(2);
    apply_gate(bell, GateOp{GateKind::H, 0, -1, 0.0, -1});
    apply_gate(bell, GateOp{GateKind::Cnot, 0, 1, 0.0, -1});

    const long shots = 100000;
    const auto counts = sample_counts(bell, shots, 7);
    CHECK(counts.count(1) == 0);
    CHECK(counts.count(2) == 0);
    // Binomial: mean shots/2, sd = sqrt(shots)/2; allow five sigma.
    const double sd = std::sqrt(static_cast<double>(shots)) / 2.0;
    CHECK(std::abs(static_cast<double>(counts.at(0)) - shots / 2.0) < 5.0 * sd);
    CHECK(std::abs(static_cast<double>(counts.at(3)) - shots / 2.0) < 5.0 * sd);
}

TEST_CASE("sampling is deterministic per seed") {
    std::mt19937_64 rng(13);
    const StateVector s = testhelp::random_state(3, rng);
    const auto a = sample_counts(s, 5000, 99);
    const auto b = sample_counts(s, 5000, 99);
    CHECK(a == b);
}

TEST_CASE("sampling rejects a zero shot budget") {
    CHECK_THROWS_AS(sample_counts(init_zero_state(1), 0, 1), ConfigError);
}

TEST_CASE("sampled frequencies converge to the amplitudes squared") {
    // Fixed 2-qubit state with probabilities 0.4, 0.3, 0.2, 0.1.
    StateVector s = init_zero_state(2);
    s.amplitudes = {std::sqrt(0.4), std::sqrt(0.3), std::sqrt(0.2), std::sqrt(0.1)};

    const long shots = 100000;
    const auto counts = sample_counts(s, shots, 1234);
    const double probs[4] = {0.4, 0.3, 0.2, 0.1};
    double chi_sq = 0.0;
    for (int b = 0; b < 4; ++b) {
        const double expected = probs[b] * static_cast<double>(shots);
        const auto it = counts.find(static_cast<std::uint64_t>(b));
        const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        chi_sq += (observed - expected) * (observed - expected) / expected;
    }
    // chi-square critical value, 3 degrees of freedom, alpha = 0.001.
    CHECK(chi_sq < 16.266);
}
