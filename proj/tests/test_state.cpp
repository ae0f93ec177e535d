#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gkpmagic/errors.hpp"
#include "gkpmagic/measures.hpp"
#include "gkpmagic/state.hpp"
#include "support.hpp"

using namespace gkpmagic;
using testsupport::kPi;

TEST(PureState, BasisAndPlus) {
    const PureState zero = new_pure_state({1.0, 0.0});
    EXPECT_EQ(zero.num_qubits(), 1);
    EXPECT_EQ(zero[0], Complex(1.0, 0.0));

    const PureState b = PureState::basis(3, 5);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_DOUBLE_EQ(std::abs(b[k]), k == 5 ? 1.0 : 0.0);

    const PureState plus = PureState::plus(2);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(plus[k].real(), 0.5, 1e-15);
}

TEST(PureState, RejectsBadInput) {
    EXPECT_THROW(new_pure_state({1.0, 1.0}), NotNormalized);
    EXPECT_THROW(new_pure_state({1.0, 0.0, 0.0}), NotPowerOfTwo);
    EXPECT_THROW(new_pure_state({1.0}), NotPowerOfTwo);
    // Within the 1e-6 band the copy is accepted and rescaled.
    const PureState nearly = new_pure_state({1.0 + 1e-8, 0.0});
    EXPECT_NEAR(nearly.norm(), 1.0, 1e-15);
}

TEST(PureState, HStateAmplitudes) {
    const double r = 1.0 / std::sqrt(2.0);
    const PureState h = new_pure_state({r, std::polar(r, kPi / 4)});
    EXPECT_NEAR(std::arg(h[1]), kPi / 4, 1e-15);
}

TEST(Tensor, BasisOrdering) {
    const PureState t = tensor(PureState::basis(1, 0), PureState::basis(1, 1));
    EXPECT_EQ(t.num_qubits(), 2);
    EXPECT_DOUBLE_EQ(std::abs(t[1]), 1.0);

    const PureState pp = tensor(PureState::plus(1), PureState::plus(1));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(pp[k].real(), 0.5, 1e-15);
}

TEST(Tensor, Associative) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PureState a = random_haar_state(1, seed);
        const PureState b = random_haar_state(2, seed + 100);
        const PureState c = random_haar_state(2, seed + 200);
        const PureState left = tensor(tensor(a, b), c);
        const PureState right = tensor(a, tensor(b, c));
        EXPECT_LE(testsupport::max_abs_diff(left.amplitudes(), right.amplitudes()), 1e-12);
    }
}

TEST(Tensor, HPairMagic) {
    const PureState hh = tensor(testsupport::h_state(), testsupport::h_state());
    EXPECT_NEAR(gkp_magic_value(hh), 2 * testsupport::kHMagic, 1e-12);
    EXPECT_NEAR(gkp_magic_value(hh), 0.543, 5e-4);
}

TEST(Tensor, Overflow) {
    const PureState big = PureState::basis(8, 0);
    EXPECT_THROW(tensor(big, PureState::basis(7, 0)), DimensionOverflow);
}

TEST(PauliExpectation, Examples) {
    EXPECT_NEAR(pauli_expectation(PureState::basis(1, 0), PauliLabel(1, 1, 0)).real(), 1.0, 1e-15);
    const Complex hx = pauli_expectation(testsupport::h_state(), PauliLabel(1, 0, 1));
    const Complex dense = (testsupport::dense_pauli(1, 0, 1) * testsupport::projector(testsupport::h_state())).trace();
    EXPECT_NEAR(std::abs(hx - dense), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(hx), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(pauli_expectation(PureState::plus(2), PauliLabel(2, 3, 0))), 0.0, 1e-15);
}

TEST(PauliExpectation, MatchesDenseOracleOnAllLabels) {
    for (int n = 1; n <= 4; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        const int states = n == 4 ? 10 : 50;
        for (int s = 0; s < states; ++s) {
            const PureState psi = random_haar_state(n, 1000 * n + s);
            const ComplexMatrix rho = testsupport::projector(psi);
            const DensityOperator dop = DensityOperator::from_pure(psi);
            for (std::uint64_t z = 0; z < dim; ++z) {
                for (std::uint64_t x = 0; x < dim; ++x) {
                    const Complex expected = (testsupport::dense_pauli(n, z, x) * rho).trace();
                    ASSERT_LE(std::abs(pauli_expectation(psi, PauliLabel(n, z, x)) - expected), 1e-12);
                    ASSERT_LE(std::abs(pauli_expectation(dop, PauliLabel(n, z, x)) - expected), 1e-12);
                }
            }
        }
    }
}

TEST(PauliExpectation, LabelChecks) {
    EXPECT_THROW(PauliLabel(2, 4, 0), InputError);
    EXPECT_THROW(pauli_expectation(PureState::basis(2, 0), PauliLabel(1, 1, 0)), DimensionMismatch);
}

TEST(MeasureZ, BellState) {
    const double r = 1.0 / std::sqrt(2.0);
    const PureState bell({r, 0.0, 0.0, r});
    const auto rec = measure_z(bell, 1);
    EXPECT_NEAR(rec[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(rec[1].probability, 0.5, 1e-15);
    ASSERT_TRUE(rec[0].post_state && rec[1].post_state);
    EXPECT_TRUE(equal_up_to_phase(*rec[0].post_state, PureState::basis(1, 0)));
    EXPECT_TRUE(equal_up_to_phase(*rec[1].post_state, PureState::basis(1, 1)));
}

TEST(MeasureZ, DeterministicOutcome) {
    const PureState h0 = tensor(testsupport::h_state(), PureState::basis(1, 0));
    const auto rec = measure_z(h0, 2);
    EXPECT_NEAR(rec[0].probability, 1.0, 1e-15);
    EXPECT_NEAR(rec[1].probability, 0.0, 1e-15);
    ASSERT_TRUE(rec[0].post_state);
    EXPECT_FALSE(rec[1].post_state);
    EXPECT_TRUE(equal_up_to_phase(*rec[0].post_state, testsupport::h_state()));
}

TEST(MeasureZ, BranchesOfHPair) {
    const PureState hh = tensor(testsupport::h_state(), testsupport::h_state());
    for (const auto& r : measure_z(hh, 2)) {
        ASSERT_TRUE(r.post_state);
        EXPECT_LE(gkp_magic_value(*r.post_state), 0.5431 + 1e-9);
    }
}

TEST(MeasureZ, ProbabilitiesSumToOne) {
    for (int s = 0; s < 50; ++s) {
        const int n = 1 + s % 5;
        const PureState psi = random_haar_state(n, s);
        for (int q = 1; q <= n; ++q) {
            const auto rec = measure_z(psi, q);
            EXPECT_NEAR(rec[0].probability + rec[1].probability, 1.0, 1e-10);
            for (const auto& r : rec) {
                if (r.post_state) {
                    EXPECT_EQ(r.post_state->num_qubits(), n - 1);
                    EXPECT_NEAR(r.post_state->norm(), 1.0, 1e-10);
                }
            }
        }
    }
}

TEST(MeasureZ, QubitRange) {
    EXPECT_THROW(measure_z(PureState::basis(2, 0), 0), QubitOutOfRange);
    EXPECT_THROW(measure_z(PureState::basis(2, 0), 3), QubitOutOfRange);
}

TEST(Stabilizers, Counts) {
    EXPECT_EQ(enumerate_stabilizer_states(1).size(), 6u);
    EXPECT_EQ(enumerate_stabilizer_states(2).size(), 60u);
    EXPECT_THROW(enumerate_stabilizer_states(3), Unsupported);
}

TEST(Stabilizers, DistinctUpToPhase) {
    const auto states = enumerate_stabilizer_states(2);
    for (std::size_t a = 0; a < states.size(); ++a) {
        for (std::size_t b = a + 1; b < states.size(); ++b) EXPECT_FALSE(equal_up_to_phase(states[a], states[b]));
    }
}

TEST(Stabilizers, SingleQubitSetIsPauliEigenstates) {
    // Every single-qubit stabilizer state has one Pauli expectation of modulus 1.
    for (const auto& s : enumerate_stabilizer_states(1)) {
        double best = 0.0;
        for (std::uint64_t z = 0; z < 2; ++z) {
            for (std::uint64_t x = 0; x < 2; ++x) {
                if (z || x) best = std::max(best, std::abs(pauli_expectation(s, PauliLabel(1, z, x))));
            }
        }
        EXPECT_NEAR(best, 1.0, 1e-12);
    }
}

TEST(RandomStates, Deterministic) {
    const PureState a = random_haar_state(2, 0);
    const PureState b = random_haar_state(2, 0);
    EXPECT_EQ(testsupport::max_abs_diff(a.amplitudes(), b.amplitudes()), 0.0);
    EXPECT_NEAR(random_haar_state(3, 1).norm(), 1.0, 1e-10);
}

TEST(RandomStates, GenericallyMagic) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) EXPECT_GT(gkp_magic_value(random_haar_state(2, seed)), 1e-6);
}

TEST(RandomStates, MixedStateIsValid) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DensityOperator rho = random_mixed_state(3, 4, seed);
        EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
        // Validating copy must accept it.
        EXPECT_NO_THROW(DensityOperator(rho.matrix()));
    }
}

TEST(DensityOperator, Validation) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(DensityOperator{m}, InputError);  // trace 2
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator{m}, InputError);  // negative eigenvalue
    ComplexMatrix nh = 0.5 * ComplexMatrix::Identity(2, 2);
    nh(0, 1) = 0.1;
    EXPECT_THROW(DensityOperator{nh}, InputError);  // not Hermitian
    EXPECT_NO_THROW(DensityOperator::maximally_mixed(2));
}

TEST(PartialTrace, ProductState) {
    const DensityOperator a = DensityOperator::from_pure(testsupport::h_state());
    const DensityOperator b = random_mixed_state(2, 3, 7);
    const DensityOperator reduced = partial_trace_last(tensor(a, b), 2);
    EXPECT_LE((reduced.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StateFile, RoundTrip) {
    const PureState psi = random_haar_state(3, 42);
    std::stringstream buf;
    write_state(buf, psi);
    const PureState back = read_state(buf);
    // Reading renormalizes, which may move the last bit.
    EXPECT_LE(testsupport::max_abs_diff(psi.amplitudes(), back.amplitudes()), 1e-15);
}

TEST(StateFile, ParseErrors) {
    std::stringstream no_header("1 0\n0 0\n");
    EXPECT_THROW(read_state(no_header), ParseError);
    std::stringstream short_body("n=2\n1 0\n0 0\n");
    EXPECT_THROW(read_state(short_body), ParseError);
    std::stringstream junk("n=1\n1 x\n0 0\n");
    EXPECT_THROW(read_state(junk), ParseError);
    std::stringstream unnormalized("n=1\n1 0\n1 0\n");
    EXPECT_THROW(read_state(unnormalized), NotNormalized);
    EXPECT_THROW(load_state_file("/nonexistent/state.txt"), ParseError);
}
