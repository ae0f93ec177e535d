#include <gtest/gtest.h>

#include <cmath>

#include "gkpmagic/errors.hpp"
#include "gkpmagic/gates.hpp"
#include "gkpmagic/measures.hpp"
#include "gkpmagic/optimize.hpp"
#include "support.hpp"

using namespace gkpmagic;
using namespace gkpmagic::optimize;
using testsupport::kPi;

namespace {

int min_hits(int restarts) { return (restarts + 7) / 8; }

} // namespace

TEST(NelderMead, Quadratic) {
    const Objective f = [](std::span<const double> x) {
        return (x[0] - 1.0) * (x[0] - 1.0) + 2.0 * (x[1] + 0.5) * (x[1] + 0.5) + 3.0;
    };
    const LocalResult r = nelder_mead_minimize(f, {0.0, 0.0}, 0.5, 5000, 1e-14);
    EXPECT_NEAR(r.x[0], 1.0, 1e-5);
    EXPECT_NEAR(r.x[1], -0.5, 1e-5);
    EXPECT_NEAR(r.value, 3.0, 1e-10);
}

TEST(GradientDescent, Quadratic) {
    const Objective f = [](std::span<const double> x) { return (x[0] - 2.0) * (x[0] - 2.0) + x[1] * x[1]; };
    const LocalResult r = gradient_minimize(f, {0.0, 1.0}, 5000, 1e-14);
    EXPECT_NEAR(r.x[0], 2.0, 1e-4);
    EXPECT_NEAR(r.x[1], 0.0, 1e-4);
}

TEST(Config, Validation) {
    OptimizerConfig cfg;
    cfg.restarts = 0;
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = {};
    cfg.tolerance = 0.0;
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = {};
    EXPECT_NO_THROW(cfg.validate());
}

TEST(StateParams, Normalized) {
    std::vector<double> p(6);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = 0.3 * static_cast<double>(k) - 0.7;
    const PureState psi = state_from_params(2, p);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
    EXPECT_NEAR(psi[0].imag(), 0.0, 1e-15);
    EXPECT_THROW(state_from_params(2, std::vector<double>(5)), DimensionMismatch);
}

TEST(Bloch, Examples) {
    EXPECT_NEAR(bloch_magic(0.0, 1.3), 0.0, 1e-15);
    EXPECT_NEAR(bloch_magic(kPi / 2, kPi / 4), testsupport::kHMagic, 1e-14);
    EXPECT_NEAR(bloch_magic(std::acos(1.0 / std::sqrt(3.0)), kPi / 4), 0.450, 5e-4);
    for (double t : {0.1, 0.9, 2.0, 3.0}) {
        for (double p : {-2.0, 0.3, 1.7}) EXPECT_NEAR(bloch_magic(t, p), gkp_magic_value(bloch_state(t, p)), 1e-12);
    }
}

TEST(MostMagicState, SingleQubit) {
    const OptimumReport r = most_magic_state(1);
    EXPECT_NEAR(r.best_value, 0.450, 1e-4);
    EXPECT_NEAR(r.best_value, gkp_magic_value(r.best_state), 1e-9);
    EXPECT_GE(r.restarts_hitting_best, min_hits(64));
    EXPECT_EQ(r.history.size(), 64u);
    EXPECT_LE(r.max_evaluated, r.best_value + 1e-12);

    // |T>-type state up to a single-qubit Clifford.
    const double b = 0.5 * std::acos(1.0 / std::sqrt(3.0));
    const Eigen::Vector2cd t{std::cos(b), std::polar(std::sin(b), kPi / 4)};
    const Eigen::Vector2cd found{r.best_state[0], r.best_state[1]};
    double best_overlap = 0.0;
    for (const auto& c : testsupport::single_qubit_cliffords()) {
        best_overlap = std::max(best_overlap, std::abs(t.dot(c * found)));
    }
    EXPECT_NEAR(best_overlap, 1.0, 1e-6);
}

TEST(MostMagicState, BlochGridAgrees) {
    double grid_max = 0.0;
    for (int i = 0; i <= 720; ++i) {
        const double theta = kPi * i / 720.0;
        for (int j = 0; j <= 1440; ++j) grid_max = std::max(grid_max, bloch_magic(theta, 2 * kPi * j / 1440.0));
    }
    EXPECT_NEAR(grid_max, most_magic_state(1).best_value, 1e-4);
}

TEST(MostMagicState, TwoQubits) {
    const OptimumReport r = most_magic_state(2);
    EXPECT_NEAR(r.best_value, 0.900, 1e-3);
    EXPECT_GE(r.restarts_hitting_best, min_hits(64));
    for (double h : r.history) EXPECT_LE(h, r.best_value);
}

TEST(MostMagicState, DeterministicForSeed) {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.seed = 5;
    const OptimumReport a = most_magic_state(2, cfg);
    const OptimumReport b = most_magic_state(2, cfg);
    EXPECT_EQ(a.best_value, b.best_value);
    EXPECT_EQ(a.history, b.history);
}

TEST(MostMagicState, GradientMethodRuns) {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.method = Method::FiniteDiffGradientAscent;
    const OptimumReport r = most_magic_state(1, cfg);
    EXPECT_GT(r.best_value, 0.4);
    EXPECT_LE(r.best_value, 0.450 + 1e-4);
}

TEST(SingleQubitUnitary, OptimumAndAngles) {
    const OptimumReport r = most_magic_single_qubit_unitary();
    EXPECT_NEAR(r.best_value, 0.585, 1e-3);
    EXPECT_GE(r.restarts_hitting_best, min_hits(64));
    ASSERT_EQ(r.best_params.size(), 3u);
    const GateUnitary u = su2(r.best_params[0], r.best_params[1], r.best_params[2]);
    EXPECT_TRUE(testsupport::angles_match_up_to_clifford(u.matrix(), 0.0, kPi / 4, 0.6155, 1e-2));
    ASSERT_TRUE(r.reference_value);
    EXPECT_LT(*r.reference_value, r.best_value - 1e-3);
}

TEST(SingleQubitUnitary, CliffordPoints) {
    EXPECT_NEAR(choi_magic_su2(0.0, 0.0, 0.0), 0.0, 1e-12);
    EXPECT_NEAR(choi_magic_su2(kPi / 2, 0.0, 0.0), 0.0, 1e-12);
    EXPECT_NEAR(choi_magic_su2(0.0, kPi / 4, 0.6155), 0.585, 1e-3);
}

TEST(TwoQubitUnitary, CnotPoint) {
    std::vector<double> p(15, 0.0);
    p[12] = kPi / 4;
    EXPECT_NEAR(gkp_magic_value(choi_state(two_qubit_from_params(p))), 0.0, 1e-12);
    EXPECT_LE(two_qubit_from_params(p).unitarity_error(), 1e-12);
}

TEST(TwoQubitUnitary, ShortSearchStaysBelowStateCeiling) {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.max_iters = 300;
    const OptimumReport r = most_magic_two_qubit_unitary(cfg);
    EXPECT_GT(r.best_value, 1.0);
    // D <= 2^{n/2} for n-qubit pure states, so 4 qubits carry at most 2 bits.
    EXPECT_LE(r.best_value, 2.0);
    EXPECT_NEAR(r.best_value, gkp_magic_value(r.best_state), 1e-9);
}
