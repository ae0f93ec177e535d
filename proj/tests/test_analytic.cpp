#include <gtest/gtest.h>

#include <cmath>

#include "gkpmagic/analytic.hpp"
#include "gkpmagic/errors.hpp"
#include "gkpmagic/gates.hpp"
#include "gkpmagic/measures.hpp"
#include "support.hpp"

using namespace gkpmagic;
using namespace gkpmagic::analytic;
using testsupport::kPi;

namespace {

double numeric_mphi(int n, double phi) { return gkp_magic_value(plus_state_image(mphase(n, phi))); }

// Closed-form n -> infinity limit of the case table: the 2^-n weighted sum
// tends to 1 + (|2 cos phi - 2| + |2 sin phi|) / 2.
double limit_formula(double phi) { return std::log2(2.0 - std::cos(phi) + std::abs(std::sin(phi))); }

} // namespace

TEST(HState, Value) {
    EXPECT_NEAR(h_state_magic(), 0.2716, 5e-5);
    EXPECT_NEAR(h_state_magic(), gkp_magic_value(plus_state_image(mphase(1, kPi / 4))), 1e-12);
    const PureState hh = tensor(testsupport::h_state(), testsupport::h_state());
    EXPECT_NEAR(2 * h_state_magic(), gkp_magic_value(hh), 1e-12);
}

TEST(MPhi, TableValues) {
    EXPECT_NEAR(mphi_magic(3, kPi).magic, 0.907, 5e-4);
    EXPECT_NEAR(mphi_magic(4, kPi / 2).magic, 1.401, 5e-4);
    // Exact value 1.43045; the tabulated 1.431 is off in the third decimal.
    EXPECT_NEAR(mphi_magic(5, kPi).magic, 1.431, 1e-3);
}

TEST(MPhi, CaseCountsSumToFourToTheN) {
    for (int n = 1; n <= 20; ++n) {
        const auto b = mphi_magic(n, 0.7).breakdown;
        EXPECT_DOUBLE_EQ(b.total_count(), std::pow(4.0, n));
    }
}

TEST(MPhi, AgreesWithNumeric) {
    for (int n = 1; n <= 10; ++n) {
        for (double phi : {kPi, kPi / 2, kPi / 4, 0.3}) {
            const auto r = mphi_magic(n, phi);
            const PureState psi = plus_state_image(mphase(n, phi));
            EXPECT_NEAR(r.magic, gkp_magic_value(psi), 1e-9) << "n=" << n << " phi=" << phi;
            EXPECT_NEAR(r.breakdown.st_norm(), st_norm(psi), 1e-9);
        }
    }
}

TEST(MPhi, IdentityAngle) {
    for (int n = 1; n <= 12; ++n) EXPECT_NEAR(mphi_magic(n, 0.0).magic, 0.0, 1e-12);
}

TEST(MPhi, Limits) {
    EXPECT_THROW(mphi_magic(0, 1.0), InputError);
    EXPECT_THROW(mphi_magic(61, 1.0), DimensionOverflow);
}

TEST(Asymptote, MatchesLimitFormula) {
    for (double phi : {kPi, kPi / 2, kPi / 4, 0.3, -1.1}) {
        EXPECT_NEAR(mphi_asymptote(phi), limit_formula(phi), 1e-8);
        EXPECT_LT(std::abs(mphi_magic(20, phi).magic - mphi_asymptote(phi)), 1e-4);
    }
    EXPECT_NEAR(mphi_asymptote(kPi), std::log2(3.0), 1e-8);
    EXPECT_NEAR(mphi_asymptote(kPi / 4), 1.0, 1e-8);
    EXPECT_THROW(mphi_asymptote(0.0), DegenerateAngle);
    EXPECT_THROW(mphi_asymptote(2 * kPi), DegenerateAngle);
}

TEST(Asymptote, Convergence) {
    const double early = std::abs(mphi_magic(5, kPi).magic - mphi_magic(4, kPi).magic);
    const double late = std::abs(mphi_magic(12, kPi).magic - mphi_magic(11, kPi).magic);
    EXPECT_LT(late, early);
    // Large-n ordering of the curves.
    EXPECT_GT(mphi_asymptote(kPi), mphi_asymptote(kPi / 4));
    EXPECT_GT(mphi_magic(30, kPi).magic, mphi_magic(30, kPi / 4).magic);
}

TEST(QftInv, SmallValues) {
    EXPECT_NEAR(qft_inv_magic(1), 0.0, 1e-12);
    EXPECT_NEAR(qft_inv_magic(2), 0.0, 1e-12);
    EXPECT_NEAR(qft_inv_magic(3), 0.2716, 5e-5);
    EXPECT_THROW(qft_inv_magic(0), InputError);
}

TEST(QftInv, AgreesWithNumeric) {
    for (int n = 1; n <= 12; ++n) {
        EXPECT_NEAR(qft_inv_magic(n), gkp_magic_value(qft_state(n, -1)), 1e-9) << "n=" << n;
    }
}

TEST(QftInv, UpperBoundAndSaturation) {
    double previous_step = 1.0;
    for (int n = 1; n <= 64; ++n) {
        EXPECT_LE(qft_inv_magic(n), n * h_state_magic() + 1e-12);
        if (n >= 4) {
            const double step = qft_inv_magic(n) - qft_inv_magic(n - 1);
            EXPECT_LE(step, previous_step + 1e-12);
            previous_step = step;
        }
    }
    EXPECT_LT(qft_inv_magic(64) - qft_inv_magic(63), 1e-12);
}
