#include "gkpmagic/analytic.hpp"

#include <cmath>
#include <numbers>

#include "gkpmagic/errors.hpp"

namespace gkpmagic::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

}

double MPhiCaseBreakdown::total_count() const {
    double s = 0.0;
    for (const auto& c : cases) s += c.count;
    return s;
}

double MPhiCaseBreakdown::st_norm() const {
    // Scale each term by 2^-n before summing; counts reach 2^{2n-1}.
    const double inv = std::ldexp(1.0, -n);
    double s = 0.0;
    for (const auto& c : cases) s += c.magnitude * (c.count * inv);
    return s;
}

double h_state_magic() { return std::log2((1.0 + std::numbers::sqrt2) / 2.0); }

MPhiResult mphi_magic(int n, double phi) {
    if (n < 1) throw InputError("mphi_magic needs n >= 1");
    if (n > 60) throw DimensionOverflow("mphi_magic supports n <= 60");
    const double dim = std::ldexp(1.0, n);
    const double inv = 1.0 / dim;
    const double c = std::cos(phi);
    const double s = std::sin(phi);

    MPhiCaseBreakdown b;
    b.n = n;
    b.phi = phi;
    b.cases[0] = {"i=0,j=0", 1.0, 1.0};
    b.cases[1] = {"i=0,j!=0", 0.0, dim - 1.0};
    // (e^{i phi} - 1) + (e^{-i phi} - 1) = 2 cos phi - 2
    b.cases[2] = {"i!=0,j=0", std::abs(1.0 + inv * (2.0 * c - 2.0)), dim - 1.0};
    b.cases[3] = {"i!=0,j!=0,even", inv * std::abs(2.0 * c - 2.0), 1.0 - 1.5 * dim + 0.5 * dim * dim};
    b.cases[4] = {"i!=0,j!=0,odd", inv * std::abs(2.0 * s), 0.5 * dim * dim - 0.5 * dim};

    return {std::log2(b.st_norm()), b};
}

double mphi_asymptote(double phi) {
    const double wrapped = std::remainder(phi, 2.0 * kPi);
    if (std::abs(wrapped) < 1e-12) throw DegenerateAngle("M_phi is the identity for phi = 0 mod 2 pi");
    return mphi_magic(30, phi).magic;
}

double qft_inv_magic(int n) {
    if (n < 1) throw InputError("qft_inv_magic needs n >= 1");
    const double root_pi = std::sqrt(kPi);
    double total = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double angle = 2.0 * kPi * std::ldexp(1.0, -k);
        total += std::log2((1.0 + std::abs(std::sin(angle)) + std::abs(std::cos(angle))) / root_pi);
    }
    return total - n * std::log2(2.0 / root_pi);
}

} // namespace gkpmagic::analytic
