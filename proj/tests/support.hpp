// Independent reference helpers for the test suites. Nothing here calls the
// library's evaluation paths.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "gkpmagic/state.hpp"

namespace testsupport {

using gkpmagic::Complex;
using gkpmagic::ComplexMatrix;
using gkpmagic::ComplexVector;

inline const double kPi = std::numbers::pi;
inline const double kHMagic = std::log2((1.0 + std::sqrt(2.0)) / 2.0);
inline const double kCellOffset = std::log2(2.0 / std::sqrt(std::numbers::pi));

// X^x Z^z on one qubit.
inline Eigen::Matrix2cd single_pauli(int z, int x) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    if (z) m(1, 1) = -1.0;
    if (x) {
        Eigen::Matrix2cd flip;
        flip << 0, 1, 1, 0;
        m = flip * m;
    }
    return m;
}

// Kronecker product of single-qubit factors, qubit 1 leftmost.
inline ComplexMatrix dense_pauli(int n, std::uint64_t z, std::uint64_t x) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (n - q);
        const Eigen::Matrix2cd f = single_pauli((z & bit) != 0, (x & bit) != 0);
        ComplexMatrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = out(r, c) * f;
        }
        out = std::move(next);
    }
    return out;
}

inline ComplexMatrix projector(const gkpmagic::PureState& psi) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dim()));
    return v * v.adjoint();
}

// 2^-n sum_P |Tr(P rho)| by explicit matrix products.
inline double dense_st_norm(const ComplexMatrix& rho) {
    const int n = static_cast<int>(std::log2(static_cast<double>(rho.rows())) + 0.5);
    const std::uint64_t dim = std::uint64_t{1} << n;
    double total = 0.0;
    for (std::uint64_t z = 0; z < dim; ++z) {
        for (std::uint64_t x = 0; x < dim; ++x) total += std::abs((dense_pauli(n, z, x) * rho).trace());
    }
    return total / static_cast<double>(dim);
}

inline double dense_magic(const gkpmagic::PureState& psi) { return std::log2(dense_st_norm(projector(psi))); }

inline gkpmagic::PureState h_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return gkpmagic::PureState({r, std::polar(r, kPi / 4)});
}

inline gkpmagic::PureState hoggar_state() {
    const double s = 1.0 / std::sqrt(6.0);
    const Complex i{0.0, 1.0};
    return gkpmagic::PureState({(1.0 + i) * s, 0.0, -s, s, -i * s, s, 0.0, 0.0});
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

// The 24 single-qubit Cliffords modulo global phase, as the closure of {H, S}.
inline std::vector<Eigen::Matrix2cd> single_qubit_cliffords() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd h;
    h << r, r, r, -r;
    Eigen::Matrix2cd s;
    s << 1, 0, 0, Complex(0.0, 1.0);
    auto same = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
        return std::abs((a.adjoint() * b).trace()) > 2.0 - 1e-9;
    };
    std::vector<Eigen::Matrix2cd> group{Eigen::Matrix2cd::Identity()};
    for (std::size_t k = 0; k < group.size(); ++k) {
        for (const auto& g : {h, s}) {
            const Eigen::Matrix2cd next = g * group[k];
            bool known = false;
            for (const auto& e : group) known = known || same(e, next);
            if (!known) group.push_back(next);
        }
    }
    return group;
}

inline double wrapped_distance(double a, double b) {
    const double d = std::remainder(a - b, 2.0 * kPi);
    return std::abs(d);
}

// True when some L U R with L, R single-qubit Cliffords, rescaled into SU(2)
// as [[e^{i p1} cos a, e^{i p2} sin a], [-e^{-i p2} sin a, e^{-i p1} cos a]],
// has angles (p1, p2, a) within tol of the target.
inline bool angles_match_up_to_clifford(const Eigen::Matrix2cd& u, double p1, double p2, double alpha, double tol) {
    const auto group = single_qubit_cliffords();
    for (const auto& left : group) {
        for (const auto& right : group) {
            Eigen::Matrix2cd v = left * u * right;
            v /= std::sqrt(v.determinant());
            for (double sign : {1.0, -1.0}) {
                const Eigen::Matrix2cd w = sign * v;
                const double a = std::atan2(std::abs(w(0, 1)), std::abs(w(0, 0)));
                const double q1 = std::arg(w(0, 0));
                const double q2 = std::arg(w(0, 1));
                if (std::abs(a - alpha) <= tol && wrapped_distance(q1, p1) <= tol && wrapped_distance(q2, p2) <= tol) {
                    return true;
                }
            }
        }
    }
    return false;
}

} // namespace testsupport
