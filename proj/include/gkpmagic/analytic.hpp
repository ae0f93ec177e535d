// analytic.hpp
// Closed-form GKP magic for the |H> state, multiply-controlled phase states
// M_phi |+>^n and inverse-QFT product states.

#pragma once

#include <array>
#include <string>

namespace gkpmagic::analytic {

struct PauliCase {
    std::string label;
    double magnitude = 0.0;  // |<M_phi| X^i Z^j |M_phi>|
    double count = 0.0;      // number of Pauli labels in the case
};

// The five classes of Pauli labels for |M_phi> = M_phi |+>^n:
//   i = 0, j = 0            magnitude 1
//   i = 0, j != 0           0
//   i != 0, j = 0           |1 + 2^-n [(e^{i phi} - 1) + (e^{-i phi} - 1)]|
//   i, j != 0, i.j even     2^-n |2 cos phi - 2|
//   i, j != 0, i.j odd      2^-n |2 sin phi|
// with i the X part. Counts sum to 4^n.
//
// The third magnitude is sometimes printed as 1 + 2^-n (e^{i phi} - 1) +
// (e^{-i phi} - 1); only the reading with 2^-n multiplying both brackets
// reproduces the tabulated values (C^2 Z = 0.907), so that is what is used.
struct MPhiCaseBreakdown {
    int n = 0;
    double phi = 0.0;
    std::array<PauliCase, 5> cases;

    double total_count() const;
    // 2^-n sum_case magnitude * count, i.e. the st-norm D.
    double st_norm() const;
};

struct MPhiResult {
    double magic = 0.0;
    MPhiCaseBreakdown breakdown;
};

// log2((1 + sqrt 2) / 2)
double h_state_magic();

MPhiResult mphi_magic(int n, double phi);

// Limit of mphi_magic(n, phi) for n -> infinity, evaluated at n = 30 where
// the remaining 2^-n corrections are below double-precision resolution of
// the log. Throws DegenerateAngle for phi = 0 mod 2 pi.
double mphi_asymptote(double phi);

// sum_{k=1..n} log2((1 + |sin(2 pi / 2^k)| + |cos(2 pi / 2^k)|) / sqrt(pi))
//   - n log2(2 / sqrt(pi))
double qft_inv_magic(int n);

} // namespace gkpmagic::analytic
