// measures.hpp
// Magic quantifiers built on the binary Pauli sum
//
//   S(rho) = sum_{i,j} | sum_k (-1)^{i.k} rho_{k, k xor j} | = 2^n D(rho)
//
// where D is the st-norm. For a pure state the GKP magic is log2 D, the
// cell Wigner negativity is pi^{-n/2} S, and the stabilizer Renyi entropy at
// alpha = 1/2 is 2 log2 D.
//
// All logarithms are base 2.
//
// The single-qubit cell negativity is sometimes written without the identity
// term, i.e. (2/sqrt(pi)) (|cos t| + |sin t cos p| + |sin t sin p|). That form
// does not reproduce the tabulated values (the |T> state among them); the
// general sum above, which keeps the identity term, is what is implemented.

#pragma once

#include <optional>
#include <string>

#include "gkpmagic/state.hpp"

namespace gkpmagic {

enum class Measure { GkpMagic, StNorm, CellNegativity, CellLogNegativity, TildeMagic, RenyiHalf, SumNegativity };
enum class EvalPath { Naive, Fwht, Analytic, Oracle };

std::string to_string(Measure m);
std::string to_string(EvalPath p);

struct MagicReport {
    Measure measure = Measure::GkpMagic;
    int n = 0;
    double value = 0.0;
    EvalPath path = EvalPath::Fwht;
    double elapsed_seconds = 0.0;
    // TildeMagic only: the value before clipping at zero.
    std::optional<double> unclipped;
};

// log2(2/sqrt(pi)): per-qubit cell log-negativity of a pure stabilizer state.
double stabilizer_cell_offset_bits();

// S(rho) = 2^n D(rho), the raw binary Pauli sum.
double pauli_abs_sum(const PureState& psi, EvalPath path = EvalPath::Fwht);
double pauli_abs_sum(const DensityOperator& rho, EvalPath path = EvalPath::Fwht);

// D = 2^{-n} sum_{i,j} |Tr(X^j Z^i rho)|. Naive costs 8^n, Fwht n 4^n.
double st_norm(const PureState& psi, EvalPath path = EvalPath::Fwht);
double st_norm(const DensityOperator& rho, EvalPath path = EvalPath::Naive);

// Pure states only; mixed inputs go through tilde_magic.
MagicReport gkp_magic(const PureState& psi, EvalPath path = EvalPath::Fwht);
double gkp_magic_value(const PureState& psi, EvalPath path = EvalPath::Fwht);

double cell_negativity(const DensityOperator& rho);
double cell_negativity(const PureState& psi);
double cell_log_negativity(const DensityOperator& rho);
double cell_log_negativity(const PureState& psi);

// max(0, L_C(rho) - n log2(2/sqrt(pi))). Not a monotone for mixed inputs:
// (I/2) (x) |H><H| is clipped to zero although |H> carries magic.
double tilde_magic(const DensityOperator& rho);
MagicReport tilde_magic_report(const DensityOperator& rho);

// Stabilizer Renyi entropy at alpha = 1/2, evaluated from the Pauli
// expectation values directly rather than through D.
double renyi_half(const PureState& psi);

// Single-qubit discrete Wigner sum negativity.
double discrete_wigner_sum_negativity(const DensityOperator& rho);
double discrete_wigner_sum_negativity(const PureState& psi);

// Dispatch used by the CLI. TildeMagic on a pure state equals GkpMagic.
MagicReport evaluate(Measure measure, const PureState& psi, EvalPath path = EvalPath::Fwht);

} // namespace gkpmagic
