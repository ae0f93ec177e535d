// oracle.hpp
// Slow reference evaluations of the binary Pauli sum, kept independent of
// the production paths in measures.hpp. Test and cross-validation use only.

#pragma once

#include <vector>

#include "gkpmagic/state.hpp"

namespace gkpmagic::oracle {

// Phase-space lattice weights w_{l1,m1,...,ln,mn} obtained by peeling one
// qubit at a time off the density matrix, last qubit first.
//
// Indices l, m nominally run over 0..3, but the 4x4 single-qubit pattern
// repeats {1, Z, X, Y} up to sign, so every |w| appears with multiplicity
// 4^n. `range` = 2 stores the {0,1} x {0,1} quotient (the default); range = 4
// stores the full table. Entries are packed with (l1, m1) most significant,
// each index taking log2(range) bits.
struct WCoefficientTable {
    int n = 0;
    int range = 2;
    std::vector<Complex> w;

    // sum |w| over the stored table.
    double abs_sum() const;
    // Multiplicity of each quotient entry in the full 0..3 table.
    double multiplicity() const;
};

WCoefficientTable build_w_table(const DensityOperator& rho, int range = 2);

// sum |w| over the quotient table; equals 2^n D(rho). n <= 8.
double recursive_w_sum(const DensityOperator& rho);

// sum_{i,j} |Tr(X^j Z^i rho)| with each Pauli built as a dense matrix. n <= 6.
double dense_pauli_trace_sum(const DensityOperator& rho);

// Dense 2^n x 2^n matrix of X^j Z^i.
ComplexMatrix dense_pauli(int n, std::uint64_t z_bits, std::uint64_t x_bits);

} // namespace gkpmagic::oracle
