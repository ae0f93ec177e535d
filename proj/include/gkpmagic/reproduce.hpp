// reproduce.hpp
// Row generators for the comparison tables and convergence series printed by
// the `reproduce` subcommand.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkpmagic/bounds.hpp"

namespace gkpmagic::reproduce {

struct TableRow {
    std::string label;
    int qubits = 0;  // size of the state whose magic is evaluated
    double magic = 0.0;
    bounds::TCountBound t_count;
};

// Diagonal gates applied to |+>^n: T, CS, T/CS products, C^kZ and C^kS for
// k = 2..4.
std::vector<TableRow> table1();

// Choi-state magic of Toffoli, Fredkin, C^3X..C^5X, U1 and U2.
std::vector<TableRow> table2();

struct SeriesPoint {
    double phi = 0.0;
    int n = 0;
    double magic = 0.0;
    // FWHT evaluation on the explicit state, present for n <= numeric_cap.
    std::optional<double> numeric;
};

inline constexpr int kNumericCap = 12;

// M_phi |+>^n for each phi and n = 1..max_n. max_n <= 60.
std::vector<SeriesPoint> fig1(const std::vector<double>& phis, int max_n);

// Inverse-QFT product states, n = 1..max_n. phi is unused (0).
std::vector<SeriesPoint> adder(int max_n);

// Formats a T-count as "4 (3.335)".
std::string format_t_count(const bounds::TCountBound& t);

} // namespace gkpmagic::reproduce
