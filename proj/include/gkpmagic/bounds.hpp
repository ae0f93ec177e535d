// bounds.hpp
// Resource lower bounds from the additivity and monotonicity of the GKP
// magic: copies needed for state conversion, and U-counts / T-counts.
//
// These are lower bounds only. In particular the T-count reported for
// C^{n-1}X says nothing about optimality of any particular gadget.

#pragma once

#include <optional>

#include "gkpmagic/gates.hpp"
#include "gkpmagic/state.hpp"

namespace gkpmagic::bounds {

enum class BoundKind { Deterministic, Probabilistic, CellNegativity };

// Slack applied before rounding up so 4.000000001 from rounding noise
// reports 4.
inline constexpr double kCeilingSlack = 1e-9;

long ceil_with_slack(double x);

struct ConversionInputs {
    double magic_in = 0.0;
    double magic_out = 0.0;
    int m = 1;
    std::optional<double> p;
    std::optional<int> r;
    std::optional<int> s;
};

struct ConversionBound {
    double k_min = 0.0;
    long k_min_int = 0;
    ConversionInputs inputs;
    BoundKind kind = BoundKind::Deterministic;
};

// k >= m M(phi) / M(psi) for a deterministic stabilizer protocol turning k
// copies of psi into m copies of phi.
ConversionBound deterministic_bound(double magic_in, double magic_out, int m);

// Same bound with catalyst magic added to both sides of the conversion.
// Additivity cancels it, so the result equals deterministic_bound.
ConversionBound catalyzed_deterministic_bound(double magic_in, double magic_out, int m, double catalyst_magic);

// E[n] = k / p >= m (M(phi) + log2 c(s)) / (M(psi) + log2 c(r)),
// c(n) = (2/sqrt(pi))^n, for r-qubit inputs and s-qubit outputs.
ConversionBound probabilistic_bound(double magic_in, double magic_out, int m, double p, int r, int s);

struct BoundComparison {
    ConversionBound deterministic;
    ConversionBound probabilistic;  // p = 1
    // k r >= m s with k the deterministic k_min: at least as many input
    // qubits as output qubits.
    bool qubits_non_increasing = false;
    // deterministic >= probabilistic whenever qubits_non_increasing.
    bool ordering_holds = true;
};

BoundComparison compare_bounds_p1(double magic_in, double magic_out, int m, int r, int s);

struct TCountBound {
    double target_magic = 0.0;
    double unit_magic = 0.0;
    double ratio = 0.0;
    long m_floor = 0;
    long reported = 0;
};

enum class GateRoute { Auto, PlusState, Choi };

// ceil(M(target) / M(unit)). unit defaults to the |H> state.
TCountBound t_count_from_magic(double target_magic, std::optional<double> unit_magic = std::nullopt);
TCountBound t_count_bound(const PureState& target);
// Diagonal gates go through U|+>^n, everything else through the Choi state
// (a looser bound outside the diagonal third-level gates).
TCountBound t_count_bound(const GateUnitary& target, GateRoute route = GateRoute::Auto);

} // namespace gkpmagic::bounds
