#include "gkpmagic/bounds.hpp"

#include <cmath>

#include "gkpmagic/analytic.hpp"
#include "gkpmagic/errors.hpp"
#include "gkpmagic/measures.hpp"

namespace gkpmagic::bounds {

namespace {

void check_common(double magic_in, double magic_out, int m) {
    if (!std::isfinite(magic_in) || !std::isfinite(magic_out)) throw InputError("magic values must be finite");
    if (magic_out < 0.0) throw InputError("output magic must be non-negative");
    if (m < 1) throw InputError("m must be at least 1");
}

} // namespace

long ceil_with_slack(double x) { return static_cast<long>(std::ceil(x - kCeilingSlack)); }

ConversionBound deterministic_bound(double magic_in, double magic_out, int m) {
    check_common(magic_in, magic_out, m);
    if (magic_in <= 1e-12) throw ZeroInputMagic("stabilizer inputs cannot be converted into magic states");
    ConversionBound b;
    b.kind = BoundKind::Deterministic;
    b.inputs = {magic_in, magic_out, m, std::nullopt, std::nullopt, std::nullopt};
    b.k_min = m * magic_out / magic_in;
    b.k_min_int = ceil_with_slack(b.k_min);
    return b;
}

ConversionBound catalyzed_deterministic_bound(double magic_in, double magic_out, int m, double catalyst_magic) {
    check_common(magic_in, magic_out, m);
    if (catalyst_magic < 0.0) throw InputError("catalyst magic must be non-negative");
    if (magic_in <= 1e-12) throw ZeroInputMagic("stabilizer inputs cannot be converted into magic states");
    // k M_in + M_cat >= m M_out + M_cat
    ConversionBound b;
    b.kind = BoundKind::Deterministic;
    b.inputs = {magic_in, magic_out, m, std::nullopt, std::nullopt, std::nullopt};
    b.k_min = ((m * magic_out + catalyst_magic) - catalyst_magic) / magic_in;
    b.k_min_int = ceil_with_slack(b.k_min);
    return b;
}

ConversionBound probabilistic_bound(double magic_in, double magic_out, int m, double p, int r, int s) {
    check_common(magic_in, magic_out, m);
    if (!(p > 0.0 && p <= 1.0)) throw InvalidProbability("success probability must lie in (0, 1]");
    if (r < 1 || s < 1) throw InputError("qubit counts r and s must be at least 1");
    if (magic_in < 0.0) throw InputError("input magic must be non-negative");
    const double offset = stabilizer_cell_offset_bits();
    ConversionBound b;
    b.kind = BoundKind::Probabilistic;
    b.inputs = {magic_in, magic_out, m, p, r, s};
    b.k_min = m * (magic_out + s * offset) / (magic_in + r * offset);
    b.k_min_int = ceil_with_slack(b.k_min);
    return b;
}

BoundComparison compare_bounds_p1(double magic_in, double magic_out, int m, int r, int s) {
    BoundComparison cmp;
    cmp.deterministic = deterministic_bound(magic_in, magic_out, m);
    cmp.probabilistic = probabilistic_bound(magic_in, magic_out, m, 1.0, r, s);
    cmp.probabilistic.kind = BoundKind::CellNegativity;
    const double k = cmp.deterministic.k_min;
    cmp.qubits_non_increasing = k * r >= static_cast<double>(m) * s;
    const double tol = 1e-12 * std::max(1.0, cmp.deterministic.k_min);
    cmp.ordering_holds = !cmp.qubits_non_increasing || cmp.deterministic.k_min + tol >= cmp.probabilistic.k_min;
    return cmp;
}

TCountBound t_count_from_magic(double target_magic, std::optional<double> unit_magic) {
    TCountBound t;
    t.target_magic = target_magic;
    t.unit_magic = unit_magic.value_or(analytic::h_state_magic());
    if (t.unit_magic <= 1e-12) throw ZeroInputMagic("unit resource state carries no magic");
    t.ratio = target_magic / t.unit_magic;
    t.m_floor = static_cast<long>(std::floor(t.ratio));
    t.reported = ceil_with_slack(t.ratio);
    return t;
}

TCountBound t_count_bound(const PureState& target) { return t_count_from_magic(gkp_magic_value(target)); }

TCountBound t_count_bound(const GateUnitary& target, GateRoute route) {
    if (route == GateRoute::Auto) route = target.is_diagonal() ? GateRoute::PlusState : GateRoute::Choi;
    const PureState state = route == GateRoute::PlusState ? plus_state_image(target) : choi_state(target);
    return t_count_from_magic(gkp_magic_value(state));
}

} // namespace gkpmagic::bounds
