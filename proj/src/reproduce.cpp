#include "gkpmagic/reproduce.hpp"

#include <cstdio>

#include "gkpmagic/analytic.hpp"
#include "gkpmagic/errors.hpp"
#include "gkpmagic/gates.hpp"
#include "gkpmagic/measures.hpp"

namespace gkpmagic::reproduce {

namespace {

TableRow row_from_state(std::string label, const PureState& psi) {
    TableRow row;
    row.label = std::move(label);
    row.qubits = psi.num_qubits();
    row.magic = gkp_magic_value(psi);
    row.t_count = bounds::t_count_from_magic(row.magic);
    return row;
}

TableRow circuit_row(std::string label, int n, const std::string& gates) {
    std::string text;
    for (int q = 1; q <= n; ++q) text += "H " + std::to_string(q) + "; ";
    text += gates;
    const Circuit circuit = parse_circuit(text, n);
    return row_from_state(std::move(label), apply_circuit(circuit, PureState::basis(n, 0)));
}

std::string controls(int k) {
    std::string out;
    for (int q = 1; q <= k; ++q) out += " " + std::to_string(q);
    return out;
}

void check_max_n(int max_n, int cap) {
    if (max_n < 1) throw InputError("max-n must be at least 1");
    if (max_n > cap) throw DimensionOverflow("max-n " + std::to_string(max_n) + " exceeds " + std::to_string(cap));
}

} // namespace

std::vector<TableRow> table1() {
    std::vector<TableRow> rows;
    rows.push_back(circuit_row("T_1", 1, "T 1"));
    rows.push_back(circuit_row("T_{1,2}", 2, "T 1; T 2"));
    rows.push_back(circuit_row("CS_{12}", 2, "CNS 1 2"));
    rows.push_back(circuit_row("T_{1,2,3}", 3, "T 1; T 2; T 3"));
    rows.push_back(circuit_row("CS_{12,13}", 3, "CNS 1 2; CNS 1 3"));
    rows.push_back(circuit_row("T_1 CS_{23}", 3, "T 1; CNS 2 3"));
    rows.push_back(circuit_row("T_1 CS_{12,13}", 3, "T 1; CNS 1 2; CNS 1 3"));
    for (int k = 2; k <= 4; ++k) {
        rows.push_back(circuit_row("C^" + std::to_string(k) + "Z", k + 1, "CNZ" + controls(k + 1)));
    }
    for (int k = 2; k <= 4; ++k) {
        rows.push_back(circuit_row("C^" + std::to_string(k) + "S", k + 1, "CNS" + controls(k + 1)));
    }
    return rows;
}

std::vector<TableRow> table2() {
    std::vector<TableRow> rows;
    const auto [u1, u2] = composite_u1_u2();
    rows.push_back(row_from_state("Toffoli", choi_state(toffoli())));
    rows.push_back(row_from_state("Fredkin", choi_state(fredkin())));
    for (int k = 3; k <= 5; ++k) {
        rows.push_back(row_from_state("C^" + std::to_string(k) + "X", choi_state(cnx(k + 1))));
    }
    rows.push_back(row_from_state("U_1", choi_state(u1)));
    rows.push_back(row_from_state("U_2", choi_state(u2)));
    return rows;
}

std::vector<SeriesPoint> fig1(const std::vector<double>& phis, int max_n) {
    check_max_n(max_n, 60);
    std::vector<SeriesPoint> points;
    for (double phi : phis) {
        for (int n = 1; n <= max_n; ++n) {
            SeriesPoint p{phi, n, analytic::mphi_magic(n, phi).magic, std::nullopt};
            if (n <= kNumericCap) {
                std::vector<int> all(static_cast<std::size_t>(n));
                for (int q = 1; q <= n; ++q) all[static_cast<std::size_t>(q - 1)] = q;
                Circuit c(n);
                for (int q : all) c.add(GateKind::H, {q});
                c.add(GateKind::MPhase, all, phi);
                p.numeric = gkp_magic_value(apply_circuit(c, PureState::basis(n, 0)));
            }
            points.push_back(p);
        }
    }
    return points;
}

std::vector<SeriesPoint> adder(int max_n) {
    check_max_n(max_n, 64);
    std::vector<SeriesPoint> points;
    for (int n = 1; n <= max_n; ++n) {
        SeriesPoint p{0.0, n, analytic::qft_inv_magic(n), std::nullopt};
        if (n <= kNumericCap) p.numeric = gkp_magic_value(qft_state(n, -1));
        points.push_back(p);
    }
    return points;
}

std::string format_t_count(const bounds::TCountBound& t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%ld (%.3f)", t.reported, t.ratio);
    return buf;
}

} // namespace gkpmagic::reproduce
