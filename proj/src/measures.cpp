#include "gkpmagic/measures.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include "gkpmagic/errors.hpp"
#include "gkpmagic/fwht.hpp"
#include "gkpmagic/parallel.hpp"

namespace gkpmagic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool odd_parity(std::size_t a, std::size_t b) { return std::popcount(a & b) & 1; }

// Direct triple sum. `element(k, j)` returns rho_{k, k xor j}.
template <typename Element>
double naive_abs_sum(std::size_t dim, Element element) {
    std::vector<double> per_j(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < dim; ++i) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) {
                const Complex e = element(k, j);
                s += odd_parity(i, k) ? -e : e;
            }
            acc.add(std::abs(s));
        }
        per_j[j] = acc.value();
    }
    return pairwise_sum(per_j);
}

// One length-dim butterfly per j; the j-loop is spread over workers and the
// per-j partial sums are reduced in a fixed order.
template <typename Element>
double fwht_abs_sum(std::size_t dim, Element element) {
    std::vector<double> per_j(dim);
    parallel_for(dim, [&](std::size_t j) {
        thread_local std::vector<Complex> buffer;
        buffer.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) buffer[k] = element(k, j);
        fwht_inplace(std::span<Complex>(buffer));
        CompensatedSum acc;
        for (const auto& v : buffer) acc.add(std::abs(v));
        per_j[j] = acc.value();
    });
    return pairwise_sum(per_j);
}

double cell_scale(int n) { return std::pow(std::numbers::pi, -0.5 * n); }

} // namespace

std::string to_string(Measure m) {
    switch (m) {
    case Measure::GkpMagic: return "gkp";
    case Measure::StNorm: return "stnorm";
    case Measure::CellNegativity: return "cellneg";
    case Measure::CellLogNegativity: return "celllogneg";
    case Measure::TildeMagic: return "tilde";
    case Measure::RenyiHalf: return "renyi";
    case Measure::SumNegativity: return "sumneg";
    }
    return "unknown";
}

std::string to_string(EvalPath p) {
    switch (p) {
    case EvalPath::Naive: return "naive";
    case EvalPath::Fwht: return "fwht";
    case EvalPath::Analytic: return "analytic";
    case EvalPath::Oracle: return "oracle";
    }
    return "unknown";
}

double stabilizer_cell_offset_bits() { return std::log2(2.0 / std::sqrt(std::numbers::pi)); }

double pauli_abs_sum(const PureState& psi, EvalPath path) {
    const auto amps = psi.amplitudes();
    // rho_{k, k^j} = c_k conj(c_{k^j}); the modulus of each transformed
    // entry is the same under complex conjugation, so either order works.
    auto element = [amps](std::size_t k, std::size_t j) { return std::conj(amps[k]) * amps[k ^ j]; };
    switch (path) {
    case EvalPath::Naive: return naive_abs_sum(psi.dim(), element);
    case EvalPath::Fwht: return fwht_abs_sum(psi.dim(), element);
    default: throw Unsupported("pauli_abs_sum supports the naive and fwht paths");
    }
}

double pauli_abs_sum(const DensityOperator& rho, EvalPath path) {
    const auto& m = rho.matrix();
    auto element = [&m](std::size_t k, std::size_t j) {
        return m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k ^ j));
    };
    switch (path) {
    case EvalPath::Naive: return naive_abs_sum(rho.dim(), element);
    case EvalPath::Fwht: return fwht_abs_sum(rho.dim(), element);
    default: throw Unsupported("pauli_abs_sum supports the naive and fwht paths");
    }
}

double st_norm(const PureState& psi, EvalPath path) {
    return pauli_abs_sum(psi, path) / static_cast<double>(psi.dim());
}

double st_norm(const DensityOperator& rho, EvalPath path) {
    return pauli_abs_sum(rho, path) / static_cast<double>(rho.dim());
}

MagicReport gkp_magic(const PureState& psi, EvalPath path) {
    const auto start = Clock::now();
    MagicReport r;
    r.measure = Measure::GkpMagic;
    r.n = psi.num_qubits();
    r.path = path;
    r.value = std::log2(st_norm(psi, path));
    r.elapsed_seconds = seconds_since(start);
    return r;
}

double gkp_magic_value(const PureState& psi, EvalPath path) { return std::log2(st_norm(psi, path)); }

double cell_negativity(const DensityOperator& rho) {
    return cell_scale(rho.num_qubits()) * pauli_abs_sum(rho, EvalPath::Fwht);
}

double cell_negativity(const PureState& psi) {
    return cell_scale(psi.num_qubits()) * pauli_abs_sum(psi, EvalPath::Fwht);
}

double cell_log_negativity(const DensityOperator& rho) { return std::log2(cell_negativity(rho)); }

double cell_log_negativity(const PureState& psi) { return std::log2(cell_negativity(psi)); }

MagicReport tilde_magic_report(const DensityOperator& rho) {
    const auto start = Clock::now();
    MagicReport r;
    r.measure = Measure::TildeMagic;
    r.n = rho.num_qubits();
    r.path = EvalPath::Fwht;
    const double raw = cell_log_negativity(rho) - rho.num_qubits() * stabilizer_cell_offset_bits();
    r.unclipped = raw;
    r.value = raw > 0.0 ? raw : 0.0;
    r.elapsed_seconds = seconds_since(start);
    return r;
}

double tilde_magic(const DensityOperator& rho) { return tilde_magic_report(rho).value; }

double renyi_half(const PureState& psi) {
    const int n = psi.num_qubits();
    const std::size_t dim = psi.dim();
    const double alpha = 0.5;
    // M_alpha = (1-alpha)^{-1} log2( sum_P 2^{-alpha n} |<P>|^{2 alpha} ) - log2(2^n)
    CompensatedSum acc;
    const double weight = std::pow(2.0, -alpha * n);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double expectation = std::abs(pauli_expectation(psi, PauliLabel(n, i, j)));
            acc.add(weight * std::pow(expectation, 2.0 * alpha));
        }
    }
    return std::log2(acc.value()) / (1.0 - alpha) - n;
}

double discrete_wigner_sum_negativity(const DensityOperator& rho) {
    if (rho.num_qubits() != 1) throw Unsupported("sum negativity is defined here for a single qubit only");
    using M2 = Eigen::Matrix2cd;
    const Complex I{0.0, 1.0};
    M2 X;
    X << 0, 1, 1, 0;
    M2 Z;
    Z << 1, 0, 0, -1;
    // Weyl operators W_{l,m} = i^{l m} Z^m X^l
    auto weyl = [&](int l, int m) {
        M2 w = M2::Identity();
        if (m) w = w * Z;
        if (l) w = w * X;
        return (l && m ? I : Complex{1.0, 0.0}) * w;
    };
    M2 a0 = M2::Zero();
    for (int l = 0; l < 2; ++l) {
        for (int m = 0; m < 2; ++m) a0 += weyl(l, m);
    }
    a0 *= 0.5;
    const M2 r = rho.matrix();
    double abs_total = 0.0;
    for (int l = 0; l < 2; ++l) {
        for (int m = 0; m < 2; ++m) {
            const M2 w = weyl(l, m);
            const M2 a = w * a0 * w.adjoint();
            const Complex c = 0.5 * (a * r).trace();
            abs_total += std::abs(c.real());
        }
    }
    return 0.5 * (abs_total - 1.0);
}

double discrete_wigner_sum_negativity(const PureState& psi) {
    return discrete_wigner_sum_negativity(DensityOperator::from_pure(psi));
}

MagicReport evaluate(Measure measure, const PureState& psi, EvalPath path) {
    const auto start = Clock::now();
    MagicReport r;
    r.measure = measure;
    r.n = psi.num_qubits();
    r.path = path;
    switch (measure) {
    case Measure::GkpMagic: r.value = gkp_magic_value(psi, path); break;
    case Measure::StNorm: r.value = st_norm(psi, path); break;
    case Measure::CellNegativity:
        r.value = cell_scale(psi.num_qubits()) * pauli_abs_sum(psi, path);
        break;
    case Measure::CellLogNegativity:
        r.value = std::log2(cell_scale(psi.num_qubits()) * pauli_abs_sum(psi, path));
        break;
    case Measure::TildeMagic: {
        const double raw = gkp_magic_value(psi, path);
        r.unclipped = raw;
        r.value = raw > 0.0 ? raw : 0.0;
        break;
    }
    case Measure::RenyiHalf:
        r.value = renyi_half(psi);
        r.path = EvalPath::Naive;
        break;
    case Measure::SumNegativity:
        r.value = discrete_wigner_sum_negativity(psi);
        r.path = EvalPath::Naive;
        break;
    }
    r.elapsed_seconds = seconds_since(start);
    return r;
}

} // namespace gkpmagic
