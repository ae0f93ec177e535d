#include "gkpmagic/oracle.hpp"

#include <cmath>
#include <string>

#include "gkpmagic/errors.hpp"

namespace gkpmagic::oracle {

namespace {

Complex ipow(int e) {
    switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

} // namespace

double WCoefficientTable::abs_sum() const {
    double s = 0.0;
    for (const auto& v : w) s += std::abs(v);
    return s;
}

double WCoefficientTable::multiplicity() const { return std::pow(4.0, n); }

WCoefficientTable build_w_table(const DensityOperator& rho, int range) {
    const int n = rho.num_qubits();
    if (n > 8) throw DimensionOverflow("recursive w table supports n <= 8, got " + std::to_string(n));
    if (range != 2 && range != 4) throw Unsupported("w index range must be 2 or 4");
    if (range == 4 && n > 4) throw DimensionOverflow("full-range w table supports n <= 4");

    const std::size_t pairs_per_qubit = static_cast<std::size_t>(range * range);

    // table[(u, v) prefix][tail]: prefix covers qubits 1..level, the tail
    // holds the (l, m) indices already assigned to qubits level+1..n.
    std::size_t prefix_dim = std::size_t{1} << n;
    std::size_t tail_count = 1;
    std::vector<Complex> table(prefix_dim * prefix_dim);
    for (std::size_t u = 0; u < prefix_dim; ++u) {
        for (std::size_t v = 0; v < prefix_dim; ++v) table[u * prefix_dim + v] = rho(u, v);
    }

    for (int level = n; level >= 1; --level) {
        const std::size_t new_prefix = prefix_dim / 2;
        const std::size_t new_tail = tail_count * pairs_per_qubit;
        std::vector<Complex> next(new_prefix * new_prefix * new_tail);
        auto at = [&](std::size_t u, std::size_t v, std::size_t t) -> const Complex& {
            return table[(u * prefix_dim + v) * tail_count + t];
        };
        for (std::size_t u = 0; u < new_prefix; ++u) {
            for (std::size_t v = 0; v < new_prefix; ++v) {
                const std::size_t u0 = 2 * u, u1 = 2 * u + 1;
                const std::size_t v0 = 2 * v, v1 = 2 * v + 1;
                for (int l = 0; l < range; ++l) {
                    for (int m = 0; m < range; ++m) {
                        const std::size_t head = static_cast<std::size_t>(l * range + m);
                        for (std::size_t t = 0; t < tail_count; ++t) {
                            Complex value;
                            switch (l) {
                            case 0: value = at(u0, v0, t) + ipow(2 * m) * at(u1, v1, t); break;
                            case 1: value = ipow(-m) * at(u0, v1, t) + ipow(m) * at(u1, v0, t); break;
                            case 2: value = ipow(2 * m) * at(u0, v0, t) + at(u1, v1, t); break;
                            default: value = ipow(m) * at(u0, v1, t) + ipow(-m) * at(u1, v0, t); break;
                            }
                            next[(u * new_prefix + v) * new_tail + head * tail_count + t] = value;
                        }
                    }
                }
            }
        }
        table = std::move(next);
        prefix_dim = new_prefix;
        tail_count = new_tail;
    }
    return WCoefficientTable{n, range, std::move(table)};
}

double recursive_w_sum(const DensityOperator& rho) { return build_w_table(rho, 2).abs_sum(); }

ComplexMatrix dense_pauli(int n, std::uint64_t z_bits, std::uint64_t x_bits) {
    Eigen::Matrix2cd X;
    X << 0, 1, 1, 0;
    Eigen::Matrix2cd Z;
    Z << 1, 0, 0, -1;
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
        Eigen::Matrix2cd local = Eigen::Matrix2cd::Identity();
        if (x_bits & qubit_mask(n, q)) local = local * X;
        if (z_bits & qubit_mask(n, q)) local = local * Z;
        ComplexMatrix grown(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) grown.block(2 * r, 2 * c, 2, 2) = out(r, c) * local;
        }
        out = std::move(grown);
    }
    return out;
}

double dense_pauli_trace_sum(const DensityOperator& rho) {
    const int n = rho.num_qubits();
    if (n > 6) throw DimensionOverflow("dense Pauli oracle supports n <= 6, got " + std::to_string(n));
    const std::uint64_t dim = std::uint64_t{1} << n;
    double total = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            const ComplexMatrix p = dense_pauli(n, i, j);
            total += std::abs((p * rho.matrix()).trace());
        }
    }
    return total;
}

} // namespace gkpmagic::oracle
