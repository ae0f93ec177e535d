#include "gkpmagic/state.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "gkpmagic/errors.hpp"

namespace gkpmagic {

namespace {

int log2_exact(std::size_t len) {
    if (len < 2 || !std::has_single_bit(len)) {
        throw NotPowerOfTwo("amplitude vector length " + std::to_string(len) +
                            " is not a power of two >= 2");
    }
    return std::countr_zero(len);
}

void check_qubits(int n) {
    if (n > kMaxQubits) {
        throw DimensionOverflow(std::to_string(n) + " qubits exceeds the cap of " +
                                std::to_string(kMaxQubits));
    }
}

double squared_norm(const ComplexVector& amps) {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

// Small kernels for the stabilizer orbit search.
void apply_h(ComplexVector& amps, int n, int q) {
    const auto m = qubit_mask(n, q);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t b = 0; b < amps.size(); ++b) {
        if (b & m) continue;
        const Complex a0 = amps[b];
        const Complex a1 = amps[b | m];
        amps[b] = r * (a0 + a1);
        amps[b | m] = r * (a0 - a1);
    }
}

void apply_s(ComplexVector& amps, int n, int q) {
    const auto m = qubit_mask(n, q);
    for (std::size_t b = 0; b < amps.size(); ++b) {
        if (b & m) amps[b] *= Complex{0.0, 1.0};
    }
}

void apply_cnot(ComplexVector& amps, int n, int control, int target) {
    const auto mc = qubit_mask(n, control);
    const auto mt = qubit_mask(n, target);
    for (std::size_t b = 0; b < amps.size(); ++b) {
        if ((b & mc) && !(b & mt)) std::swap(amps[b], amps[b | mt]);
    }
}

} // namespace

PureState::PureState(ComplexVector amps) : n_(log2_exact(amps.size())), amps_(std::move(amps)) {
    check_qubits(n_);
    const double nrm = std::sqrt(squared_norm(amps_));
    if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "state norm " << nrm << " deviates from 1 by more than " << kNormTolerance;
        throw NotNormalized(msg.str());
    }
    for (auto& a : amps_) a /= nrm;
}

PureState::PureState(Unchecked, int n, ComplexVector amps) : n_(n), amps_(std::move(amps)) {}

PureState make_unchecked_state(int n, ComplexVector amps) {
    return PureState(PureState::Unchecked{}, n, std::move(amps));
}

PureState new_pure_state(ComplexVector amps) { return PureState(std::move(amps)); }

PureState PureState::basis(int n, std::uint64_t index) {
    if (n < 1) throw QubitOutOfRange("basis state needs at least one qubit");
    check_qubits(n);
    ComplexVector amps(std::size_t{1} << n);
    if (index >= amps.size()) throw QubitOutOfRange("basis index out of range");
    amps[index] = 1.0;
    return make_unchecked_state(n, std::move(amps));
}

PureState PureState::plus(int n) {
    if (n < 1) throw QubitOutOfRange("plus state needs at least one qubit");
    check_qubits(n);
    const std::size_t dim = std::size_t{1} << n;
    return make_unchecked_state(n, ComplexVector(dim, Complex{1.0 / std::sqrt(double(dim)), 0.0}));
}

double PureState::norm() const { return std::sqrt(squared_norm(amps_)); }

DensityOperator::DensityOperator(ComplexMatrix mat) {
    if (mat.rows() != mat.cols()) throw DimensionMismatch("density matrix is not square");
    n_ = log2_exact(static_cast<std::size_t>(mat.rows()));
    check_qubits(n_);
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        for (Eigen::Index c = 0; c < mat.cols(); ++c) {
            if (std::abs(mat(r, c) - std::conj(mat(c, r))) > 1e-12) {
                throw InputError("density matrix is not Hermitian");
            }
        }
    }
    if (std::abs(mat.trace() - Complex{1.0, 0.0}) > 1e-10) {
        throw NotNormalized("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw InputError("density matrix has a negative eigenvalue");
    }
    mat_ = std::move(mat);
}

DensityOperator::DensityOperator(Unchecked, ComplexMatrix mat)
    : n_(std::countr_zero(static_cast<std::size_t>(mat.rows()))), mat_(std::move(mat)) {}

DensityOperator make_unchecked_density(ComplexMatrix mat) {
    return DensityOperator(DensityOperator::Unchecked{}, std::move(mat));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const auto amps = psi.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return make_unchecked_density(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int n) {
    check_qubits(n);
    const auto dim = Eigen::Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim) / double(dim);
    return make_unchecked_density(std::move(m));
}

PauliLabel::PauliLabel(int n_qubits, std::uint64_t z_bits, std::uint64_t x_bits)
    : i(z_bits), j(x_bits), n(n_qubits) {
    const std::uint64_t limit = n_qubits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
    if ((z_bits & ~limit) || (x_bits & ~limit)) {
        throw DimensionMismatch("Pauli label has bits above position n");
    }
}

PureState tensor(const PureState& a, const PureState& b) {
    const int n = a.num_qubits() + b.num_qubits();
    check_qubits(n);
    ComplexVector amps(a.dim() * b.dim());
    for (std::size_t x = 0; x < a.dim(); ++x) {
        for (std::size_t y = 0; y < b.dim(); ++y) amps[x * b.dim() + y] = a[x] * b[y];
    }
    return make_unchecked_state(n, std::move(amps));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    check_qubits(a.num_qubits() + b.num_qubits());
    const auto da = static_cast<Eigen::Index>(a.dim());
    const auto db = static_cast<Eigen::Index>(b.dim());
    ComplexMatrix m(da * db, da * db);
    for (Eigen::Index r = 0; r < da; ++r) {
        for (Eigen::Index c = 0; c < da; ++c) m.block(r * db, c * db, db, db) = a.matrix()(r, c) * b.matrix();
    }
    return make_unchecked_density(std::move(m));
}

Complex pauli_expectation(const PureState& psi, const PauliLabel& label) {
    if (label.n != psi.num_qubits()) throw DimensionMismatch("Pauli label width differs from state");
    // rho_{k, k^j} = c_k conj(c_{k^j})
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        const Complex term = psi[k] * std::conj(psi[k ^ label.j]);
        sum += (std::popcount(k & label.i) & 1) ? -term : term;
    }
    return sum;
}

Complex pauli_expectation(const DensityOperator& rho, const PauliLabel& label) {
    if (label.n != rho.num_qubits()) throw DimensionMismatch("Pauli label width differs from state");
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < rho.dim(); ++k) {
        const Complex term = rho(k, k ^ label.j);
        sum += (std::popcount(k & label.i) & 1) ? -term : term;
    }
    return sum;
}

std::array<MeasurementRecord, 2> measure_z(const PureState& psi, int qubit) {
    const int n = psi.num_qubits();
    if (qubit < 1 || qubit > n) {
        throw QubitOutOfRange("qubit " + std::to_string(qubit) + " outside 1.." + std::to_string(n));
    }
    const std::size_t low_bits = std::size_t{1} << (n - qubit);
    const std::size_t half = psi.dim() / 2;

    std::array<MeasurementRecord, 2> out;
    for (int outcome = 0; outcome < 2; ++outcome) {
        ComplexVector post(half);
        double p = 0.0;
        for (std::size_t r = 0; r < half; ++r) {
            // Reinsert the measured bit at its position.
            const std::size_t high = r / low_bits;
            const std::size_t low = r % low_bits;
            const std::size_t full = (high * 2 + outcome) * low_bits + low;
            post[r] = psi[full];
            p += std::norm(post[r]);
        }
        out[outcome].outcome = outcome;
        out[outcome].probability = p;
        if (p > 0.0) {
            const double s = 1.0 / std::sqrt(p);
            for (auto& a : post) a *= s;
            out[outcome].post_state = make_unchecked_state(n - 1, std::move(post));
        }
    }
    return out;
}

std::vector<PureState> enumerate_stabilizer_states(int n) {
    if (n < 1 || n > 2) throw Unsupported("exhaustive stabilizer enumeration supports n = 1 or 2");

    std::vector<PureState> orbit{PureState::basis(n, 0)};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        std::vector<ComplexVector> images;
        for (int q = 1; q <= n; ++q) {
            ComplexVector h(orbit[head].amplitudes().begin(), orbit[head].amplitudes().end());
            apply_h(h, n, q);
            images.push_back(std::move(h));
            ComplexVector s(orbit[head].amplitudes().begin(), orbit[head].amplitudes().end());
            apply_s(s, n, q);
            images.push_back(std::move(s));
        }
        for (int c = 1; c <= n; ++c) {
            for (int t = 1; t <= n; ++t) {
                if (c == t) continue;
                ComplexVector v(orbit[head].amplitudes().begin(), orbit[head].amplitudes().end());
                apply_cnot(v, n, c, t);
                images.push_back(std::move(v));
            }
        }
        for (auto& img : images) {
            PureState candidate = make_unchecked_state(n, std::move(img));
            bool seen = false;
            for (const auto& s : orbit) {
                if (equal_up_to_phase(s, candidate)) {
                    seen = true;
                    break;
                }
            }
            if (!seen) orbit.push_back(std::move(candidate));
        }
    }
    return orbit;
}

PureState random_haar_state(int n, std::uint64_t seed) {
    if (n < 1) throw QubitOutOfRange("random state needs at least one qubit");
    check_qubits(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector amps(std::size_t{1} << n);
    for (auto& a : amps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = Complex{re, im};
    }
    const double nrm = std::sqrt(squared_norm(amps));
    for (auto& a : amps) a /= nrm;
    return make_unchecked_state(n, std::move(amps));
}

DensityOperator random_mixed_state(int n, int terms, std::uint64_t seed) {
    if (terms < 1) throw InputError("mixture needs at least one term");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(static_cast<std::size_t>(terms));
    double total = 0.0;
    for (auto& w : weights) {
        w = expo(rng);
        total += w;
    }
    const auto dim = Eigen::Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int t = 0; t < terms; ++t) {
        const auto psi = random_haar_state(n, rng());
        m += (weights[static_cast<std::size_t>(t)] / total) * DensityOperator::from_pure(psi).matrix();
    }
    // Symmetrize away rounding so the Hermitian check is exact.
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    h /= h.trace().real();
    return make_unchecked_density(std::move(h));
}

DensityOperator partial_trace_last(const DensityOperator& rho, int traced) {
    const int n = rho.num_qubits();
    if (traced < 0 || traced > n) throw QubitOutOfRange("cannot trace out more qubits than present");
    const auto keep_dim = Eigen::Index{1} << (n - traced);
    const auto env_dim = Eigen::Index{1} << traced;
    ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
    for (Eigen::Index a = 0; a < keep_dim; ++a) {
        for (Eigen::Index b = 0; b < keep_dim; ++b) {
            Complex s{0.0, 0.0};
            for (Eigen::Index c = 0; c < env_dim; ++c) s += rho.matrix()(a * env_dim + c, b * env_dim + c);
            out(a, b) = s;
        }
    }
    return make_unchecked_density(std::move(out));
}

double overlap_magnitude(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("states have different dimensions");
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) s += std::conj(a[k]) * b[k];
    return std::abs(s);
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
    return a.dim() == b.dim() && overlap_magnitude(a, b) >= 1.0 - tol;
}

void write_state(std::ostream& out, const PureState& psi) {
    out << "n=" << psi.num_qubits() << '\n';
    out << std::setprecision(17);
    for (const auto& a : psi.amplitudes()) out << a.real() << ' ' << a.imag() << '\n';
}

PureState read_state(std::istream& in) {
    std::string line;
    while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    if (line.rfind("n=", 0) != 0) throw ParseError("state file must start with 'n=<int>'");
    int n = 0;
    try {
        n = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        throw ParseError("malformed qubit count line: " + line);
    }
    if (n < 1) throw ParseError("qubit count must be positive");
    check_qubits(n);
    const std::size_t dim = std::size_t{1} << n;
    ComplexVector amps;
    amps.reserve(dim);
    while (amps.size() < dim && std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        double re = 0.0;
        double im = 0.0;
        if (!(row >> re >> im)) throw ParseError("malformed amplitude line: " + line);
        amps.emplace_back(re, im);
    }
    if (amps.size() != dim) {
        throw ParseError("expected " + std::to_string(dim) + " amplitudes, got " + std::to_string(amps.size()));
    }
    return PureState(std::move(amps));
}

PureState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file " + path);
    return read_state(in);
}

} // namespace gkpmagic
