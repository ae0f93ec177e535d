#include "gkpmagic/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "gkpmagic/errors.hpp"

namespace gkpmagic {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double phi) {
    double w = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::pair<int, int> arity(GateKind kind) {
    switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP: return {2, 2};
    case GateKind::CSWAP: return {3, 3};
    case GateKind::MPhase:
    case GateKind::CnX:
    case GateKind::CnZ:
    case GateKind::CnS: return {1, kMaxQubits};
    default: return {1, 1};
    }
}

using Mat2 = std::array<Complex, 4>;

Mat2 single_qubit_matrix(GateKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    switch (kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1.0, 0.0, 0.0, i};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -i};
    case GateKind::T: return {1.0, 0.0, 0.0, std::polar(1.0, kPi / 4)};
    case GateKind::Tdg: return {1.0, 0.0, 0.0, std::polar(1.0, -kPi / 4)};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -i, i, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    default: throw Unsupported("not a single-qubit gate: " + to_string(kind));
    }
}

void apply_single(ComplexVector& amps, int n, int q, const Mat2& m) {
    const auto mask = qubit_mask(n, q);
    for (std::size_t b = 0; b < amps.size(); ++b) {
        if (b & mask) continue;
        const Complex a0 = amps[b];
        const Complex a1 = amps[b | mask];
        amps[b] = m[0] * a0 + m[1] * a1;
        amps[b | mask] = m[2] * a0 + m[3] * a1;
    }
}

std::uint64_t mask_of(int n, const std::vector<int>& qubits, std::size_t count) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < count; ++k) m |= qubit_mask(n, qubits[k]);
    return m;
}

void apply_op(ComplexVector& amps, int n, const GateOp& op) {
    const auto& t = op.targets;
    switch (op.kind) {
    case GateKind::CNOT:
    case GateKind::CnX: {
        const auto controls = mask_of(n, t, t.size() - 1);
        const auto target = qubit_mask(n, t.back());
        for (std::size_t b = 0; b < amps.size(); ++b) {
            if ((b & controls) == controls && !(b & target)) std::swap(amps[b], amps[b | target]);
        }
        return;
    }
    case GateKind::CZ:
    case GateKind::CnZ:
    case GateKind::CnS:
    case GateKind::MPhase: {
        double phi = op.angle;
        if (op.kind == GateKind::CZ || op.kind == GateKind::CnZ) phi = kPi;
        if (op.kind == GateKind::CnS) phi = kPi / 2;
        const Complex phase = std::polar(1.0, phi);
        const auto all = mask_of(n, t, t.size());
        for (std::size_t b = 0; b < amps.size(); ++b) {
            if ((b & all) == all) amps[b] *= phase;
        }
        return;
    }
    case GateKind::SWAP:
    case GateKind::CSWAP: {
        const std::size_t offset = op.kind == GateKind::CSWAP ? 1 : 0;
        const auto controls = mask_of(n, t, offset);
        const auto ma = qubit_mask(n, t[offset]);
        const auto mb = qubit_mask(n, t[offset + 1]);
        for (std::size_t b = 0; b < amps.size(); ++b) {
            if ((b & controls) == controls && (b & ma) && !(b & mb)) std::swap(amps[b], amps[(b ^ ma) | mb]);
        }
        return;
    }
    default: apply_single(amps, n, t.front(), single_qubit_matrix(op.kind));
    }
}

int parse_int(const std::string& token, std::string_view context) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer in '" + std::string(context) + "', got '" + token + "'");
    }
}

double parse_double(const std::string& token, std::string_view context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an angle in '" + std::string(context) + "', got '" + token + "'");
    }
}

GateKind parse_kind(const std::string& name) {
    static const std::vector<std::pair<std::string, GateKind>> table = {
        {"H", GateKind::H},         {"S", GateKind::S},         {"SDG", GateKind::Sdg},
        {"T", GateKind::T},         {"TDG", GateKind::Tdg},     {"X", GateKind::X},
        {"Y", GateKind::Y},         {"Z", GateKind::Z},         {"CNOT", GateKind::CNOT},
        {"CX", GateKind::CNOT},     {"CZ", GateKind::CZ},       {"SWAP", GateKind::SWAP},
        {"CSWAP", GateKind::CSWAP}, {"FREDKIN", GateKind::CSWAP}, {"MPHASE", GateKind::MPhase},
        {"CNX", GateKind::CnX},     {"CCX", GateKind::CnX},     {"TOFFOLI", GateKind::CnX},
        {"CNZ", GateKind::CnZ},     {"CCZ", GateKind::CnZ},     {"CNS", GateKind::CnS},
    };
    for (const auto& [key, kind] : table) {
        if (key == name) return kind;
    }
    throw ParseError("unknown gate '" + name + "'");
}

} // namespace

std::string to_string(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "TDG";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::CSWAP: return "CSWAP";
    case GateKind::MPhase: return "MPHASE";
    case GateKind::CnX: return "CNX";
    case GateKind::CnZ: return "CNZ";
    case GateKind::CnS: return "CNS";
    }
    return "?";
}

Circuit::Circuit(int n) : n_(n) {
    if (n < 1) throw QubitOutOfRange("circuit needs at least one qubit");
    if (n > kMaxQubits) throw DimensionOverflow("circuit on " + std::to_string(n) + " qubits exceeds the cap");
}

Circuit& Circuit::add(GateKind kind, std::vector<int> targets, double angle) {
    const auto [lo, hi] = arity(kind);
    const int count = static_cast<int>(targets.size());
    if (count < lo || count > hi) {
        throw ParseError(to_string(kind) + " takes " + std::to_string(lo) +
                         (lo == hi ? "" : "+") + " targets, got " + std::to_string(count));
    }
    std::set<int> seen;
    for (int q : targets) {
        if (q < 1 || q > n_) throw QubitOutOfRange("target " + std::to_string(q) + " outside 1.." + std::to_string(n_));
        if (!seen.insert(q).second) throw ParseError("repeated target " + std::to_string(q) + " in " + to_string(kind));
    }
    ops_.push_back(GateOp{kind, std::move(targets), kind == GateKind::MPhase ? wrap_angle(angle) : 0.0});
    return *this;
}

Circuit parse_circuit(std::string_view text, int n) {
    struct Parsed {
        GateKind kind;
        std::vector<int> targets;
        double angle;
    };
    std::vector<Parsed> parsed;
    int max_target = 0;
    std::string source(text);
    std::istringstream ops(source);
    std::string op_text;
    while (std::getline(ops, op_text, ';')) {
        std::istringstream tokens(op_text);
        std::vector<std::string> words;
        for (std::string w; tokens >> w;) words.push_back(w);
        if (words.empty()) continue;
        Parsed p{parse_kind(upper(words[0])), {}, 0.0};
        std::size_t first_target = 1;
        if (p.kind == GateKind::MPhase) {
            if (words.size() < 2) throw ParseError("MPHASE needs an angle: '" + op_text + "'");
            p.angle = parse_double(words[1], op_text);
            first_target = 2;
        }
        for (std::size_t w = first_target; w < words.size(); ++w) {
            const int q = parse_int(words[w], op_text);
            p.targets.push_back(q);
            max_target = std::max(max_target, q);
        }
        parsed.push_back(std::move(p));
    }
    if (parsed.empty()) throw ParseError("empty circuit");
    Circuit circuit(n > 0 ? n : std::max(1, max_target));
    for (auto& p : parsed) circuit.add(p.kind, std::move(p.targets), p.angle);
    return circuit;
}

void apply_circuit(const Circuit& circuit, PureState& psi) {
    if (circuit.num_qubits() != psi.num_qubits()) throw DimensionMismatch("circuit and state sizes differ");
    auto& amps = psi.mutable_amplitudes();
    for (const auto& op : circuit.ops()) apply_op(amps, circuit.num_qubits(), op);
}

PureState apply_circuit(const Circuit& circuit, const PureState& psi) {
    PureState out = psi;
    apply_circuit(circuit, out);
    return out;
}

GateUnitary::GateUnitary(ComplexMatrix mat) {
    if (mat.rows() != mat.cols() || mat.rows() < 2 || (mat.rows() & (mat.rows() - 1)) != 0) {
        throw NotPowerOfTwo("gate matrix must be square with power-of-two dimension");
    }
    n_ = std::countr_zero(static_cast<std::size_t>(mat.rows()));
    mat_ = std::move(mat);
    if (unitarity_error() > 1e-10) throw InputError("gate matrix is not unitary");
}

GateUnitary::GateUnitary(Unchecked, ComplexMatrix mat)
    : n_(std::countr_zero(static_cast<std::size_t>(mat.rows()))), mat_(std::move(mat)) {}

GateUnitary make_unchecked_gate(ComplexMatrix mat) { return GateUnitary(GateUnitary::Unchecked{}, std::move(mat)); }

bool GateUnitary::is_diagonal(double tol) const {
    for (Eigen::Index r = 0; r < mat_.rows(); ++r) {
        for (Eigen::Index c = 0; c < mat_.cols(); ++c) {
            if (r != c && std::abs(mat_(r, c)) >= tol) return false;
        }
    }
    return true;
}

double GateUnitary::unitarity_error() const {
    const ComplexMatrix d = mat_.adjoint() * mat_ - ComplexMatrix::Identity(mat_.rows(), mat_.cols());
    return d.cwiseAbs().maxCoeff();
}

GateUnitary operator*(const GateUnitary& a, const GateUnitary& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("gate product of different sizes");
    return make_unchecked_gate(a.matrix() * b.matrix());
}

GateUnitary kron(const GateUnitary& a, const GateUnitary& b) {
    const auto da = static_cast<Eigen::Index>(a.dim());
    const auto db = static_cast<Eigen::Index>(b.dim());
    if (a.num_qubits() + b.num_qubits() > 12) throw DimensionOverflow("gate Kronecker product too large");
    ComplexMatrix m(da * db, da * db);
    for (Eigen::Index r = 0; r < da; ++r) {
        for (Eigen::Index c = 0; c < da; ++c) m.block(r * db, c * db, db, db) = a.matrix()(r, c) * b.matrix();
    }
    return make_unchecked_gate(std::move(m));
}

GateUnitary identity_gate(int n) {
    const auto dim = Eigen::Index{1} << n;
    return make_unchecked_gate(ComplexMatrix::Identity(dim, dim));
}

GateUnitary compile(const Circuit& circuit) {
    const int n = circuit.num_qubits();
    if (n > 10) throw DimensionOverflow("compiling a circuit to a matrix supports n <= 10");
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        PureState column = PureState::basis(n, col);
        apply_circuit(circuit, column);
        for (std::size_t row = 0; row < dim; ++row) {
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = column[row];
        }
    }
    return make_unchecked_gate(std::move(m));
}

PureState apply_gate(const GateUnitary& u, const PureState& psi) {
    if (u.dim() != psi.dim()) throw DimensionMismatch("gate and state sizes differ");
    const auto amps = psi.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
    const Eigen::VectorXcd out = u.matrix() * v;
    return make_unchecked_state(psi.num_qubits(), ComplexVector(out.data(), out.data() + out.size()));
}

GateUnitary mphase(int n, double phi) {
    if (n < 1) throw QubitOutOfRange("mphase needs at least one qubit");
    if (n > 12) throw DimensionOverflow("mphase matrix limited to 12 qubits");
    const auto dim = Eigen::Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    m(dim - 1, dim - 1) = std::polar(1.0, wrap_angle(phi));
    return make_unchecked_gate(std::move(m));
}

GateUnitary cnx(int n) {
    if (n < 1) throw QubitOutOfRange("cnx needs at least one qubit");
    if (n > 12) throw DimensionOverflow("cnx matrix limited to 12 qubits");
    const auto dim = Eigen::Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    m(dim - 2, dim - 2) = 0.0;
    m(dim - 1, dim - 1) = 0.0;
    m(dim - 2, dim - 1) = 1.0;
    m(dim - 1, dim - 2) = 1.0;
    return make_unchecked_gate(std::move(m));
}

GateUnitary toffoli() { return cnx(3); }

GateUnitary fredkin() {
    Circuit c(3);
    c.add(GateKind::CSWAP, {1, 2, 3});
    return compile(c);
}

GateUnitary adder_unitary(int n) {
    if (n < 1) throw QubitOutOfRange("adder needs at least one qubit per register");
    if (2 * n > 12) throw DimensionOverflow("adder on 2n = " + std::to_string(2 * n) + " qubits exceeds 12");
    const std::size_t reg = std::size_t{1} << n;
    const auto dim = static_cast<Eigen::Index>(reg * reg);
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < reg; ++i) {
        for (std::size_t j = 0; j < reg; ++j) {
            const auto col = static_cast<Eigen::Index>(i * reg + j);
            const auto row = static_cast<Eigen::Index>(i * reg + (i + j) % reg);
            m(row, col) = 1.0;
        }
    }
    return make_unchecked_gate(std::move(m));
}

std::pair<GateUnitary, GateUnitary> composite_u1_u2() {
    const GateUnitary first = kron(toffoli(), identity_gate(1));   // CCX (x) 1
    const GateUnitary second = kron(identity_gate(1), toffoli());  // 1 (x) CCX
    return {first * second, first * second * first};
}

PureState plus_state_image(const GateUnitary& u) {
    if (!u.is_diagonal()) throw NonDiagonalGate("plus-state image requires a diagonal gate; use the Choi state");
    const int n = u.num_qubits();
    if (n > kMaxQubits) throw DimensionOverflow("plus-state image too large");
    const double scale = 1.0 / std::sqrt(static_cast<double>(u.dim()));
    ComplexVector amps(u.dim());
    for (std::size_t k = 0; k < u.dim(); ++k) {
        amps[k] = scale * u.matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    }
    return make_unchecked_state(n, std::move(amps));
}

PureState choi_state(const GateUnitary& u) {
    const int n = u.num_qubits();
    if (n > 6) throw DimensionOverflow("Choi state of an " + std::to_string(n) + "-qubit gate exceeds 12 qubits");
    const std::size_t dim = u.dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    ComplexVector amps(dim * dim);
    // (U (x) 1) sum_j |j>|j> = sum_{a,j} U_{a j} |a>|j>
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t j = 0; j < dim; ++j) {
            amps[a * dim + j] = scale * u.matrix()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
        }
    }
    return make_unchecked_state(2 * n, std::move(amps));
}

PureState qft_state(int n, std::int64_t a) {
    if (n < 1) throw QubitOutOfRange("QFT state needs at least one qubit");
    if (n > 12) throw DimensionOverflow("QFT state limited to 12 qubits");
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector amps{1.0};
    for (int k = 1; k <= n; ++k) {
        // a / 2^k reduced mod 1 keeps the phase exact for large a.
        const std::int64_t period = std::int64_t{1} << k;
        const std::int64_t residue = ((a % period) + period) % period;
        const Complex phase = std::polar(1.0, 2.0 * kPi * static_cast<double>(residue) / static_cast<double>(period));
        ComplexVector grown(amps.size() * 2);
        for (std::size_t x = 0; x < amps.size(); ++x) {
            grown[2 * x] = r * amps[x];
            grown[2 * x + 1] = r * phase * amps[x];
        }
        amps = std::move(grown);
    }
    return make_unchecked_state(n, std::move(amps));
}

Circuit random_clifford(int n, std::uint64_t seed) {
    Circuit c(n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> qubit(1, n);
    std::uniform_int_distribution<int> kind(0, n > 1 ? 2 : 1);
    const int depth = 20 * n;
    for (int step = 0; step < depth; ++step) {
        switch (kind(rng)) {
        case 0: c.add(GateKind::H, {qubit(rng)}); break;
        case 1: c.add(GateKind::S, {qubit(rng)}); break;
        default: {
            const int a = qubit(rng);
            int b = qubit(rng);
            while (b == a) b = qubit(rng);
            c.add(GateKind::CNOT, {a, b});
        }
        }
    }
    return c;
}

GateUnitary named_gate(std::string_view name) {
    const std::string key = lower(name);
    std::vector<std::string> parts;
    {
        std::istringstream in(key);
        for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
    }
    if (parts.empty()) throw ParseError("empty gate name");
    const std::string& head = parts[0];
    auto arg_int = [&](std::size_t idx) {
        if (parts.size() <= idx) throw ParseError("gate '" + key + "' needs more parameters");
        return parse_int(parts[idx], key);
    };

    if (parts.size() == 1) {
        static const std::vector<std::pair<std::string, GateKind>> single = {
            {"h", GateKind::H}, {"s", GateKind::S}, {"sdg", GateKind::Sdg}, {"t", GateKind::T},
            {"tdg", GateKind::Tdg}, {"x", GateKind::X}, {"y", GateKind::Y}, {"z", GateKind::Z},
        };
        for (const auto& [label, kind] : single) {
            if (label == head) {
                Circuit c(1);
                c.add(kind, {1});
                return compile(c);
            }
        }
        if (head == "cnot" || head == "cx") return cnx(2);
        if (head == "cz") return mphase(2, kPi);
        if (head == "swap") {
            Circuit c(2);
            c.add(GateKind::SWAP, {1, 2});
            return compile(c);
        }
        if (head == "ccz") return mphase(3, kPi);
        if (head == "toffoli" || head == "ccx") return toffoli();
        if (head == "fredkin" || head == "cswap") return fredkin();
        if (head == "u1") return composite_u1_u2().first;
        if (head == "u2") return composite_u1_u2().second;
    }
    if (head == "cnx") return cnx(arg_int(1));
    if (head == "cnz") return mphase(arg_int(1), kPi);
    if (head == "cns") return mphase(arg_int(1), kPi / 2);
    if (head == "adder") return adder_unitary(arg_int(1));
    if (head == "mphase") {
        const int n = arg_int(1);
        if (parts.size() < 3) throw ParseError("mphase needs an angle: mphase:N:PHI");
        return mphase(n, parse_double(parts[2], key));
    }
    throw ParseError("unknown gate name '" + std::string(name) + "'");
}

} // namespace gkpmagic
