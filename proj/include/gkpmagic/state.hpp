// state.hpp
// Dense n-qubit pure states and density operators.
//
// Basis index convention: qubit 1 is the most significant bit, so the basis
// state |u_1 ... u_n> has index sum_q u_q * 2^(n-q). Every module shares it.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gkpmagic {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 14;
inline constexpr double kNormTolerance = 1e-6;

// Bit mask of qubit q (1-based) in an n-qubit basis index.
constexpr std::uint64_t qubit_mask(int n, int q) { return std::uint64_t{1} << (n - q); }

class PureState {
public:
    // Validating constructor: length must be a power of two >= 2 and the
    // norm must be within kNormTolerance of 1. The stored copy is rescaled
    // to unit norm exactly.
    explicit PureState(ComplexVector amps);

    // Basis state |index> on n qubits.
    static PureState basis(int n, std::uint64_t index);
    // |+>^{(x) n}
    static PureState plus(int n);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;

    // Mutable access for in-place gate kernels. Callers must keep the state
    // normalized.
    ComplexVector& mutable_amplitudes() { return amps_; }

private:
    struct Unchecked {};
    PureState(Unchecked, int n, ComplexVector amps);
    friend PureState make_unchecked_state(int n, ComplexVector amps);

    int n_ = 0;
    ComplexVector amps_;
};

// Builds a state without validation. Used internally where the construction
// guarantees unit norm (including the 0-qubit scalar state).
PureState make_unchecked_state(int n, ComplexVector amps);

PureState new_pure_state(ComplexVector amps);

class DensityOperator {
public:
    // Validates hermiticity (1e-12), unit trace (1e-10) and positivity
    // (eigenvalues >= -1e-10).
    explicit DensityOperator(ComplexMatrix mat);

    static DensityOperator from_pure(const PureState& psi);
    static DensityOperator maximally_mixed(int n);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
    const ComplexMatrix& matrix() const { return mat_; }
    Complex operator()(std::size_t row, std::size_t col) const { return mat_(row, col); }

private:
    struct Unchecked {};
    DensityOperator(Unchecked, ComplexMatrix mat);
    friend DensityOperator make_unchecked_density(ComplexMatrix mat);

    int n_ = 0;
    ComplexMatrix mat_;
};

DensityOperator make_unchecked_density(ComplexMatrix mat);

// Pauli label X^j Z^i. Bit (n - q) of each mask refers to qubit q.
struct PauliLabel {
    std::uint64_t i = 0;  // Z part
    std::uint64_t j = 0;  // X part
    int n = 0;

    PauliLabel(int n_qubits, std::uint64_t z_bits, std::uint64_t x_bits);
};

struct MeasurementRecord {
    int outcome = 0;
    double probability = 0.0;
    // Empty when the outcome has zero probability.
    std::optional<PureState> post_state;
};

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Tr(X^j Z^i rho) evaluated as sum_k (-1)^{i.k} rho_{k, k xor j}.
Complex pauli_expectation(const PureState& psi, const PauliLabel& label);
Complex pauli_expectation(const DensityOperator& rho, const PauliLabel& label);

// Z-basis measurement of qubit (1-based). Both branches are returned, the
// measured qubit is removed from the post-states.
std::array<MeasurementRecord, 2> measure_z(const PureState& psi, int qubit);

// Orbit of |0...0> under circuits over {H, S, CNOT}, deduplicated up to
// global phase. n must be 1 or 2.
std::vector<PureState> enumerate_stabilizer_states(int n);

PureState random_haar_state(int n, std::uint64_t seed);

// Convex mixture of `terms` Haar-random pure states with Dirichlet(1) weights.
DensityOperator random_mixed_state(int n, int terms, std::uint64_t seed);

// Traces out the last `traced` qubits.
DensityOperator partial_trace_last(const DensityOperator& rho, int traced);

// |<a|b>|
double overlap_magnitude(const PureState& a, const PureState& b);
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = 1e-9);

// Plain-text state file: "n=<int>" then 2^n lines "<re> <im>".
void write_state(std::ostream& out, const PureState& psi);
PureState read_state(std::istream& in);
PureState load_state_file(const std::string& path);

} // namespace gkpmagic
