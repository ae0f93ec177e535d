// gates.hpp
// Gates, circuits and the structured states built from them: plus-state
// images of diagonal gates, Choi states, QFT product states.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gkpmagic/state.hpp"

namespace gkpmagic {

enum class GateKind { H, S, Sdg, T, Tdg, X, Y, Z, CNOT, CZ, SWAP, CSWAP, MPhase, CnX, CnZ, CnS };

std::string to_string(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::H;
    std::vector<int> targets;  // 1-based; for controlled gates the last entry is the target
    double angle = 0.0;        // MPhase only, wrapped into (-pi, pi]
};

class Circuit {
public:
    explicit Circuit(int n);

    int num_qubits() const { return n_; }
    const std::vector<GateOp>& ops() const { return ops_; }

    // Validates arity, range and distinctness of targets.
    Circuit& add(GateKind kind, std::vector<int> targets, double angle = 0.0);

private:
    int n_;
    std::vector<GateOp> ops_;
};

// "H 1; T 1; CNOT 1 2; MPHASE 0.785398 1 2 3", case-insensitive, angles in
// radians. When n is 0 the register size is the largest target mentioned.
Circuit parse_circuit(std::string_view text, int n = 0);

// In-place bit-indexed kernels; no matrix is built.
void apply_circuit(const Circuit& circuit, PureState& psi);
PureState apply_circuit(const Circuit& circuit, const PureState& psi);

class GateUnitary {
public:
    // Checks U^dagger U = I within 1e-10.
    explicit GateUnitary(ComplexMatrix mat);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
    const ComplexMatrix& matrix() const { return mat_; }

    bool is_diagonal(double tol = 1e-12) const;
    double unitarity_error() const;

private:
    struct Unchecked {};
    GateUnitary(Unchecked, ComplexMatrix mat);
    friend GateUnitary make_unchecked_gate(ComplexMatrix mat);

    int n_ = 0;
    ComplexMatrix mat_;
};

GateUnitary make_unchecked_gate(ComplexMatrix mat);

GateUnitary operator*(const GateUnitary& a, const GateUnitary& b);
GateUnitary kron(const GateUnitary& a, const GateUnitary& b);
GateUnitary identity_gate(int n);

// Column-by-column compilation. n <= 10.
GateUnitary compile(const Circuit& circuit);
PureState apply_gate(const GateUnitary& u, const PureState& psi);

// diag(1, ..., 1, e^{i phi}) on n qubits.
GateUnitary mphase(int n, double phi);
// X on the last qubit controlled by the first n-1.
GateUnitary cnx(int n);
GateUnitary toffoli();
// SWAP of qubits 2 and 3 controlled by qubit 1.
GateUnitary fredkin();
// |i>|j> -> |i>|i + j mod 2^n> on two n-qubit registers. 2n <= 12.
GateUnitary adder_unitary(int n);

// U1 = (CCX (x) 1)(1 (x) CCX), U2 = (CCX (x) 1)(1 (x) CCX)(CCX (x) 1), where
// CCX (x) 1 targets qubit 3 controlled by 1,2 and 1 (x) CCX targets qubit 4
// controlled by 2,3.
std::pair<GateUnitary, GateUnitary> composite_u1_u2();

// U|+>^n for a diagonal U. Throws NonDiagonalGate otherwise.
PureState plus_state_image(const GateUnitary& u);

// (U (x) 1) 2^{-n/2} sum_j |j, j>; U acts on the first register. n <= 6.
PureState choi_state(const GateUnitary& u);

// (x)_{k=1..n} (|0> + e^{2 pi i a / 2^k} |1>) / sqrt(2), factor k on qubit k.
PureState qft_state(int n, std::int64_t a);

// 20 n random gates from {H, S, CNOT}.
Circuit random_clifford(int n, std::uint64_t seed);

// Named gates for the CLI: h s sdg t tdg x y z cnot cz swap ccz toffoli
// fredkin u1 u2, and parametrized cnx:N cnz:N cns:N mphase:N:PHI adder:N.
GateUnitary named_gate(std::string_view name);

} // namespace gkpmagic
