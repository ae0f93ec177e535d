// optimize.hpp
// Multi-start maximization of the GKP magic over states and unitaries.
//
// The objective is a sum of absolute values and therefore non-smooth where
// an expectation value changes sign, so Nelder-Mead is the default method.
// Finite-difference gradient ascent is available as a cross-check.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gkpmagic/gates.hpp"
#include "gkpmagic/state.hpp"

namespace gkpmagic::optimize {

enum class Method { NelderMead, FiniteDiffGradientAscent };

struct OptimizerConfig {
    int restarts = 64;
    int max_iters = 2000;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    Method method = Method::NelderMead;

    void validate() const;
};

struct OptimumReport {
    double best_value = 0.0;
    std::vector<double> best_params;
    PureState best_state = PureState::basis(1, 0);
    int restarts_hitting_best = 0;
    // Final value of each restart, in restart order.
    std::vector<double> history;
    // Largest objective value evaluated anywhere during the search.
    double max_evaluated = 0.0;
    // Objective at a fixed comparison point (single-qubit unitary search:
    // alpha = pi/4 with phi1 = 0, phi2 = pi/4).
    std::optional<double> reference_value;
};

using Objective = std::function<double(std::span<const double>)>;

struct LocalResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

// Minimizes f starting from x0 with initial simplex edge `step`. The simplex
// is rebuilt around the incumbent whenever it collapses, until a rebuild no
// longer improves by more than tolerance or max_iters is spent.
LocalResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, double step, int max_iters,
                                 double tolerance);

// Central-difference gradient descent with backtracking line search.
LocalResult gradient_minimize(const Objective& f, std::vector<double> x0, int max_iters, double tolerance);

// Generic multi-start maximizer. `sample` draws a starting point from the
// given seed; `state_of` maps parameters to the state whose magic is the
// objective.
struct SearchProblem {
    std::size_t dimension = 0;
    std::function<std::vector<double>(std::uint64_t seed)> sample;
    std::function<PureState(std::span<const double>)> state_of;
    double initial_step = 0.5;
};

OptimumReport maximize_magic(const SearchProblem& problem, const OptimizerConfig& cfg);

// 2^{n+1} - 2 parameters: 2^n - 1 logits (amplitude 0 has logit 0) giving
// |c_k|^2 by softmax, then 2^n - 1 phases (phase 0 fixed to 0).
PureState state_from_params(int n, std::span<const double> params);

OptimumReport most_magic_state(int n, const OptimizerConfig& cfg = {});

// log2((1 + |cos t| + |sin t cos p| + |sin t sin p|) / 2) for the Bloch state
// cos(t/2)|0> + e^{ip} sin(t/2)|1>.
double bloch_magic(double theta, double phi);
PureState bloch_state(double theta, double phi);

// [[e^{i phi1} cos a, e^{i phi2} sin a], [-e^{-i phi2} sin a, e^{-i phi1} cos a]]
GateUnitary su2(double phi1, double phi2, double alpha);
double choi_magic_su2(double phi1, double phi2, double alpha);

// Parameters (phi1, phi2, alpha).
OptimumReport most_magic_single_qubit_unitary(const OptimizerConfig& cfg = {});

// U = (A (x) B) exp(i (x XX + y YY + z ZZ)) (C (x) D), with A..D in su2 form.
// 15 parameters: A, B, C, D angles (3 each) then x, y, z.
GateUnitary two_qubit_from_params(std::span<const double> params);
OptimumReport most_magic_two_qubit_unitary(const OptimizerConfig& cfg = {});

} // namespace gkpmagic::optimize
