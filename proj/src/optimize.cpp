#include "gkpmagic/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "gkpmagic/errors.hpp"
#include "gkpmagic/measures.hpp"
#include "gkpmagic/parallel.hpp"

namespace gkpmagic::optimize {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_angles(std::mt19937_64& rng, std::size_t count) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<double> out(count);
    for (auto& a : out) a = angle(rng);
    return out;
}

Eigen::Matrix4cd pauli_pair(int which) {
    Eigen::Matrix2cd p;
    switch (which) {
    case 0: p << 0, 1, 1, 0; break;
    case 1: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
    }
    Eigen::Matrix4cd out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = p(r, c) * p;
    }
    return out;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    }
    return out;
}

Eigen::Matrix2cd su2_matrix(double phi1, double phi2, double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    Eigen::Matrix2cd u;
    u << std::polar(c, phi1), std::polar(s, phi2), -std::polar(s, -phi2), std::polar(c, -phi1);
    return u;
}

} // namespace

void OptimizerConfig::validate() const {
    if (restarts < 1) throw InputError("restarts must be at least 1");
    if (max_iters < 1) throw InputError("max_iters must be at least 1");
    if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
}

LocalResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, double step, int max_iters,
                                 double tolerance) {
    const std::size_t dim = x0.size();
    const double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

    LocalResult best{x0, f(x0), 0};
    int iterations = 0;
    double current_step = step;

    while (iterations < max_iters) {
        std::vector<std::vector<double>> simplex(dim + 1, best.x);
        std::vector<double> values(dim + 1, best.value);
        for (std::size_t k = 0; k < dim; ++k) {
            simplex[k + 1][k] += current_step;
            values[k + 1] = f(simplex[k + 1]);
        }
        std::vector<std::size_t> order(dim + 1);
        std::vector<double> centroid(dim), trial(dim), trial2(dim);

        while (iterations < max_iters) {
            ++iterations;
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            const std::size_t lo = order.front();
            const std::size_t hi = order.back();
            const std::size_t second = order[dim - 1];
            if (values[hi] - values[lo] <= tolerance) break;

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t v = 0; v <= dim; ++v) {
                if (v == hi) continue;
                for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[v][k];
            }
            for (auto& c : centroid) c /= static_cast<double>(dim);

            for (std::size_t k = 0; k < dim; ++k) trial[k] = centroid[k] + reflect * (centroid[k] - simplex[hi][k]);
            const double fr = f(trial);
            if (fr < values[lo]) {
                for (std::size_t k = 0; k < dim; ++k) trial2[k] = centroid[k] + expand * (trial[k] - centroid[k]);
                const double fe = f(trial2);
                if (fe < fr) {
                    simplex[hi] = trial2;
                    values[hi] = fe;
                } else {
                    simplex[hi] = trial;
                    values[hi] = fr;
                }
            } else if (fr < values[second]) {
                simplex[hi] = trial;
                values[hi] = fr;
            } else {
                const bool outside = fr < values[hi];
                for (std::size_t k = 0; k < dim; ++k) {
                    trial2[k] = outside ? centroid[k] + contract * (trial[k] - centroid[k])
                                        : centroid[k] + contract * (simplex[hi][k] - centroid[k]);
                }
                const double fc = f(trial2);
                if (fc < std::min(fr, values[hi])) {
                    simplex[hi] = trial2;
                    values[hi] = fc;
                } else {
                    for (std::size_t v = 0; v <= dim; ++v) {
                        if (v == lo) continue;
                        for (std::size_t k = 0; k < dim; ++k) {
                            simplex[v][k] = simplex[lo][k] + shrink * (simplex[v][k] - simplex[lo][k]);
                        }
                        values[v] = f(simplex[v]);
                    }
                }
            }
        }

        const auto lo = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
        const double improvement = best.value - values[lo];
        if (values[lo] < best.value) {
            best.x = simplex[lo];
            best.value = values[lo];
        }
        if (improvement <= tolerance) {
            // A rebuild that found nothing: try once more with a small
            // simplex, then stop.
            if (current_step <= step * 1e-3) break;
            current_step *= 1e-2;
        } else {
            current_step = step;
        }
    }
    best.iterations = iterations;
    return best;
}

LocalResult gradient_minimize(const Objective& f, std::vector<double> x0, int max_iters, double tolerance) {
    const std::size_t dim = x0.size();
    const double h = 1e-6;
    LocalResult cur{std::move(x0), 0.0, 0};
    cur.value = f(cur.x);
    std::vector<double> grad(dim), probe(dim);
    double rate = 0.1;
    for (int it = 0; it < max_iters; ++it) {
        cur.iterations = it + 1;
        probe = cur.x;
        double gnorm2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            probe[k] = cur.x[k] + h;
            const double up = f(probe);
            probe[k] = cur.x[k] - h;
            const double down = f(probe);
            probe[k] = cur.x[k];
            grad[k] = (up - down) / (2 * h);
            gnorm2 += grad[k] * grad[k];
        }
        if (gnorm2 < 1e-20) break;
        bool accepted = false;
        while (rate > 1e-14) {
            for (std::size_t k = 0; k < dim; ++k) probe[k] = cur.x[k] - rate * grad[k];
            const double trial = f(probe);
            if (trial <= cur.value - 1e-4 * rate * gnorm2) {
                const double gain = cur.value - trial;
                cur.x = probe;
                cur.value = trial;
                accepted = true;
                rate *= 2.0;
                if (gain <= tolerance) it = max_iters;
                break;
            }
            rate *= 0.5;
        }
        if (!accepted) break;
    }
    return cur;
}

OptimumReport maximize_magic(const SearchProblem& problem, const OptimizerConfig& cfg) {
    cfg.validate();
    struct RunResult {
        std::vector<double> x;
        double value = -std::numeric_limits<double>::infinity();
        double max_seen = -std::numeric_limits<double>::infinity();
    };
    std::vector<RunResult> runs(static_cast<std::size_t>(cfg.restarts));

    parallel_for(runs.size(), [&](std::size_t r) {
        std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(r)};
        std::mt19937_64 seeder(seq);
        auto start = problem.sample(seeder());
        RunResult& out = runs[r];
        // Track the best point ever evaluated, not only where the local
        // method ends.
        auto negated = [&](std::span<const double> x) {
            const double v = gkp_magic_value(problem.state_of(x));
            if (v > out.max_seen) {
                out.max_seen = v;
                out.x.assign(x.begin(), x.end());
                out.value = v;
            }
            return -v;
        };
        if (cfg.method == Method::NelderMead) {
            nelder_mead_minimize(negated, std::move(start), problem.initial_step, cfg.max_iters, cfg.tolerance);
        } else {
            gradient_minimize(negated, std::move(start), cfg.max_iters, cfg.tolerance);
        }
    });

    OptimumReport report;
    std::size_t best_run = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        report.history.push_back(runs[r].value);
        if (runs[r].value > runs[best_run].value) best_run = r;
    }
    report.best_value = runs[best_run].value;
    report.best_params = runs[best_run].x;
    report.best_state = problem.state_of(report.best_params);
    report.max_evaluated = report.best_value;
    for (const auto& run : runs) report.max_evaluated = std::max(report.max_evaluated, run.max_seen);
    report.restarts_hitting_best = static_cast<int>(std::count_if(
        runs.begin(), runs.end(), [&](const RunResult& run) { return run.value >= report.best_value - 1e-6; }));
    return report;
}

PureState state_from_params(int n, std::span<const double> params) {
    const std::size_t dim = std::size_t{1} << n;
    if (params.size() != 2 * (dim - 1)) throw DimensionMismatch("state parametrization needs 2^{n+1} - 2 values");
    const auto logits = params.first(dim - 1);
    const auto phases = params.subspan(dim - 1);
    double peak = 0.0;
    for (double l : logits) peak = std::max(peak, l);
    std::vector<double> weight(dim);
    weight[0] = std::exp(-peak);
    double total = weight[0];
    for (std::size_t k = 1; k < dim; ++k) {
        weight[k] = std::exp(logits[k - 1] - peak);
        total += weight[k];
    }
    ComplexVector amps(dim);
    amps[0] = std::sqrt(weight[0] / total);
    for (std::size_t k = 1; k < dim; ++k) amps[k] = std::polar(std::sqrt(weight[k] / total), phases[k - 1]);
    return make_unchecked_state(n, std::move(amps));
}

OptimumReport most_magic_state(int n, const OptimizerConfig& cfg) {
    if (n < 1) throw InputError("most_magic_state needs n >= 1");
    if (n > 8) throw DimensionOverflow("most_magic_state supports n <= 8");
    const std::size_t free = (std::size_t{1} << n) - 1;
    SearchProblem problem;
    problem.dimension = 2 * free;
    problem.sample = [free](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x(2 * free);
        for (std::size_t k = 0; k < free; ++k) x[k] = gauss(rng);
        const auto phases = uniform_angles(rng, free);
        std::copy(phases.begin(), phases.end(), x.begin() + static_cast<std::ptrdiff_t>(free));
        return x;
    };
    problem.state_of = [n](std::span<const double> x) { return state_from_params(n, x); };
    return maximize_magic(problem, cfg);
}

PureState bloch_state(double theta, double phi) {
    return make_unchecked_state(1, {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
}

double bloch_magic(double theta, double phi) {
    const double st = std::sin(theta);
    return std::log2((1.0 + std::abs(std::cos(theta)) + std::abs(st * std::cos(phi)) + std::abs(st * std::sin(phi))) / 2.0);
}

GateUnitary su2(double phi1, double phi2, double alpha) {
    const Eigen::Matrix2cd u = su2_matrix(phi1, phi2, alpha);
    return make_unchecked_gate(ComplexMatrix(u));
}

double choi_magic_su2(double phi1, double phi2, double alpha) {
    return gkp_magic_value(choi_state(su2(phi1, phi2, alpha)));
}

OptimumReport most_magic_single_qubit_unitary(const OptimizerConfig& cfg) {
    SearchProblem problem;
    problem.dimension = 3;
    problem.sample = [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return uniform_angles(rng, 3);
    };
    problem.state_of = [](std::span<const double> x) { return choi_state(su2(x[0], x[1], x[2])); };
    OptimumReport report = maximize_magic(problem, cfg);
    report.reference_value = choi_magic_su2(0.0, kPi / 4, kPi / 4);
    return report;
}

GateUnitary two_qubit_from_params(std::span<const double> p) {
    if (p.size() != 15) throw DimensionMismatch("two-qubit parametrization needs 15 values");
    const Eigen::Matrix4cd left = kron2(su2_matrix(p[0], p[1], p[2]), su2_matrix(p[3], p[4], p[5]));
    const Eigen::Matrix4cd right = kron2(su2_matrix(p[6], p[7], p[8]), su2_matrix(p[9], p[10], p[11]));
    // XX, YY, ZZ commute and square to 1: exp(i t P) = cos t + i sin t P.
    Eigen::Matrix4cd core = Eigen::Matrix4cd::Identity();
    for (int which = 0; which < 3; ++which) {
        const double t = p[12 + static_cast<std::size_t>(which)];
        const Eigen::Matrix4cd factor =
            std::cos(t) * Eigen::Matrix4cd::Identity() + Complex(0.0, std::sin(t)) * pauli_pair(which);
        core = core * factor;
    }
    return make_unchecked_gate(ComplexMatrix(left * core * right));
}

OptimumReport most_magic_two_qubit_unitary(const OptimizerConfig& cfg) {
    SearchProblem problem;
    problem.dimension = 15;
    problem.sample = [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return uniform_angles(rng, 15);
    };
    problem.state_of = [](std::span<const double> x) { return choi_state(two_qubit_from_params(x)); };
    return maximize_magic(problem, cfg);
}

} // namespace gkpmagic::optimize
