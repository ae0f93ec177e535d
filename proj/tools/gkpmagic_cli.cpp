#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkpmagic/analytic.hpp"
#include "gkpmagic/bounds.hpp"
#include "gkpmagic/errors.hpp"
#include "gkpmagic/gates.hpp"
#include "gkpmagic/measures.hpp"
#include "gkpmagic/optimize.hpp"
#include "gkpmagic/parallel.hpp"
#include "gkpmagic/reproduce.hpp"
#include "gkpmagic/state.hpp"

using namespace gkpmagic;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

// Default register cap for CLI inputs.
constexpr int kCliMaxQubits = 12;

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::binary);
        if (!file) throw ParseError("cannot open output file " + path);
        stream = &file;
    }
    std::ostream& operator*() { return *stream; }
};

std::string fixed4(double v) {
    std::ostringstream s;
    // Avoid printing -0.0000 for values that round to zero.
    s << std::fixed << std::setprecision(4) << (std::abs(v) < 5e-5 ? 0.0 : v);
    return s.str();
}

void check_cli_cap(int n) {
    if (n > kCliMaxQubits) {
        throw DimensionOverflow(std::to_string(n) + " qubits exceeds the CLI cap of " + std::to_string(kCliMaxQubits));
    }
}

PureState read_state_arg(const std::string& path) {
    PureState psi = path == "-" ? read_state(std::cin) : load_state_file(path);
    check_cli_cap(psi.num_qubits());
    return psi;
}

PureState circuit_state(const std::string& spec, const PureState* start = nullptr) {
    const Circuit c = parse_circuit(spec);
    check_cli_cap(c.num_qubits());
    PureState psi = start ? *start : PureState::basis(c.num_qubits(), 0);
    apply_circuit(c, psi);
    return psi;
}

GateUnitary gate_arg(const std::string& name, const std::string& circuit) {
    if (!name.empty()) return named_gate(name);
    const Circuit c = parse_circuit(circuit);
    return compile(c);
}

// Accepts plain numbers and multiples of pi: "pi", "pi/4", "3pi/4", "-pi/2".
double parse_angle(std::string text) {
    text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
    const auto pos = text.find("pi");
    try {
        if (pos == std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw ParseError("bad angle '" + text + "'");
            return v;
        }
        std::string coef = text.substr(0, pos);
        if (!coef.empty() && coef.back() == '*') coef.pop_back();
        double scale = coef.empty() || coef == "+" ? 1.0 : coef == "-" ? -1.0 : std::stod(coef);
        const std::string rest = text.substr(pos + 2);
        if (!rest.empty()) {
            if (rest[0] != '/') throw ParseError("bad angle '" + text + "'");
            std::size_t used = 0;
            const double den = std::stod(rest.substr(1), &used);
            if (used != rest.size() - 1 || den == 0.0) throw ParseError("bad angle '" + text + "'");
            scale /= den;
        }
        return scale * std::numbers::pi;
    } catch (const std::logic_error&) {
        throw ParseError("bad angle '" + text + "'");
    }
}

std::vector<double> parse_angle_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) out.push_back(parse_angle(item));
    if (out.empty()) throw ParseError("empty angle list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ParseError("bad integer '" + item + "'");
        }
    }
    if (out.empty()) throw ParseError("empty integer list");
    return out;
}

const std::map<std::string, Measure> kMeasures{{"gkp", Measure::GkpMagic},
                                                {"stnorm", Measure::StNorm},
                                                {"cellneg", Measure::CellNegativity},
                                                {"celllogneg", Measure::CellLogNegativity},
                                                {"renyi", Measure::RenyiHalf},
                                                {"tilde", Measure::TildeMagic},
                                                {"sumneg", Measure::SumNegativity}};

const std::map<std::string, EvalPath> kPaths{{"naive", EvalPath::Naive}, {"fwht", EvalPath::Fwht}};

const std::map<std::string, optimize::Method> kMethods{{"nm", optimize::Method::NelderMead},
                                                        {"gradient", optimize::Method::FiniteDiffGradientAscent}};

const std::map<std::string, bounds::GateRoute> kRoutes{
    {"auto", bounds::GateRoute::Auto}, {"plus", bounds::GateRoute::PlusState}, {"choi", bounds::GateRoute::Choi}};

// ---- compute ----

struct ComputeArgs {
    std::string state;
    std::string circuit;
    Measure measure = Measure::GkpMagic;
    EvalPath path = EvalPath::Fwht;
};

void run_compute(const ComputeArgs& a) {
    const PureState psi = a.state.empty() ? circuit_state(a.circuit) : read_state_arg(a.state);
    MagicReport r;
    if (a.measure == Measure::TildeMagic) {
        r = tilde_magic_report(DensityOperator::from_pure(psi));
    } else {
        r = evaluate(a.measure, psi, a.path);
    }
    std::cout << "measure,n,value,path,elapsed_s\n";
    std::cout << to_string(r.measure) << ',' << r.n << ',' << fixed4(r.value) << ',' << to_string(r.path) << ','
              << fixed4(r.elapsed_seconds) << '\n';
}

// ---- gate ----

struct GateArgs {
    std::string kind = "plus";
    std::string gate;
    std::string circuit;
    std::string output;
};

void run_gate(const GateArgs& a) {
    std::unique_ptr<PureState> psi;
    if (a.kind == "plus") {
        if (!a.gate.empty()) {
            psi = std::make_unique<PureState>(plus_state_image(named_gate(a.gate)));
        } else {
            const Circuit c = parse_circuit(a.circuit);
            check_cli_cap(c.num_qubits());
            const PureState plus = PureState::plus(c.num_qubits());
            psi = std::make_unique<PureState>(circuit_state(a.circuit, &plus));
        }
    } else {
        psi = std::make_unique<PureState>(choi_state(gate_arg(a.gate, a.circuit)));
    }
    Output out(a.output);
    write_state(*out, *psi);
}

// ---- bound ----

struct BoundArgs {
    std::string gate;
    std::string circuit;
    std::string state;
    std::optional<double> magic;
    bounds::GateRoute route = bounds::GateRoute::Auto;
    double magic_in = 0.0;
    double magic_out = 0.0;
    int m = 1;
    double p = 1.0;
    int r = 1;
    int s = 1;
};

void print_conversion(const bounds::ConversionBound& b) {
    std::cout << "kind,magic_in,magic_out,m,k_min,k_min_int\n";
    const char* kind = b.kind == bounds::BoundKind::Deterministic ? "deterministic"
                       : b.kind == bounds::BoundKind::Probabilistic ? "probabilistic"
                                                                    : "cellneg";
    std::cout << kind << ',' << fixed4(b.inputs.magic_in) << ',' << fixed4(b.inputs.magic_out) << ',' << b.inputs.m
              << ',' << fixed4(b.k_min) << ',' << b.k_min_int << '\n';
}

void run_tcount(const BoundArgs& a) {
    bounds::TCountBound t;
    if (a.magic) {
        t = bounds::t_count_from_magic(*a.magic);
    } else if (!a.state.empty()) {
        t = bounds::t_count_bound(read_state_arg(a.state));
    } else {
        t = bounds::t_count_bound(gate_arg(a.gate, a.circuit), a.route);
    }
    std::cout << "target_magic,unit_magic,ratio,m_floor,reported,t_count\n";
    std::cout << fixed4(t.target_magic) << ',' << fixed4(t.unit_magic) << ',' << fixed4(t.ratio) << ',' << t.m_floor
              << ',' << t.reported << ',' << reproduce::format_t_count(t) << '\n';
}

void run_compare(const BoundArgs& a) {
    const auto c = bounds::compare_bounds_p1(a.magic_in, a.magic_out, a.m, a.r, a.s);
    std::cout << "deterministic,probabilistic,qubits_non_increasing,ordering_holds\n";
    std::cout << fixed4(c.deterministic.k_min) << ',' << fixed4(c.probabilistic.k_min) << ','
              << (c.qubits_non_increasing ? "true" : "false") << ',' << (c.ordering_holds ? "true" : "false") << '\n';
}

// ---- optimize ----

struct OptimizeArgs {
    int n = 1;
    optimize::OptimizerConfig cfg;
    std::string output;
};

void print_optimum(const std::string& target, const optimize::OptimizerConfig& cfg, const optimize::OptimumReport& r,
                   const std::string& output) {
    std::cout << "# seed=" << cfg.seed << '\n';
    std::cout << "target,best_value,restarts_hitting_best,restarts,max_evaluated,params\n";
    std::cout << target << ',' << fixed4(r.best_value) << ',' << r.restarts_hitting_best << ',' << cfg.restarts << ','
              << fixed4(r.max_evaluated) << ',';
    for (std::size_t i = 0; i < r.best_params.size(); ++i) {
        std::cout << (i ? " " : "") << fixed4(r.best_params[i]);
    }
    std::cout << '\n';
    if (r.reference_value) std::cout << "# reference_value=" << fixed4(*r.reference_value) << '\n';
    if (!output.empty()) {
        Output out(output);
        write_state(*out, r.best_state);
    }
}

// ---- reproduce ----

struct ReproduceArgs {
    std::string phis = "pi,pi/2,pi/4";
    int max_n = 10;
    std::string output;
};

void write_table(const std::vector<reproduce::TableRow>& rows, const std::string& output) {
    Output out(output);
    *out << "label,qubits,magic,t_count,ratio\n";
    for (const auto& row : rows) {
        *out << row.label << ',' << row.qubits << ',' << fixed4(row.magic) << ',' << row.t_count.reported << ','
             << fixed4(row.t_count.ratio) << '\n';
    }
}

void write_series(const std::vector<reproduce::SeriesPoint>& points, bool with_phi, const std::string& output) {
    Output out(output);
    *out << (with_phi ? "phi,n,magic,numeric\n" : "n,qft_inv_magic,numeric\n");
    for (const auto& p : points) {
        if (with_phi) *out << fixed4(p.phi) << ',';
        *out << p.n << ',' << fixed4(p.magic) << ',' << (p.numeric ? fixed4(*p.numeric) : "") << '\n';
    }
}

// ---- bench ----

struct BenchArgs {
    std::string ns = "4,6,8";
    EvalPath path = EvalPath::Fwht;
    int repeats = 3;
    std::uint64_t seed = 0;
};

void run_bench(const BenchArgs& a) {
    if (a.repeats < 1) throw InputError("repeats must be at least 1");
    const auto ns = parse_int_list(a.ns);
    for (int n : ns) {
        if (n < 1) throw InputError("n must be at least 1");
        check_cli_cap(n);
    }
    std::cout << "# seed=" << a.seed << '\n';
    std::cout << "n,path,repeat,elapsed_s,median,value,cross_check_diff\n";
    for (int n : ns) {
        const PureState psi = random_haar_state(n, a.seed);
        std::vector<double> times;
        double value = 0.0;
        for (int r = 0; r < a.repeats; ++r) {
            const auto start = std::chrono::steady_clock::now();
            value = st_norm(psi, a.path);
            times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        // The other path is evaluated once where the naive cost stays small.
        std::string diff;
        if (n <= 8) {
            const EvalPath other = a.path == EvalPath::Fwht ? EvalPath::Naive : EvalPath::Fwht;
            std::ostringstream s;
            s << std::scientific << std::setprecision(2) << std::abs(st_norm(psi, other) - value);
            diff = s.str();
        }
        std::vector<double> sorted = times;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        bool flagged = false;
        for (int r = 0; r < a.repeats; ++r) {
            const bool is_median = !flagged && times[static_cast<std::size_t>(r)] == median;
            flagged = flagged || is_median;
            std::cout << n << ',' << to_string(a.path) << ',' << r + 1 << ','
                      << fixed4(times[static_cast<std::size_t>(r)]) << ',' << (is_median ? "*" : "") << ','
                      << fixed4(std::log2(value)) << ',' << diff << '\n';
        }
    }
}

void apply_threads(int threads) {
    if (const char* env = std::getenv("MAGIC_THREADS"); env && *env) {
        try {
            threads = std::stoi(env);
        } catch (const std::logic_error&) {
            throw ParseError(std::string("MAGIC_THREADS is not an integer: ") + env);
        }
    }
    if (threads > 0) set_thread_count(threads);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GKP magic of qubit states and gates, resource bounds and table reproduction"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: all cores; MAGIC_THREADS overrides)");

    ComputeArgs compute;
    auto* cmd_compute = app.add_subcommand("compute", "Evaluate a magic measure on a state");
    auto* c_state = cmd_compute->add_option("--state", compute.state, "State file, '-' for stdin");
    auto* c_circ = cmd_compute->add_option("--circuit", compute.circuit, "Circuit applied to |0...0>");
    c_state->excludes(c_circ);
    cmd_compute->add_option("--measure", compute.measure)->transform(CLI::CheckedTransformer(kMeasures));
    cmd_compute->add_option("--path", compute.path)->transform(CLI::CheckedTransformer(kPaths));

    GateArgs gate;
    auto* cmd_gate = app.add_subcommand("gate", "Write the state associated with a gate");
    cmd_gate->add_option("kind", gate.kind, "plus or choi")->check(CLI::IsMember({"plus", "choi"}))->required();
    auto* g_gate = cmd_gate->add_option("--gate", gate.gate, "Named gate (toffoli, cnx:4, mphase:3:0.785, ...)");
    auto* g_circ = cmd_gate->add_option("--circuit", gate.circuit, "Circuit spec");
    g_gate->excludes(g_circ);
    cmd_gate->add_option("--output", gate.output, "Output state file (default stdout)");

    BoundArgs bound;
    auto* cmd_bound = app.add_subcommand("bound", "Resource lower bounds");
    cmd_bound->require_subcommand(1);
    auto* b_tcount = cmd_bound->add_subcommand("tcount", "T-count lower bound");
    {
        auto* o_gate = b_tcount->add_option("--gate", bound.gate);
        auto* o_circ = b_tcount->add_option("--circuit", bound.circuit);
        auto* o_state = b_tcount->add_option("--state", bound.state);
        auto* o_magic = b_tcount->add_option("--magic", bound.magic, "Target magic in bits");
        for (auto* a : {o_gate, o_circ, o_state, o_magic}) {
            for (auto* b : {o_gate, o_circ, o_state, o_magic}) {
                if (a != b) a->excludes(b);
            }
        }
        b_tcount->add_option("--route", bound.route)->transform(CLI::CheckedTransformer(kRoutes));
    }
    auto* b_det = cmd_bound->add_subcommand("deterministic", "Copies needed for deterministic conversion");
    auto* b_prob = cmd_bound->add_subcommand("probabilistic", "Expected copies for probabilistic conversion");
    auto* b_cmp = cmd_bound->add_subcommand("compare", "Deterministic vs probabilistic bound at p = 1");
    for (auto* sub : {b_det, b_prob, b_cmp}) {
        sub->add_option("--magic-in", bound.magic_in)->required();
        sub->add_option("--magic-out", bound.magic_out)->required();
        sub->add_option("--m", bound.m);
    }
    b_prob->add_option("--p", bound.p);
    for (auto* sub : {b_prob, b_cmp}) {
        sub->add_option("--r", bound.r);
        sub->add_option("--s", bound.s);
    }

    OptimizeArgs opt;
    auto* cmd_opt = app.add_subcommand("optimize", "Multi-start search for the most magic state or unitary");
    cmd_opt->require_subcommand(1);
    auto* o_state = cmd_opt->add_subcommand("state", "Most magic n-qubit state");
    o_state->add_option("--n", opt.n)->required();
    auto* o_u1 = cmd_opt->add_subcommand("unitary1", "Most magic single-qubit unitary");
    auto* o_u2 = cmd_opt->add_subcommand("unitary2", "Most magic two-qubit unitary");
    for (auto* sub : {o_state, o_u1, o_u2}) {
        sub->add_option("--restarts", opt.cfg.restarts);
        sub->add_option("--max-iters", opt.cfg.max_iters);
        sub->add_option("--seed", opt.cfg.seed);
        sub->add_option("--method", opt.cfg.method)->transform(CLI::CheckedTransformer(kMethods));
        sub->add_option("--output", opt.output, "Write the best state to this file");
    }

    ReproduceArgs rep;
    auto* cmd_rep = app.add_subcommand("reproduce", "Regenerate tables and series as CSV");
    cmd_rep->require_subcommand(1);
    auto* r_t1 = cmd_rep->add_subcommand("table1", "Diagonal gates on |+>^n");
    auto* r_t2 = cmd_rep->add_subcommand("table2", "Choi states of non-diagonal gates");
    auto* r_fig1 = cmd_rep->add_subcommand("fig1", "M_phi |+>^n against n");
    r_fig1->add_option("--phis", rep.phis, "Comma-separated angles, e.g. pi,pi/2,pi/4");
    auto* r_adder = cmd_rep->add_subcommand("adder", "Inverse-QFT product states against n");
    for (auto* sub : {r_fig1, r_adder}) sub->add_option("--max-n", rep.max_n);
    for (auto* sub : {r_t1, r_t2, r_fig1, r_adder}) sub->add_option("--output", rep.output);

    BenchArgs bench;
    auto* cmd_bench = app.add_subcommand("bench", "Time the binary Pauli sum");
    cmd_bench->add_option("--n", bench.ns, "Comma-separated qubit counts");
    cmd_bench->add_option("--path", bench.path)->transform(CLI::CheckedTransformer(kPaths));
    cmd_bench->add_option("--repeats", bench.repeats);
    cmd_bench->add_option("--seed", bench.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        apply_threads(threads);
        if (cmd_compute->parsed()) {
            if (compute.state.empty() && compute.circuit.empty()) throw ParseError("compute needs --state or --circuit");
            run_compute(compute);
        } else if (cmd_gate->parsed()) {
            if (gate.gate.empty() && gate.circuit.empty()) throw ParseError("gate needs --gate or --circuit");
            run_gate(gate);
        } else if (cmd_bound->parsed()) {
            if (b_tcount->parsed()) {
                if (bound.gate.empty() && bound.circuit.empty() && bound.state.empty() && !bound.magic) {
                    throw ParseError("tcount needs --gate, --circuit, --state or --magic");
                }
                run_tcount(bound);
            } else if (b_det->parsed()) {
                print_conversion(bounds::deterministic_bound(bound.magic_in, bound.magic_out, bound.m));
            } else if (b_prob->parsed()) {
                print_conversion(
                    bounds::probabilistic_bound(bound.magic_in, bound.magic_out, bound.m, bound.p, bound.r, bound.s));
            } else {
                run_compare(bound);
            }
        } else if (cmd_opt->parsed()) {
            opt.cfg.validate();
            if (o_state->parsed()) {
                print_optimum("state" + std::to_string(opt.n), opt.cfg, optimize::most_magic_state(opt.n, opt.cfg),
                              opt.output);
            } else if (o_u1->parsed()) {
                print_optimum("unitary1", opt.cfg, optimize::most_magic_single_qubit_unitary(opt.cfg), opt.output);
            } else {
                print_optimum("unitary2", opt.cfg, optimize::most_magic_two_qubit_unitary(opt.cfg), opt.output);
            }
        } else if (cmd_rep->parsed()) {
            if (r_t1->parsed()) {
                write_table(reproduce::table1(), rep.output);
            } else if (r_t2->parsed()) {
                write_table(reproduce::table2(), rep.output);
            } else if (r_fig1->parsed()) {
                write_series(reproduce::fig1(parse_angle_list(rep.phis), rep.max_n), true, rep.output);
            } else {
                write_series(reproduce::adder(rep.max_n), false, rep.output);
            }
        } else if (cmd_bench->parsed()) {
            run_bench(bench);
        }
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const MagicError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
