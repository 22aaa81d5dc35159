#include "hml/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hml/config.hpp"
#include "hml/criteria.hpp"
#include "hml/grid.hpp"
#include "hml/hankel.hpp"
#include "hml/harness.hpp"
#include "hml/measure.hpp"
#include "hml/report.hpp"

namespace hml {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builtin defaults. A config file named by HML_CONFIG overrides these;
// command-line flags override both.
constexpr long kDefaultN = 1024;
constexpr int kDefaultGridJ = 40;
constexpr int kGridJCondition2 = 28;      // J=40 would need a ~5e7-term tail-safe sequence
constexpr int kGridJCounterexample = 14;  // the saturation window for the Bloch ladder
constexpr int kGridJFamilyScan = 28;
constexpr int kDefaultAngles = 256;
constexpr int kDefaultQuadR = 256;
constexpr int kDefaultQuadA = 512;
constexpr double kDefaultTol = 1e-10;
constexpr long kDefaultMaxIter = 100000;
constexpr int kDefaultDepth = 16;
constexpr double kDefaultThreshold = 100.0;
constexpr int kDefaultK = 5;
constexpr int kDefaultSamples = 100;
constexpr int kDefaultTrials = 200;
constexpr int kDefaultDegree = 32;
constexpr const char* kDefaultSList = "-0.75,-0.5,-0.25,0,0.5,1";
constexpr const char* kDefaultNList = "1,2,16,64,256,1024,2048";

double parse_double_token(const std::string& tok) {
    if (tok.empty()) throw UsageError("expected a number, got an empty token");
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) throw UsageError("not a number: '" + tok + "'");
    return v;
}

long parse_long_token(const std::string& tok) {
    if (tok.empty()) throw UsageError("expected an integer, got an empty token");
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size()) throw UsageError("not an integer: '" + tok + "'");
    return v;
}

std::uint64_t parse_seed_token(const std::string& tok) {
    if (tok.empty()) throw UsageError("expected an integer, got an empty token");
    char* end = nullptr;
    std::uint64_t v = std::strtoull(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size()) throw UsageError("not an integer: '" + tok + "'");
    return v;
}

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

template <class T, class F>
std::vector<T> parse_list(const std::string& text, F&& one) {
    std::vector<T> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string tok = trimmed(comma == std::string::npos ? text.substr(pos)
                                                             : text.substr(pos, comma - pos));
        out.push_back(one(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double17(v[i]);
    }
    return s;
}

std::string join_longs(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// Config file values, consulted only for flags the user did not pass.
class Settings {
  public:
    explicit Settings(std::map<std::string, std::string> cfg) : cfg_(std::move(cfg)) {}

    bool has(const std::string& key) const { return cfg_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& fallback) const {
        auto it = cfg_.find(key);
        return it == cfg_.end() ? fallback : it->second;
    }

    double num(const std::string& key, double fallback) const {
        auto it = cfg_.find(key);
        if (it == cfg_.end()) return fallback;
        try {
            return parse_double_token(it->second);
        } catch (const UsageError&) {
            throw UsageError("config value for '" + key + "' is not a number: " + it->second);
        }
    }

    long integer(const std::string& key, long fallback) const {
        auto it = cfg_.find(key);
        if (it == cfg_.end()) return fallback;
        try {
            return parse_long_token(it->second);
        } catch (const UsageError&) {
            throw UsageError("config value for '" + key + "' is not an integer: " + it->second);
        }
    }

    std::uint64_t uinteger(const std::string& key, std::uint64_t fallback) const {
        auto it = cfg_.find(key);
        if (it == cfg_.end()) return fallback;
        try {
            return parse_seed_token(it->second);
        } catch (const UsageError&) {
            throw UsageError("config value for '" + key + "' is not an integer: " + it->second);
        }
    }

  private:
    std::map<std::string, std::string> cfg_;
};

bool given(const CLI::App* sub, const std::string& flag) {
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct Emit {
    std::string format;
    std::string output;
    std::ostream& out;
    std::ostream& err;

    // Closes the command echo and renders. Returns `code`, or 2 when the
    // output file cannot be written.
    int write(ReportDocument& doc, int code) const {
        doc.command.emplace_back("format", format);
        if (!output.empty()) doc.command.emplace_back("output", output);
        const std::string text = format == "csv" ? to_csv(doc) : to_json(doc);
        if (output.empty()) {
            out << text;
            return code;
        }
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            err << "cannot open output file: " << output << "\n";
            return 2;
        }
        f << text;
        f.close();
        if (!f) {
            err << "write failed: " << output << "\n";
            return 2;
        }
        return code;
    }
};

ordered_json table_json(const std::vector<std::string>& columns) {
    ordered_json t = ordered_json::object();
    t["columns"] = columns;
    t["rows"] = ordered_json::array();
    return t;
}

int numerical_failure(ReportDocument& doc, const Emit& emit, const std::string& type,
                      const std::string& message, const ordered_json& extra) {
    ordered_json e = ordered_json::object();
    e["type"] = type;
    e["message"] = message;
    for (const auto& item : extra.items()) e[item.key()] = item.value();
    doc.payload = ordered_json::object();
    doc.payload["error"] = e;
    doc.provenance = {"run aborted, see payload.error"};
    emit.write(doc, 3);
    return 3;
}

template <class Body>
int with_numerical_guard(ReportDocument& doc, const Emit& emit, Body&& body) {
    try {
        return body();
    } catch (const NonConvergenceError& e) {
        ordered_json info = ordered_json::object();
        info["iterations"] = e.iterations;
        info["last_value"] = e.last_value;
        return numerical_failure(doc, emit, "non-convergence", e.what(), info);
    } catch (const TailBoundError& e) {
        return numerical_failure(doc, emit, "tail-bound", e.what(), ordered_json::object());
    } catch (const QuadratureError& e) {
        return numerical_failure(doc, emit, "quadrature-self-check", e.what(),
                                 ordered_json::object());
    }
}

void fill_criterion_payload(ReportDocument& doc, const CriterionReport& rep, const char* xcol,
                            const char* ycol) {
    doc.payload["value"] = rep.value;
    doc.payload["argmax_re"] = rep.argmax.real();
    doc.payload["argmax_im"] = rep.argmax.imag();
    doc.payload["samples"] = rep.samples;
    doc.payload["err_estimate"] = rep.err_estimate;
    ordered_json table = table_json({xcol, ycol});
    for (const auto& [x, y] : rep.profile) table["rows"].push_back({x, y});
    doc.payload["table"] = std::move(table);
}

MomentSequence complete_conjugate_sequence(const DiskDensityMeasure& nu) {
    return conjugate_moment_sequence(nu, static_cast<long>(nu.coeffs.size()) - 1);
}

int cmd_moments(const std::string& spec, long N, const Emit& emit) {
    if (N < 0) throw UsageError("N must be >= 0");
    ParsedMeasure pm = parse_measure_spec(spec);
    ReportDocument doc;
    doc.command = {{"subcommand", "moments"}, {"measure", pm.canonical}, {"N", std::to_string(N)}};
    return with_numerical_guard(doc, emit, [&]() -> int {
        auto t0 = std::chrono::steady_clock::now();
        doc.payload["measure"] = pm.canonical;
        doc.payload["N"] = N;
        if (pm.is_radial()) {
            MomentSequence m = moment_sequence(pm.radial(), N);
            ordered_json table = table_json({"n", "moment", "scaled"});
            for (long n = 0; n <= N; ++n) {
                double v = m.values[static_cast<std::size_t>(n)].real();
                table["rows"].push_back({n, v, static_cast<double>(n + 1) * v});
            }
            doc.payload["table"] = std::move(table);
            doc.provenance = {"moments in closed form"};
        } else {
            ordered_json table =
                table_json({"n", "moment_re", "moment_im", "scaled_re", "scaled_im"});
            for (long n = 0; n <= N; ++n) {
                cplx v = conjugate_moment(pm.density(), n);
                table["rows"].push_back({n, v.real(), v.imag(),
                                         static_cast<double>(n + 1) * v.real(),
                                         static_cast<double>(n + 1) * v.imag()});
            }
            doc.payload["table"] = std::move(table);
            doc.provenance = {"conjugate moments of the density in closed form"};
        }
        doc.duration_ms = elapsed_ms(t0);
        return emit.write(doc, 0);
    });
}

int cmd_criterion(const std::string& name, const std::string& spec, int J, int A, int R, int QA,
                  int depth, double threshold, long N, const Emit& emit) {
    ParsedMeasure pm = parse_measure_spec(spec);
    ReportDocument doc;
    doc.command = {{"subcommand", "criterion"}, {"name", name}, {"measure", pm.canonical}};
    if (name == "condition2") {
        doc.command.emplace_back("grid-J", std::to_string(J));
        doc.command.emplace_back("grid-angles", std::to_string(A));
    } else if (name == "carleson-kernel") {
        doc.command.emplace_back("grid-J", std::to_string(J));
        doc.command.emplace_back("grid-angles", std::to_string(A));
        doc.command.emplace_back("quad-R", std::to_string(R));
        doc.command.emplace_back("quad-angles", std::to_string(QA));
    } else if (name == "carleson-box") {
        doc.command.emplace_back("depth", std::to_string(depth));
    } else if (name == "box4") {
        doc.command.emplace_back("depth", std::to_string(depth));
        doc.command.emplace_back("quad-R", std::to_string(R));
        doc.command.emplace_back("quad-angles", std::to_string(QA));
    } else {  // moment-decay
        doc.command.emplace_back("N", std::to_string(N));
        doc.command.emplace_back("threshold", format_double17(threshold));
    }

    auto require_radial = [&]() -> const RadialMeasure& {
        if (!pm.is_radial())
            throw UsageError("criterion '" + name + "' needs a radial measure, got a density");
        return pm.radial();
    };

    return with_numerical_guard(doc, emit, [&]() -> int {
        auto t0 = std::chrono::steady_clock::now();
        doc.payload["criterion"] = name;
        doc.payload["measure"] = pm.canonical;
        if (name == "condition2") {
            DiskGrid grid = DiskGrid::standard(J, A);
            MomentSequence m =
                pm.is_radial()
                    ? moment_sequence(pm.radial(),
                                      condition2_required_length(pm.radial(), grid.radii.back()))
                    : complete_conjugate_sequence(pm.density());
            CriterionReport rep = condition2_sup(m, grid);
            fill_criterion_payload(doc, rep, "radius", "max_value");
            doc.provenance = {"compensated series sum per radius, geometric tail bound"};
        } else if (name == "carleson-kernel") {
            const RadialMeasure& mu = require_radial();
            CriterionReport rep =
                carleson_kernel_sup(mu, DiskGrid::standard(J, A),
                                    QuadratureScheme::gauss_legendre(R, QA));
            fill_criterion_payload(doc, rep, "radius", "max_value");
            doc.provenance = {"graded panel quadrature with embedded coarse error estimate"};
        } else if (name == "carleson-box") {
            const RadialMeasure& mu = require_radial();
            if (depth < 0 || depth > 60) throw UsageError("depth must be in [0, 60]");
            ordered_json table = table_json({"depth", "half_side", "ratio"});
            double best = 0.0;
            long best_j = 0;
            for (int j = 0; j <= depth; ++j) {
                double h = std::ldexp(1.0, -j);
                double ratio = tail_mass(mu, h) / h;
                if (ratio > best) {
                    best = ratio;
                    best_j = j;
                }
                table["rows"].push_back({j, h, ratio});
            }
            doc.payload["value"] = best;
            doc.payload["argmax_depth"] = best_j;
            doc.payload["samples"] = static_cast<long>(depth) + 1;
            doc.payload["table"] = std::move(table);
            doc.provenance = {"tail masses in closed form"};
        } else if (name == "box4") {
            MomentSequence m = pm.is_radial() ? moment_sequence(pm.radial(), 16)
                                              : complete_conjugate_sequence(pm.density());
            CriterionReport rep =
                box_condition4(m, depth, QuadratureScheme::gauss_legendre(R, QA));
            fill_criterion_payload(doc, rep, "generation", "box_value");
            doc.provenance = {"per-box polar quadrature, graded toward the boundary"};
        } else {  // moment-decay
            if (N < 1) throw UsageError("N must be >= 1");
            MomentSequence m = pm.is_radial() ? moment_sequence(pm.radial(), N)
                                              : complete_conjugate_sequence(pm.density());
            DecayTest dt = moment_decay_test(m, threshold);
            doc.payload["N"] = static_cast<long>(m.values.size()) - 1;
            doc.payload["sup"] = dt.sup;
            doc.payload["threshold"] = threshold;
            doc.payload["exceeded"] = dt.exceeded;
            doc.provenance = {"scaled moments scanned directly"};
        }
        doc.duration_ms = elapsed_ms(t0);
        return emit.write(doc, 0);
    });
}

int cmd_opnorm(const std::string& spec, const std::string& space, const std::vector<long>& sizes,
               bool single, double tol, long max_iter, const Emit& emit) {
    ParsedMeasure pm = parse_measure_spec(spec);
    if (!pm.is_radial()) throw UsageError("opnorm needs a radial measure, got a density");
    bool h2 = space == "h2";
    double alpha = 0.0;
    if (!h2) {
        if (space.rfind("dalpha:", 0) != 0)
            throw UsageError("space must be h2 or dalpha:<alpha>, got '" + space + "'");
        alpha = parse_double_token(space.substr(7));
    }
    const std::string canon_space = h2 ? "h2" : "dalpha:" + format_double17(alpha);

    ReportDocument doc;
    doc.command = {{"subcommand", "opnorm"}, {"measure", pm.canonical}, {"space", canon_space}};
    if (single)
        doc.command.emplace_back("N", std::to_string(sizes[0]));
    else
        doc.command.emplace_back("N-list", join_longs(sizes));
    doc.command.emplace_back("tol", format_double17(tol));
    doc.command.emplace_back("max-iter", std::to_string(max_iter));

    return with_numerical_guard(doc, emit, [&]() -> int {
        auto t0 = std::chrono::steady_clock::now();
        doc.payload["measure"] = pm.canonical;
        doc.payload["space"] = canon_space;
        ordered_json table = table_json({"N", "value", "iterations", "residual"});
        NormReport last;
        for (long Nk : sizes) {
            HankelOperator H = hankel_build(pm.radial(), Nk);
            last = h2 ? operator_norm_h2(H, tol, max_iter)
                      : operator_norm_dalpha(H, alpha, tol, max_iter);
            table["rows"].push_back({Nk, last.value, last.iterations, last.residual});
        }
        if (single) {
            doc.payload["N"] = sizes[0];
            doc.payload["value"] = last.value;
            doc.payload["iterations"] = last.iterations;
            doc.payload["residual"] = last.residual;
        }
        doc.payload["table"] = std::move(table);
        doc.provenance = {"power iteration on the normal operator, FFT apply"};
        doc.duration_ms = elapsed_ms(t0);
        return emit.write(doc, 0);
    });
}

struct ExperimentParams {
    std::string name;
    std::string measure;
    int K = kDefaultK;
    int samples = kDefaultSamples;
    int trials = kDefaultTrials;
    int degree = kDefaultDegree;
    std::uint64_t seed = 0;
    std::vector<double> s_list;
    std::vector<long> N_list;
    long N = kDefaultN;
    int grid_J = kDefaultGridJ;
    int angles = kDefaultAngles;
    int quad_R = kDefaultQuadR;
    int quad_A = kDefaultQuadA;
    int depth = kDefaultDepth;
    double tol = kDefaultTol;
};

int cmd_experiment(const ExperimentParams& p, const Emit& emit) {
    ReportDocument doc;
    doc.command = {{"subcommand", "experiment"}, {"name", p.name}};
    return with_numerical_guard(doc, emit, [&]() -> int {
        ExperimentReport rep;
        if (p.name == "identity") {
            if (p.samples < 1) throw UsageError("samples must be >= 1");
            ParsedMeasure pm = parse_measure_spec(p.measure);
            doc.command.emplace_back("measure", pm.canonical);
            doc.command.emplace_back("samples", std::to_string(p.samples));
            doc.command.emplace_back("seed", std::to_string(p.seed));
            MomentSequence m =
                pm.is_radial()
                    ? moment_sequence(pm.radial(), condition2_required_length(pm.radial(), 0.99))
                    : complete_conjugate_sequence(pm.density());
            rep = run_identity_check(m, p.samples, p.seed);
            doc.provenance = {"derivative route against direct series route, no shared code"};
        } else if (p.name == "counterexample") {
            doc.command.emplace_back("K", std::to_string(p.K));
            doc.command.emplace_back("grid-J", std::to_string(p.grid_J));
            doc.command.emplace_back("grid-angles", std::to_string(p.angles));
            doc.command.emplace_back("quad-R", std::to_string(p.quad_R));
            doc.command.emplace_back("quad-angles", std::to_string(p.quad_A));
            rep = run_counterexample(p.K, DiskGrid::standard(p.grid_J, p.angles),
                                     QuadratureScheme::gauss_legendre(p.quad_R, p.quad_A));
            doc.provenance = {"closed-form conjugate moments cross-checked by quadrature"};
        } else if (p.name == "family-scan") {
            doc.command.emplace_back("s-list", join_doubles(p.s_list));
            doc.command.emplace_back("N", std::to_string(p.N));
            doc.command.emplace_back("grid-J", std::to_string(p.grid_J));
            doc.command.emplace_back("grid-angles", std::to_string(p.angles));
            doc.command.emplace_back("quad-R", std::to_string(p.quad_R));
            doc.command.emplace_back("quad-angles", std::to_string(p.quad_A));
            doc.command.emplace_back("depth", std::to_string(p.depth));
            rep = run_power_family_scan(p.s_list, p.N, DiskGrid::standard(p.grid_J, p.angles),
                                        QuadratureScheme::gauss_legendre(p.quad_R, p.quad_A),
                                        p.depth);
            doc.provenance = {"three-point refinement ladders per criterion"};
        } else if (p.name == "hilbert") {
            doc.command.emplace_back("N-list", join_longs(p.N_list));
            doc.command.emplace_back("tol", format_double17(p.tol));
            rep = run_hilbert_convergence(p.N_list, p.tol);
            doc.provenance = {"power iteration against closed-form small sections"};
        } else {  // pairing
            if (p.trials < 1) throw UsageError("trials must be >= 1");
            if (p.degree < 1) throw UsageError("degree must be >= 1");
            ParsedMeasure pm = parse_measure_spec(p.measure);
            if (!pm.is_radial())
                throw UsageError("experiment 'pairing' needs a radial measure, got a density");
            doc.command.emplace_back("measure", pm.canonical);
            doc.command.emplace_back("degree", std::to_string(p.degree));
            doc.command.emplace_back("trials", std::to_string(p.trials));
            doc.command.emplace_back("seed", std::to_string(p.seed));
            rep = run_pairing_probe(pm.radial(), p.degree, p.trials, p.seed);
            doc.provenance = {"random polynomial probes against the quadratic form constant"};
        }
        doc.payload = rep.payload();
        doc.duration_ms = rep.duration_ms;
        return emit.write(doc, rep.pass ? 0 : 1);
    });
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::map<std::string, std::string> raw_cfg;
    try {
        raw_cfg = load_config_env();
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        Settings cfg(std::move(raw_cfg));

        CLI::App app{"numerical laboratory for Hankel measures on the unit disk"};
        app.name("hml");
        app.require_subcommand(1);

        std::string measure;
        std::string space = "h2";
        std::string format;
        std::string output;
        std::string s_list_str;
        std::string n_list_str;
        std::string criterion_name;
        std::string experiment_name;
        long N = kDefaultN;
        long max_iter = kDefaultMaxIter;
        int grid_J = kDefaultGridJ;
        int angles = kDefaultAngles;
        int quad_R = kDefaultQuadR;
        int quad_A = kDefaultQuadA;
        int depth = kDefaultDepth;
        int K = kDefaultK;
        int samples = kDefaultSamples;
        int trials = kDefaultTrials;
        int degree = kDefaultDegree;
        double tol = kDefaultTol;
        double threshold = kDefaultThreshold;
        std::uint64_t seed = 0;

        const std::string measure_help =
            "measure spec: lebesgue | powerweight:s=<s> | atoms:[(t,m),...] | counterexample:K=<k>";

        auto add_io = [&](CLI::App* sub) {
            sub->add_option("--format", format, "json | csv (default json)");
            sub->add_option("-o,--output", output, "write the report to this file, not stdout");
        };
        auto add_grid = [&](CLI::App* sub, const char* jhelp) {
            sub->add_option("-J,--grid-J", grid_J, jhelp);
            sub->add_option("--grid-angles", angles, "grid angle count (default 256)");
        };
        auto add_quad = [&](CLI::App* sub) {
            sub->add_option("-R,--quad-R", quad_R, "radial quadrature nodes (default 256)");
            sub->add_option("--quad-angles", quad_A, "quadrature angle count (default 512)");
        };

        CLI::App* mo = app.add_subcommand("moments", "tabulate mu[n] and (n+1) mu[n]");
        mo->add_option("-m,--measure", measure, measure_help)->required();
        mo->add_option("-N,--N", N, "top order (default 1024)");
        add_io(mo);

        CLI::App* cr =
            app.add_subcommand("criterion", "evaluate a boundedness criterion over a grid");
        cr->add_option("name", criterion_name,
                       "condition2 | carleson-kernel | carleson-box | box4 | moment-decay")
            ->required()
            ->check(CLI::IsMember(
                {"condition2", "carleson-kernel", "carleson-box", "box4", "moment-decay"}));
        cr->add_option("-m,--measure", measure, measure_help)->required();
        add_grid(cr, "boundary ladder depth (default 28 for condition2, 40 otherwise)");
        add_quad(cr);
        cr->add_option("--depth", depth, "dyadic depth for the box criteria (default 16)");
        cr->add_option("--threshold", threshold, "moment-decay threshold (default 100)");
        cr->add_option("-N,--N", N, "moment count for moment-decay (default 1024)");
        add_io(cr);

        CLI::App* on = app.add_subcommand("opnorm", "operator norm of the size-N section");
        on->add_option("-m,--measure", measure, measure_help)->required();
        on->add_option("--space", space, "h2 | dalpha:<alpha> (default h2)");
        on->add_option("-N,--N", N, "section size (default 1024)");
        on->add_option("--N-list", n_list_str, "comma list of sizes; emits the full profile");
        on->add_option("--tol", tol, "relative convergence tolerance (default 1e-10)");
        on->add_option("--max-iter", max_iter, "iteration cap per run (default 100000)");
        add_io(on);

        CLI::App* ex = app.add_subcommand("experiment", "run a scripted experiment");
        ex->add_option("name", experiment_name,
                       "identity | counterexample | family-scan | hilbert | pairing")
            ->required()
            ->check(CLI::IsMember(
                {"identity", "counterexample", "family-scan", "hilbert", "pairing"}));
        ex->add_option("-m,--measure", measure,
                       "measure for identity/pairing (default lebesgue)");
        ex->add_option("-K,--K", K, "lacunary family size (default 5)");
        ex->add_option("--samples", samples, "identity sample count (default 100)");
        ex->add_option("--seed", seed, "RNG seed (default 0)");
        ex->add_option("--trials", trials, "pairing trial count (default 200)");
        ex->add_option("--degree", degree, "pairing polynomial degree (default 32)");
        ex->add_option("--s-list", s_list_str,
                       "family-scan exponents (default -0.75,-0.5,-0.25,0,0.5,1)");
        ex->add_option("--N-list", n_list_str,
                       "hilbert section sizes (default 1,2,16,64,256,1024,2048)");
        ex->add_option("-N,--N", N, "family-scan base length (default 1024)");
        add_grid(ex, "boundary ladder depth (default 14 counterexample, 28 family-scan)");
        add_quad(ex);
        ex->add_option("--depth", depth, "family-scan box depth (default 16)");
        ex->add_option("--tol", tol, "hilbert convergence tolerance (default 1e-10)");
        add_io(ex);

        std::vector<std::string> argv_store;
        argv_store.reserve(args.size() + 1);
        argv_store.push_back("hml");
        argv_store.insert(argv_store.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        argv.reserve(argv_store.size());
        for (const std::string& s : argv_store) argv.push_back(s.c_str());

        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            const CLI::App* target = &app;
            for (const CLI::App* sub : app.get_subcommands()) target = sub;
            out << target->help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << "\n";
            return 2;
        }

        CLI::App* sub = mo->parsed() ? mo : cr->parsed() ? cr : on->parsed() ? on : ex;
        const std::string fmt = given(sub, "--format") ? format : cfg.str("format", "json");
        if (fmt != "json" && fmt != "csv")
            throw UsageError("format must be json or csv, got '" + fmt + "'");
        const Emit emit{fmt, given(sub, "--output") ? output : "", out, err};

        if (mo->parsed()) {
            long n_top = given(mo, "--N") ? N : cfg.integer("N", kDefaultN);
            return cmd_moments(measure, n_top, emit);
        }

        if (cr->parsed()) {
            long j_builtin = criterion_name == "condition2" ? kGridJCondition2 : kDefaultGridJ;
            int J = given(cr, "--grid-J") ? grid_J
                                          : static_cast<int>(cfg.integer("grid-J", j_builtin));
            int A = given(cr, "--grid-angles")
                        ? angles
                        : static_cast<int>(cfg.integer("grid-angles", kDefaultAngles));
            int R = given(cr, "--quad-R") ? quad_R
                                          : static_cast<int>(cfg.integer("quad-R", kDefaultQuadR));
            int QA = given(cr, "--quad-angles")
                         ? quad_A
                         : static_cast<int>(cfg.integer("quad-angles", kDefaultQuadA));
            int d = given(cr, "--depth") ? depth
                                         : static_cast<int>(cfg.integer("depth", kDefaultDepth));
            double th = given(cr, "--threshold") ? threshold
                                                 : cfg.num("threshold", kDefaultThreshold);
            long n_len = given(cr, "--N") ? N : cfg.integer("N", kDefaultN);
            return cmd_criterion(criterion_name, measure, J, A, R, QA, d, th, n_len, emit);
        }

        if (on->parsed()) {
            std::string sp = given(on, "--space") ? space : cfg.str("space", "h2");
            double t = given(on, "--tol") ? tol : cfg.num("tol", kDefaultTol);
            long mi = given(on, "--max-iter") ? max_iter : cfg.integer("max-iter", kDefaultMaxIter);
            std::vector<long> sizes;
            bool single = false;
            if (given(on, "--N-list")) {
                sizes = parse_list<long>(n_list_str, parse_long_token);
            } else if (cfg.has("N-list") && !given(on, "--N")) {
                sizes = parse_list<long>(cfg.str("N-list", ""), parse_long_token);
            } else {
                sizes = {given(on, "--N") ? N : cfg.integer("N", kDefaultN)};
                single = true;
            }
            return cmd_opnorm(measure, sp, sizes, single, t, mi, emit);
        }

        ExperimentParams p;
        p.name = experiment_name;
        p.measure = given(ex, "--measure") ? measure : cfg.str("measure", "lebesgue");
        p.K = given(ex, "--K") ? K : static_cast<int>(cfg.integer("K", kDefaultK));
        p.samples = given(ex, "--samples")
                        ? samples
                        : static_cast<int>(cfg.integer("samples", kDefaultSamples));
        p.trials =
            given(ex, "--trials") ? trials : static_cast<int>(cfg.integer("trials", kDefaultTrials));
        p.degree =
            given(ex, "--degree") ? degree : static_cast<int>(cfg.integer("degree", kDefaultDegree));
        p.seed = given(ex, "--seed") ? seed : cfg.uinteger("seed", 0);
        p.s_list = parse_list<double>(
            given(ex, "--s-list") ? s_list_str : cfg.str("s-list", kDefaultSList),
            parse_double_token);
        p.N_list = parse_list<long>(
            given(ex, "--N-list") ? n_list_str : cfg.str("N-list", kDefaultNList),
            parse_long_token);
        p.N = given(ex, "--N") ? N : cfg.integer("N", kDefaultN);
        long j_builtin = experiment_name == "counterexample" ? kGridJCounterexample
                         : experiment_name == "family-scan"  ? kGridJFamilyScan
                                                             : kDefaultGridJ;
        p.grid_J =
            given(ex, "--grid-J") ? grid_J : static_cast<int>(cfg.integer("grid-J", j_builtin));
        p.angles = given(ex, "--grid-angles")
                       ? angles
                       : static_cast<int>(cfg.integer("grid-angles", kDefaultAngles));
        p.quad_R =
            given(ex, "--quad-R") ? quad_R : static_cast<int>(cfg.integer("quad-R", kDefaultQuadR));
        p.quad_A = given(ex, "--quad-angles")
                       ? quad_A
                       : static_cast<int>(cfg.integer("quad-angles", kDefaultQuadA));
        p.depth =
            given(ex, "--depth") ? depth : static_cast<int>(cfg.integer("depth", kDefaultDepth));
        p.tol = given(ex, "--tol") ? tol : cfg.num("tol", kDefaultTol);
        return cmd_experiment(p, emit);
    } catch (const SpecParseError& e) {
        err << "measure spec error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc) - 1 : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_run(args, std::cout, std::cerr);
}

}  // namespace hml
