#include "hml/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hml/analytic.hpp"
#include "hml/criteria.hpp"
#include "hml/hankel.hpp"
#include "hml/rng.hpp"

namespace hml {

void ExperimentReport::assert_that(const std::string& assertion, bool ok,
                                   const std::string& detail) {
    assertions.push_back({{"name", assertion}, {"pass", ok}, {"detail", detail}});
    pass = pass && ok;
}

ordered_json ExperimentReport::payload() const {
    ordered_json p;
    p["name"] = name;
    p["parameters"] = parameters;
    p["steps"] = steps;
    p["assertions"] = assertions;
    p["pass"] = pass;
    return p;
}

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

ordered_json grid_params(const DiskGrid& grid) {
    return {{"radii", grid.radii.size()},
            {"r_max", grid.radii.back()},
            {"angles", grid.angles}};
}

ordered_json quad_params(const QuadratureScheme& quad) {
    return {{"radial", quad.radial_nodes.size()}, {"angular", quad.angular}};
}

}  // namespace

ExperimentReport run_identity_check(const MomentSequence& m, int sample_count,
                                    std::uint64_t seed) {
    if (sample_count < 1) throw std::domain_error("run_identity_check: sample_count must be positive");
    Stopwatch clock;
    ExperimentReport rep;
    rep.name = "identity";
    rep.parameters = {{"source", m.source},
                      {"stored_N", m.values.size() - 1},
                      {"sample_count", sample_count},
                      {"seed", seed}};
    // Left side: derivative of z * P(z) evaluated by the generic Horner rule.
    CoeffSeries q;
    q.a.assign(m.values.size() + 1, cplx(0.0, 0.0));
    for (size_t n = 0; n < m.values.size(); ++n) q.a[n + 1] = m.values[n];
    DetRng rng(seed);
    double max_dev = 0.0;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < sample_count; ++i) {
        const cplx w = rng.disk_point(0.99);
        const double lhs = (1.0 - std::norm(w)) * std::abs(eval_derivative(q, w));
        const double rhs = condition2_value(m, w);
        const double dev = std::abs(lhs - rhs);
        max_dev = std::max(max_dev, dev);
        rows.push_back({{"i", i},
                        {"w_re", w.real()},
                        {"w_im", w.imag()},
                        {"derivative_form", lhs},
                        {"series_form", rhs},
                        {"dev", dev}});
    }
    rep.steps.push_back({{"name", "samples"}, {"rows", rows}});
    rep.steps.push_back({{"name", "summary"}, {"max_dev", max_dev}});
    rep.assert_that("identity_max_dev_le_1e-10", max_dev <= 1e-10,
                    "max deviation " + std::to_string(max_dev));
    rep.duration_ms = clock.ms();
    return rep;
}

ExperimentReport run_counterexample(int K, const DiskGrid& grid, const QuadratureScheme& quad) {
    if (K < 1 || K > 12) throw std::domain_error("run_counterexample: K must lie in 1..12");
    validate(grid);
    validate(quad);
    Stopwatch clock;
    ExperimentReport rep;
    rep.name = "counterexample";
    rep.parameters = {{"K", K}, {"grid", grid_params(grid)}, {"quad", quad_params(quad)}};

    const auto nu = counterexample_density(K);
    const long degree = static_cast<long>(nu.coeffs.size()) - 1;

    // (a) closed vs quadrature conjugate moments; angular count is raised
    // past the density's degree so no coefficient aliases into the range.
    {
        const int R = std::max<int>(static_cast<int>(quad.radial_nodes.size()),
                                    static_cast<int>(1 << std::max(0, K - 1)) + 64);
        const int A = std::max<int>(quad.angular,
                                    static_cast<int>(next_pow2(static_cast<size_t>(degree) + 65)));
        const auto upscaled = QuadratureScheme::gauss_legendre(R, A);
        const long nmax = 1L << std::min(K, 6);
        double max_dev = 0.0;
        ordered_json rows = ordered_json::array();
        for (long n = 0; n <= nmax; ++n) {
            const cplx closed = conjugate_moment(nu, n);
            const auto q = conjugate_moment_quadrature(nu, n, upscaled);
            const double dev = std::abs(closed - q.value);
            max_dev = std::max(max_dev, dev);
            rows.push_back({{"n", n},
                            {"closed", closed.real()},
                            {"quadrature", q.value.real()},
                            {"quadrature_err_estimate", q.err_estimate},
                            {"dev", dev}});
        }
        rep.steps.push_back({{"name", "conjugate_moments"},
                             {"upscaled_radial", R},
                             {"upscaled_angular", A},
                             {"rows", rows}});
        rep.assert_that("conjugate_moments_quadrature_matches_closed", max_dev <= 1e-8,
                        "max deviation " + std::to_string(max_dev));
    }

    // Sweep series P(w) = 1 + sum_{k<=K'} w^(2^k) for each truncation K'.
    std::vector<CoeffSeries> sweep(static_cast<size_t>(K) + 1);
    for (int Kp = 1; Kp <= K; ++Kp) {
        const auto nup = counterexample_density(Kp);
        sweep[static_cast<size_t>(Kp)] =
            p_mu_series(conjugate_moment_sequence(nup, static_cast<long>(nup.coeffs.size()) - 1));
    }

    // (b) Bloch seminorms stay under 3 and saturate in K.
    {
        std::vector<double> v(static_cast<size_t>(K) + 1, 0.0);
        ordered_json rows = ordered_json::array();
        bool all_le3 = true;
        for (int Kp = 1; Kp <= K; ++Kp) {
            v[static_cast<size_t>(Kp)] = bloch_seminorm(sweep[static_cast<size_t>(Kp)], grid);
            all_le3 = all_le3 && v[static_cast<size_t>(Kp)] <= 3.0;
            rows.push_back({{"K", Kp}, {"bloch", v[static_cast<size_t>(Kp)]}});
        }
        rep.steps.push_back({{"name", "bloch"}, {"rows", rows}});
        rep.assert_that("bloch_le_3", all_le3, "largest " + std::to_string(*std::max_element(v.begin(), v.end())));
        if (K >= 10) {
            const double jump = std::abs(v[10] - v[9]);
            rep.assert_that("bloch_saturates", jump < 0.01,
                            "|v(10)-v(9)| = " + std::to_string(jump));
        }
    }

    // (c) Lacunary profile of the sweep series: gaps exactly 2, unit
    // coefficients, squared mass exactly K.
    {
        const auto prof = lacunary_profile(sweep[static_cast<size_t>(K)], 2.0);
        rep.steps.push_back({{"name", "lacunary"},
                             {"is_lacunary", prof.is_lacunary},
                             {"sup_coeff", prof.sup_coeff},
                             {"sum_sq", prof.sum_sq}});
        rep.assert_that("lacunary_gap_2", prof.is_lacunary, "");
        rep.assert_that("lacunary_sup_coeff_1", prof.sup_coeff == 1.0,
                        "sup " + std::to_string(prof.sup_coeff));
        rep.assert_that("lacunary_sum_sq_K", prof.sum_sq == static_cast<double>(K),
                        "sum_sq " + std::to_string(prof.sum_sq));
    }

    // (d) q1 seminorms grow strictly in K.
    {
        const auto centers = default_qp_centers();
        std::vector<double> q1(static_cast<size_t>(K) + 1, 0.0);
        ordered_json rows = ordered_json::array();
        bool increasing = true;
        for (int Kp = 1; Kp <= K; ++Kp) {
            q1[static_cast<size_t>(Kp)] =
                qp_seminorm(sweep[static_cast<size_t>(Kp)], 1.0, centers, quad);
            if (Kp > 1 && !(q1[static_cast<size_t>(Kp)] > q1[static_cast<size_t>(Kp) - 1]))
                increasing = false;
            rows.push_back({{"K", Kp}, {"q1", q1[static_cast<size_t>(Kp)]}});
        }
        rep.steps.push_back({{"name", "q1"}, {"rows", rows}});
        rep.assert_that("q1_strictly_increasing", increasing, "");
        if (K >= 10)
            rep.assert_that("q1_unbounded_signal", q1[10] - q1[5] > 0.1,
                            "q1(10)-q1(5) = " + std::to_string(q1[10] - q1[5]));
    }

    // (e) condition-2 suprema stay bounded at every truncation.
    {
        ordered_json rows = ordered_json::array();
        bool bounded = true;
        double worst = 0.0;
        for (int Kp = 1; Kp <= K; ++Kp) {
            const auto nup = counterexample_density(Kp);
            const auto mseq =
                conjugate_moment_sequence(nup, static_cast<long>(nup.coeffs.size()) - 1);
            const auto sup = condition2_sup(mseq, grid);
            bounded = bounded && sup.value < 10.0;
            worst = std::max(worst, sup.value);
            rows.push_back({{"K", Kp}, {"condition2_sup", sup.value}});
        }
        rep.steps.push_back({{"name", "condition2"}, {"rows", rows}});
        rep.assert_that("condition2_sup_lt_10", bounded, "largest " + std::to_string(worst));
    }

    rep.duration_ms = clock.ms();
    return rep;
}

namespace {

std::string ladder_verdict(double coarse, double mid, double fine) {
    if (fine >= 1.5 * coarse) return "grow";
    if (std::abs(fine - mid) < 0.05 * std::abs(fine)) return "plateau";
    return "mixed";
}

// Largest profile value over entries with key <= cutoff; requires at least
// one such entry.
double profile_prefix_max(const std::vector<std::pair<double, double>>& profile, double cutoff) {
    double best = 0.0;
    bool any = false;
    for (const auto& [key, val] : profile) {
        if (key > cutoff) continue;
        best = any ? std::max(best, val) : val;
        any = true;
    }
    if (!any) throw std::invalid_argument("refinement ladder: grid has no entries under cutoff");
    return best;
}

ordered_json ladder_json(double coarse, double mid, double fine) {
    return {{"coarse", coarse},
            {"mid", mid},
            {"fine", fine},
            {"verdict", ladder_verdict(coarse, mid, fine)}};
}

}  // namespace

ExperimentReport run_power_family_scan(const std::vector<double>& s_list, long N,
                                       const DiskGrid& grid, const QuadratureScheme& quad,
                                       int depth) {
    if (s_list.empty()) throw std::domain_error("run_power_family_scan: s_list must not be empty");
    if (N < 4) throw std::domain_error("run_power_family_scan: N must be at least 4");
    if (depth < 4) throw std::domain_error("run_power_family_scan: depth must be at least 4");
    validate(grid);
    validate(quad);
    Stopwatch clock;
    ExperimentReport rep;
    rep.name = "family-scan";
    rep.parameters = {{"s_list", s_list},
                      {"N", N},
                      {"grid", grid_params(grid)},
                      {"quad", quad_params(quad)},
                      {"depth", depth}};

    const double u = 1.0 - grid.radii.back();
    const double cut_mid = 1.0 - 4.0 * u;
    const double cut_coarse = 1.0 - 16.0 * u;

    bool any_mixed = false;
    for (double s : s_list) {
        const RadialMeasure mu = PowerWeight{s};
        const std::string expected = (s >= 0.0) ? "plateau" : "grow";
        ordered_json crit;

        {  // moment decay sup at truncations N/4, N, 4N
            const auto m = moment_sequence(mu, 4 * N);
            double run = 0.0, c = 0.0, d = 0.0;
            for (long n = 0; n <= 4 * N; ++n) {
                run = std::max(run, (static_cast<double>(n) + 1.0) * m.values[static_cast<size_t>(n)].real());
                if (n == N / 4) c = run;
                if (n == N) d = run;
            }
            crit["decay"] = ladder_json(c, d, run);
        }

        {  // condition-2 and kernel suprema, coarser ladders by radius cutoff
            const auto m2 = moment_sequence(mu, condition2_required_length(mu, grid.radii.back()));
            const auto r2 = condition2_sup(m2, grid);
            crit["cond2"] = ladder_json(profile_prefix_max(r2.profile, cut_coarse),
                                        profile_prefix_max(r2.profile, cut_mid), r2.value);
            const auto rk = carleson_kernel_sup(mu, grid, quad);
            crit["kernel"] = ladder_json(profile_prefix_max(rk.profile, cut_coarse),
                                         profile_prefix_max(rk.profile, cut_mid), rk.value);
            const auto r4 = box_condition4(m2, depth, quad);
            crit["box4"] = ladder_json(profile_prefix_max(r4.profile, depth - 4),
                                       profile_prefix_max(r4.profile, depth - 2), r4.value);
        }

        crit["carleson"] = ladder_json(carleson_constant(mu, depth - 4),
                                       carleson_constant(mu, depth - 2),
                                       carleson_constant(mu, depth));

        {  // operator norms on sections 4N, 16N, 64N
            double h2[3], d05[3], d15[3];
            long sizes[3] = {4 * N, 16 * N, 64 * N};
            for (int i = 0; i < 3; ++i) {
                const auto H = hankel_build(mu, sizes[i]);
                h2[i] = operator_norm_h2(H).value;
                d05[i] = operator_norm_dalpha(H, 0.5).value;
                d15[i] = operator_norm_dalpha(H, 1.5).value;
            }
            crit["norm_h2"] = ladder_json(h2[0], h2[1], h2[2]);
            crit["norm_dalpha_0.5"] = ladder_json(d05[0], d05[1], d05[2]);
            crit["norm_dalpha_1.5"] = ladder_json(d15[0], d15[1], d15[2]);
        }

        bool coherent = true;
        for (const auto& [key, lad] : crit.items()) {
            const std::string v = lad["verdict"].get<std::string>();
            if (v == "mixed") any_mixed = true;
            if (v != expected) coherent = false;
        }
        rep.steps.push_back({{"s", s}, {"expected", expected}, {"criteria", crit}});
        rep.assert_that("verdicts_coherent_s=" + std::to_string(s), coherent,
                        coherent ? "" : "at least one criterion disagreed with " + expected);
    }
    rep.assert_that("no_mixed_verdicts", !any_mixed, "");
    rep.duration_ms = clock.ms();
    return rep;
}

ExperimentReport run_hilbert_convergence(const std::vector<long>& N_list, double tol) {
    if (N_list.empty()) throw std::domain_error("run_hilbert_convergence: N_list must not be empty");
    for (size_t i = 0; i < N_list.size(); ++i) {
        if (N_list[i] < 1) throw std::domain_error("run_hilbert_convergence: sizes must be positive");
        if (i > 0 && N_list[i] <= N_list[i - 1])
            throw std::domain_error("run_hilbert_convergence: N_list must be strictly increasing");
    }
    Stopwatch clock;
    ExperimentReport rep;
    rep.name = "hilbert";
    rep.parameters = {{"N_list", N_list}, {"tol", tol}};
    ordered_json rows = ordered_json::array();
    std::vector<double> vals;
    for (long N : N_list) {
        const auto H = hankel_build(Lebesgue{}, N);
        const auto r = operator_norm_h2(H, tol);
        vals.push_back(r.value);
        rows.push_back({{"N", N},
                        {"value", r.value},
                        {"iterations", r.iterations},
                        {"residual", r.residual}});
    }
    rep.steps.push_back({{"name", "norms"}, {"rows", rows}});
    bool increasing = true;
    for (size_t i = 1; i < vals.size(); ++i)
        if (!(vals[i] > vals[i - 1])) increasing = false;
    rep.assert_that("strictly_increasing", increasing, "");
    const double worst = *std::max_element(vals.begin(), vals.end());
    rep.assert_that("below_pi", worst < M_PI, "largest " + std::to_string(worst));
    for (size_t i = 0; i < N_list.size(); ++i) {
        if (N_list[i] == 1)
            rep.assert_that("n1_exact", std::abs(vals[i] - 1.0) <= 1e-12,
                            "value " + std::to_string(vals[i]));
        if (N_list[i] == 2) {
            const double closed = (4.0 + std::sqrt(13.0)) / 6.0;
            rep.assert_that("n2_closed_form", std::abs(vals[i] - closed) <= 1e-9,
                            "value " + std::to_string(vals[i]));
        }
    }
    rep.duration_ms = clock.ms();
    return rep;
}

ExperimentReport run_pairing_probe(const RadialMeasure& mu, int degree, int trials,
                                   std::uint64_t seed) {
    if (degree < 1) throw std::domain_error("run_pairing_probe: degree must be positive");
    if (trials < 1) throw std::domain_error("run_pairing_probe: trials must be positive");
    Stopwatch clock;
    ExperimentReport rep;
    rep.name = "pairing";
    const auto m = moment_sequence(mu, 2L * degree);
    rep.parameters = {{"measure", m.source}, {"degree", degree}, {"trials", trials}, {"seed", seed}};
    const auto H = hankel_build(mu, 2L * degree + 1);
    const double qfc = quadratic_form_constant(H);
    DetRng rng(seed);
    const int A = static_cast<int>(next_pow2(static_cast<size_t>(8 * (2 * degree + 1))));
    double max_ratio_h2 = 0.0, max_ratio_h1 = 0.0;
    ordered_json rows = ordered_json::array();
    for (int t = 0; t < trials; ++t) {
        CoeffSeries f;
        f.a.resize(static_cast<size_t>(degree) + 1);
        for (auto& c : f.a) c = rng.complex_normal();
        CoeffSeries fsq;
        fsq.a.assign(2 * static_cast<size_t>(degree) + 1, cplx(0.0, 0.0));
        for (size_t i = 0; i < f.a.size(); ++i)
            for (size_t j = 0; j < f.a.size(); ++j) fsq.a[i + j] += f.a[i] * f.a[j];
        const double pairing = std::abs(hankel_pairing(fsq, m));
        const double n2 = hardy2_norm(f);
        const double h1 = hardy_p_norm(fsq, 1.0, A);
        const double ratio2 = pairing / (n2 * n2);
        const double ratio1 = pairing / h1;
        max_ratio_h2 = std::max(max_ratio_h2, ratio2);
        max_ratio_h1 = std::max(max_ratio_h1, ratio1);
        rows.push_back({{"trial", t}, {"ratio_h2", ratio2}, {"ratio_h1", ratio1}});
    }
    rep.steps.push_back({{"name", "trials"}, {"rows", rows}});
    rep.steps.push_back({{"name", "summary"},
                         {"quadratic_form_constant", qfc},
                         {"max_ratio_h2", max_ratio_h2},
                         {"max_ratio_h1", max_ratio_h1}});
    rep.assert_that("h2_ratio_bounded_by_constant", max_ratio_h2 <= qfc + 1e-9,
                    "max ratio " + std::to_string(max_ratio_h2) + " vs constant " +
                        std::to_string(qfc));
    rep.duration_ms = clock.ms();
    return rep;
}

}  // namespace hml
