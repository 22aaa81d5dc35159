#include "hml/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "hml/analytic.hpp"
#include "hml/fft.hpp"
#include "hml/special.hpp"

namespace hml {

namespace {

constexpr double kTailBudget = 1e-12;

// sum_{n > L} (n+1) r^n.
double tail_sum(long L, double r) {
    if (r <= 0.0) return 0.0;
    double omr = 1.0 - r;
    return std::pow(r, static_cast<double>(L) + 1.0) * ((L + 2) - (L + 1) * r) / (omr * omr);
}

void check_tail(const MomentSequence& m, double r, const char* where) {
    if (m.complete) return;
    if (m.values.empty()) throw TailBoundError(std::string(where) + ": empty moment sequence");
    const long L = static_cast<long>(m.values.size()) - 1;
    const double bound = std::abs(m.values.back()) * tail_sum(L, r);
    if (!(bound <= kTailBudget))
        throw TailBoundError(std::string(where) + ": moment sequence too short for the tail bound at radius " +
                             std::to_string(r) + " (stored N = " + std::to_string(L) + ")");
}

}  // namespace

double condition2_value(const MomentSequence& m, cplx w) {
    const double r = std::abs(w);
    if (!(r < 1.0)) throw std::domain_error("condition2_value: requires |w| < 1");
    check_tail(m, r, "condition2_value");
    NeumaierSum re, im;
    const bool on_axis = (w.imag() == 0.0 && w.real() >= 0.0);
    const double theta = on_axis ? 0.0 : std::arg(w);
    cplx wp = 1.0;
    double rp = 1.0;
    const size_t len = m.values.size();
    for (size_t n = 0; n < len; ++n) {
        if (n > 0) {
            if (n % 1024 == 0) {
                rp = std::pow(r, static_cast<double>(n));
                if (!on_axis) wp = std::polar(rp, theta * static_cast<double>(n));
            } else {
                rp *= r;
                if (!on_axis) wp *= w;
            }
        }
        const cplx term = (static_cast<double>(n) + 1.0) * m.values[n] * (on_axis ? cplx(rp, 0.0) : wp);
        re.add(term.real());
        im.add(term.imag());
        if (!m.complete && (n % 256 == 255)) {
            // remaining tail <= |h_n| * sum_{k > n-1} (k+1) r^k
            if (std::abs(m.values[n]) * tail_sum(static_cast<long>(n) - 1, r) <= kTailBudget) break;
        }
        if (rp == 0.0 && n > 0) break;
    }
    return (1.0 - r * r) * std::abs(cplx(re.value(), im.value()));
}

CriterionReport condition2_sup(const MomentSequence& m, const DiskGrid& grid) {
    validate(grid);
    check_tail(m, grid.radii.back(), "condition2_sup");
    const int A = grid.angles;
    const size_t len = m.values.size();
    CriterionReport rep;
    rep.err_estimate = kTailBudget;
    std::vector<NeumaierSum> bins_re(static_cast<size_t>(A)), bins_im(static_cast<size_t>(A));
    std::vector<cplx> folded(static_cast<size_t>(A));
    for (double r : grid.radii) {
        std::fill(bins_re.begin(), bins_re.end(), NeumaierSum{});
        std::fill(bins_im.begin(), bins_im.end(), NeumaierSum{});
        double rp = 1.0;
        for (size_t n = 0; n < len; ++n) {
            if (n > 0) {
                if (n % 1024 == 0)
                    rp = std::pow(r, static_cast<double>(n));
                else
                    rp *= r;
            }
            const cplx term = (static_cast<double>(n) + 1.0) * m.values[n] * rp;
            const size_t k = n % static_cast<size_t>(A);
            bins_re[k].add(term.real());
            bins_im[k].add(term.imag());
            if (!m.complete && (n % 256 == 255) &&
                std::abs(m.values[n]) * tail_sum(static_cast<long>(n) - 1, r) <= kTailBudget)
                break;
            if (rp == 0.0 && n > 0) break;
        }
        for (int k = 0; k < A; ++k)
            folded[static_cast<size_t>(k)] =
                cplx(bins_re[static_cast<size_t>(k)].value(), bins_im[static_cast<size_t>(k)].value());
        std::vector<cplx> vals;
        if (is_pow2(static_cast<size_t>(A))) {
            vals = folded;
            ifft_inplace(vals);
            for (auto& v : vals) v *= static_cast<double>(A);
        } else {
            vals = circle_values(folded, 1.0, A);
        }
        double rowmax = 0.0;
        int rowarg = 0;
        for (int a = 0; a < A; ++a) {
            const double v = std::abs(vals[static_cast<size_t>(a)]);
            if (v > rowmax) {
                rowmax = v;
                rowarg = a;
            }
        }
        const double scaled = (1.0 - r * r) * rowmax;
        rep.profile.emplace_back(r, scaled);
        if (scaled > rep.value) {
            rep.value = scaled;
            rep.argmax = std::polar(r, 2.0 * M_PI * rowarg / A);
        }
    }
    rep.samples = static_cast<long>(grid.radii.size()) * A;
    return rep;
}

namespace {

// Composite Gauss-Legendre nodes on t in (0,1) with panels halving toward
// t = 1, carrying the density weight: Lebesgue -> dt, PowerWeight -> (1-t)^s dt.
struct GradedNodes {
    std::vector<double> t;
    std::vector<double> w;
};

GradedNodes graded_nodes(const RadialMeasure& mu, double u_min, int per_panel) {
    const auto* pw = std::get_if<PowerWeight>(&mu);
    std::vector<double> xi, eta;
    gauss_legendre_01(per_panel, xi, eta);
    GradedNodes out;
    double hi = 1.0;
    while (hi > u_min) {
        const double lo = std::max(hi * 0.5, u_min);
        for (int i = 0; i < per_panel; ++i) {
            const double u = lo + (hi - lo) * xi[static_cast<size_t>(i)];
            double wgt = eta[static_cast<size_t>(i)] * (hi - lo);
            if (pw) wgt *= std::pow(u, pw->s);
            out.t.push_back(1.0 - u);
            out.w.push_back(wgt);
        }
        hi = lo;
    }
    return out;
}

double kernel_at(double re_w, double abs2_w, double t) {
    // (1 - |w|^2)/|1 - conj(w) t|^2
    return (1.0 - abs2_w) / (1.0 - 2.0 * t * re_w + t * t * abs2_w);
}

}  // namespace

CriterionReport carleson_kernel_sup(const RadialMeasure& mu, const DiskGrid& grid,
                                    const QuadratureScheme& quad) {
    validate(grid);
    validate(quad);
    validate(mu);
    const auto* atoms = std::get_if<AtomList>(&mu);
    GradedNodes full, coarse;
    double u_min = 0.0;
    if (!atoms) {
        u_min = std::max(1e-14, (1.0 - grid.radii.back()) * 1e-9);
        full = graded_nodes(mu, u_min, 16);
        coarse = graded_nodes(mu, u_min, 8);
    }
    CriterionReport rep;
    double coarse_at_arg = 0.0;
    for (double r : grid.radii) {
        double rowmax = 0.0, rowcoarse = 0.0;
        int rowarg = 0;
        for (int a = 0; a < grid.angles; ++a) {
            const cplx w = std::polar(r, 2.0 * M_PI * a / grid.angles);
            const double re_w = w.real(), abs2_w = r * r;
            double v = 0.0, vc = 0.0;
            if (atoms) {
                for (const auto& at : atoms->atoms) v += at.mass * kernel_at(re_w, abs2_w, at.position);
                vc = v;
            } else {
                NeumaierSum acc;
                for (size_t i = 0; i < full.t.size(); ++i)
                    acc.add(full.w[i] * kernel_at(re_w, abs2_w, full.t[i]));
                v = acc.value();
                for (size_t i = 0; i < coarse.t.size(); ++i)
                    vc += coarse.w[i] * kernel_at(re_w, abs2_w, coarse.t[i]);
            }
            if (v > rowmax) {
                rowmax = v;
                rowcoarse = vc;
                rowarg = a;
            }
        }
        rep.profile.emplace_back(r, rowmax);
        if (rowmax > rep.value) {
            rep.value = rowmax;
            rep.argmax = std::polar(r, 2.0 * M_PI * rowarg / grid.angles);
            coarse_at_arg = rowcoarse;
        }
    }
    rep.samples = static_cast<long>(grid.radii.size()) * grid.angles;
    rep.err_estimate = std::abs(rep.value - coarse_at_arg);
    if (!atoms && !(rep.err_estimate <= 1e-6 * std::max(1.0, std::abs(rep.value))))
        throw QuadratureError("carleson_kernel_sup: graded rule self-check failed (estimate " +
                              std::to_string(rep.err_estimate) + "); weight too singular");
    if (!atoms) {
        // The panels stop at u_min, dropping mass(t > 1-u_min). The kernel is flat
        // across that sliver (u_min << 1-r), so mass times the peak kernel bounds it.
        const double r_arg = std::abs(rep.argmax);
        rep.err_estimate += tail_mass(mu, u_min) * (1.0 + r_arg) / (1.0 - r_arg);
    }
    return rep;
}

namespace {

constexpr int kBoxPanels = 18;  // per-box radial halvings; sliver 2^-18 of the box is dropped

struct BoxGEval {
    // Exactly one of the three backends is active.
    const AtomList* atoms = nullptr;
    const GradedNodes* nodes = nullptr;              // kernel form against a radial density
    const std::vector<cplx>* series = nullptr;       // coefficients (m+1) values[m+1]

    cplx operator()(cplx w) const {
        if (atoms) {
            cplx acc = 0.0;
            for (const auto& at : atoms->atoms) {
                const cplx d = 1.0 - w * at.position;
                acc += at.mass * at.position / (d * d);
            }
            return acc;
        }
        if (nodes) {
            cplx acc = 0.0;
            for (size_t i = 0; i < nodes->t.size(); ++i) {
                const double t = nodes->t[i];
                const cplx d = 1.0 - w * t;
                acc += nodes->w[i] * t / (d * d);
            }
            return acc;
        }
        cplx acc = 0.0;
        for (size_t i = series->size(); i-- > 0;) acc = acc * w + (*series)[i];
        return acc;
    }
};

}  // namespace

CriterionReport box_condition4(const MomentSequence& m, int depth, const QuadratureScheme& quad) {
    if (depth < 0 || depth > 30) throw std::domain_error("box_condition4: depth must lie in 0..30");
    validate(quad);
    const double deepest_u = std::pow(2.0, -static_cast<double>(depth + kBoxPanels));

    GradedNodes nodes;
    std::vector<cplx> series;
    BoxGEval g;
    const AtomList* atoms = m.origin ? std::get_if<AtomList>(&*m.origin) : nullptr;
    if (atoms) {
        g.atoms = atoms;
    } else if (m.origin) {
        nodes = graded_nodes(*m.origin, std::max(1e-16, deepest_u * 1e-3), 16);
        g.nodes = &nodes;
    } else {
        if (m.values.size() < 2)
            throw std::invalid_argument("box_condition4: need at least two moments");
        if (!m.complete) {
            const long M = static_cast<long>(m.values.size()) - 2;
            const double r_deep = 1.0 - deepest_u;
            if (!(std::abs(m.values.back()) * tail_sum(M, r_deep) <= kTailBudget))
                throw TailBoundError(
                    "box_condition4: moment sequence too short for the tail bound at the box's outer radius");
        }
        series.resize(m.values.size() - 1);
        for (size_t i = 0; i + 1 < m.values.size(); ++i)
            series[i] = static_cast<double>(i + 1) * m.values[i + 1];
        g.series = &series;
    }

    std::vector<double> xi16, eta16, xi8, eta8;
    gauss_legendre_01(16, xi16, eta16);
    gauss_legendre_01(8, xi8, eta8);

    CriterionReport rep;
    double coarse_at_arg = 0.0;
    int best_j = 0;
    for (int j = 0; j <= depth; ++j) {
        const int A = std::clamp(quad.angular >> (j + 1), 32, quad.angular);
        const double arc_half = M_PI * std::pow(2.0, -j);
        NeumaierSum v16;
        double v8 = 0.0;
        for (int a = 0; a < A; ++a) {
            const double theta = -arc_half + (a + 0.5) * (2.0 * arc_half / A);
            double hi = std::pow(2.0, -j);
            for (int p = 0; p < kBoxPanels; ++p) {
                const double lo = hi * 0.5;
                for (int i = 0; i < 16; ++i) {
                    const double u = lo + (hi - lo) * xi16[static_cast<size_t>(i)];
                    const double r = 1.0 - u;
                    const cplx w = std::polar(r, theta);
                    v16.add(eta16[static_cast<size_t>(i)] * (hi - lo) * r * std::norm(g(w)) *
                            (1.0 - r * r));
                }
                for (int i = 0; i < 8; ++i) {
                    const double u = lo + (hi - lo) * xi8[static_cast<size_t>(i)];
                    const double r = 1.0 - u;
                    const cplx w = std::polar(r, theta);
                    v8 += eta8[static_cast<size_t>(i)] * (hi - lo) * r * std::norm(g(w)) *
                          (1.0 - r * r);
                }
                hi = lo;
            }
        }
        const double scale = 1.0 / (M_PI * A);
        const double val = scale * v16.value();
        rep.profile.emplace_back(static_cast<double>(j), val);
        rep.samples += static_cast<long>(A) * kBoxPanels * (16 + 8);
        if (val > rep.value) {
            rep.value = val;
            best_j = j;
            coarse_at_arg = scale * v8;
        }
    }
    rep.argmax = cplx(static_cast<double>(best_j), 0.0);
    rep.err_estimate = std::abs(rep.value - coarse_at_arg);
    return rep;
}

DecayTest moment_decay_test(const MomentSequence& m, double threshold) {
    const double sup = moment_decay_sup(m);
    return {sup, sup > threshold};
}

}  // namespace hml
