#include "hml/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hml/fft.hpp"
#include "hml/special.hpp"

namespace hml {

std::vector<cplx> circle_values(const std::vector<cplx>& coeffs, double r, int A,
                                double theta0) {
    if (A < 1) throw std::domain_error("circle_values: need A >= 1");
    if (!(r >= 0.0) || !(r <= 1.0)) throw std::domain_error("circle_values: r must lie in [0,1]");
    std::vector<cplx> folded(static_cast<size_t>(A), cplx(0.0, 0.0));
    // Fold c_m r^m e^{i m theta0} into bin m mod A. The theta0 phase must ride
    // on the original index m, not the bin: only the residual angle 2 pi a / A
    // satisfies w^A = 1, which is what makes the fold valid.
    const bool phased = theta0 != 0.0;
    const cplx step = std::polar(1.0, theta0);
    double rp = 1.0;
    cplx ph(1.0, 0.0);
    for (size_t m = 0; m < coeffs.size(); ++m) {
        if (m > 0) {
            if (m % 1024 == 0) {
                rp = std::pow(r, static_cast<double>(m));
                if (phased) ph = std::polar(1.0, theta0 * static_cast<double>(m));
            } else {
                rp *= r;
                if (phased) ph *= step;
            }
        }
        if (phased)
            folded[m % static_cast<size_t>(A)] += coeffs[m] * ph * rp;
        else
            folded[m % static_cast<size_t>(A)] += coeffs[m] * rp;
        if (rp == 0.0 && m > 0) break;  // past underflow every later term is zero
    }
    if (is_pow2(static_cast<size_t>(A))) {
        ifft_inplace(folded);
        for (auto& v : folded) v *= static_cast<double>(A);
        return folded;
    }
    std::vector<cplx> out(static_cast<size_t>(A));
    for (int a = 0; a < A; ++a) {
        const cplx w = std::polar(1.0, 2.0 * M_PI * a / A);
        cplx acc = 0.0;
        for (int k = A - 1; k >= 0; --k) acc = acc * w + folded[static_cast<size_t>(k)];
        out[static_cast<size_t>(a)] = acc;
    }
    return out;
}

cplx eval(const CoeffSeries& f, cplx w) {
    if (std::abs(w) > 1.0 + 1e-15) throw std::domain_error("eval: requires |w| <= 1");
    cplx acc = 0.0;
    for (size_t i = f.a.size(); i-- > 0;) acc = acc * w + f.a[i];
    return acc;
}

cplx eval_derivative(const CoeffSeries& f, cplx w) {
    if (std::abs(w) >= 1.0) throw std::domain_error("eval_derivative: requires |w| < 1");
    cplx acc = 0.0;
    for (size_t i = f.a.size(); i-- > 1;) acc = acc * w + static_cast<double>(i) * f.a[i];
    return acc;
}

CoeffSeries p_mu_series(const MomentSequence& m) { return CoeffSeries{m.values}; }

cplx mobius(cplx a, cplx z) { return (a - z) / (1.0 - std::conj(a) * z); }

double hardy2_norm(const CoeffSeries& f) {
    NeumaierSum acc;
    for (const auto& c : f.a) acc.add(std::norm(c));
    return std::sqrt(acc.value());
}

double hardy_p_norm(const CoeffSeries& f, double p, int A) {
    if (!(p >= 1.0)) throw std::domain_error("hardy_p_norm: requires p >= 1");
    long need = 4 * (f.degree() + 1);
    if (A < need)
        throw std::invalid_argument("hardy_p_norm: A must be at least 4*(degree+1) = " +
                                    std::to_string(need));
    auto vals = circle_values(f.a, 1.0, A);
    NeumaierSum acc;
    for (const auto& v : vals) acc.add(std::pow(std::abs(v), p));
    return std::pow(acc.value() / static_cast<double>(A), 1.0 / p);
}

double dirichlet_alpha_norm(const CoeffSeries& f, double alpha) {
    NeumaierSum acc;
    for (size_t n = 0; n < f.a.size(); ++n)
        acc.add(std::pow(static_cast<double>(n) + 1.0, 1.0 - alpha) * std::norm(f.a[n]));
    return std::sqrt(acc.value());
}

double bloch_seminorm(const CoeffSeries& f, const DiskGrid& grid) {
    validate(grid);
    if (f.a.size() <= 1) return 0.0;
    std::vector<cplx> d(f.a.size() - 1);
    for (size_t n = 1; n < f.a.size(); ++n) d[n - 1] = static_cast<double>(n) * f.a[n];
    double best = 0.0;
    for (double r : grid.radii) {
        auto vals = circle_values(d, r, grid.angles);
        double m = 0.0;
        for (const auto& v : vals) m = std::max(m, std::abs(v));
        best = std::max(best, (1.0 - r * r) * m);
    }
    return best;
}

namespace {

double qp_seminorm_impl(const CoeffSeries& f, double p, const std::vector<cplx>& a_samples,
                        const QuadratureScheme& quad) {
    if (f.a.size() <= 1) return 0.0;
    std::vector<cplx> d(f.a.size() - 1);
    for (size_t n = 1; n < f.a.size(); ++n) d[n - 1] = static_cast<double>(n) * f.a[n];
    const int A = quad.angular;
    const size_t R = quad.radial_nodes.size();
    // |f'|^2 on the product grid, one row per radial node.
    std::vector<std::vector<double>> deriv_sq(R);
    for (size_t i = 0; i < R; ++i) {
        auto vals = circle_values(d, quad.radial_nodes[i], A);
        deriv_sq[i].resize(static_cast<size_t>(A));
        for (int a = 0; a < A; ++a) deriv_sq[i][static_cast<size_t>(a)] = std::norm(vals[static_cast<size_t>(a)]);
    }
    std::vector<cplx> unit(static_cast<size_t>(A));
    for (int a = 0; a < A; ++a) unit[static_cast<size_t>(a)] = std::polar(1.0, 2.0 * M_PI * a / A);
    double best = 0.0;
    for (const cplx& center : a_samples) {
        const double cfac = 1.0 - std::norm(center);
        NeumaierSum acc;
        for (size_t i = 0; i < R; ++i) {
            const double r = quad.radial_nodes[i];
            const double zfac = cfac * (1.0 - r * r);
            double ring = 0.0;
            for (int a = 0; a < A; ++a) {
                // 1 - |mobius(center, z)|^2 = (1-|center|^2)(1-|z|^2)/|1-conj(center) z|^2
                const cplx z = r * unit[static_cast<size_t>(a)];
                const double den = std::norm(1.0 - std::conj(center) * z);
                double wgt = zfac / den;
                if (wgt < 0.0) wgt = 0.0;
                ring += deriv_sq[i][static_cast<size_t>(a)] * (p == 1.0 ? wgt : std::pow(wgt, p));
            }
            acc.add(quad.radial_weights[i] * r * ring);
        }
        best = std::max(best, 2.0 * acc.value() / static_cast<double>(A));
    }
    return std::sqrt(best);
}

}  // namespace

double qp_seminorm(const CoeffSeries& f, double p, const std::vector<cplx>& a_samples,
                   const QuadratureScheme& quad, double* err_estimate) {
    if (!(p > 0.0)) throw std::domain_error("qp_seminorm: requires p > 0");
    if (a_samples.empty()) throw std::invalid_argument("qp_seminorm: a_samples must not be empty");
    validate(quad);
    double v = qp_seminorm_impl(f, p, a_samples, quad);
    if (err_estimate) {
        auto half = QuadratureScheme::gauss_legendre(
            std::max<int>(2, static_cast<int>(quad.radial_nodes.size()) / 2),
            std::max(8, quad.angular / 2));
        *err_estimate = std::abs(v - qp_seminorm_impl(f, p, a_samples, half));
    }
    return v;
}

std::vector<cplx> default_qp_centers() {
    std::vector<cplx> out;
    out.push_back(0.0);
    for (double r : {0.5, 0.9, 0.99, 0.999})
        for (int j = 0; j < 16; ++j) out.push_back(std::polar(r, 2.0 * M_PI * j / 16.0));
    return out;
}

LacunaryProfile lacunary_profile(const CoeffSeries& f, double lambda) {
    if (!(lambda > 1.0)) throw std::domain_error("lacunary_profile: requires lambda > 1");
    LacunaryProfile out{true, 0.0, 0.0};
    long prev = 0;
    NeumaierSum sq;
    for (size_t n = 1; n < f.a.size(); ++n) {
        double mag = std::abs(f.a[n]);
        if (mag == 0.0) continue;
        if (prev > 0 && static_cast<double>(n) < lambda * static_cast<double>(prev))
            out.is_lacunary = false;
        prev = static_cast<long>(n);
        out.sup_coeff = std::max(out.sup_coeff, mag);
        sq.add(mag * mag);
    }
    out.sum_sq = sq.value();
    return out;
}

double moment_decay_sup(const MomentSequence& m) {
    double best = 0.0;
    for (size_t n = 0; n < m.values.size(); ++n) {
        const cplx v = m.values[n];
        if (v.imag() != 0.0)
            throw std::domain_error("moment_decay_sup: sequence must be real");
        if (v.real() < 0.0)
            throw std::domain_error("moment_decay_sup: sequence must be nonnegative");
        best = std::max(best, (static_cast<double>(n) + 1.0) * v.real());
    }
    return best;
}

}  // namespace hml
