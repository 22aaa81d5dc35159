#include "hml/hankel.hpp"

#include <cmath>
#include <functional>

#include "hml/fft.hpp"
#include "hml/special.hpp"

namespace hml {

namespace {

void attach_spectrum(HankelOperator& H) {
    H.L = next_pow2(static_cast<std::size_t>(2 * H.N));
    H.spectrum.assign(H.L, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < H.h.size(); ++i) H.spectrum[i] = H.h[i];
    fft_inplace(H.spectrum);
}

}  // namespace

HankelOperator hankel_build(const RadialMeasure& mu, long N) {
    if (N < 1) throw std::domain_error("hankel_build: N must be at least 1");
    HankelOperator H;
    H.N = N;
    auto m = moment_sequence(mu, 2 * N - 2);
    H.h.resize(static_cast<size_t>(2 * N - 1));
    for (size_t i = 0; i < H.h.size(); ++i) H.h[i] = m.values[i].real();
    attach_spectrum(H);
    return H;
}

HankelOperator hankel_from_entries(std::vector<double> h) {
    if (h.empty() || h.size() % 2 == 0)
        throw std::domain_error("hankel_from_entries: entry list must have odd length");
    HankelOperator H;
    H.N = static_cast<long>((h.size() + 1) / 2);
    H.h = std::move(h);
    attach_spectrum(H);
    return H;
}

std::vector<double> apply_dense(const HankelOperator& H, const std::vector<double>& x) {
    if (static_cast<long>(x.size()) != H.N)
        throw std::invalid_argument("apply_dense: size mismatch");
    const size_t N = static_cast<size_t>(H.N);
    std::vector<double> y(N);
    for (size_t n = 0; n < N; ++n) {
        NeumaierSum acc;
        for (size_t k = 0; k < N; ++k) acc.add(H.h[n + k] * x[k]);
        y[n] = acc.value();
    }
    return y;
}

std::vector<double> apply_fast(const HankelOperator& H, const std::vector<double>& x) {
    if (static_cast<long>(x.size()) != H.N)
        throw std::invalid_argument("apply_fast: size mismatch");
    const size_t N = static_cast<size_t>(H.N);
    // y_n = sum_k h_{n+k} x_k = (h * rev(x))[n+N-1]; with L >= 2N the cyclic
    // product never wraps because rev(x) occupies indices < N.
    std::vector<cplx> xr(H.L, cplx(0.0, 0.0));
    for (size_t k = 0; k < N; ++k) xr[N - 1 - k] = x[k];
    fft_inplace(xr);
    for (size_t i = 0; i < H.L; ++i) xr[i] *= H.spectrum[i];
    ifft_inplace(xr);
    std::vector<double> y(N);
    for (size_t n = 0; n < N; ++n) y[n] = xr[n + N - 1].real();
    return y;
}

namespace {

struct IterationResult {
    double rho = 0.0;
    long iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// Rayleigh-quotient power iteration for a symmetric PSD operator G.
IterationResult power_iteration(const std::function<void(const std::vector<double>&, std::vector<double>&)>& G,
                                size_t dim, double tol, long max_iter, bool alternating) {
    std::vector<double> x(dim), z(dim);
    const double init = 1.0 / std::sqrt(static_cast<double>(dim));
    for (size_t i = 0; i < dim; ++i) x[i] = alternating ? (i % 2 ? -init : init) : init;
    IterationResult res;
    double rho_prev = 0.0;
    for (long it = 1; it <= max_iter; ++it) {
        G(x, z);
        double nz = 0.0, dot = 0.0;
        for (size_t i = 0; i < dim; ++i) {
            nz += z[i] * z[i];
            dot += x[i] * z[i];
        }
        nz = std::sqrt(nz);
        res.iterations = it;
        if (nz == 0.0) {
            res.rho = 0.0;
            res.residual = 0.0;
            res.converged = true;
            return res;
        }
        const double rho = dot;  // x is unit, so x.z is the Rayleigh quotient
        if (it >= 2 && std::abs(rho - rho_prev) <= tol * std::abs(rho)) {
            res.rho = rho;
            res.residual = std::abs(rho - rho_prev) / std::abs(rho);
            res.converged = true;
            return res;
        }
        rho_prev = rho;
        res.rho = rho;
        for (size_t i = 0; i < dim; ++i) x[i] = z[i] / nz;
    }
    return res;
}

NormReport norm_via(const HankelOperator& H,
                    const std::function<void(const std::vector<double>&, std::vector<double>&)>& G,
                    double tol, long max_iter, const std::string& space) {
    auto res = power_iteration(G, static_cast<size_t>(H.N), tol, max_iter, false);
    long total = res.iterations;
    if (!res.converged) {
        res = power_iteration(G, static_cast<size_t>(H.N), tol, max_iter, true);
        total += res.iterations;
        if (!res.converged)
            throw NonConvergenceError("power iteration stalled after restart (space " + space + ")",
                                      total, std::sqrt(std::max(0.0, res.rho)));
    }
    NormReport out;
    out.value = std::sqrt(std::max(0.0, res.rho));
    out.iterations = total;
    out.residual = res.residual;
    out.space = space;
    return out;
}

}  // namespace

NormReport operator_norm_h2(const HankelOperator& H, double tol, long max_iter) {
    if (!(tol > 0.0)) throw std::domain_error("operator_norm_h2: tol must be positive");
    std::vector<double> mid;
    auto G = [&](const std::vector<double>& x, std::vector<double>& y) {
        mid = apply_fast(H, x);
        y = apply_fast(H, mid);
    };
    return norm_via(H, G, tol, max_iter, "h2");
}

NormReport operator_norm_dalpha(const HankelOperator& H, double alpha, double tol, long max_iter) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::domain_error("operator_norm_dalpha: alpha must lie in (0,2)");
    if (!(tol > 0.0)) throw std::domain_error("operator_norm_dalpha: tol must be positive");
    const size_t N = static_cast<size_t>(H.N);
    std::vector<double> w(N);
    for (size_t n = 0; n < N; ++n) w[n] = std::pow(static_cast<double>(n) + 1.0, (1.0 - alpha) / 2.0);
    std::vector<double> t(N), mid;
    auto G = [&](const std::vector<double>& x, std::vector<double>& y) {
        // G = W^-1 H W^2 H W^-1, the normal operator of W H W^-1 on l^2.
        for (size_t n = 0; n < N; ++n) t[n] = x[n] / w[n];
        mid = apply_fast(H, t);
        for (size_t n = 0; n < N; ++n) mid[n] *= w[n] * w[n];
        y = apply_fast(H, mid);
        for (size_t n = 0; n < N; ++n) y[n] /= w[n];
    };
    return norm_via(H, G, tol, max_iter, "dalpha:" + std::to_string(alpha));
}

double quadratic_form_constant(const HankelOperator& H, double tol, long max_iter) {
    return operator_norm_h2(H, tol, max_iter).value;
}

cplx hankel_pairing(const CoeffSeries& f, const MomentSequence& m) {
    if (f.a.size() > m.values.size())
        throw std::invalid_argument("hankel_pairing: moment sequence shorter than the series");
    NeumaierSum re, im;
    for (size_t n = 0; n < f.a.size(); ++n) {
        const cplx t = f.a[n] * m.values[n];
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

}  // namespace hml
