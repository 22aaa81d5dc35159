#pragma once

#include <string>
#include <vector>

#include "hml/analytic.hpp"
#include "hml/measure.hpp"

namespace hml {

// N x N section with entries H[n][k] = h[n+k]; h holds 2N-1 moments.
// spectrum caches the FFT of h zero-padded to L = next_pow2(2N), which makes
// one application an O(N log N) correlation.
struct HankelOperator {
    long N = 0;
    std::vector<double> h;
    std::size_t L = 0;
    std::vector<cplx> spectrum;
};

HankelOperator hankel_build(const RadialMeasure& mu, long N);

// Section from an explicit odd-length entry list (tests and probes).
HankelOperator hankel_from_entries(std::vector<double> h);

std::vector<double> apply_dense(const HankelOperator& H, const std::vector<double>& x);
std::vector<double> apply_fast(const HankelOperator& H, const std::vector<double>& x);

struct NonConvergenceError : std::runtime_error {
    long iterations;
    double last_value;
    NonConvergenceError(const std::string& what, long iters, double last)
        : std::runtime_error(what), iterations(iters), last_value(last) {}
};

struct NormReport {
    double value = 0.0;
    long iterations = 0;
    double residual = 0.0;  // relative Rayleigh change at acceptance
    std::string space;
};

// Power iteration on H^T H from the deterministic positive start, restarted
// once with alternating signs on a stall; throws NonConvergenceError after
// both runs stall.
NormReport operator_norm_h2(const HankelOperator& H, double tol = 1e-10,
                            long max_iter = 100000);

// Same iteration conjugated by the weights (n+1)^((1-alpha)/2); requires
// alpha in (0, 2).
NormReport operator_norm_dalpha(const HankelOperator& H, double alpha, double tol = 1e-10,
                                long max_iter = 100000);

// sup |x^T H x| / |x|^2, the spectral radius of the symmetric section. Equals
// operator_norm_h2 here because the sections are PSD for radial measures.
double quadratic_form_constant(const HankelOperator& H, double tol = 1e-10,
                               long max_iter = 100000);

// sum_n a_n values[n]; requires the sequence to cover the degree.
cplx hankel_pairing(const CoeffSeries& f, const MomentSequence& m);

}  // namespace hml
