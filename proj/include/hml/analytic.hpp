#pragma once

#include <complex>
#include <vector>

#include "hml/grid.hpp"
#include "hml/measure.hpp"

namespace hml {

// Polynomial / truncated power series sum a[n] z^n.
struct CoeffSeries {
    std::vector<cplx> a;

    long degree() const { return static_cast<long>(a.size()) - 1; }
};

// Values of the series at r*e^{i(theta0 + 2*pi*k/A)}, k = 0..A-1. Indices
// fold mod A first, so cost is O(len + A log A) for power-of-two A. Powers
// of r are re-anchored from std::pow every 1024 terms to stop drift.
std::vector<cplx> circle_values(const std::vector<cplx>& coeffs, double r, int A,
                                double theta0 = 0.0);

cplx eval(const CoeffSeries& f, cplx w);             // requires |w| <= 1
cplx eval_derivative(const CoeffSeries& f, cplx w);  // requires |w| < 1

// Series with coefficients values[n]; for conjugate moments this is the
// sweep function whose derivative drives the condition-2 identity.
CoeffSeries p_mu_series(const MomentSequence& m);

cplx mobius(cplx a, cplx z);  // (a - z)/(1 - conj(a) z)

double hardy2_norm(const CoeffSeries& f);

// Boundary trapezoid rule; exact for |f|^2 when A >= 2*degree+2, and the
// 4*(degree+1) floor keeps odd powers honest too.
double hardy_p_norm(const CoeffSeries& f, double p, int A);

double dirichlet_alpha_norm(const CoeffSeries& f, double alpha);

double bloch_seminorm(const CoeffSeries& f, const DiskGrid& grid);

// sqrt of the largest of int |f'|^2 (1-|mobius(a,z)|^2)^p dA(z)/pi over the
// given centers. err_estimate, when requested, is the change under halving
// both quadrature resolutions.
double qp_seminorm(const CoeffSeries& f, double p, const std::vector<cplx>& a_samples,
                   const QuadratureScheme& quad, double* err_estimate = nullptr);

// {0} plus four rings of 16 centers at |a| = 0.5, 0.9, 0.99, 0.999.
std::vector<cplx> default_qp_centers();

struct LacunaryProfile {
    bool is_lacunary;  // gaps n_{k+1}/n_k >= lambda throughout (indices >= 1)
    double sup_coeff;
    double sum_sq;
};

LacunaryProfile lacunary_profile(const CoeffSeries& f, double lambda);

// sup_n (n+1) * values[n]; rejects sequences that are not real nonnegative.
double moment_decay_sup(const MomentSequence& m);

}  // namespace hml
