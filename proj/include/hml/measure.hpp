#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hml/fft.hpp"

namespace hml {

struct QuadratureScheme;  // grid.hpp

// Radial measures on [0,1): arc length, a (1-t)^s dt weight, or point masses.
struct Lebesgue {};

struct PowerWeight {
    double s;  // > -1, else the moments do not exist
};

struct Atom {
    double position;  // in [0,1)
    double mass;      // > 0
};

struct AtomList {
    std::vector<Atom> atoms;
};

using RadialMeasure = std::variant<Lebesgue, PowerWeight, AtomList>;

// Measure on the disk with density f w.r.t. normalized area, f given by
// its Taylor coefficients. Only conjugate moments of it are ever needed.
struct DiskDensityMeasure {
    std::vector<cplx> coeffs;
};

// values[n] holds the n-th (possibly conjugate) moment, n = 0..N.
// complete means the tail past the stored range is exactly zero, so
// evaluations at any radius need no truncation bound. origin, when set,
// lets downstream code switch to closed-form kernels for the same measure.
struct MomentSequence {
    std::vector<cplx> values;
    std::string source;
    bool complete = false;
    std::optional<RadialMeasure> origin;
};

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws std::domain_error when a parameter leaves the admissible range.
void validate(const RadialMeasure& mu);

double moment(const RadialMeasure& mu, long n);

MomentSequence moment_sequence(const RadialMeasure& mu, long N);

// mass of {t > 1 - h}, h in (0, 1].
double tail_mass(const RadialMeasure& mu, double h);

// sup over h = 2^-j, j = 0..depth, of tail_mass(mu, h)/h.
double carleson_constant(const RadialMeasure& mu, int depth);

std::complex<double> conjugate_moment(const DiskDensityMeasure& nu, long n);

struct QuadMoment {
    std::complex<double> value;
    double err_estimate;  // difference against the half-resolution rule
};

// Polar quadrature of the same moment: Gauss-Legendre radially, the exact
// angular average for a trigonometric polynomial (which folds coefficient
// indices mod the angular count, so under-resolved angles alias visibly).
QuadMoment conjugate_moment_quadrature(const DiskDensityMeasure& nu, long n,
                                       const QuadratureScheme& quad);

MomentSequence conjugate_moment_sequence(const DiskDensityMeasure& nu, long N);

// Density 1 + sum_{k=1..K} (1 + 2^k) z^(2^k). Its conjugate moments are 1
// exactly at n = 0 and n = 2^k, k = 1..K, and 0 elsewhere.
DiskDensityMeasure counterexample_density(int K);

// Smallest sequence length whose geometric tail bound at radius r clears
// the 1e-12 truncation budget used by the condition-2 evaluators.
long condition2_required_length(const RadialMeasure& mu, double r);

// Measure mini-language:
//   lebesgue
//   powerweight:s=<real>
//   atoms:[(t,m),(t,m),...]
//   counterexample:K=<int>
// Parse errors carry the offending position.
struct ParsedMeasure {
    std::variant<RadialMeasure, DiskDensityMeasure> value;
    std::string canonical;
    int counterexample_K = -1;  // >= 1 iff the lacunary family was named

    bool is_radial() const { return value.index() == 0; }
    const RadialMeasure& radial() const { return std::get<RadialMeasure>(value); }
    const DiskDensityMeasure& density() const { return std::get<DiskDensityMeasure>(value); }
};

ParsedMeasure parse_measure_spec(const std::string& spec);

}  // namespace hml
