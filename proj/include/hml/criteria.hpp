#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hml/grid.hpp"
#include "hml/measure.hpp"

namespace hml {

// The stored sequence cannot certify the 1e-12 truncation budget at the
// requested radius.
struct TailBoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature self-check (full vs embedded coarse rule) exceeded its budget.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// value is always the maximum of profile's second column. argmax is the
// disk point achieving it, except for box profiles where argmax.real()
// holds the dyadic generation of the best box.
struct CriterionReport {
    double value = 0.0;
    cplx argmax = 0.0;
    long samples = 0;
    double err_estimate = 0.0;
    std::vector<std::pair<double, double>> profile;
};

// (1 - |w|^2) |sum_n (n+1) values[n] w^n|. Requires |w| < 1, and for
// incomplete sequences a stored range long enough that the geometric tail
// bound at |w| clears 1e-12.
double condition2_value(const MomentSequence& m, cplx w);

// Supremum of condition2_value over the grid. Per radius the series folds
// mod the angle count into compensated bins, so the uniform-angle values
// come out of one inverse FFT with no running-phase drift.
CriterionReport condition2_sup(const MomentSequence& m, const DiskGrid& grid);

// sup over grid points of int (1-|w|^2)/|1 - conj(w) t|^2 dmu(t): exact sum
// for atoms, composite Gauss-Legendre on panels geometrically graded toward
// t = 1 otherwise. Throws QuadratureError when the embedded coarse rule
// disagrees beyond 1e-6 relative (weights with s near -1).
CriterionReport carleson_kernel_sup(const RadialMeasure& mu, const DiskGrid& grid,
                                    const QuadratureScheme& quad);

// Box energies (1/|I|) int_{S(I)} |g|^2 (1-|w|^2) dA/pi for dyadic arcs
// |I| = 2*pi*2^-j, j = 0..depth, where g(w) = sum_m (m+1) values[m+1] w^m.
// Boxes are integrated on radial panels graded toward the circle with an
// innermost sliver of relative size 2^-18 dropped, so each profile entry is
// a slightly truncated (lower) value of the box energy. When the sequence
// carries its origin the kernel form of g is integrated directly; otherwise
// the series is evaluated, which for incomplete sequences requires the tail
// bound to hold at the deepest node radius.
CriterionReport box_condition4(const MomentSequence& m, int depth, const QuadratureScheme& quad);

struct DecayTest {
    double sup;
    bool exceeded;
};

// {sup_n (n+1) values[n], sup > threshold}.
DecayTest moment_decay_test(const MomentSequence& m, double threshold);

}  // namespace hml
