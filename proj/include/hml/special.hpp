#pragma once

#include <cstddef>
#include <vector>

namespace hml {

// Compensated (Neumaier) accumulator. Error of value() is O(eps * sum |x|)
// independent of the number of terms, which the deep-radius series need.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log Beta(x, y) with the large-argument cancellation removed.
// Relative error of exp(log_beta) stays below 1e-13 for x up to 1e7+
// with y moderate; a naive lgamma difference loses ~1e-9 there.
double log_beta(double x, double y);

// Integral of t^n (1-t)^s dt over (0,1), i.e. Beta(n+1, s+1). Requires s > -1.
double beta_moment(long n, double s);

// Fills values[k] = beta_moment(k, s) for k = 0..N using the one-step ratio
// recurrence, re-anchored from beta_moment every 256 steps so drift stays
// below ~3e-14 relative at any index.
void beta_moment_sequence(double s, long N, std::vector<double>& values);

// Gauss-Legendre nodes and weights on (0,1), exact for degree 2n-1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hml
