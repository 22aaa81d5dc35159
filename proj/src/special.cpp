#include "hml/special.hpp"

#include <cmath>
#include <stdexcept>

namespace hml {

namespace {

// Tail of the Stirling series for log Gamma, valid for z >= 20 after the
// 1/z^9 term (remainder < 1e-18 in the log).
double stirling_tail(double z) {
    double z2 = z * z;
    double r = 1.0 / z;
    double t = r / 12.0;
    r /= z2;
    t -= r / 360.0;
    r /= z2;
    t += r / 1260.0;
    r /= z2;
    t -= r / 1680.0;
    r /= z2;
    t += r / 1188.0;
    return t;
}

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2

}  // namespace

double log_beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("log_beta: arguments must be positive");
    if (x < y) std::swap(x, y);
    if (x < 20.0)
        return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
    // lgamma(x) - lgamma(x+y) expanded so the two O(x log x) parts never meet:
    //   (x - 1/2) log(x/(x+y)) - y log(x+y) + y + S(x) - S(x+y)
    double b = x + y;
    double d = (x - 0.5) * std::log1p(-y / b) - y * std::log(b) + y
             + stirling_tail(x) - stirling_tail(b);
    return std::lgamma(y) + d;
}

double beta_moment(long n, double s) {
    if (n < 0) throw std::domain_error("beta_moment: n must be nonnegative");
    if (!(s > -1.0)) throw std::domain_error("beta_moment: requires s > -1");
    double sigma = s + 1.0;
    if (n < 20) {
        // Exact ratio recurrence from Beta(1, sigma) = 1/sigma.
        double v = 1.0 / sigma;
        for (long k = 1; k <= n; ++k) v *= static_cast<double>(k) / (k + sigma);
        return v;
    }
    return std::exp(log_beta(static_cast<double>(n) + 1.0, sigma));
}

void beta_moment_sequence(double s, long N, std::vector<double>& values) {
    if (N < 0) throw std::domain_error("beta_moment_sequence: N must be nonnegative");
    values.resize(static_cast<size_t>(N) + 1);
    double sigma = s + 1.0;
    double v = 1.0 / sigma;
    values[0] = v;
    for (long n = 1; n <= N; ++n) {
        if (n % 256 == 0)
            v = beta_moment(n, s);
        else
            v *= static_cast<double>(n) / (n + sigma);
        values[static_cast<size_t>(n)] = v;
    }
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::domain_error("gauss_legendre_01: need n >= 1");
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    // Newton on P_n over [-1,1]; roots are symmetric so solve the upper half.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        // Map [-1,1] -> (0,1); the pair (x, -x) lands at the two symmetric slots.
        nodes[static_cast<size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        weights[static_cast<size_t>(n - 1 - i)] = 0.5 * w;
        nodes[static_cast<size_t>(i)] = 0.5 * (1.0 - x);
        weights[static_cast<size_t>(i)] = 0.5 * w;
    }
}

}  // namespace hml
