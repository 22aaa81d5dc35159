#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace hml {

// Deterministic across platforms: mt19937_64 has a fixed algorithm, and the
// mappings below avoid std distributions, whose streams are
// implementation-defined.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log1p(-u1));  // 1-u1 in (0,1], log finite
        const double ang = 2.0 * M_PI * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    // Area-uniform point with |z| <= rmax.
    std::complex<double> disk_point(double rmax) {
        const double r = rmax * std::sqrt(uniform01());
        const double theta = 2.0 * M_PI * uniform01();
        return std::polar(r, theta);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace hml
