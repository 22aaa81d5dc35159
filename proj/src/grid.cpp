#include "hml/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hml/special.hpp"

namespace hml {

DiskGrid DiskGrid::standard(int J, int angles) {
    if (J < 0) throw std::domain_error("DiskGrid: J must be nonnegative");
    DiskGrid g;
    g.angles = angles;
    g.radii.reserve(64 + static_cast<size_t>(J) + 1);
    for (int k = 0; k < 64; ++k) g.radii.push_back(k / 64.0);
    for (int j = 0; j <= J; ++j) g.radii.push_back(1.0 - std::pow(2.0, -0.5 * j));
    std::sort(g.radii.begin(), g.radii.end());
    g.radii.erase(std::unique(g.radii.begin(), g.radii.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                  g.radii.end());
    validate(g);
    return g;
}

void validate(const DiskGrid& grid) {
    if (grid.angles < 8) throw std::domain_error("DiskGrid: need at least 8 angles");
    if (grid.radii.empty()) throw std::domain_error("DiskGrid: need at least one radius");
    for (size_t i = 0; i < grid.radii.size(); ++i) {
        if (!(grid.radii[i] >= 0.0) || !(grid.radii[i] < 1.0))
            throw std::domain_error("DiskGrid: radii must lie in [0,1)");
        if (i > 0 && !(grid.radii[i] > grid.radii[i - 1]))
            throw std::domain_error("DiskGrid: radii must be strictly increasing");
    }
}

QuadratureScheme QuadratureScheme::gauss_legendre(int R, int A) {
    QuadratureScheme q;
    q.angular = A;
    gauss_legendre_01(R, q.radial_nodes, q.radial_weights);
    validate(q);
    return q;
}

void validate(const QuadratureScheme& quad) {
    if (quad.angular < 8) throw std::domain_error("QuadratureScheme: need at least 8 angles");
    if (quad.radial_nodes.size() != quad.radial_weights.size() || quad.radial_nodes.empty())
        throw std::domain_error("QuadratureScheme: radial nodes/weights mismatch");
}

}  // namespace hml
