#pragma once

#include <vector>

namespace hml {

// Polar sampling grid for suprema over the disk. radii are strictly
// increasing in [0,1); angles are the uniform points 2*pi*a/angles.
struct DiskGrid {
    std::vector<double> radii;
    int angles = 256;

    // Radii are the union of the coarse ladder k/64 and the boundary ladder
    // 1 - 2^(-j/2), j = 0..J, deduplicated (the even-j members are 64ths for
    // j <= 12). The coarse part pins interior maxima, the boundary part
    // resolves 1-r down to 2^(-J/2).
    static DiskGrid standard(int J = 40, int angles = 256);
};

void validate(const DiskGrid& grid);

// Product rule for disk integrals against dA = (1/pi) dx dy:
// Gauss-Legendre radially on (0,1), uniform (trapezoid) in angle.
struct QuadratureScheme {
    std::vector<double> radial_nodes;
    std::vector<double> radial_weights;
    int angular = 512;

    static QuadratureScheme gauss_legendre(int R = 256, int A = 512);
};

void validate(const QuadratureScheme& quad);

}  // namespace hml
