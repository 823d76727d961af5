#pragma once

#include <complex>
#include <vector>

namespace bsh::hyp {

// Lobachevsky function, absolute error below tol.
double lobachevsky(double theta, double tol = 1e-15);

// Volume of the ideal tetrahedron of shape z; 0 when z is real.
double tetrahedron_volume(std::complex<double> z);

struct VolumeConstants {
    double v_tet;
    double v_oct;
};

const VolumeConstants& volume_constants();

struct VolumeReport {
    double volume = 0;
    bool flat = false;  // some tetrahedron had a real shape
};

VolumeReport volume(const std::vector<std::complex<double>>& shapes);

// 2 (n - 2m) v_oct + 10 m v_tet; std::invalid_argument unless n > 0 and n >= 2m >= 0.
double volume_formula(int n, int m);

}  // namespace bsh::hyp
