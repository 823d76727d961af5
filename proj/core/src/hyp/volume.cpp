#include "bsh/hyp/volume.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bsh::hyp {

namespace {

double zeta_even(int k) {
    static const std::vector<double> table = [] {
        std::vector<double> t(200);
        for (int j = 1; j < 200; ++j) t[j] = std::riemann_zeta(2.0 * j);
        return t;
    }();
    return table[k];
}

// Clausen function on [-pi, pi] from its power series around 0.
double clausen(double x, double tol) {
    if (x == 0) return 0;
    const double two_pi = 2 * std::numbers::pi;
    double s = x - x * std::log(std::abs(x));
    const double r = (x / two_pi) * (x / two_pi);
    double pw = x;
    for (int k = 1; k < 200; ++k) {
        pw *= r;
        const double term = zeta_even(k) / (k * (2.0 * k + 1)) * pw;
        s += term;
        // the remaining terms are bounded by a geometric tail with ratio r
        if (std::abs(term) * r / (1 - r) < tol) break;
    }
    return s;
}

}  // namespace

double lobachevsky(double theta, double tol) {
    const double pi = std::numbers::pi;
    double t = std::fmod(theta, pi);
    if (t < 0) t += pi;
    if (t > pi / 2) t -= pi;
    return 0.5 * clausen(2 * t, 2 * tol);
}

double tetrahedron_volume(std::complex<double> z) {
    if (z.imag() == 0) return 0;
    return lobachevsky(std::arg(z)) + lobachevsky(std::arg(1.0 / (1.0 - z))) + lobachevsky(std::arg(1.0 - 1.0 / z));
}

const VolumeConstants& volume_constants() {
    static const VolumeConstants c{tetrahedron_volume(std::polar(1.0, std::numbers::pi / 3)),
                                   4 * tetrahedron_volume({0.0, 1.0})};
    return c;
}

VolumeReport volume(const std::vector<std::complex<double>>& shapes) {
    VolumeReport r;
    for (const auto& z : shapes) {
        if (z.imag() == 0) r.flat = true;
        r.volume += tetrahedron_volume(z);
    }
    return r;
}

double volume_formula(int n, int m) {
    if (n <= 0 || m < 0 || n < 2 * m) throw std::invalid_argument("volume formula needs n > 0 and n >= 2m >= 0");
    const auto& c = volume_constants();
    return 2.0 * (n - 2 * m) * c.v_oct + 10.0 * m * c.v_tet;
}

}  // namespace bsh::hyp
