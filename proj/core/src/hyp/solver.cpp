#include "bsh/hyp/solver.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bsh::hyp {

std::vector<std::complex<double>> perturbed_regular_start(int n, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    const std::complex<double> w = std::polar(1.0, std::numbers::pi / 3);
    std::vector<std::complex<double>> z(n);
    for (auto& x : z) {
        const double re = u(rng);
        const double im = u(rng);
        x = w + std::complex<double>(re, im);
    }
    return z;
}

namespace {

bool degenerate(const Eigen::VectorXcd& z) {
    for (Eigen::Index t = 0; t < z.size(); ++t) {
        const double a = std::abs(z[t]);
        if (!std::isfinite(a) || a < 1e-14 || a > 1e14 || std::abs(1.0 - z[t]) < 1e-14) return true;
    }
    return false;
}

double max_abs(const Eigen::VectorXcd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

ShapeSolution solve_shapes(const GluingSystem& s, const std::vector<std::complex<double>>& start, const SolverOptions& opt) {
    const int n = s.tetrahedra;
    if (static_cast<int>(start.size()) != n) throw std::invalid_argument("one start shape per tetrahedron expected");
    Eigen::VectorXcd w(n);
    for (int t = 0; t < n; ++t) w[t] = std::log(start[t]);
    Eigen::VectorXcd z = w.array().exp();
    if (degenerate(z)) throw SolveError(SolveErrc::degenerate, "start shape is degenerate");
    Eigen::VectorXcd r = residual(s, z);
    ShapeSolution out;
    int it = 0;
    for (; it < opt.max_iterations && max_abs(r) >= opt.tol; ++it) {
        const Eigen::MatrixXcd j = jacobian(s, z);
        const Eigen::VectorXcd step = j.completeOrthogonalDecomposition().solve(-r);
        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h < 30; ++h, lambda *= 0.5) {
            const Eigen::VectorXcd w2 = w + lambda * step;
            const Eigen::VectorXcd z2 = w2.array().exp();
            if (degenerate(z2)) continue;
            const Eigen::VectorXcd r2 = residual(s, z2);
            if (r2.norm() < r.norm()) {
                w = w2;
                z = z2;
                r = r2;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    out.iterations = it;
    out.residual = max_abs(r);
    if (!(out.residual < opt.tol))
        throw SolveError(SolveErrc::diverged, "no convergence: residual " + std::to_string(out.residual) + " after " +
                                                  std::to_string(it) + " iterations");
    out.shapes.assign(z.data(), z.data() + n);
    out.geometric = true;
    for (const auto& x : out.shapes)
        if (x.imag() <= opt.flat_threshold) out.geometric = false;
    return out;
}

}  // namespace bsh::hyp
