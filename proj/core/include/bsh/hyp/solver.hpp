#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bsh/hyp/equations.hpp"

namespace bsh::hyp {

struct SolverOptions {
    double tol = 1e-12;
    int max_iterations = 60;
    double flat_threshold = 1e-9;
};

struct ShapeSolution {
    std::vector<std::complex<double>> shapes;
    double residual = 0;  // max abs over equations
    int iterations = 0;
    bool geometric = false;  // every Im z > flat_threshold
};

enum class SolveErrc { diverged, degenerate };

struct SolveError : std::runtime_error {
    SolveErrc code;
    SolveError(SolveErrc code, const std::string& what) : std::runtime_error(what), code(code) {}
};

// All shapes e^{i pi/3}, each moved by a uniform offset of size <= scale
// in real and imaginary part.
std::vector<std::complex<double>> perturbed_regular_start(int n, std::uint64_t seed, double scale = 1e-3);

// Damped Gauss-Newton on log z: the step is halved until the residual
// norm decreases. Throws SolveError when the tolerance is not reached or a
// shape hits 0, 1 or infinity.
ShapeSolution solve_shapes(const GluingSystem& s, const std::vector<std::complex<double>>& start,
                           const SolverOptions& opt = {});

}  // namespace bsh::hyp
