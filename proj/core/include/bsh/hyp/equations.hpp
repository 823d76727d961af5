#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bsh/hyp/triangulation.hpp"

namespace bsh::hyp {

// sum_t a[t] log z_t + b[t] log(1 - z_t) = i pi target
struct Equation {
    enum class Kind { edge, cusp };
    Kind kind = Kind::edge;
    int index = 0;  // edge class, or cusp
    std::vector<int> a, b;
    int target = 0;
};

struct GluingSystem {
    int tetrahedra = 0;
    std::vector<Equation> equations;
    int edge_count() const;
    int cusp_count() const;
};

// One equation per edge class, then two completeness equations per cusp
// along the homology basis of cusp_links. Requires odd gluings and torus
// cusps (std::invalid_argument otherwise).
GluingSystem gluing_equations(const IdealTriangulation& t);

// Left-hand side minus the target, on principal logarithms.
Eigen::VectorXcd residual(const GluingSystem& s, const Eigen::VectorXcd& z);
// Derivative with respect to log z_t.
Eigen::MatrixXcd jacobian(const GluingSystem& s, const Eigen::VectorXcd& z);

// Residual evaluated in long double.
long double residual_extended(const GluingSystem& s, const std::vector<std::complex<double>>& z);

// Relabels tetrahedra; tet_map[t] is the new index of t.
GluingSystem relabel(const GluingSystem& s, const std::vector<int>& tet_map);

}  // namespace bsh::hyp
