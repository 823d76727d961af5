#include "bsh/hyp/equations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bsh/hyp/cusp.hpp"

namespace bsh::hyp {

namespace {

// log-coefficients of the shape on an edge: (log z, log(1-z), i pi)
std::array<int, 3> edge_terms(int a, int b) {
    if (a > b) std::swap(a, b);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return {1, 0, 0};
    if ((a == 0 && b == 2) || (a == 1 && b == 3)) return {0, -1, 0};
    return {-1, 1, 1};
}

void add_terms(Equation& e, int tet, const std::array<int, 3>& w, int sign, int& pi) {
    e.a[tet] += sign * w[0];
    e.b[tet] += sign * w[1];
    pi += sign * w[2];
}

}  // namespace

int GluingSystem::edge_count() const {
    int n = 0;
    for (const auto& e : equations) n += e.kind == Equation::Kind::edge;
    return n;
}

int GluingSystem::cusp_count() const {
    int n = 0;
    for (const auto& e : equations) n += e.kind == Equation::Kind::cusp;
    return n / 2;
}

GluingSystem gluing_equations(const IdealTriangulation& t) {
    check_triangulation(t);
    if (!orientable_gluings(t)) throw std::invalid_argument("gluing equations need orientation-reversing face maps");
    const int n = t.size();
    const CellClasses cc = cell_classes(t);
    GluingSystem s;
    s.tetrahedra = n;
    for (int c = 0; c < cc.edges; ++c) {
        Equation e{Equation::Kind::edge, c, std::vector<int>(n, 0), std::vector<int>(n, 0), 0};
        int pi = 0;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < 6; ++j)
                if (cc.edge_of[k][j] == c) add_terms(e, k, edge_terms(edge_vertices(j)[0], edge_vertices(j)[1]), 1, pi);
        e.target = 2 - pi;
        s.equations.push_back(std::move(e));
    }
    for (const CuspLink& L : cusp_links(t))
        for (int g = 0; g < 2; ++g) {
            Equation e{Equation::Kind::cusp, L.cusp, std::vector<int>(n, 0), std::vector<int>(n, 0), 0};
            int pi = 0;
            for (size_t j = 0; j < L.cycles.size(); ++j) {
                const auto coeff = L.basis[g][j];
                if (coeff == 0) continue;
                for (const Passage& p : L.cycles[j])
                    add_terms(e, p.tet, edge_terms(p.vertex, p.pivot()), static_cast<int>(coeff) * passage_side(p), pi);
            }
            e.target = -pi;
            s.equations.push_back(std::move(e));
        }
    return s;
}

Eigen::VectorXcd residual(const GluingSystem& s, const Eigen::VectorXcd& z) {
    using C = std::complex<double>;
    const double pi = std::numbers::pi;
    Eigen::VectorXcd r(static_cast<Eigen::Index>(s.equations.size()));
    std::vector<C> lz(s.tetrahedra), l1z(s.tetrahedra);
    for (int t = 0; t < s.tetrahedra; ++t) {
        lz[t] = std::log(z[t]);
        l1z[t] = std::log(1.0 - z[t]);
    }
    for (size_t i = 0; i < s.equations.size(); ++i) {
        const Equation& e = s.equations[i];
        C v = -C(0, pi * e.target);
        for (int t = 0; t < s.tetrahedra; ++t) v += static_cast<double>(e.a[t]) * lz[t] + static_cast<double>(e.b[t]) * l1z[t];
        r[static_cast<Eigen::Index>(i)] = v;
    }
    return r;
}

Eigen::MatrixXcd jacobian(const GluingSystem& s, const Eigen::VectorXcd& z) {
    Eigen::MatrixXcd j(static_cast<Eigen::Index>(s.equations.size()), s.tetrahedra);
    for (size_t i = 0; i < s.equations.size(); ++i)
        for (int t = 0; t < s.tetrahedra; ++t) {
            const auto& e = s.equations[i];
            j(static_cast<Eigen::Index>(i), t) = static_cast<double>(e.a[t]) - static_cast<double>(e.b[t]) * z[t] / (1.0 - z[t]);
        }
    return j;
}

long double residual_extended(const GluingSystem& s, const std::vector<std::complex<double>>& z) {
    using C = std::complex<long double>;
    const long double pi = std::numbers::pi_v<long double>;
    long double worst = 0;
    for (const Equation& e : s.equations) {
        C v = -C(0, pi * e.target);
        for (int t = 0; t < s.tetrahedra; ++t) {
            const C zz(z[t].real(), z[t].imag());
            v += static_cast<long double>(e.a[t]) * std::log(zz) + static_cast<long double>(e.b[t]) * std::log(C(1) - zz);
        }
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

GluingSystem relabel(const GluingSystem& s, const std::vector<int>& tet_map) {
    GluingSystem r = s;
    for (auto& e : r.equations)
        for (int t = 0; t < s.tetrahedra; ++t) {
            e.a[tet_map[t]] = s.equations[&e - r.equations.data()].a[t];
            e.b[tet_map[t]] = s.equations[&e - r.equations.data()].b[t];
        }
    return r;
}

}  // namespace bsh::hyp
