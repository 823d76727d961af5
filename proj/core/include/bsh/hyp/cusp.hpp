#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "bsh/hyp/triangulation.hpp"

namespace bsh::hyp {

// A cusp cross-section triangle is (tet, vertex); its sides are the faces
// of the tetrahedron through that vertex and its corners the other three
// vertices. A passage enters through one side and leaves through another,
// turning around the remaining corner.
struct Passage {
    int tet = 0;
    int vertex = 0;
    int enter = 0;
    int exit = 0;
    int pivot() const { return 6 - vertex - enter - exit; }
};

// +1 when the pivot lies on the left of the curve.
int passage_side(const Passage& p);

struct CuspLink {
    int cusp = 0;
    std::vector<std::array<int, 2>> triangles;
    int euler = 0;
    std::vector<std::vector<Passage>> cycles;  // fundamental cycles of the dual graph
    // two generators of the first homology, as integer cycle combinations
    std::array<std::vector<std::int64_t>, 2> basis;
    std::vector<std::int64_t> torsion;
};

// Throws std::invalid_argument when some cusp is not a torus.
std::vector<CuspLink> cusp_links(const IdealTriangulation& t);

// a + b w with w = e^{i pi / 3}, w^2 = w - 1
struct ZOmega {
    std::int64_t a = 0, b = 0;
    ZOmega operator+(const ZOmega& o) const { return {a + o.a, b + o.b}; }
    ZOmega operator-(const ZOmega& o) const { return {a - o.a, b - o.b}; }
    ZOmega operator*(const ZOmega& o) const { return {a * o.a - b * o.b, a * o.b + b * o.a + b * o.b}; }
    ZOmega operator*(std::int64_t k) const { return {a * k, b * k}; }
    ZOmega conj() const { return {a + b, -b}; }
    std::int64_t norm() const { return a * a + a * b + b * b; }
    std::complex<double> value() const;
    bool operator==(const ZOmega&) const = default;
};

// (p + q w) / den in lowest terms, den > 0
struct ExactModulus {
    std::int64_t p = 0, q = 0, den = 1;
    std::complex<double> value() const;
    bool operator==(const ExactModulus&) const = default;
};

struct CuspData {
    int cusp = 0;
    int triangles = 0;
    int euler = 0;
    std::complex<double> modulus;
    std::array<std::complex<double>, 2> translations;  // reduced basis
};

// Translations develop the cross-sections with the given shapes.
std::vector<CuspData> cusp_moduli(const IdealTriangulation& t, const std::vector<std::complex<double>>& shapes);

// Moduli at the all-regular shape, computed exactly in Z[w].
std::vector<ExactModulus> cusp_moduli_exact(const IdealTriangulation& t);

// Reduction into |Re| <= 1/2, |tau| >= 1, with Re < 1/2 and Re <= 0 on the unit circle.
std::complex<double> reduce_modulus(std::complex<double> tau);

}  // namespace bsh::hyp
