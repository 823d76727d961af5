#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bsh/hyp/triangulation.hpp"

namespace bsh::hyp {

// Boundary of the 4-simplex with its vertices removed. Tetrahedron i omits
// global vertex i; its local vertices are the other four in increasing
// order, with local 0 and 1 swapped for odd i so every gluing is odd.
struct QuotientComplex {
    IdealTriangulation tri;
    std::array<std::array<int, 4>, 5> global;  // local -> global vertex
    std::vector<std::array<int, 3>> faces;     // triangles, sorted
    std::vector<std::array<int, 2>> edges;     // sorted pairs
    std::array<std::array<int, 4>, 5> face_of; // (tet, local face) -> triangle
    // edge x triangle incidence over GF(2)
    std::vector<std::vector<int>> incidence() const;
};

QuotientComplex build_pentachoron_complex();

struct Gf2Solution {
    std::vector<int> x;
    int kernel_dim = 0;
};

// Lexicographically least solution of A x = b over GF(2), nullopt if none.
std::optional<Gf2Solution> gf2_solve_least(const std::vector<std::vector<int>>& a, const std::vector<int>& b);

// epsilon per triangle with odd sum around every edge; throws
// std::logic_error if the system has no solution.
Gf2Solution gf2_face_signs(const QuotientComplex& q);

// Tetrahedron 2i+s is sheet s over quotient tetrahedron i. A face with
// sign 1 swaps sheets. Throws std::logic_error unless the result is
// connected with every edge of valence 6.
IdealTriangulation build_double_cover(const QuotientComplex& q, const std::vector<int>& eps);

// Sheet swap (i,s) -> (i,1-s): tetrahedron map, vertex maps identity.
std::vector<int> deck_involution(const IdealTriangulation& cover);
// Whether a tetrahedron map with identity vertex maps preserves gluings.
bool is_automorphism(const IdealTriangulation& t, const std::vector<int>& tet_map);

}  // namespace bsh::hyp
