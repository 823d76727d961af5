#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsh::hyp {

// perm[k] is the local vertex of the target tetrahedron that local vertex
// k is identified with.
using Perm4 = std::array<int, 4>;

int perm_sign(const Perm4& p);
Perm4 perm_inverse(const Perm4& p);
Perm4 perm_compose(const Perm4& outer, const Perm4& inner);  // outer after inner
std::string perm_word(const Perm4& p);

struct FaceGluing {
    int tet = -1;  // -1: unglued
    int face = -1;
    Perm4 perm{0, 1, 2, 3};
    bool glued() const { return tet >= 0; }
    bool operator==(const FaceGluing&) const = default;
};

struct IdealTriangulation {
    std::vector<std::array<FaceGluing, 4>> gluing;
    int size() const { return static_cast<int>(gluing.size()); }
    bool operator==(const IdealTriangulation&) const = default;
};

enum class TriErrc { syntax, empty, unglued_face, non_involutive, inconsistent_permutation };

struct TriangulationError : std::runtime_error {
    TriErrc code;
    int line;  // 0 when not from parsing
    int tet, face;
    TriangulationError(TriErrc code, const std::string& what, int line = 0, int tet = -1, int face = -1)
        : std::runtime_error(what), code(code), line(line), tet(tet), face(face) {}
};

// Throws on the first unglued face, broken involution or a permutation
// that disagrees with the face data or its partner.
void check_triangulation(const IdealTriangulation& t);

// ITRI 1:
//   ITRI 1
//   tetrahedra <n>
//   <t> ->(t',f',pppp) ->(...) ->(...) ->(...)    one line per tetrahedron
//   end
// An unglued face is written ->(-).
IdealTriangulation parse_itri(const std::string& text);
std::string serialize_itri(const IdealTriangulation& t);

// local edges: 0:01 1:02 2:03 3:12 4:13 5:23
const std::array<int, 2>& edge_vertices(int local_edge);
int local_edge(int a, int b);

struct CellClasses {
    std::vector<std::array<int, 6>> edge_of;  // class of each tetrahedron edge
    std::vector<std::array<int, 4>> cusp_of;  // class of each ideal vertex
    int edges = 0;
    int cusps = 0;
    std::vector<int> valence;          // tetrahedron edges per edge class
    std::vector<int> cusp_triangles;   // corners per cusp
    std::vector<int> cusp_vertices;    // edge ends per cusp
    int cusp_euler(int c) const { return cusp_vertices[c] - cusp_triangles[c] / 2; }
};

// Classes numbered by first appearance over (tetrahedron, local index).
CellClasses cell_classes(const IdealTriangulation& t);

bool connected(const IdealTriangulation& t);
bool orientable_gluings(const IdealTriangulation& t);  // every gluing odd

// Least relabeling code over all starting tetrahedra and vertex orders;
// equal codes iff combinatorially isomorphic (connected inputs).
std::vector<int> canonical_code(const IdealTriangulation& t);
bool isomorphic(const IdealTriangulation& a, const IdealTriangulation& b);

// Sets both directions of a gluing.
void glue(IdealTriangulation& t, int tet, int face, int tet2, const Perm4& perm);

}  // namespace bsh::hyp
