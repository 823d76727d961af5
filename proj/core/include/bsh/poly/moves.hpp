#pragma once

#include <stdexcept>
#include <string>

#include "bsh/poly/polyhedron.hpp"

namespace bsh::poly {

enum class MoveErrc {
    no_such_circle,
    not_ii3_vertex,
    not_x_part,
    bigon_gleam,
    closure_not_annulus,
    branching_incompatible,
    non_orientable,
};

struct MoveError : std::runtime_error {
    MoveErrc code;
    int cell;  // offending vertex, edge or region, -1 if none
    MoveError(MoveErrc code, int cell, const std::string& what)
        : std::runtime_error(what), code(code), cell(cell) {}
};

struct FreeCircle {
    int region = -1;
    int index = 0;
};

// Glues an annulus with k parallel disks to a free circle. The circle is
// consumed, k circle edges and 2k regions (disk, annulus piece) are
// appended, the top piece gets new_color. A branching extends.
SimplePolyhedron attach_tower(const SimplePolyhedron& p, FreeCircle at, int k, Color new_color);

// II3 vertex v becomes the simple vertex v' of X; w' is appended last,
// then the two bigon edges and the bigon region (gleam +1).
SimplePolyhedron replace_vertex_with_X(const SimplePolyhedron& q, int v);

// A located copy of X. Slots at v are a0, a1 (bigon edges e0, e1), c < d;
// at w they are b0, b1, and c2, d2 joined to c, d through both bigon edges.
struct XPart {
    int v = -1, w = -1, e0 = -1, e1 = -1, bigon = -1;
    int a0 = -1, a1 = -1, c = -1, d = -1;
    int b0 = -1, b1 = -1, c2 = -1, d2 = -1;
    bool operator==(const XPart&) const = default;
};

// Every bigon whose neighbourhood is a copy of X, regardless of gleam.
std::vector<XPart> find_x_parts(const SimplePolyhedron& p);

// Inverse of replace_vertex_with_X. Requires bigon gleam +1.
SimplePolyhedron replace_X_with_vertex(const SimplePolyhedron& p, const XPart& x);

// Deletes a region whose closure is an embedded annulus (one circuit and
// one free circle). Edges on it dissolve, vertices on it become points of
// the surviving edges, and regions meeting across a dissolved edge merge
// with summed gleams.
// old_to_new, if given, receives the new index of each old region (-1 for r).
SimplePolyhedron remove_region(const SimplePolyhedron& p, int r, std::vector<int>* old_to_new = nullptr);

}  // namespace bsh::poly
