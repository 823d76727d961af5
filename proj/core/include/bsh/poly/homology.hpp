#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsh/poly/polyhedron.hpp"

namespace bsh::poly {

// A 2-complex: 1-cells run tail -> head, 2-cells are closed words with
// letters +-(cell+1).
struct CellComplex {
    int points = 0;
    std::vector<std::array<int, 2>> arcs;
    std::vector<std::vector<int>> faces;
};

// 0-cells: vertices, one point per circle edge, one base point per region.
// 1-cells: interval edges, one loop per circle edge, and per region one
// spoke to each circuit start, 2g genus loops and one loop per free circle.
// Each region is one 2-cell.
CellComplex cell_complex(const SimplePolyhedron& p);

struct AbelianGroup {
    int rank = 0;
    std::vector<std::int64_t> torsion;
    bool trivial() const { return rank == 0 && torsion.empty(); }
    std::string str() const;
    bool operator==(const AbelianGroup&) const = default;
};

AbelianGroup first_homology(const CellComplex& c);
AbelianGroup first_homology(const SimplePolyhedron& p);

struct GroupPresentation {
    int generators = 0;
    // letters +-(g+1)
    std::vector<std::vector<int>> relators;
    bool operator==(const GroupPresentation&) const = default;
};

// Generators are the 1-cells off a BFS spanning tree rooted at point 0.
GroupPresentation fundamental_group(const CellComplex& c);
GroupPresentation fundamental_group(const SimplePolyhedron& p);

struct TietzeBounds {
    int max_rounds = 2000;
    std::size_t max_total_length = 50000;
};

// Free/cyclic reduction plus elimination of generators occurring once in
// some relator. Sound: never invents relations.
GroupPresentation tietze_simplify(GroupPresentation g, const TietzeBounds& b = {});

enum class Triviality { yes, unknown };
Triviality is_plausibly_trivial(const GroupPresentation& g, const TietzeBounds& b = {});

}  // namespace bsh::poly
