#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsh/hyp/triangulation.hpp"

namespace bsh::hyp {

struct TetFace {
    int tet = 0;
    int face = 0;
    auto operator<=>(const TetFace&) const = default;
};

// Faces numbered by their least (tet, face) side.
struct FaceList {
    std::vector<std::array<TetFace, 2>> sides;  // sides[i][0] < sides[i][1]
    std::vector<std::array<int, 4>> id;         // (tet, face) -> face
};
FaceList face_list(const IdealTriangulation& t);

// Two faces spanning the same three edge classes and lying opposite each
// other in the cyclic order around every one of them.
struct PantsPair {
    int first = 0, second = 0;
    auto operator<=>(const PantsPair&) const = default;
};
std::vector<PantsPair> find_pants(const IdealTriangulation& t);

// The two sides of a cut pants surface, each holding one side of both faces.
struct PantsSides {
    std::array<TetFace, 2> plus, minus;
};
PantsSides pants_sides(const IdealTriangulation& t, const PantsPair& y);

struct FaceMap {
    TetFace from;
    TetFace to;
    Perm4 perm;
    bool operator==(const FaceMap&) const = default;
};

struct Regluing {
    std::vector<PantsPair> pants;
    std::vector<FaceMap> maps;  // from plus sides to minus sides
    bool operator==(const Regluing&) const = default;
};

struct RegluingError : std::runtime_error {
    int edge_class;  // -1 when not about an edge
    RegluingError(const std::string& what, int edge_class = -1) : std::runtime_error(what), edge_class(edge_class) {}
};

// Cuts along the pants and glues by the maps. Rejects maps that are not a
// bijection from the plus sides onto the minus sides, do not carry the
// face, are orientation-preserving, or leave an edge of valence other than 6.
IdealTriangulation reglue_along_pants(const IdealTriangulation& t, const Regluing& r);

// The original gluing of the cut sides.
Regluing identity_regluing(const IdealTriangulation& t, const std::vector<PantsPair>& pants);

// Every regluing of two pants that matches plus sides to minus sides
// (straight, or crossed between the pants), with odd face maps carrying
// punctures to punctures bijectively.
struct RegluingCandidate {
    Regluing regluing;
    bool crossed = false;
};
std::vector<RegluingCandidate> enumerate_regluings(const IdealTriangulation& t, const PantsPair& y1, const PantsPair& y2);

// REGLUE 1 text: "pants a b" lines, "map t f -> t' f' perm pppp" lines, "end".
Regluing parse_regluing(const std::string& text);
std::string serialize_regluing(const Regluing& r);

struct Variant {
    std::string name;
    Regluing regluing;
    int cusps = 0;
};

// Deterministic search over pairs of disjoint pants of the cover:
//   L2: straight family of the first pair, first pants kept, 4 cusps;
//   L3: crossed family of the first pair having a 4-cusp class other than L2;
//   L4: the 3-cusp class of least canonical code in that family.
// Within a class the least regluing (by its serialization) represents it.
std::vector<Variant> search_variants(const IdealTriangulation& cover);

}  // namespace bsh::hyp
