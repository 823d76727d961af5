#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace bsh::poly {

// Vertex model. A simple vertex is the cone over the 1-skeleton of a
// tetrahedron: 4 edge-end slots, one wing per unordered slot pair. A
// II3 vertex keeps 4 slots but doubles the wings {0,1} and {2,3} and
// drops {0,3}, {1,2}.
enum class VertexKind { simple, ii3 };

struct Vertex {
    VertexKind kind = VertexKind::simple;
    bool operator==(const Vertex&) const = default;
};

// Slot pair of a wing.
const std::array<int, 2>& wing_slots(VertexKind kind, int wing);
// The three wings incident to a slot, ascending.
std::array<int, 3> wings_at(VertexKind kind, int slot);
int wing_other(VertexKind kind, int wing, int slot);
// Wing id of {a,b} at a simple vertex.
int simple_wing(int a, int b);

// leg[j] is the wing (at this end's vertex) that leg j of the edge enters.
struct EdgeEnd {
    int vertex = -1;
    int slot = -1;
    std::array<int, 3> leg{-1, -1, -1};
    bool operator==(const EdgeEnd&) const = default;
};

struct Edge {
    bool circle = false;
    std::array<EdgeEnd, 2> ends{};
    // circle edges: leg j continues as leg monodromy[j] after one turn
    std::array<int, 3> monodromy{0, 1, 2};
    bool operator==(const Edge&) const = default;
};

// One passage of a region boundary along a leg of an edge; dir = +1
// runs from end 0 to end 1 (or along the circle's own direction).
struct Germ {
    int edge = 0;
    int leg = 0;
    int dir = 1;
    auto operator<=>(const Germ&) const = default;
};

using Circuit = std::vector<Germ>;

enum class Color { i, e, f };
char color_char(Color c);
std::optional<Color> color_from_char(char c);

// Circuits are stored in the boundary orientation induced by the
// region's reference orientation.
struct Region {
    int genus = 0;
    std::vector<Circuit> circuits;
    std::vector<Color> free;
    bool internal() const { return free.empty(); }
    bool operator==(const Region&) const = default;
};

struct SimplePolyhedron {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Region> regions;
    // +1/-1 per region relative to its reference orientation
    std::optional<std::vector<int>> branching;
    // twice the gleam, per region; unset means no gleam
    std::vector<std::optional<int>> gleam2;

    std::optional<int> gleam_twice(int r) const {
        if (r < 0 || r >= static_cast<int>(gleam2.size())) return std::nullopt;
        return gleam2[r];
    }
    void set_gleam_twice(int r, std::optional<int> g) {
        if (gleam2.size() < regions.size()) gleam2.resize(regions.size());
        gleam2[r] = g;
    }
    int ii3_count() const;
    int free_circle_count() const;
    bool operator==(const SimplePolyhedron&) const = default;
};

struct Violation {
    std::string cell;
    std::string what;
};

std::vector<Violation> validate(const SimplePolyhedron& p);
bool is_valid(const SimplePolyhedron& p);

// Slot incidence of a structurally sound polyhedron: at[v][s] = {edge, end}.
struct Incidence {
    std::vector<std::array<std::array<int, 2>, 4>> at;
    explicit Incidence(const SimplePolyhedron& p);
};

// Boundary successor of a germ.
Germ next_germ(const SimplePolyhedron& p, const Incidence& inc, const Germ& g);

// Every germ grouped into circuits by following next_germ, starting from
// the least untouched (edge, leg) with dir +1.
std::vector<Circuit> trace_circuits(const SimplePolyhedron& p);

int euler_characteristic(const SimplePolyhedron& p);

// Sign of the edge orientation induced at germ g by region r.
int induced_orientation(const SimplePolyhedron& p, const std::vector<int>& signs, int region,
                        const Germ& g);

// region index and stored direction of each (edge, leg)
struct GermOwner {
    int region = -1;
    int circuit = -1;
    int index = -1;
    int dir = 0;
};
std::vector<std::array<GermOwner, 3>> germ_owners(const SimplePolyhedron& p);

bool branching_ok(const SimplePolyhedron& p, const std::vector<int>& signs);
std::vector<std::vector<int>> enumerate_branchings(const SimplePolyhedron& p);

// Connected components of the singular graph, as edge lists (vertices
// included via their edges); vertexless circle edges are singletons.
std::vector<std::vector<int>> singular_components(const SimplePolyhedron& p);

}  // namespace bsh::poly
