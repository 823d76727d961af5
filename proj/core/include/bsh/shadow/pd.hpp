#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsh::shadow {

enum class DiagramErrc { malformed, multiplicity, split, bad_outer };

struct DiagramError : std::runtime_error {
    DiagramErrc code;
    DiagramError(DiagramErrc code, const std::string& what) : std::runtime_error(what), code(code) {}
};

// Position p of a crossing; positions run counterclockwise from the
// incoming under-strand (0 in, 2 out under; 1 and 3 over).
struct Dart {
    int crossing = -1;
    int pos = -1;
    bool operator==(const Dart&) const = default;
};

struct LinkDiagram {
    // arcs relabeled 0..n-1 in order of first appearance
    std::vector<std::array<int, 4>> crossings;
    std::vector<int> input_label;  // canonical arc -> label in the input
    // tail (leaving a crossing) and head (entering one), along the component
    std::vector<std::array<Dart, 2>> arc_ends;
    std::vector<int> arc_component;
    std::vector<std::vector<int>> components;  // arcs in traversal order
    std::optional<std::vector<int>> outer;     // canonical arcs of the outer annotation

    int crossing_count() const { return static_cast<int>(crossings.size()); }
    int arc_count() const { return static_cast<int>(arc_component.size()); }
};

// Whitespace separated X(a,b,c,d) tuples, or a lone U(), plus an
// optional outer=a,b,... naming the outer face by its arcs.
LinkDiagram parse_pd(const std::string& text);

// A face side: an arc and the traversal direction, face on the left.
struct Side {
    int arc = -1;
    int dir = 1;
    bool operator==(const Side&) const = default;
};

// Corner {k, k+1} (positions mod 4) of a crossing.
struct Corner {
    int crossing = -1;
    int k = 0;
};

struct Face {
    std::vector<Side> sides;
    std::vector<Corner> corners;
    std::vector<int> sorted_arcs() const;
};

struct Faces {
    std::vector<Face> faces;
    int outer = -1;
};

Faces diagram_faces(const LinkDiagram& d);

// Twice the gleam contribution of a corner: +1 on {0,1} and {2,3}, -1 on
// {1,2} and {3,0}.
int corner_contribution2(int k);

// PD of the closure of a braid word; letter +-i is sigma_i^{+-1} on
// strands i, i+1 (1-based).
std::string braid_closure_pd(int strands, const std::vector<int>& word);

}  // namespace bsh::shadow
