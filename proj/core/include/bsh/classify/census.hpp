#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bsh/poly/homology.hpp"
#include "bsh/poly/moves.hpp"
#include "bsh/poly/polyhedron.hpp"

namespace bsh::classify {

using poly::SimplePolyhedron;

// An outgoing end of X: vertex 0 = v', 1 = w', slot 2 or 3.
struct End {
    int vertex = 0;
    int slot = 2;
    auto operator<=>(const End&) const = default;
};

// The singular component c: X's bigon edges plus two edges joining the
// four outgoing ends.
struct TwoVertexGraph {
    int type = 0;
    std::array<std::array<End, 2>, 2> outer{};
    // edge list of the abstract multigraph, bigon edges first
    std::vector<std::array<int, 2>> edges() const;
};

std::vector<TwoVertexGraph> enumerate_two_vertex_graphs();

bool multigraph_isomorphic(const TwoVertexGraph& a, const TwoVertexGraph& b);
// isomorphism that carries X onto X
bool x_relative_isomorphic(const TwoVertexGraph& a, const TwoVertexGraph& b);

// Relabelings of X (vertex swap, swap of the bigon slots, swap of the
// outgoing slots at each vertex) that preserve X, optionally with its
// branching.
struct XSymmetry {
    std::array<int, 2> vertex;
    std::array<std::array<int, 4>, 2> slot;  // indexed by source vertex
};
std::vector<XSymmetry> x_symmetries(bool respect_branching);

// Directed wings (from slot, to slot) of X at v' and w'.
std::array<std::vector<std::array<int, 2>>, 2> x_branching();

using LegPerm = std::array<int, 3>;

struct ClosureCandidate {
    int graph_type = 0;
    std::array<LegPerm, 2> perms{};
    SimplePolyhedron polyhedron;
    std::vector<std::vector<int>> branchings;  // those extending X's
    std::string label;                         // empty unless branched
    int orbit = -1;                            // orbit under x_symmetries(true)
};

// All 3 x 36 gluings, branched or not.
std::vector<ClosureCandidate> enumerate_gluings();
// Gluings whose branching extends X's (type 3 contributes none).
std::vector<ClosureCandidate> enumerate_closures(std::optional<int> graph_type = std::nullopt);

struct TowerPlan {
    std::vector<int> circles;  // region indices (one free circle each)
    std::vector<int> disks;
};

struct Certificate {
    // survivors: the first plan giving a plausibly trivial group
    std::optional<TowerPlan> plan;
    // eliminated: H1 for every plan tried, ending with towers everywhere
    std::vector<std::pair<TowerPlan, poly::AbelianGroup>> homology;
    bool unknown = false;
};

SimplePolyhedron apply_towers(const SimplePolyhedron& p, const TowerPlan& plan);

struct FilterResult {
    std::vector<std::pair<ClosureCandidate, Certificate>> survivors;
    std::vector<std::pair<ClosureCandidate, Certificate>> eliminated;
    std::vector<std::pair<ClosureCandidate, Certificate>> unknown;
};

// Subsets of boundary circles by size, k = 1 everywhere first, then all
// k <= max_disks.
Certificate simply_connectable(const SimplePolyhedron& p, int max_disks = 3);
FilterResult filter_simply_connectable(const std::vector<ClosureCandidate>& cands, int max_disks = 3);

struct CensusEntry {
    std::string name;                 // P1..P5
    std::string label;                // least member label
    std::vector<std::string> members;
    SimplePolyhedron representative;  // least serialized member
    poly::XPart x_witness;
    Certificate certificate;
};

std::vector<CensusEntry> dedupe(const std::vector<std::pair<ClosureCandidate, Certificate>>& cands);

struct Census {
    std::vector<CensusEntry> entries;
    std::vector<std::pair<ClosureCandidate, Certificate>> eliminated;
    std::vector<ClosureCandidate> unbranched;  // raw gluings without an extension
    std::size_t symmetry_order = 0;
    std::size_t symmetry_order_branched = 0;
};

Census run_census(std::optional<int> graph_type = std::nullopt);

}  // namespace bsh::classify
