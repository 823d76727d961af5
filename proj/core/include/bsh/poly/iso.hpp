#pragma once

#include <optional>
#include <vector>

#include "bsh/poly/polyhedron.hpp"

namespace bsh::poly {

struct EdgeImage {
    int edge = -1;
    bool flip = false;  // end k goes to end 1-k, or the circle reverses
    std::array<int, 3> leg{-1, -1, -1};
};

struct Isomorphism {
    std::vector<int> vertex;
    std::vector<EdgeImage> edge;
    std::vector<int> region;
    // +1 if the region map preserves the reference orientations
    std::vector<int> region_sign;
};

struct IsoOptions {
    bool respect_branching = false;
    bool respect_gleams = false;
};

// Boundary colors are always respected.
std::optional<Isomorphism> isomorphic(const SimplePolyhedron& p, const SimplePolyhedron& q,
                                      IsoOptions opt = {});
std::vector<Isomorphism> all_isomorphisms(const SimplePolyhedron& p, const SimplePolyhedron& q,
                                          IsoOptions opt = {});

// Independent re-check of a witness.
bool verify_isomorphism(const SimplePolyhedron& p, const SimplePolyhedron& q, const Isomorphism& iso,
                        IsoOptions opt = {});

}  // namespace bsh::poly
