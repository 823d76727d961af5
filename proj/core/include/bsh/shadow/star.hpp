#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsh/poly/polyhedron.hpp"
#include "bsh/shadow/pd.hpp"

namespace bsh::shadow {

enum class OriginKind { face, outer, annulus };

struct RegionOrigin {
    OriginKind kind;
    int index;  // face index or component index
    bool operator==(const RegionOrigin&) const = default;
};

struct StarShadow {
    poly::SimplePolyhedron polyhedron;
    // the parts each region is made of; one part before reduction
    std::vector<std::vector<RegionOrigin>> origin;
    int outer_region = -1;  // -1 once removed
};

enum class ReductionErrc { closure_not_annulus, branching_incompatible };

struct ReductionError : std::runtime_error {
    ReductionErrc code;
    int edge;
    ReductionError(ReductionErrc code, int edge, const std::string& what)
        : std::runtime_error(what), code(code), edge(edge) {}
};

// Region order: bounded faces, the outer face, one annulus per component.
// Face regions carry +, annuli the given signs. Without signs, the least
// vector (+ before -) that passes the reduction check, else all +.
StarShadow build_star_shadow(const LinkDiagram& d, std::optional<std::vector<int>> annulus_signs = std::nullopt);

// Annulus orientations for which each outer arc gets the same induced
// orientation from the outer face and from its annulus.
bool compatible_orientations(const LinkDiagram& d, const std::vector<int>& annulus_signs);

StarShadow remove_outer_region(const StarShadow& s);

}  // namespace bsh::shadow
