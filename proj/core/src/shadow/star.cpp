#include "bsh/shadow/star.hpp"

#include <algorithm>

#include "bsh/poly/moves.hpp"

namespace bsh::shadow {

using poly::Circuit;
using poly::Color;
using poly::Edge;
using poly::Germ;
using poly::Region;
using poly::simple_wing;
using poly::SimplePolyhedron;

namespace {

// Required annulus sign per component from the outer face sides, 0 if
// unconstrained, nullopt on a conflict.
std::optional<std::vector<int>> required_signs(const LinkDiagram& d, const Faces& fs) {
    std::vector<int> need(d.components.size(), 0);
    if (d.crossings.empty()) return need;
    for (const Side& s : fs.faces[fs.outer].sides) {
        int& n = need[d.arc_component[s.arc]];
        if (n != 0 && n != s.dir) return std::nullopt;
        n = s.dir;
    }
    return need;
}

}  // namespace

bool compatible_orientations(const LinkDiagram& d, const std::vector<int>& annulus_signs) {
    if (annulus_signs.size() != d.components.size()) return false;
    const auto need = required_signs(d, diagram_faces(d));
    if (!need) return false;
    for (size_t j = 0; j < need->size(); ++j)
        if ((*need)[j] != 0 && (*need)[j] != annulus_signs[j]) return false;
    return true;
}

StarShadow build_star_shadow(const LinkDiagram& d, std::optional<std::vector<int>> annulus_signs) {
    const Faces fs = diagram_faces(d);
    const int ncomp = static_cast<int>(d.components.size());
    std::vector<int> signs;
    if (annulus_signs) {
        if (static_cast<int>(annulus_signs->size()) != ncomp)
            throw std::invalid_argument("one annulus sign per component expected");
        for (int s : *annulus_signs)
            if (s != 1 && s != -1) throw std::invalid_argument("annulus signs are +1 or -1");
        signs = *annulus_signs;
    } else if (auto need = required_signs(d, fs)) {
        for (int n : *need) signs.push_back(n == 0 ? 1 : n);
    } else {
        signs.assign(ncomp, 1);
    }

    StarShadow out;
    SimplePolyhedron& p = out.polyhedron;
    std::vector<int> face_region(fs.faces.size(), -1);
    std::vector<int> order;
    for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f)
        if (f != fs.outer) order.push_back(f);
    order.push_back(fs.outer);
    for (size_t i = 0; i < order.size(); ++i) face_region[order[i]] = static_cast<int>(i);

    if (d.crossings.empty()) {
        Edge e;
        e.circle = true;
        p.edges.push_back(e);
    } else {
        p.vertices.assign(d.crossings.size(), poly::Vertex{});
        for (int a = 0; a < d.arc_count(); ++a) {
            const Dart t = d.arc_ends[a][0], h = d.arc_ends[a][1];
            const int i = t.pos, j = h.pos;
            Edge e;
            e.ends[0] = {t.crossing, i, {simple_wing(i, (i + 2) % 4), simple_wing(i, (i + 1) % 4), simple_wing(i, (i + 3) % 4)}};
            e.ends[1] = {h.crossing, j, {simple_wing(j, (j + 2) % 4), simple_wing((j + 3) % 4, j), simple_wing(j, (j + 1) % 4)}};
            p.edges.push_back(e);
        }
    }
    for (int f : order) {
        Region r;
        Circuit c;
        for (const Side& s : fs.faces[f].sides) c.push_back(Germ{s.arc, s.dir > 0 ? 1 : 2, s.dir});
        r.circuits.push_back(std::move(c));
        if (f == fs.outer) r.free.push_back(Color::f);
        p.regions.push_back(std::move(r));
        out.origin.push_back({RegionOrigin{f == fs.outer ? OriginKind::outer : OriginKind::face, f}});
    }
    for (int j = 0; j < ncomp; ++j) {
        Region r;
        Circuit c;
        for (int a : d.components[j]) c.push_back(Germ{a, 0, 1});
        r.circuits.push_back(std::move(c));
        r.free.push_back(Color::e);
        p.regions.push_back(std::move(r));
        out.origin.push_back({RegionOrigin{OriginKind::annulus, j}});
    }
    std::vector<int> b(order.size(), 1);
    b.insert(b.end(), signs.begin(), signs.end());
    p.branching = b;
    p.gleam2.assign(p.regions.size(), std::nullopt);
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        int g = 0;
        for (const Corner& c : fs.faces[order[i]].corners) g += corner_contribution2(c.k);
        p.gleam2[i] = g;
    }
    out.outer_region = static_cast<int>(order.size()) - 1;
    return out;
}

StarShadow remove_outer_region(const StarShadow& s) {
    if (s.outer_region < 0) throw ReductionError(ReductionErrc::closure_not_annulus, -1, "outer region already removed");
    if (s.polyhedron.vertices.empty())
        throw ReductionError(ReductionErrc::closure_not_annulus, -1, "outer region closure is a disk");
    StarShadow out;
    std::vector<int> map;
    try {
        out.polyhedron = poly::remove_region(s.polyhedron, s.outer_region, &map);
    } catch (const poly::MoveError& e) {
        if (e.code == poly::MoveErrc::branching_incompatible)
            throw ReductionError(ReductionErrc::branching_incompatible, e.cell, e.what());
        throw ReductionError(ReductionErrc::closure_not_annulus, -1, e.what());
    }
    out.origin.assign(out.polyhedron.regions.size(), {});
    for (size_t r = 0; r < map.size(); ++r)
        if (map[r] >= 0)
            for (const auto& o : s.origin[r]) out.origin[map[r]].push_back(o);
    for (auto& o : out.origin)
        std::sort(o.begin(), o.end(), [](const RegionOrigin& a, const RegionOrigin& b) {
            return std::pair(static_cast<int>(a.kind), a.index) < std::pair(static_cast<int>(b.kind), b.index);
        });
    return out;
}

}  // namespace bsh::shadow
