#include "bsh/poly/moves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace bsh::poly {

namespace {

void resize_gleams(SimplePolyhedron& p) { p.gleam2.resize(p.regions.size()); }

int arrival_vertex(const SimplePolyhedron& p, const Germ& g) {
    const Edge& e = p.edges[g.edge];
    if (e.circle) return -1;
    return e.ends[g.dir > 0 ? 1 : 0].vertex;
}

const EdgeEnd& arrival_end(const SimplePolyhedron& p, const Germ& g) {
    return p.edges[g.edge].ends[g.dir > 0 ? 1 : 0];
}

int leg_with_wing(const EdgeEnd& en, int wing) {
    for (int j = 0; j < 3; ++j)
        if (en.leg[j] == wing) return j;
    return -1;
}

// X seen from the II3 vertex: slot -> (side, slot of X), side 0 = v', 1 = w'
constexpr std::array<std::array<int, 2>, 4> kXSlot{{{0, 2}, {1, 2}, {0, 3}, {1, 3}}};
// II3 wing -> bigon edge carrying it (0, 1) or -1 when it stays local
constexpr std::array<int, 6> kRoute{0, 1, 0, 1, -1, -1};

}  // namespace

SimplePolyhedron attach_tower(const SimplePolyhedron& p, FreeCircle at, int k, Color new_color) {
    if (at.region < 0 || at.region >= static_cast<int>(p.regions.size()) || at.index < 0 ||
        at.index >= static_cast<int>(p.regions[at.region].free.size()))
        throw MoveError(MoveErrc::no_such_circle, at.region, "attachment circle is not a free circle");
    if (k < 1) throw MoveError(MoveErrc::no_such_circle, at.region, "tower needs at least one disk");
    SimplePolyhedron out = p;
    resize_gleams(out);
    Region& base = out.regions[at.region];
    base.free.erase(base.free.begin() + at.index);
    const int first = static_cast<int>(out.edges.size());
    for (int i = 0; i < k; ++i) {
        Edge c;
        c.circle = true;
        out.edges.push_back(c);
    }
    out.regions[at.region].circuits.push_back({{first, 0, 1}});
    const int s = p.branching ? (*p.branching)[at.region] : 1;
    for (int i = 0; i < k; ++i) {
        Region disk;
        disk.circuits.push_back({{first + i, 1, 1}});
        Region piece;
        piece.circuits.push_back({{first + i, 2, -1}});
        if (i + 1 < k)
            piece.circuits.push_back({{first + i + 1, 0, 1}});
        else
            piece.free.push_back(new_color);
        out.regions.push_back(disk);
        out.regions.push_back(piece);
        if (out.branching) {
            out.branching->push_back(1);
            out.branching->push_back(s);
        }
    }
    resize_gleams(out);
    return out;
}

SimplePolyhedron replace_vertex_with_X(const SimplePolyhedron& q, int v) {
    if (v < 0 || v >= static_cast<int>(q.vertices.size()) || q.vertices[v].kind != VertexKind::ii3)
        throw MoveError(MoveErrc::not_ii3_vertex, v, "vertex is not a II3 vertex");
    SimplePolyhedron out = q;
    resize_gleams(out);
    const int w = static_cast<int>(out.vertices.size());
    out.vertices[v].kind = VertexKind::simple;
    out.vertices.push_back({VertexKind::simple});
    const int e0 = static_cast<int>(out.edges.size());
    const int e1 = e0 + 1;

    for (auto& reg : out.regions)
        for (auto& cir : reg.circuits) {
            Circuit next;
            for (const Germ& g : cir) {
                next.push_back(g);
                if (arrival_vertex(q, g) != v) continue;
                const EdgeEnd& en = arrival_end(q, g);
                const int wing = en.leg[g.leg];
                if (kRoute[wing] < 0) continue;
                // II3 wings 0,1 pass slot 2 of X, wings 2,3 pass slot 3
                next.push_back({kRoute[wing] == 0 ? e0 : e1, wing < 2 ? 1 : 2, kXSlot[en.slot][0] == 0 ? 1 : -1});
            }
            cir = std::move(next);
        }

    for (auto& ed : out.edges) {
        if (ed.circle) continue;
        for (auto& en : ed.ends) {
            if (en.vertex != v) continue;
            const auto [side, xs] = kXSlot[en.slot];
            for (int& wing : en.leg) {
                const int route = kRoute[wing];
                wing = route < 0 ? simple_wing(2, 3) : simple_wing(route, xs);
            }
            en.vertex = side == 0 ? v : w;
            en.slot = xs;
        }
    }

    Edge b0, b1;
    b0.ends[0] = {v, 0, {0, 1, 2}};
    b0.ends[1] = {w, 0, {0, 1, 2}};
    b1.ends[0] = {v, 1, {0, 3, 4}};
    b1.ends[1] = {w, 1, {0, 3, 4}};
    out.edges.push_back(b0);
    out.edges.push_back(b1);

    Region bigon;
    bigon.circuits.push_back({{e0, 0, 1}, {e1, 0, -1}});
    out.regions.push_back(bigon);
    resize_gleams(out);
    out.gleam2.back() = 2;

    if (out.branching) {
        out.branching->push_back(-1);
        if (!branching_ok(out, *out.branching)) {
            out.branching->back() = 1;
            if (!branching_ok(out, *out.branching)) out.branching.reset();
        }
    }
    return out;
}

std::vector<XPart> find_x_parts(const SimplePolyhedron& p) {
    std::vector<XPart> out;
    for (int r = 0; r < static_cast<int>(p.regions.size()); ++r) {
        const Region& reg = p.regions[r];
        if (reg.genus != 0 || !reg.free.empty() || reg.circuits.size() != 1 || reg.circuits[0].size() != 2) continue;
        const Germ ga = reg.circuits[0][0], gb = reg.circuits[0][1];
        if (ga.edge == gb.edge) continue;
        const Edge& ea = p.edges[ga.edge];
        const Edge& eb = p.edges[gb.edge];
        if (ea.circle || eb.circle) continue;
        const int v = std::min(ea.ends[0].vertex, ea.ends[1].vertex);
        const int w = std::max(ea.ends[0].vertex, ea.ends[1].vertex);
        if (v == w || std::minmax(eb.ends[0].vertex, eb.ends[1].vertex) != std::pair<const int&, const int&>(v, w))
            continue;
        if (p.vertices[v].kind != VertexKind::simple || p.vertices[w].kind != VertexKind::simple) continue;
        auto end_at = [&](const Edge& e, int x) -> const EdgeEnd& { return e.ends[e.ends[0].vertex == x ? 0 : 1]; };
        XPart x;
        x.v = v;
        x.w = w;
        x.bigon = r;
        const bool a_first = end_at(ea, v).slot < end_at(eb, v).slot;
        x.e0 = a_first ? ga.edge : gb.edge;
        x.e1 = a_first ? gb.edge : ga.edge;
        const Edge& E0 = p.edges[x.e0];
        const Edge& E1 = p.edges[x.e1];
        x.a0 = end_at(E0, v).slot;
        x.a1 = end_at(E1, v).slot;
        x.b0 = end_at(E0, w).slot;
        x.b1 = end_at(E1, w).slot;
        std::vector<int> rest_v, rest_w;
        for (int s = 0; s < 4; ++s) {
            if (s != x.a0 && s != x.a1) rest_v.push_back(s);
            if (s != x.b0 && s != x.b1) rest_w.push_back(s);
        }
        x.c = rest_v[0];
        x.d = rest_v[1];
        // where the legs through slot s at v come out at w
        auto exit_slot = [&](const Edge& e, int a, int b, int s) {
            const EdgeEnd& ev = end_at(e, v);
            const EdgeEnd& ew = end_at(e, w);
            const int j = leg_with_wing(ev, simple_wing(a, s));
            if (j < 0) return -1;
            const int t = wing_other(VertexKind::simple, ew.leg[j], b);
            return t;
        };
        x.c2 = exit_slot(E0, x.a0, x.b0, x.c);
        x.d2 = exit_slot(E0, x.a0, x.b0, x.d);
        if (x.c2 < 0 || x.d2 < 0 || x.c2 == x.d2) continue;
        if (x.c2 == x.b1 || x.d2 == x.b1) continue;
        if (exit_slot(E1, x.a1, x.b1, x.c) != x.c2 || exit_slot(E1, x.a1, x.b1, x.d) != x.d2) continue;
        // the bigon must run through wing {a0,a1} at v and {b0,b1} at w
        const int jb0 = leg_with_wing(end_at(E0, v), simple_wing(x.a0, x.a1));
        const int jb1 = leg_with_wing(end_at(E1, v), simple_wing(x.a0, x.a1));
        if (end_at(E0, w).leg[jb0] != simple_wing(x.b0, x.b1) || end_at(E1, w).leg[jb1] != simple_wing(x.b0, x.b1))
            continue;
        const Germ& g0 = ga.edge == x.e0 ? ga : gb;
        const Germ& g1 = ga.edge == x.e0 ? gb : ga;
        if (g0.leg != jb0 || g1.leg != jb1) continue;
        out.push_back(x);
    }
    return out;
}

SimplePolyhedron replace_X_with_vertex(const SimplePolyhedron& p, const XPart& x) {
    const auto parts = find_x_parts(p);
    if (std::find(parts.begin(), parts.end(), x) == parts.end())
        throw MoveError(MoveErrc::not_x_part, x.bigon, "sub-polyhedron is not a copy of X");
    if (p.gleam_twice(x.bigon) != 2) throw MoveError(MoveErrc::bigon_gleam, x.bigon, "bigon gleam is not +1");

    // (vertex, slot) -> II3 slot, and per slot the wing relabeling
    auto ii3_slot = [&](int vert, int s) {
        if (vert == x.v) return s == x.c ? 0 : 2;
        return s == x.c2 ? 1 : 3;
    };
    auto ii3_wing = [&](int vert, int s, int wing) {
        const int t = wing_other(VertexKind::simple, wing, s);
        const bool at_v = vert == x.v;
        if (t == (at_v ? x.a0 : x.b0)) return (s == (at_v ? x.c : x.c2)) ? 0 : 2;
        if (t == (at_v ? x.a1 : x.b1)) return (s == (at_v ? x.c : x.c2)) ? 1 : 3;
        return at_v ? 4 : 5;
    };

    SimplePolyhedron out;
    std::vector<int> vmap(p.vertices.size()), emap(p.edges.size(), -1), rmap(p.regions.size(), -1);
    for (int v = 0, n = 0; v < static_cast<int>(p.vertices.size()); ++v) {
        if (v == x.w) {
            vmap[v] = vmap[x.v];
            continue;
        }
        vmap[v] = n++;
        out.vertices.push_back(p.vertices[v]);
        if (v == x.v) out.vertices.back().kind = VertexKind::ii3;
    }
    if (x.w < x.v) throw MoveError(MoveErrc::not_x_part, x.bigon, "X part vertices out of order");
    vmap[x.w] = vmap[x.v];
    for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
        if (e == x.e0 || e == x.e1) continue;
        emap[e] = static_cast<int>(out.edges.size());
        Edge ed = p.edges[e];
        if (!ed.circle)
            for (auto& en : ed.ends) {
                if (en.vertex == x.v || en.vertex == x.w) {
                    for (int& wing : en.leg) wing = ii3_wing(en.vertex, en.slot, wing);
                    en.slot = ii3_slot(en.vertex, en.slot);
                }
                en.vertex = vmap[en.vertex];
            }
        out.edges.push_back(ed);
    }
    for (int r = 0; r < static_cast<int>(p.regions.size()); ++r) {
        if (r == x.bigon) continue;
        rmap[r] = static_cast<int>(out.regions.size());
        Region reg = p.regions[r];
        for (auto& cir : reg.circuits) {
            Circuit next;
            for (const Germ& g : cir)
                if (emap[g.edge] >= 0) next.push_back({emap[g.edge], g.leg, g.dir});
            cir = std::move(next);
        }
        out.regions.push_back(std::move(reg));
    }
    if (p.branching) {
        std::vector<int> b;
        for (int r = 0; r < static_cast<int>(p.regions.size()); ++r)
            if (r != x.bigon) b.push_back((*p.branching)[r]);
        out.branching = b;
    }
    out.gleam2.assign(out.regions.size(), std::nullopt);
    for (int r = 0; r < static_cast<int>(p.regions.size()); ++r)
        if (rmap[r] >= 0) out.gleam2[rmap[r]] = p.gleam_twice(r);
    return out;
}

SimplePolyhedron remove_region(const SimplePolyhedron& p, int rr, std::vector<int>* old_to_new) {
    if (rr < 0 || rr >= static_cast<int>(p.regions.size()))
        throw MoveError(MoveErrc::closure_not_annulus, rr, "no such region");
    const Region& R = p.regions[rr];
    if (R.genus != 0 || R.circuits.size() != 1 || R.free.size() != 1)
        throw MoveError(MoveErrc::closure_not_annulus, rr, "region closure is not an annulus");
    const Circuit& C = R.circuits[0];
    const int ne = static_cast<int>(p.edges.size());
    const int nv = static_cast<int>(p.vertices.size());
    const int nr = static_cast<int>(p.regions.size());

    std::vector<bool> dissolved(ne, false);
    for (const Germ& g : C) {
        if (dissolved[g.edge])
            throw MoveError(MoveErrc::closure_not_annulus, rr, "region boundary runs twice along an edge");
        dissolved[g.edge] = true;
    }
    // junction vertex -> (slot pair of the removed wing)
    std::vector<std::array<int, 2>> junction(nv, {-1, -1});
    {
        Incidence inc(p);
        for (size_t i = 0; i < C.size(); ++i) {
            const Germ& g = C[i];
            if (p.edges[g.edge].circle) continue;
            const EdgeEnd& en = arrival_end(p, g);
            if (junction[en.vertex][0] >= 0)
                throw MoveError(MoveErrc::closure_not_annulus, rr, "region boundary passes a vertex twice");
            if (p.vertices[en.vertex].kind != VertexKind::simple)
                throw MoveError(MoveErrc::closure_not_annulus, rr, "region boundary passes a II3 vertex");
            junction[en.vertex] = wing_slots(VertexKind::simple, en.leg[g.leg]);
        }
    }

    // merge regions across dissolved edges, with orientation parity
    const auto own = germ_owners(p);
    std::vector<int> parent(nr), parity(nr, 0);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](auto&& self, int x) -> std::pair<int, int> {
        if (parent[x] == x) return {x, 0};
        auto [root, par] = self(self, parent[x]);
        parent[x] = root;
        parity[x] ^= par;
        return {root, parity[x]};
    };
    std::vector<int> dissolved_arcs(nr, 0);
    for (int e = 0; e < ne; ++e) {
        if (!dissolved[e]) continue;
        std::vector<GermOwner> rest;
        for (int j = 0; j < 3; ++j)
            if (own[e][j].region != rr) rest.push_back(own[e][j]);
        if (rest.size() != 2) throw MoveError(MoveErrc::closure_not_annulus, rr, "region meets an edge twice");
        if (p.branching && (*p.branching)[rest[0].region] * rest[0].dir != -(*p.branching)[rest[1].region] * rest[1].dir)
            throw MoveError(MoveErrc::branching_incompatible, e,
                            "edge " + std::to_string(e) + ": merged regions induce the same orientation");
        const int want = rest[0].dir == -rest[1].dir ? 0 : 1;
        auto [ra, pa] = find(find, rest[0].region);
        auto [rb, pb] = find(find, rest[1].region);
        if (ra == rb) {
            if ((pa ^ pb) != want)
                throw MoveError(MoveErrc::non_orientable, e, "merged region is not orientable");
        } else {
            parent[ra] = rb;
            parity[ra] = pa ^ pb ^ want;
        }
        if (!p.edges[e].circle) ++dissolved_arcs[rest[0].region];
    }

    // surviving edges chained through junctions
    Incidence inc(p);
    struct Piece {
        int edge;
        int orient;
        std::array<int, 3> to_new;
    };
    std::vector<std::vector<Piece>> chains;
    std::vector<bool> closed;
    std::vector<bool> seen(ne, false);
    auto other_slot = [&](int v, int s) {
        const auto ab = junction[v];
        for (int t = 0; t < 4; ++t)
            if (t != s && t != ab[0] && t != ab[1]) return t;
        return -1;
    };
    // leg j of piece leaving through end en; returns the wing label to find
    // on the neighbour's end at slot t = other_slot
    auto across = [&](int v, int s, int wing) {
        const int t = other_slot(v, s);
        int x = wing_other(VertexKind::simple, wing, s);
        if (x == t) x = s;
        return std::pair<int, int>{t, simple_wing(t, x)};
    };
    for (int e = 0; e < ne; ++e) {
        if (dissolved[e] || seen[e]) continue;
        std::vector<Piece> chain{{e, 1, {0, 1, 2}}};
        seen[e] = true;
        bool is_closed = false;
        if (!p.edges[e].circle) {
            // forward
            for (;;) {
                const Piece& last = chain.back();
                const EdgeEnd& ex = p.edges[last.edge].ends[last.orient > 0 ? 1 : 0];
                if (junction[ex.vertex][0] < 0) break;
                const int t = other_slot(ex.vertex, ex.slot);
                const auto [e2, k2] = inc.at[ex.vertex][t];
                const EdgeEnd& en2 = p.edges[e2].ends[k2];
                std::array<int, 3> map{-1, -1, -1};
                for (int j = 0; j < 3; ++j) {
                    const auto [tt, wing2] = across(ex.vertex, ex.slot, ex.leg[j]);
                    map[leg_with_wing(en2, wing2)] = last.to_new[j];
                }
                if (e2 == e) {
                    is_closed = true;
                    // monodromy: new leg J returns as anchor leg map^-1
                    Edge circ;
                    circ.circle = true;
                    for (int j = 0; j < 3; ++j) circ.monodromy[map[j]] = j;
                    chain.front().to_new = {0, 1, 2};
                    chains.push_back(chain);
                    closed.push_back(true);
                    chains.back().push_back({-1, 0, circ.monodromy});
                    break;
                }
                seen[e2] = true;
                chain.push_back({e2, k2 == 0 ? 1 : -1, map});
            }
            if (!is_closed) {
                for (;;) {
                    const Piece& first = chain.front();
                    const EdgeEnd& en = p.edges[first.edge].ends[first.orient > 0 ? 0 : 1];
                    if (junction[en.vertex][0] < 0) break;
                    const int t = other_slot(en.vertex, en.slot);
                    const auto [e2, k2] = inc.at[en.vertex][t];
                    const EdgeEnd& en2 = p.edges[e2].ends[k2];
                    std::array<int, 3> map{-1, -1, -1};
                    for (int j = 0; j < 3; ++j) {
                        const auto [tt, wing2] = across(en.vertex, en.slot, en.leg[j]);
                        map[leg_with_wing(en2, wing2)] = first.to_new[j];
                    }
                    seen[e2] = true;
                    chain.insert(chain.begin(), Piece{e2, k2 == 0 ? -1 : 1, map});
                }
            }
        }
        if (!is_closed) {
            chains.push_back(chain);
            closed.push_back(false);
        }
    }

    // assemble
    SimplePolyhedron out;
    std::vector<int> vmap(nv, -1);
    for (int v = 0; v < nv; ++v)
        if (junction[v][0] < 0) {
            vmap[v] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(p.vertices[v]);
        }
    // old (edge, leg) -> new (edge, leg, orientation)
    std::vector<std::array<std::array<int, 3>, 3>> germ_map(ne);
    for (size_t c = 0; c < chains.size(); ++c) {
        auto& ch = chains[c];
        Edge ne_;
        if (closed[c]) {
            ne_.circle = true;
            ne_.monodromy = ch.back().to_new;
            ch.pop_back();
        } else if (p.edges[ch.front().edge].circle) {
            ne_ = p.edges[ch.front().edge];
        } else {
            const Piece& f = ch.front();
            const Piece& l = ch.back();
            EdgeEnd a = p.edges[f.edge].ends[f.orient > 0 ? 0 : 1];
            EdgeEnd b = p.edges[l.edge].ends[l.orient > 0 ? 1 : 0];
            EdgeEnd na{vmap[a.vertex], a.slot, {}}, nb{vmap[b.vertex], b.slot, {}};
            for (int j = 0; j < 3; ++j) {
                na.leg[f.to_new[j]] = a.leg[j];
                nb.leg[l.to_new[j]] = b.leg[j];
            }
            ne_.ends = {na, nb};
        }
        for (const Piece& pc : ch)
            for (int j = 0; j < 3; ++j) germ_map[pc.edge][j] = {static_cast<int>(out.edges.size()), pc.to_new[j], pc.orient};
        out.edges.push_back(ne_);
    }

    // regions: groups ordered by least member
    std::map<int, std::vector<int>> groups;
    for (int r = 0; r < nr; ++r)
        if (r != rr) groups[find(find, r).first].push_back(r);
    std::vector<std::vector<int>> ordered;
    for (auto& [root, members] : groups) ordered.push_back(members);
    std::sort(ordered.begin(), ordered.end());
    std::vector<int> new_of(nr, -1);
    for (size_t i = 0; i < ordered.size(); ++i)
        for (int r : ordered[i]) new_of[r] = static_cast<int>(i);
    out.regions.resize(ordered.size());
    std::vector<int> chi(ordered.size(), 0);
    for (size_t i = 0; i < ordered.size(); ++i)
        for (int r : ordered[i]) {
            const Region& reg = p.regions[r];
            chi[i] += 2 - 2 * reg.genus - static_cast<int>(reg.circuits.size() + reg.free.size()) - dissolved_arcs[r];
            out.regions[i].free.insert(out.regions[i].free.end(), reg.free.begin(), reg.free.end());
        }

    // inverse germ map for retracing
    std::vector<std::array<std::array<int, 3>, 3>> back(out.edges.size());
    for (int e = 0; e < ne; ++e)
        if (!dissolved[e])
            for (int j = 0; j < 3; ++j) {
                const auto& m = germ_map[e][j];
                back[m[0]][m[1]] = {e, j, m[2]};
            }
    for (Circuit cir : trace_circuits(out)) {
        const Germ g0 = cir.front();
        const auto [oe, oj, orient] = back[g0.edge][g0.leg];
        const GermOwner& o = own[oe][oj];
        const int least = ordered[new_of[o.region]][0];
        const int par = find(find, o.region).second ^ find(find, least).second;
        const int induced = o.dir * (par ? -1 : 1);
        if (orient != induced) {
            std::reverse(cir.begin(), cir.end());
            for (Germ& g : cir) g.dir = -g.dir;
            std::rotate(cir.begin(), cir.end() - 1, cir.end());
        }
        out.regions[new_of[o.region]].circuits.push_back(std::move(cir));
    }
    for (size_t i = 0; i < ordered.size(); ++i) {
        Region& reg = out.regions[i];
        const int twice_genus = 2 - static_cast<int>(reg.circuits.size() + reg.free.size()) - chi[i];
        if (twice_genus < 0 || twice_genus % 2)
            throw MoveError(MoveErrc::non_orientable, static_cast<int>(i), "merged region has no consistent genus");
        reg.genus = twice_genus / 2;
    }
    if (p.branching) {
        std::vector<int> b(ordered.size());
        // a merged region takes the orientation of its least member
        for (size_t i = 0; i < ordered.size(); ++i) b[i] = (*p.branching)[ordered[i][0]];
        out.branching = b;
    }
    out.gleam2.assign(ordered.size(), std::nullopt);
    for (size_t i = 0; i < ordered.size(); ++i) {
        if (!out.regions[i].internal()) continue;
        std::optional<int> sum;
        for (int r : ordered[i])
            if (auto g = p.gleam_twice(r)) sum = sum.value_or(0) + *g;
        out.gleam2[i] = sum;
    }
    if (old_to_new) *old_to_new = new_of;
    return out;
}

}  // namespace bsh::poly
