#include "bsh/poly/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bsh::poly {

namespace {

constexpr std::array<std::array<int, 2>, 6> kSimpleWings{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
constexpr std::array<std::array<int, 2>, 6> kII3Wings{
    {{0, 1}, {0, 1}, {2, 3}, {2, 3}, {0, 2}, {1, 3}}};

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

std::string germ_str(const Germ& g) {
    std::ostringstream os;
    os << g.edge << "." << g.leg << (g.dir > 0 ? "+" : "-");
    return os.str();
}

}  // namespace

const std::array<int, 2>& wing_slots(VertexKind kind, int wing) {
    return kind == VertexKind::simple ? kSimpleWings.at(wing) : kII3Wings.at(wing);
}

std::array<int, 3> wings_at(VertexKind kind, int slot) {
    std::array<int, 3> out{};
    int n = 0;
    for (int w = 0; w < 6; ++w) {
        const auto& s = wing_slots(kind, w);
        if (s[0] == slot || s[1] == slot) out[n++] = w;
    }
    return out;
}

int wing_other(VertexKind kind, int wing, int slot) {
    const auto& s = wing_slots(kind, wing);
    return s[0] == slot ? s[1] : s[0];
}

int simple_wing(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int w = 0; w < 6; ++w)
        if (kSimpleWings[w][0] == a && kSimpleWings[w][1] == b) return w;
    return -1;
}

char color_char(Color c) {
    switch (c) {
    case Color::i: return 'i';
    case Color::e: return 'e';
    case Color::f: return 'f';
    }
    return '?';
}

std::optional<Color> color_from_char(char c) {
    if (c == 'i') return Color::i;
    if (c == 'e') return Color::e;
    if (c == 'f') return Color::f;
    return std::nullopt;
}

int SimplePolyhedron::ii3_count() const {
    return static_cast<int>(std::count_if(vertices.begin(), vertices.end(),
                                          [](const Vertex& v) { return v.kind == VertexKind::ii3; }));
}

int SimplePolyhedron::free_circle_count() const {
    int n = 0;
    for (const auto& r : regions) n += static_cast<int>(r.free.size());
    return n;
}

Incidence::Incidence(const SimplePolyhedron& p) : at(p.vertices.size()) {
    for (auto& a : at)
        for (auto& s : a) s = {-1, -1};
    for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
        const auto& ed = p.edges[e];
        if (ed.circle) continue;
        for (int k = 0; k < 2; ++k) at[ed.ends[k].vertex][ed.ends[k].slot] = {e, k};
    }
}

Germ next_germ(const SimplePolyhedron& p, const Incidence& inc, const Germ& g) {
    const Edge& e = p.edges[g.edge];
    if (e.circle) {
        if (g.dir > 0) return {g.edge, e.monodromy[g.leg], 1};
        for (int j = 0; j < 3; ++j)
            if (e.monodromy[j] == g.leg) return {g.edge, j, -1};
        return g;
    }
    const EdgeEnd& arr = e.ends[g.dir > 0 ? 1 : 0];
    const VertexKind kind = p.vertices[arr.vertex].kind;
    const int wing = arr.leg[g.leg];
    const int t = wing_other(kind, wing, arr.slot);
    const auto [e2, k2] = inc.at[arr.vertex][t];
    const EdgeEnd& dep = p.edges[e2].ends[k2];
    for (int j = 0; j < 3; ++j)
        if (dep.leg[j] == wing) return {e2, j, k2 == 0 ? 1 : -1};
    return g;
}

std::vector<Circuit> trace_circuits(const SimplePolyhedron& p) {
    Incidence inc(p);
    std::vector<std::array<bool, 3>> seen(p.edges.size(), {false, false, false});
    std::vector<Circuit> out;
    for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
        for (int j = 0; j < 3; ++j) {
            if (seen[e][j]) continue;
            Circuit c;
            Germ g{e, j, 1};
            while (!seen[g.edge][g.leg]) {
                seen[g.edge][g.leg] = true;
                c.push_back(g);
                g = next_germ(p, inc, g);
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<std::array<GermOwner, 3>> germ_owners(const SimplePolyhedron& p) {
    std::vector<std::array<GermOwner, 3>> own(p.edges.size());
    for (int r = 0; r < static_cast<int>(p.regions.size()); ++r) {
        const auto& reg = p.regions[r];
        for (int c = 0; c < static_cast<int>(reg.circuits.size()); ++c)
            for (int i = 0; i < static_cast<int>(reg.circuits[c].size()); ++i) {
                const Germ& g = reg.circuits[c][i];
                own[g.edge][g.leg] = {r, c, i, g.dir};
            }
    }
    return own;
}

std::vector<Violation> validate(const SimplePolyhedron& p) {
    std::vector<Violation> out;
    auto bad = [&](std::string cell, std::string what) { out.push_back({std::move(cell), std::move(what)}); };
    const int nv = static_cast<int>(p.vertices.size());
    const int ne = static_cast<int>(p.edges.size());
    const int nr = static_cast<int>(p.regions.size());
    if (nr == 0) {
        bad("polyhedron", "no regions");
        return out;
    }

    bool structural = true;
    std::vector<std::array<int, 4>> slot_use(nv, {0, 0, 0, 0});
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = p.edges[e];
        const std::string cell = "edge " + std::to_string(e);
        if (ed.circle) {
            std::array<int, 3> m = ed.monodromy;
            std::sort(m.begin(), m.end());
            if (m != std::array<int, 3>{0, 1, 2}) {
                bad(cell, "monodromy is not a permutation");
                structural = false;
            }
            continue;
        }
        for (int k = 0; k < 2; ++k) {
            const EdgeEnd& en = ed.ends[k];
            const std::string ecell = cell + " end " + std::to_string(k);
            if (en.vertex < 0 || en.vertex >= nv || en.slot < 0 || en.slot > 3) {
                bad(ecell, "endpoint out of range");
                structural = false;
                continue;
            }
            ++slot_use[en.vertex][en.slot];
            std::array<int, 3> legs = en.leg;
            std::sort(legs.begin(), legs.end());
            if (legs != wings_at(p.vertices[en.vertex].kind, en.slot)) {
                bad(ecell, "legs do not match the wings at the slot");
                structural = false;
            }
        }
    }
    for (int v = 0; v < nv; ++v)
        for (int s = 0; s < 4; ++s) {
            if (slot_use[v][s] == 1) continue;
            bad("vertex " + std::to_string(v) + " slot " + std::to_string(s),
                slot_use[v][s] == 0 ? "unmatched edge-end slot" : "edge-end slot used more than once");
            structural = false;
        }

    std::vector<std::array<int, 3>> cover(ne, {0, 0, 0});
    for (int r = 0; r < nr; ++r) {
        const Region& reg = p.regions[r];
        const std::string cell = "region " + std::to_string(r);
        if (reg.genus < 0) bad(cell, "negative genus");
        for (const auto& c : reg.circuits) {
            if (c.empty()) {
                bad(cell, "empty circuit");
                structural = false;
            }
            for (const Germ& g : c) {
                if (g.edge < 0 || g.edge >= ne || g.leg < 0 || g.leg > 2 || (g.dir != 1 && g.dir != -1)) {
                    bad(cell, "germ out of range");
                    structural = false;
                    continue;
                }
                ++cover[g.edge][g.leg];
            }
        }
    }
    for (int e = 0; e < ne; ++e)
        for (int j = 0; j < 3; ++j)
            if (cover[e][j] != 1) {
                bad("edge " + std::to_string(e) + " leg " + std::to_string(j),
                    cover[e][j] == 0 ? "wing germ on no circuit" : "wing germ on several circuits");
                structural = false;
            }

    if (structural) {
        Incidence inc(p);
        for (int r = 0; r < nr; ++r)
            for (const auto& c : p.regions[r].circuits)
                for (size_t i = 0; i < c.size(); ++i) {
                    const Germ nx = next_germ(p, inc, c[i]);
                    if (nx != c[(i + 1) % c.size()]) {
                        bad("region " + std::to_string(r),
                            "circuit breaks after germ " + germ_str(c[i]));
                        break;
                    }
                }
    }

    // connectivity of vertices, edges, regions
    Dsu dsu(nv + ne + nr);
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = p.edges[e];
        if (ed.circle) continue;
        for (const auto& en : ed.ends)
            if (en.vertex >= 0 && en.vertex < nv) dsu.unite(nv + e, en.vertex);
    }
    for (int r = 0; r < nr; ++r)
        for (const auto& c : p.regions[r].circuits)
            for (const Germ& g : c)
                if (g.edge >= 0 && g.edge < ne) dsu.unite(nv + ne + r, nv + g.edge);
    const int root = dsu.find(nv + ne);
    for (int x = 0; x < nv + ne + nr; ++x)
        if (dsu.find(x) != root) {
            bad("polyhedron", "not connected");
            break;
        }

    if (p.branching) {
        const auto& b = *p.branching;
        if (static_cast<int>(b.size()) != nr) {
            bad("branching", "length differs from region count");
        } else if (std::any_of(b.begin(), b.end(), [](int s) { return s != 1 && s != -1; })) {
            bad("branching", "orientation signs must be +1 or -1");
        } else if (structural) {
            const auto own = germ_owners(p);
            for (int e = 0; e < ne; ++e) {
                std::set<int> s;
                for (int j = 0; j < 3; ++j) s.insert(b[own[e][j].region] * own[e][j].dir);
                if (s.size() == 1) bad("edge " + std::to_string(e), "branching edge condition fails");
            }
        }
    }

    if (p.gleam2.size() > static_cast<size_t>(nr)) bad("gleams", "more entries than regions");
    for (int r = 0; r < std::min<int>(nr, static_cast<int>(p.gleam2.size())); ++r)
        if (p.gleam2[r] && !p.regions[r].internal())
            bad("region " + std::to_string(r), "gleam on a region touching the boundary");
    return out;
}

bool is_valid(const SimplePolyhedron& p) { return validate(p).empty(); }

int euler_characteristic(const SimplePolyhedron& p) {
    int chi = static_cast<int>(p.vertices.size());
    for (const auto& e : p.edges)
        if (!e.circle) --chi;
    for (const auto& r : p.regions)
        chi += 2 - 2 * r.genus - static_cast<int>(r.circuits.size() + r.free.size());
    return chi;
}

int induced_orientation(const SimplePolyhedron&, const std::vector<int>& signs, int region,
                        const Germ& g) {
    return signs[region] * g.dir;
}

bool branching_ok(const SimplePolyhedron& p, const std::vector<int>& signs) {
    const auto own = germ_owners(p);
    for (size_t e = 0; e < p.edges.size(); ++e) {
        const int a = signs[own[e][0].region] * own[e][0].dir;
        const int b = signs[own[e][1].region] * own[e][1].dir;
        const int c = signs[own[e][2].region] * own[e][2].dir;
        if (a == b && b == c) return false;
    }
    return true;
}

std::vector<std::vector<int>> enumerate_branchings(const SimplePolyhedron& p) {
    const int nr = static_cast<int>(p.regions.size());
    const auto own = germ_owners(p);
    // edges become checkable once their highest region is assigned
    std::vector<std::vector<int>> due(nr);
    for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
        int hi = std::max({own[e][0].region, own[e][1].region, own[e][2].region});
        due[hi].push_back(e);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> s(nr, 1);
    auto rec = [&](auto&& self, int r) -> void {
        if (r == nr) {
            out.push_back(s);
            return;
        }
        for (int v : {1, -1}) {
            s[r] = v;
            bool ok = true;
            for (int e : due[r]) {
                const int a = s[own[e][0].region] * own[e][0].dir;
                const int b = s[own[e][1].region] * own[e][1].dir;
                const int c = s[own[e][2].region] * own[e][2].dir;
                if (a == b && b == c) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, r + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<std::vector<int>> singular_components(const SimplePolyhedron& p) {
    const int nv = static_cast<int>(p.vertices.size());
    const int ne = static_cast<int>(p.edges.size());
    Dsu dsu(nv + ne);
    for (int e = 0; e < ne; ++e)
        if (!p.edges[e].circle)
            for (const auto& en : p.edges[e].ends) dsu.unite(nv + e, en.vertex);
    std::map<int, std::vector<int>> groups;
    for (int e = 0; e < ne; ++e) groups[dsu.find(nv + e)].push_back(e);
    std::vector<std::vector<int>> out;
    for (auto& [k, v] : groups) out.push_back(std::move(v));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace bsh::poly
