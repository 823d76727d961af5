#include "bsh/classify/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "bsh/poly/io.hpp"
#include "bsh/poly/iso.hpp"

namespace bsh::classify {

using poly::Circuit;
using poly::Color;
using poly::Edge;
using poly::Germ;
using poly::Region;
using poly::VertexKind;

namespace {

constexpr LegPerm kStraight{0, 1, 2};
constexpr LegPerm kSwap{1, 0, 2};

// (vertex, slot, slot) of one side of a wing strip
using Flag = std::array<int, 3>;

std::set<std::array<Flag, 2>> x_strips() {
    std::set<std::array<Flag, 2>> out;
    for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 4; ++x) {
            if (x == b) continue;
            std::array<Flag, 2> s{Flag{0, b, x}, Flag{1, b, x}};
            out.insert(s);
        }
    return out;
}

Flag move(const XSymmetry& g, const Flag& f) { return {g.vertex[f[0]], g.slot[f[0]][f[1]], g.slot[f[0]][f[2]]}; }

std::array<Flag, 2> normalize(std::array<Flag, 2> s) {
    // wings are unordered slot pairs; strips are unordered flag pairs
    for (auto& f : s)
        if (f[1] > f[2]) std::swap(f[1], f[2]);
    if (s[1] < s[0]) std::swap(s[0], s[1]);
    return s;
}

std::set<std::array<Flag, 2>> normalized(const std::set<std::array<Flag, 2>>& in) {
    std::set<std::array<Flag, 2>> out;
    for (const auto& s : in) out.insert(normalize(s));
    return out;
}

// identifications made by the two outer edges: (end A, wing partner) ~ (end B, wing partner)
std::set<std::array<Flag, 2>> gluing_signature(const TwoVertexGraph& g, const std::array<LegPerm, 2>& perms) {
    std::set<std::array<Flag, 2>> out;
    for (int i = 0; i < 2; ++i) {
        const End a = g.outer[i][0], b = g.outer[i][1];
        const auto wa = poly::wings_at(VertexKind::simple, a.slot);
        const auto wb = poly::wings_at(VertexKind::simple, b.slot);
        for (int j = 0; j < 3; ++j) {
            const int x = poly::wing_other(VertexKind::simple, wa[j], a.slot);
            const int y = poly::wing_other(VertexKind::simple, wb[perms[i][j]], b.slot);
            // keep the end slot first so the flag names the edge end
            out.insert({Flag{a.vertex, a.slot, x}, Flag{b.vertex, b.slot, y}});
        }
    }
    return out;
}

std::set<std::array<Flag, 2>> transport(const XSymmetry& g, const std::set<std::array<Flag, 2>>& sig) {
    std::set<std::array<Flag, 2>> out;
    for (auto s : sig) {
        std::array<Flag, 2> t{move(g, s[0]), move(g, s[1])};
        if (t[1] < t[0]) std::swap(t[0], t[1]);
        out.insert(t);
    }
    return out;
}

std::set<std::array<Flag, 2>> ordered_pairs(std::set<std::array<Flag, 2>> sig) {
    std::set<std::array<Flag, 2>> out;
    for (auto s : sig) {
        if (s[1] < s[0]) std::swap(s[0], s[1]);
        out.insert(s);
    }
    return out;
}

std::array<std::vector<std::array<int, 2>>, 2> directed_wings(const SimplePolyhedron& p, const std::vector<int>& signs) {
    std::array<std::vector<std::array<int, 2>>, 2> out;
    poly::Incidence inc(p);
    for (size_t r = 0; r < p.regions.size(); ++r)
        for (const Circuit& c : p.regions[r].circuits)
            for (size_t i = 0; i < c.size(); ++i) {
                const Germ& g = c[i];
                const Edge& e = p.edges[g.edge];
                if (e.circle) continue;
                const auto& arr = e.ends[g.dir > 0 ? 1 : 0];
                const int t = poly::wing_other(p.vertices[arr.vertex].kind, arr.leg[g.leg], arr.slot);
                if (arr.vertex > 1) continue;
                if (signs[r] > 0)
                    out[arr.vertex].push_back({arr.slot, t});
                else
                    out[arr.vertex].push_back({t, arr.slot});
            }
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

std::string perm_label(int type, const std::array<LegPerm, 2>& perms) {
    const bool s0 = perms[0] == kStraight, s1 = perms[1] == kStraight;
    const bool w0 = perms[0] == kSwap, w1 = perms[1] == kSwap;
    std::string roman;
    if (s0 && s1) roman = "i";
    else if (s0 && w1) roman = "ii";
    else if (w0 && s1) roman = "iii";
    else if (w0 && w1) roman = "iv";
    else {
        std::string raw;
        for (const auto& p : perms)
            for (int x : p) raw += static_cast<char>('0' + x);
        return std::to_string(type) + "-[" + raw + "]";
    }
    return std::to_string(type) + "-(" + roman + ")";
}

SimplePolyhedron build_closure(const TwoVertexGraph& g, const std::array<LegPerm, 2>& perms) {
    SimplePolyhedron p;
    p.vertices.assign(2, {VertexKind::simple});
    Edge e0, e1;
    e0.ends[0] = {0, 0, {0, 1, 2}};
    e0.ends[1] = {1, 0, {0, 1, 2}};
    e1.ends[0] = {0, 1, {0, 3, 4}};
    e1.ends[1] = {1, 1, {0, 3, 4}};
    p.edges = {e0, e1};
    for (int i = 0; i < 2; ++i) {
        const End a = g.outer[i][0], b = g.outer[i][1];
        Edge e;
        const auto wa = poly::wings_at(VertexKind::simple, a.slot);
        const auto wb = poly::wings_at(VertexKind::simple, b.slot);
        e.ends[0] = {a.vertex, a.slot, wa};
        e.ends[1] = {b.vertex, b.slot, {wb[perms[i][0]], wb[perms[i][1]], wb[perms[i][2]]}};
        p.edges.push_back(e);
    }
    for (auto& c : poly::trace_circuits(p)) {
        Region r;
        const bool bigon = c.front() == Germ{0, 0, 1};
        r.circuits.push_back(std::move(c));
        if (!bigon) r.free.push_back(Color::e);
        p.regions.push_back(std::move(r));
    }
    p.gleam2.assign(p.regions.size(), std::nullopt);
    for (size_t r = 0; r < p.regions.size(); ++r)
        if (p.regions[r].circuits[0].front() == Germ{0, 0, 1}) p.gleam2[r] = 2;
    return p;
}

std::vector<LegPerm> all_perms() {
    std::vector<LegPerm> out;
    LegPerm p{0, 1, 2};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

std::vector<std::array<int, 2>> TwoVertexGraph::edges() const {
    std::vector<std::array<int, 2>> out{{0, 1}, {0, 1}};
    for (const auto& o : outer) out.push_back({std::min(o[0].vertex, o[1].vertex), std::max(o[0].vertex, o[1].vertex)});
    return out;
}

std::vector<TwoVertexGraph> enumerate_two_vertex_graphs() {
    // every perfect matching of the four outgoing ends
    const std::array<End, 4> ends{End{0, 2}, End{0, 3}, End{1, 2}, End{1, 3}};
    std::vector<TwoVertexGraph> out;
    for (int partner = 1; partner < 4; ++partner) {
        std::vector<int> rest;
        for (int i = 1; i < 4; ++i)
            if (i != partner) rest.push_back(i);
        TwoVertexGraph g;
        g.outer[0] = {ends[0], ends[partner]};
        g.outer[1] = {ends[rest[0]], ends[rest[1]]};
        // v'.2 - w'.2 is type 1, v'.2 - v'.3 type 2, v'.2 - w'.3 type 3
        g.type = partner == 2 ? 1 : partner == 1 ? 2 : 3;
        out.push_back(g);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.type < b.type; });
    return out;
}

bool multigraph_isomorphic(const TwoVertexGraph& a, const TwoVertexGraph& b) {
    auto profile = [](const TwoVertexGraph& g, bool swap) {
        std::vector<std::array<int, 2>> e = g.edges();
        for (auto& x : e) {
            if (swap) x = {1 - x[1], 1 - x[0]};
            if (x[0] > x[1]) std::swap(x[0], x[1]);
        }
        std::sort(e.begin(), e.end());
        return e;
    };
    return profile(a, false) == profile(b, false) || profile(a, false) == profile(b, true);
}

bool x_relative_isomorphic(const TwoVertexGraph& a, const TwoVertexGraph& b) {
    auto pairs = [](const TwoVertexGraph& g, const XSymmetry* s) {
        std::set<std::array<End, 2>> out;
        for (const auto& o : g.outer) {
            std::array<End, 2> e = o;
            if (s)
                for (auto& x : e) x = End{s->vertex[x.vertex], s->slot[x.vertex][x.slot]};
            if (e[1] < e[0]) std::swap(e[0], e[1]);
            out.insert(e);
        }
        return out;
    };
    const auto target = pairs(b, nullptr);
    for (const auto& s : x_symmetries(false))
        if (pairs(a, &s) == target) return true;
    return false;
}

std::array<std::vector<std::array<int, 2>>, 2> x_branching() {
    std::array<std::vector<std::array<int, 2>>, 2> b{
        std::vector<std::array<int, 2>>{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 0}, {3, 1}},
        std::vector<std::array<int, 2>>{{0, 3}, {1, 0}, {1, 3}, {2, 0}, {2, 1}, {3, 2}}};
    for (auto& v : b) std::sort(v.begin(), v.end());
    return b;
}

std::vector<XSymmetry> x_symmetries(bool respect_branching) {
    const auto strips = normalized(x_strips());
    const auto xb = x_branching();
    std::vector<XSymmetry> out;
    std::array<int, 4> s0{0, 1, 2, 3};
    for (int swap = 0; swap < 2; ++swap) {
        std::sort(s0.begin(), s0.end());
        do {
            std::array<int, 4> s1{0, 1, 2, 3};
            do {
                XSymmetry g{{swap, 1 - swap}, {s0, s1}};
                std::set<std::array<Flag, 2>> img;
                for (const auto& s : strips) img.insert(normalize({move(g, s[0]), move(g, s[1])}));
                if (img != strips) continue;
                if (respect_branching) {
                    std::array<std::vector<std::array<int, 2>>, 2> moved;
                    for (int v = 0; v < 2; ++v)
                        for (auto [a, b] : xb[v]) moved[g.vertex[v]].push_back({g.slot[v][a], g.slot[v][b]});
                    for (auto& m : moved) std::sort(m.begin(), m.end());
                    if (moved != xb) continue;
                }
                out.push_back(g);
            } while (std::next_permutation(s1.begin(), s1.end()));
        } while (std::next_permutation(s0.begin(), s0.end()));
    }
    return out;
}

std::vector<ClosureCandidate> enumerate_gluings() {
    const auto graphs = enumerate_two_vertex_graphs();
    const auto perms = all_perms();
    const auto xb = x_branching();
    std::vector<ClosureCandidate> out;
    std::vector<std::set<std::array<Flag, 2>>> sigs;
    for (const auto& g : graphs)
        for (const auto& p0 : perms)
            for (const auto& p1 : perms) {
                ClosureCandidate c;
                c.graph_type = g.type;
                c.perms = {p0, p1};
                c.polyhedron = build_closure(g, c.perms);
                for (auto& b : poly::enumerate_branchings(c.polyhedron))
                    if (directed_wings(c.polyhedron, b) == xb) c.branchings.push_back(b);
                if (!c.branchings.empty()) {
                    c.polyhedron.branching = c.branchings.front();
                    c.label = perm_label(g.type, c.perms);
                }
                sigs.push_back(ordered_pairs(gluing_signature(g, c.perms)));
                out.push_back(std::move(c));
            }
    // orbits under the branched symmetries of X
    std::map<std::set<std::array<Flag, 2>>, int> index;
    for (size_t i = 0; i < sigs.size(); ++i) index.emplace(sigs[i], static_cast<int>(i));
    const auto sym = x_symmetries(true);
    for (size_t i = 0; i < out.size(); ++i) {
        int least = static_cast<int>(i);
        for (const auto& g : sym) {
            auto it = index.find(transport(g, sigs[i]));
            if (it != index.end()) least = std::min(least, it->second);
        }
        out[i].orbit = least;
    }
    return out;
}

std::vector<ClosureCandidate> enumerate_closures(std::optional<int> graph_type) {
    std::vector<ClosureCandidate> out;
    for (auto& c : enumerate_gluings())
        if (!c.branchings.empty() && (!graph_type || c.graph_type == *graph_type)) out.push_back(std::move(c));
    return out;
}

SimplePolyhedron apply_towers(const SimplePolyhedron& p, const TowerPlan& plan) {
    SimplePolyhedron out = p;
    for (size_t i = 0; i < plan.circles.size(); ++i)
        out = poly::attach_tower(out, {plan.circles[i], 0}, plan.disks[i], Color::i);
    return out;
}

Certificate simply_connectable(const SimplePolyhedron& p, int max_disks) {
    std::vector<int> circles;
    for (int r = 0; r < static_cast<int>(p.regions.size()); ++r)
        for (size_t f = 0; f < p.regions[r].free.size(); ++f)
            if (f == 0) circles.push_back(r);
    // regions with several free circles get towers on the first one only
    const int n = static_cast<int>(circles.size());
    std::vector<std::vector<int>> subsets;
    for (int size = 0; size <= n; ++size) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + size, true);
        std::vector<std::vector<int>> level;
        do {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (pick[i]) s.push_back(circles[i]);
            level.push_back(s);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        subsets.insert(subsets.end(), level.begin(), level.end());
    }
    Certificate cert;
    auto attempt = [&](const TowerPlan& plan) {
        const auto q = apply_towers(p, plan);
        if (poly::is_plausibly_trivial(poly::fundamental_group(q)) == poly::Triviality::yes) {
            cert.plan = plan;
            return true;
        }
        cert.homology.emplace_back(plan, poly::first_homology(q));
        return false;
    };
    for (const auto& s : subsets) {
        TowerPlan plan{s, std::vector<int>(s.size(), 1)};
        if (attempt(plan)) {
            cert.homology.clear();
            return cert;
        }
    }
    for (const auto& s : subsets) {
        std::vector<int> k(s.size(), 1);
        for (;;) {
            size_t i = 0;
            while (i < k.size() && k[i] == max_disks) k[i++] = 1;
            if (i == k.size()) break;
            ++k[i];
            if (attempt({s, k})) {
                cert.homology.clear();
                return cert;
            }
        }
    }
    // ensure the all-circles plan with single disks ends the list
    auto all = std::find_if(cert.homology.begin(), cert.homology.end(), [&](const auto& h) {
        return h.first.circles.size() == circles.size() &&
               std::all_of(h.first.disks.begin(), h.first.disks.end(), [](int d) { return d == 1; });
    });
    if (all != cert.homology.end()) std::rotate(all, all + 1, cert.homology.end());
    for (const auto& [plan, h] : cert.homology) cert.unknown = cert.unknown || h.trivial();
    return cert;
}

FilterResult filter_simply_connectable(const std::vector<ClosureCandidate>& cands, int max_disks) {
    FilterResult out;
    for (const auto& c : cands) {
        auto cert = simply_connectable(c.polyhedron, max_disks);
        if (cert.plan)
            out.survivors.emplace_back(c, std::move(cert));
        else if (cert.unknown)
            out.unknown.emplace_back(c, std::move(cert));
        else
            out.eliminated.emplace_back(c, std::move(cert));
    }
    return out;
}

std::vector<CensusEntry> dedupe(const std::vector<std::pair<ClosureCandidate, Certificate>>& cands) {
    const poly::IsoOptions opt{true, true};
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
        bool placed = false;
        for (auto& cls : classes)
            if (poly::isomorphic(cands[i].first.polyhedron, cands[cls.front()].first.polyhedron, opt)) {
                cls.push_back(i);
                placed = true;
                break;
            }
        if (!placed) classes.push_back({i});
    }
    std::vector<CensusEntry> out;
    for (const auto& cls : classes) {
        CensusEntry e;
        std::string best;
        int best_i = -1;
        for (int i : cls) {
            e.members.push_back(cands[i].first.label);
            const auto s = poly::serialize_spoly(cands[i].first.polyhedron);
            if (best_i < 0 || s < best) {
                best = s;
                best_i = i;
            }
        }
        std::sort(e.members.begin(), e.members.end());
        e.members.erase(std::unique(e.members.begin(), e.members.end()), e.members.end());
        e.label = e.members.front();
        e.representative = cands[best_i].first.polyhedron;
        e.certificate = cands[best_i].second;
        for (const auto& x : poly::find_x_parts(e.representative))
            if (e.representative.gleam_twice(x.bigon) == 2) {
                e.x_witness = x;
                break;
            }
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
    for (size_t i = 0; i < out.size(); ++i) out[i].name = "P" + std::to_string(i + 1);
    return out;
}

Census run_census(std::optional<int> graph_type) {
    Census c;
    c.symmetry_order = x_symmetries(false).size();
    c.symmetry_order_branched = x_symmetries(true).size();
    std::vector<ClosureCandidate> branched;
    for (auto& g : enumerate_gluings()) {
        if (graph_type && g.graph_type != *graph_type) continue;
        if (g.branchings.empty())
            c.unbranched.push_back(std::move(g));
        else
            branched.push_back(std::move(g));
    }
    auto f = filter_simply_connectable(branched);
    c.entries = dedupe(f.survivors);
    c.eliminated = std::move(f.eliminated);
    for (auto& u : f.unknown) c.eliminated.push_back(std::move(u));
    return c;
}

}  // namespace bsh::classify
