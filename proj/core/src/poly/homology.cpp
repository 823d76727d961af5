#include "bsh/poly/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <sstream>

#include "bsh/util/snf.hpp"

namespace bsh::poly {

namespace {

int letter(int arc, int dir) { return dir > 0 ? arc + 1 : -(arc + 1); }

void free_reduce(std::vector<int>& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    w = std::move(out);
}

void cyclic_reduce(std::vector<int>& w) {
    free_reduce(w);
    size_t a = 0, b = w.size();
    while (b - a >= 2 && w[a] == -w[b - 1]) {
        ++a;
        --b;
    }
    w = std::vector<int>(w.begin() + static_cast<long>(a), w.begin() + static_cast<long>(b));
}

std::vector<int> inverse(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

}  // namespace

std::string AbelianGroup::str() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (rank == 1) {
        sep();
        os << "Z";
    } else if (rank > 1) {
        sep();
        os << "Z^" << rank;
    }
    for (auto t : torsion) {
        sep();
        os << "Z/" << t;
    }
    if (first) os << "0";
    return os.str();
}

CellComplex cell_complex(const SimplePolyhedron& p) {
    CellComplex c;
    const int nv = static_cast<int>(p.vertices.size());
    const int ne = static_cast<int>(p.edges.size());
    std::vector<int> circle_point(ne, -1);
    c.points = nv;
    for (int e = 0; e < ne; ++e)
        if (p.edges[e].circle) circle_point[e] = c.points++;
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = p.edges[e];
        if (ed.circle)
            c.arcs.push_back({circle_point[e], circle_point[e]});
        else
            c.arcs.push_back({ed.ends[0].vertex, ed.ends[1].vertex});
    }
    for (const Region& r : p.regions) {
        const int base = c.points++;
        std::vector<int> word;
        for (int g = 0; g < r.genus; ++g) {
            const int a = static_cast<int>(c.arcs.size());
            c.arcs.push_back({base, base});
            c.arcs.push_back({base, base});
            word.insert(word.end(), {a + 1, a + 2, -(a + 1), -(a + 2)});
        }
        for (const Circuit& cir : r.circuits) {
            const Germ& g0 = cir.front();
            const Edge& ed = p.edges[g0.edge];
            const int start = ed.circle ? circle_point[g0.edge] : ed.ends[g0.dir > 0 ? 0 : 1].vertex;
            const int spoke = static_cast<int>(c.arcs.size());
            c.arcs.push_back({base, start});
            word.push_back(spoke + 1);
            for (const Germ& g : cir) word.push_back(letter(g.edge, g.dir));
            word.push_back(-(spoke + 1));
        }
        for (size_t f = 0; f < r.free.size(); ++f) {
            const int a = static_cast<int>(c.arcs.size());
            c.arcs.push_back({base, base});
            word.push_back(a + 1);
        }
        c.faces.push_back(std::move(word));
    }
    return c;
}

AbelianGroup first_homology(const CellComplex& c) {
    const int n1 = static_cast<int>(c.arcs.size());
    IntMatrix d1(c.points, std::vector<std::int64_t>(n1, 0));
    for (int a = 0; a < n1; ++a) {
        d1[c.arcs[a][1]][a] += 1;
        d1[c.arcs[a][0]][a] -= 1;
    }
    IntMatrix d2(n1, std::vector<std::int64_t>(c.faces.size(), 0));
    for (size_t f = 0; f < c.faces.size(); ++f)
        for (int x : c.faces[f]) d2[std::abs(x) - 1][f] += x > 0 ? 1 : -1;
    const auto inv2 = smith_invariants(d2);
    AbelianGroup g;
    g.rank = n1 - integer_rank(d1) - static_cast<int>(inv2.size());
    for (auto d : inv2)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

AbelianGroup first_homology(const SimplePolyhedron& p) { return first_homology(cell_complex(p)); }

GroupPresentation fundamental_group(const CellComplex& c) {
    const int n1 = static_cast<int>(c.arcs.size());
    std::vector<std::vector<int>> adj(c.points);
    for (int a = 0; a < n1; ++a) {
        adj[c.arcs[a][0]].push_back(a);
        adj[c.arcs[a][1]].push_back(a);
    }
    std::vector<bool> seen(c.points, false), tree(n1, false);
    std::queue<int> q;
    if (c.points > 0) {
        seen[0] = true;
        q.push(0);
    }
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (int a : adj[x]) {
            const int y = c.arcs[a][0] == x ? c.arcs[a][1] : c.arcs[a][0];
            if (seen[y]) continue;
            seen[y] = true;
            tree[a] = true;
            q.push(y);
        }
    }
    std::vector<int> gen(n1, -1);
    GroupPresentation g;
    for (int a = 0; a < n1; ++a)
        if (!tree[a]) gen[a] = g.generators++;
    for (const auto& f : c.faces) {
        std::vector<int> w;
        for (int x : f) {
            const int a = std::abs(x) - 1;
            if (gen[a] >= 0) w.push_back(x > 0 ? gen[a] + 1 : -(gen[a] + 1));
        }
        free_reduce(w);
        g.relators.push_back(std::move(w));
    }
    return g;
}

GroupPresentation fundamental_group(const SimplePolyhedron& p) { return fundamental_group(cell_complex(p)); }

GroupPresentation tietze_simplify(GroupPresentation g, const TietzeBounds& b) {
    for (int round = 0; round < b.max_rounds; ++round) {
        for (auto& r : g.relators) cyclic_reduce(r);
        std::erase_if(g.relators, [](const auto& r) { return r.empty(); });
        std::sort(g.relators.begin(), g.relators.end());
        g.relators.erase(std::unique(g.relators.begin(), g.relators.end()), g.relators.end());

        // shortest relator containing some generator exactly once
        int best_r = -1, best_x = -1;
        for (int ri = 0; ri < static_cast<int>(g.relators.size()); ++ri) {
            const auto& r = g.relators[ri];
            if (best_r >= 0 && r.size() >= g.relators[best_r].size()) continue;
            std::vector<int> count(g.generators, 0);
            for (int x : r) ++count[std::abs(x) - 1];
            for (int x = 0; x < g.generators; ++x)
                if (count[x] == 1) {
                    best_r = ri;
                    best_x = x;
                    break;
                }
        }
        if (best_r < 0) break;

        const std::vector<int> r = g.relators[best_r];
        const auto pos = std::find_if(r.begin(), r.end(), [&](int x) { return std::abs(x) == best_x + 1; });
        std::vector<int> u(r.begin(), pos), v(pos + 1, r.end());
        // u x v = 1 gives x = u^-1 v^-1; u x^-1 v = 1 gives x = v u
        std::vector<int> value;
        if (*pos > 0) {
            value = inverse(u);
            const auto vi = inverse(v);
            value.insert(value.end(), vi.begin(), vi.end());
        } else {
            value = v;
            value.insert(value.end(), u.begin(), u.end());
        }
        const auto value_inv = inverse(value);

        std::vector<std::vector<int>> next;
        std::size_t total = 0;
        for (int ri = 0; ri < static_cast<int>(g.relators.size()); ++ri) {
            if (ri == best_r) continue;
            std::vector<int> w;
            for (int x : g.relators[ri]) {
                const int a = std::abs(x) - 1;
                if (a == best_x) {
                    const auto& s = x > 0 ? value : value_inv;
                    w.insert(w.end(), s.begin(), s.end());
                } else {
                    w.push_back(x);
                }
            }
            for (int& x : w) {
                const int a = std::abs(x) - 1;
                if (a > best_x) x = x > 0 ? x - 1 : x + 1;
            }
            free_reduce(w);
            total += w.size();
            next.push_back(std::move(w));
        }
        g.relators = std::move(next);
        --g.generators;
        if (total > b.max_total_length) break;
    }
    return g;
}

Triviality is_plausibly_trivial(const GroupPresentation& g, const TietzeBounds& b) {
    return tietze_simplify(g, b).generators == 0 ? Triviality::yes : Triviality::unknown;
}

}  // namespace bsh::poly
