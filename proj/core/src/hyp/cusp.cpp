#include "bsh/hyp/cusp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bsh/util/snf.hpp"

namespace bsh::hyp {

namespace {

// counterclockwise corners of the cross-section at each vertex, seen
// from the cusp
constexpr std::array<std::array<int, 3>, 4> kCcw{{{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};

// 0: z on 01/23, 1: 1/(1-z) on 02/13, 2: 1-1/z on 03/12
int shape_kind(int a, int b) {
    if (a > b) std::swap(a, b);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 0;
    if ((a == 0 && b == 2) || (a == 1 && b == 3)) return 1;
    return 2;
}

std::complex<double> corner_shape(std::complex<double> z, int kind) {
    if (kind == 0) return z;
    if (kind == 1) return 1.0 / (1.0 - z);
    return 1.0 - 1.0 / z;
}

const ZOmega kOmega{0, 1};

// Develops a cycle from a fixed placement of its first triangle; returns
// the displacement of the first ccw corner after one turn.
template <class C, class Shape>
C develop(const IdealTriangulation& t, const std::vector<Passage>& cyc, Shape shape, C zero, C one) {
    std::array<C, 4> pos{};
    int tet = cyc[0].tet, v = cyc[0].vertex;
    auto third = [&](int x) {
        const auto& cw = kCcw[v];
        const int i = static_cast<int>(std::find(cw.begin(), cw.end(), x) - cw.begin());
        const int a = cw[(i + 1) % 3], b = cw[(i + 2) % 3];
        pos[x] = pos[a] + shape(tet, shape_kind(v, a)) * (pos[b] - pos[a]);
    };
    const int c0 = kCcw[v][0];
    pos[c0] = zero;
    pos[kCcw[v][1]] = one;
    third(kCcw[v][2]);
    const C start = pos[c0];
    for (const Passage& p : cyc) {
        const FaceGluing& g = t.gluing[p.tet][p.exit];
        std::array<C, 4> next{};
        for (int x = 0; x < 4; ++x)
            if (x != p.vertex && x != p.exit) next[g.perm[x]] = pos[x];
        pos = next;
        tet = g.tet;
        v = g.perm[p.vertex];
        third(g.face);
    }
    return pos[c0] - start;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::complex<double> ZOmega::value() const {
    return {static_cast<double>(a) + 0.5 * static_cast<double>(b), std::sqrt(3.0) / 2.0 * static_cast<double>(b)};
}

std::complex<double> ExactModulus::value() const { return ZOmega{p, q}.value() / static_cast<double>(den); }

int passage_side(const Passage& p) {
    const int u = p.pivot();
    const auto& cw = kCcw[p.vertex];
    const int i = static_cast<int>(std::find(cw.begin(), cw.end(), u) - cw.begin());
    return cw[(i + 1) % 3] == p.exit ? 1 : -1;
}

std::vector<CuspLink> cusp_links(const IdealTriangulation& t) {
    const CellClasses cc = cell_classes(t);
    std::vector<CuspLink> out(cc.cusps);
    std::map<std::array<int, 2>, int> node;
    for (int c = 0; c < cc.cusps; ++c) out[c].cusp = c;
    for (int k = 0; k < t.size(); ++k)
        for (int v = 0; v < 4; ++v) {
            CuspLink& L = out[cc.cusp_of[k][v]];
            node[{k, v}] = static_cast<int>(L.triangles.size());
            L.triangles.push_back({k, v});
        }
    for (CuspLink& L : out) {
        L.euler = cc.cusp_euler(L.cusp);
        if (L.euler != 0)
            throw std::invalid_argument("cusp " + std::to_string(L.cusp) + " is not a torus (euler characteristic " +
                                        std::to_string(L.euler) + ")");
        const int n = static_cast<int>(L.triangles.size());
        // dual edges, keyed by the (node, side) end with the smaller key
        struct Dual {
            int a, sa, b, sb;
        };
        std::vector<Dual> duals;
        std::map<std::array<int, 2>, int> dual_at;  // (node, side) -> dual edge
        for (int i = 0; i < n; ++i) {
            const auto [k, v] = L.triangles[i];
            for (int s = 0; s < 4; ++s) {
                if (s == v) continue;
                const FaceGluing& g = t.gluing[k][s];
                const int j = node.at({g.tet, g.perm[v]});
                if (std::array{i, s} < std::array{j, g.face}) {
                    dual_at[{i, s}] = dual_at[{j, g.face}] = static_cast<int>(duals.size());
                    duals.push_back({i, s, j, g.face});
                }
            }
        }
        // BFS tree
        // crossing: leave node `from` through side `exit`, arrive at `to` through `enter`
        struct Crossing {
            int from, exit, to, enter;
        };
        std::vector<int> parent(n, -1), depth(n, 0);
        std::vector<Crossing> down(n);
        std::vector<bool> seen(n, false), tree(duals.size(), false);
        std::vector<int> queue{0};
        seen[0] = true;
        for (size_t q = 0; q < queue.size(); ++q) {
            const int i = queue[q];
            const int v = L.triangles[i][1];
            for (int s = 0; s < 4; ++s) {
                if (s == v) continue;
                const int d = dual_at.at({i, s});
                const int j = duals[d].a == i && duals[d].sa == s ? duals[d].b : duals[d].a;
                if (seen[j]) continue;
                seen[j] = true;
                parent[j] = i;
                down[j] = Crossing{i, s, j, t.gluing[L.triangles[i][0]][s].face};
                depth[j] = depth[i] + 1;
                tree[d] = true;
                queue.push_back(j);
            }
        }
        std::vector<int> nontree_index(duals.size(), -1);
        int m = 0;
        for (size_t d = 0; d < duals.size(); ++d)
            if (!tree[d]) nontree_index[d] = m++;

        auto cross = [&](int d) {
            const Dual& x = duals[d];
            return Crossing{x.a, x.sa, x.b, x.sb};
        };
        auto passages = [&](const std::vector<Crossing>& cs) {
            std::vector<Passage> ps;
            for (size_t i = 0; i < cs.size(); ++i) {
                const Crossing& in = cs[(i + cs.size() - 1) % cs.size()];
                const Crossing& outc = cs[i];
                const auto [k, v] = L.triangles[outc.from];
                ps.push_back(Passage{k, v, in.enter, outc.exit});
            }
            return ps;
        };
        for (size_t d = 0; d < duals.size(); ++d) {
            if (tree[d]) continue;
            int a = duals[d].a, b = duals[d].b;
            std::vector<int> up_a, up_b;  // nodes from a (resp. b) up to the common ancestor
            while (depth[a] > depth[b]) up_a.push_back(a), a = parent[a];
            while (depth[b] > depth[a]) up_b.push_back(b), b = parent[b];
            while (a != b) up_a.push_back(a), a = parent[a], up_b.push_back(b), b = parent[b];
            std::vector<Crossing> cs;
            for (auto it = up_a.rbegin(); it != up_a.rend(); ++it) cs.push_back(down[*it]);
            cs.push_back(cross(static_cast<int>(d)));
            for (int x : up_b) {
                const Crossing& c = down[x];
                cs.push_back(Crossing{c.to, c.enter, c.from, c.exit});
            }
            L.cycles.push_back(passages(cs));
        }

        // one relation per cross-section vertex
        IntMatrix rel;
        std::vector<std::array<bool, 4>> done(n, {false, false, false, false});
        for (int i = 0; i < n; ++i) {
            const int v0 = L.triangles[i][1];
            for (int u0 = 0; u0 < 4; ++u0) {
                if (u0 == v0 || done[i][u0]) continue;
                std::vector<std::int64_t> row(m, 0);
                int exit0 = 0;
                while (exit0 == v0 || exit0 == u0) ++exit0;
                int node_i = i, u = u0, exit = exit0;
                do {
                    done[node_i][u] = true;
                    const auto [k, v] = L.triangles[node_i];
                    const FaceGluing& g = t.gluing[k][exit];
                    const int d = dual_at.at({node_i, exit});
                    if (nontree_index[d] >= 0) {
                        const bool fwd = duals[d].a == node_i && duals[d].sa == exit;
                        row[nontree_index[d]] += fwd ? 1 : -1;
                    }
                    node_i = node.at({g.tet, g.perm[v]});
                    const int nv = g.perm[v];
                    u = g.perm[u];
                    exit = 0;
                    while (exit == nv || exit == u || exit == g.face) ++exit;
                } while (!(node_i == i && u == u0 && exit == exit0));
                rel.push_back(row);
            }
        }
        if (rel.empty()) rel.push_back(std::vector<std::int64_t>(m, 0));
        const SmithForm sf = smith_form(rel);
        for (int r = 0; r < sf.rank; ++r)
            if (sf.d[r][r] > 1) L.torsion.push_back(sf.d[r][r]);
        if (m - sf.rank != 2 || !L.torsion.empty())
            throw std::invalid_argument("cusp " + std::to_string(L.cusp) + " cross-section has unexpected homology");
        L.basis[0] = sf.v_inv[sf.rank];
        L.basis[1] = sf.v_inv[sf.rank + 1];
    }
    return out;
}

std::complex<double> reduce_modulus(std::complex<double> tau) {
    if (tau.imag() < 0) tau = -tau;
    for (int guard = 0; guard < 1000; ++guard) {
        tau -= std::floor(tau.real() + 0.5);
        if (std::norm(tau) < 1.0 - 1e-12)
            tau = -1.0 / tau;
        else
            break;
    }
    if (std::abs(tau.real() - 0.5) < 1e-12) tau -= 1.0;
    if (std::abs(std::norm(tau) - 1.0) < 1e-12 && tau.real() > 1e-12) tau = -std::conj(tau);
    return tau;
}

namespace {

template <class C>
std::array<C, 2> basis_translations(const IdealTriangulation& t, const CuspLink& L, const std::vector<C>& cyc) {
    std::array<C, 2> out{};
    for (int g = 0; g < 2; ++g)
        for (size_t j = 0; j < cyc.size(); ++j)
            if (L.basis[g][j] != 0) out[g] = out[g] + cyc[j] * static_cast<std::int64_t>(L.basis[g][j]);
    (void)t;
    return out;
}

}  // namespace

std::vector<CuspData> cusp_moduli(const IdealTriangulation& t, const std::vector<std::complex<double>>& shapes) {
    if (static_cast<int>(shapes.size()) != t.size()) throw std::invalid_argument("one shape per tetrahedron expected");
    std::vector<CuspData> out;
    auto shape = [&](int k, int kind) { return corner_shape(shapes[k], kind); };
    for (const CuspLink& L : cusp_links(t)) {
        std::vector<std::complex<double>> cyc;
        for (const auto& c : L.cycles)
            cyc.push_back(develop<std::complex<double>>(t, c, shape, {0.0, 0.0}, {1.0, 0.0}));
        std::array<std::complex<double>, 2> tr{};
        for (int g = 0; g < 2; ++g)
            for (size_t j = 0; j < cyc.size(); ++j) tr[g] += static_cast<double>(L.basis[g][j]) * cyc[j];
        // Gauss reduction of the lattice
        for (int guard = 0; guard < 1000; ++guard) {
            if (std::norm(tr[1]) < std::norm(tr[0])) std::swap(tr[0], tr[1]);
            const double mu = std::round((tr[1] * std::conj(tr[0])).real() / std::norm(tr[0]));
            if (mu == 0) break;
            tr[1] -= mu * tr[0];
        }
        CuspData d;
        d.cusp = L.cusp;
        d.triangles = static_cast<int>(L.triangles.size());
        d.euler = L.euler;
        d.modulus = reduce_modulus(tr[1] / tr[0]);
        d.translations = tr;
        out.push_back(d);
    }
    return out;
}

std::vector<ExactModulus> cusp_moduli_exact(const IdealTriangulation& t) {
    std::vector<ExactModulus> out;
    auto shape = [](int, int) { return kOmega; };
    for (const CuspLink& L : cusp_links(t)) {
        std::vector<ZOmega> cyc;
        for (const auto& c : L.cycles) cyc.push_back(develop<ZOmega>(t, c, shape, ZOmega{0, 0}, ZOmega{1, 0}));
        std::array<ZOmega, 2> tr = basis_translations(t, L, cyc);
        // twice the real part of x * conj(y)
        auto dot2 = [](const ZOmega& x, const ZOmega& y) {
            const ZOmega p = x * y.conj();
            return 2 * p.a + p.b;
        };
        for (int guard = 0; guard < 1000; ++guard) {
            if (tr[1].norm() < tr[0].norm()) std::swap(tr[0], tr[1]);
            const std::int64_t n2 = 2 * tr[0].norm();
            const std::int64_t num = dot2(tr[1], tr[0]);
            // nearest integer to num / n2, halves rounded up
            const std::int64_t mu = floor_div(2 * num + n2, 2 * n2);
            if (mu == 0) break;
            tr[1] = tr[1] - tr[0] * mu;
        }
        ExactModulus e;
        const ZOmega num = tr[1] * tr[0].conj();
        e.p = num.a;
        e.q = num.b;
        e.den = tr[0].norm();
        if (e.q < 0) {  // (t0, -t1) is positively oriented
            e.p = -e.p;
            e.q = -e.q;
        }
        // Re = (2p + q) / (2 den)
        while (2 * (2 * e.p + e.q) >= 2 * e.den) e.p -= e.den;
        while (2 * (2 * e.p + e.q) < -2 * e.den) e.p += e.den;
        const std::int64_t nrm = ZOmega{e.p, e.q}.norm();
        if (nrm == e.den * e.den && 2 * e.p + e.q > 0) {
            const ZOmega c = ZOmega{e.p, e.q}.conj();
            e.p = -c.a;
            e.q = -c.b;
        }
        const std::int64_t g = std::gcd(std::gcd(std::llabs(e.p), std::llabs(e.q)), e.den);
        if (g > 1) {
            e.p /= g;
            e.q /= g;
            e.den /= g;
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace bsh::hyp
