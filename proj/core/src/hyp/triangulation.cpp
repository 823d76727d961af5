#include "bsh/hyp/triangulation.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <regex>
#include <sstream>

namespace bsh::hyp {

namespace {

constexpr std::array<std::array<int, 2>, 6> kEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool is_perm(const Perm4& p) {
    std::array<bool, 4> seen{};
    for (int x : p) {
        if (x < 0 || x > 3 || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

// classes numbered by first appearance of their least member
std::vector<int> number_classes(UnionFind& uf, int n, int& count) {
    std::vector<int> id(n, -1), out(n);
    count = 0;
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (id[r] < 0) id[r] = count++;
        out[i] = id[r];
    }
    return out;
}

}  // namespace

int perm_sign(const Perm4& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

Perm4 perm_inverse(const Perm4& p) {
    Perm4 q{};
    for (int i = 0; i < 4; ++i) q[p[i]] = i;
    return q;
}

Perm4 perm_compose(const Perm4& outer, const Perm4& inner) {
    Perm4 r{};
    for (int i = 0; i < 4; ++i) r[i] = outer[inner[i]];
    return r;
}

std::string perm_word(const Perm4& p) {
    std::string s;
    for (int x : p) s += static_cast<char>('0' + x);
    return s;
}

const std::array<int, 2>& edge_vertices(int e) { return kEdges.at(e); }

int local_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kEdges[e][0] == a && kEdges[e][1] == b) return e;
    throw std::invalid_argument("not a tetrahedron edge");
}

void check_triangulation(const IdealTriangulation& t) {
    const int n = t.size();
    if (n == 0) throw TriangulationError(TriErrc::empty, "no tetrahedra");
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing[a][f];
            const std::string at = "tetrahedron " + std::to_string(a) + " face " + std::to_string(f);
            if (!g.glued()) throw TriangulationError(TriErrc::unglued_face, at + " is unglued", 0, a, f);
            if (g.tet >= n) throw TriangulationError(TriErrc::non_involutive, at + " points past the last tetrahedron", 0, a, f);
            if (!is_perm(g.perm) || g.perm[f] != g.face)
                throw TriangulationError(TriErrc::inconsistent_permutation, at + ": permutation does not carry the face", 0, a, f);
            if (g.tet == a && g.face == f)
                throw TriangulationError(TriErrc::non_involutive, at + " is glued to itself", 0, a, f);
            const FaceGluing& back = t.gluing[g.tet][g.face];
            if (!back.glued() || back.tet != a || back.face != f)
                throw TriangulationError(TriErrc::non_involutive, at + ": partner is not glued back", 0, a, f);
            if (back.perm != perm_inverse(g.perm))
                throw TriangulationError(TriErrc::inconsistent_permutation, at + ": partner permutation is not the inverse", 0, a, f);
        }
}

IdealTriangulation parse_itri(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::vector<std::pair<int, std::string>> lines;
    for (int no = 1; std::getline(in, raw); ++no) {
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        const auto b = raw.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        raw = raw.substr(b, raw.find_last_not_of(" \t\r") - b + 1);
        lines.emplace_back(no, raw);
    }
    if (lines.empty()) throw TriangulationError(TriErrc::empty, "empty triangulation file");
    auto syntax = [](int line, const std::string& what) { return TriangulationError(TriErrc::syntax, what, line); };
    size_t i = 0;
    if (lines[i].second != "ITRI 1") throw syntax(lines[i].first, "expected header 'ITRI 1'");
    ++i;
    static const std::regex count_re(R"(tetrahedra\s+(\d+))");
    std::smatch m;
    if (i >= lines.size() || !std::regex_match(lines[i].second, m, count_re))
        throw syntax(i < lines.size() ? lines[i].first : lines.back().first, "expected 'tetrahedra <n>'");
    const int n = std::stoi(m[1].str());
    if (n == 0) throw TriangulationError(TriErrc::empty, "no tetrahedra", lines[i].first);
    ++i;
    static const std::regex line_re(R"((\d+)((?:\s+->\((?:-|\d+,\d+,\d{4})\)){4}))");
    static const std::regex entry_re(R"(->\((-|(\d+),(\d+),(\d{4}))\))");
    IdealTriangulation t;
    t.gluing.resize(n);
    for (int k = 0; k < n; ++k, ++i) {
        if (i >= lines.size()) throw syntax(lines.back().first, "missing tetrahedron lines");
        const auto& [no, s] = lines[i];
        if (!std::regex_match(s, m, line_re)) throw syntax(no, "malformed tetrahedron line");
        if (std::stoi(m[1].str()) != k) throw syntax(no, "tetrahedra must be listed in order");
        const std::string rest = m[2].str();
        int f = 0;
        for (auto it = std::sregex_iterator(rest.begin(), rest.end(), entry_re); it != std::sregex_iterator(); ++it, ++f) {
            const auto& e = *it;
            if (e[1].str() == "-") continue;
            FaceGluing g;
            g.tet = std::stoi(e[2].str());
            g.face = std::stoi(e[3].str());
            const std::string w = e[4].str();
            for (int j = 0; j < 4; ++j) g.perm[j] = w[j] - '0';
            t.gluing[k][f] = g;
        }
    }
    if (i >= lines.size() || lines[i].second != "end")
        throw syntax(i < lines.size() ? lines[i].first : lines.back().first, "expected 'end'");
    if (i + 1 != lines.size()) throw syntax(lines[i + 1].first, "content after 'end'");
    check_triangulation(t);
    return t;
}

std::string serialize_itri(const IdealTriangulation& t) {
    std::ostringstream out;
    out << "ITRI 1\ntetrahedra " << t.size() << "\n";
    for (int a = 0; a < t.size(); ++a) {
        out << a;
        for (const FaceGluing& g : t.gluing[a]) {
            if (!g.glued())
                out << " ->(-)";
            else
                out << " ->(" << g.tet << "," << g.face << "," << perm_word(g.perm) << ")";
        }
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

CellClasses cell_classes(const IdealTriangulation& t) {
    const int n = t.size();
    UnionFind ue(6 * n), uv(4 * n), ud(12 * n);
    // directed edge (a -> b) of tetrahedron k
    auto dir = [](int k, int a, int b) { return 12 * k + 3 * a + (b < a ? b : b - 1); };
    for (int k = 0; k < n; ++k)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing[k][f];
            if (!g.glued()) continue;
            for (int a = 0; a < 4; ++a) {
                if (a == f) continue;
                uv.unite(4 * k + a, 4 * g.tet + g.perm[a]);
                for (int b = 0; b < 4; ++b) {
                    if (b == f || b == a) continue;
                    ud.unite(dir(k, a, b), dir(g.tet, g.perm[a], g.perm[b]));
                    if (a < b) ue.unite(6 * k + local_edge(a, b), 6 * g.tet + local_edge(g.perm[a], g.perm[b]));
                }
            }
        }
    CellClasses c;
    const auto e = number_classes(ue, 6 * n, c.edges);
    const auto v = number_classes(uv, 4 * n, c.cusps);
    c.edge_of.resize(n);
    c.cusp_of.resize(n);
    c.valence.assign(c.edges, 0);
    c.cusp_triangles.assign(c.cusps, 0);
    c.cusp_vertices.assign(c.cusps, 0);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < 6; ++j) {
            c.edge_of[k][j] = e[6 * k + j];
            ++c.valence[e[6 * k + j]];
        }
        for (int a = 0; a < 4; ++a) {
            c.cusp_of[k][a] = v[4 * k + a];
            ++c.cusp_triangles[v[4 * k + a]];
        }
    }
    std::vector<bool> seen(12 * n, false);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                const int r = ud.find(dir(k, a, b));
                if (seen[r]) continue;
                seen[r] = true;
                ++c.cusp_vertices[c.cusp_of[k][a]];
            }
    return c;
}

bool connected(const IdealTriangulation& t) {
    if (t.size() == 0) return false;
    std::vector<bool> seen(t.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int k = stack.back();
        stack.pop_back();
        for (const FaceGluing& g : t.gluing[k])
            if (g.glued() && !seen[g.tet]) {
                seen[g.tet] = true;
                ++count;
                stack.push_back(g.tet);
            }
    }
    return count == t.size();
}

bool orientable_gluings(const IdealTriangulation& t) {
    for (const auto& tet : t.gluing)
        for (const FaceGluing& g : tet)
            if (g.glued() && perm_sign(g.perm) != -1) return false;
    return true;
}

std::vector<int> canonical_code(const IdealTriangulation& t) {
    const int n = t.size();
    std::vector<int> best;
    Perm4 p0{0, 1, 2, 3};
    std::vector<Perm4> all;
    do all.push_back(p0);
    while (std::next_permutation(p0.begin(), p0.end()));
    for (int t0 = 0; t0 < n; ++t0)
        for (const Perm4& start : all) {
            // vm[k][old local] = new local
            std::vector<int> label(n, -1);
            std::vector<Perm4> vm(n);
            std::vector<int> order{t0};
            label[t0] = 0;
            vm[t0] = start;
            std::vector<int> code;
            bool worse = false;
            for (size_t q = 0; q < order.size() && !worse; ++q) {
                const int k = order[q];
                const Perm4 inv = perm_inverse(vm[k]);
                for (int nf = 0; nf < 4; ++nf) {
                    const FaceGluing& g = t.gluing[k][inv[nf]];
                    if (!g.glued()) {
                        code.push_back(-1);
                        continue;
                    }
                    if (label[g.tet] < 0) {
                        label[g.tet] = static_cast<int>(order.size());
                        order.push_back(g.tet);
                        for (int x = 0; x < 4; ++x) vm[g.tet][g.perm[x]] = vm[k][x];
                    }
                    code.push_back(label[g.tet]);
                    const Perm4 np = perm_compose(vm[g.tet], perm_compose(g.perm, inv));
                    code.push_back(np[0] * 64 + np[1] * 16 + np[2] * 4 + np[3]);
                }
                if (!best.empty() && code.size() <= best.size() &&
                    std::lexicographical_compare_three_way(code.begin(), code.end(), best.begin(),
                                                           best.begin() + static_cast<long>(code.size())) > 0)
                    worse = true;
            }
            if (worse || static_cast<int>(order.size()) != n) continue;
            if (best.empty() || code < best) best = code;
        }
    return best;
}

bool isomorphic(const IdealTriangulation& a, const IdealTriangulation& b) {
    return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

void glue(IdealTriangulation& t, int tet, int face, int tet2, const Perm4& perm) {
    t.gluing[tet][face] = FaceGluing{tet2, perm[face], perm};
    t.gluing[tet2][perm[face]] = FaceGluing{tet, face, perm_inverse(perm)};
}

}  // namespace bsh::hyp
