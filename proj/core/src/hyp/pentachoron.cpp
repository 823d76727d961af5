#include "bsh/hyp/pentachoron.hpp"

#include <algorithm>
#include <stdexcept>

namespace bsh::hyp {

QuotientComplex build_pentachoron_complex() {
    QuotientComplex q;
    for (int i = 0; i < 5; ++i) {
        int k = 0;
        for (int v = 0; v < 5; ++v)
            if (v != i) q.global[i][k++] = v;
        if (i % 2 == 1) std::swap(q.global[i][0], q.global[i][1]);
    }
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) {
            q.edges.push_back({a, b});
            for (int c = b + 1; c < 5; ++c) q.faces.push_back({a, b, c});
        }
    q.tri.gluing.resize(5);
    for (int i = 0; i < 5; ++i)
        for (int f = 0; f < 4; ++f) {
            const int j = q.global[i][f];
            Perm4 p{};
            for (int k = 0; k < 4; ++k) {
                const int g = k == f ? i : q.global[i][k];
                p[k] = static_cast<int>(std::find(q.global[j].begin(), q.global[j].end(), g) - q.global[j].begin());
            }
            q.tri.gluing[i][f] = FaceGluing{j, p[f], p};
            std::array<int, 3> tri{};
            int m = 0;
            for (int v = 0; v < 5; ++v)
                if (v != i && v != j) tri[m++] = v;
            q.face_of[i][f] = static_cast<int>(std::find(q.faces.begin(), q.faces.end(), tri) - q.faces.begin());
        }
    return q;
}

std::vector<std::vector<int>> QuotientComplex::incidence() const {
    std::vector<std::vector<int>> a(edges.size(), std::vector<int>(faces.size(), 0));
    for (size_t e = 0; e < edges.size(); ++e)
        for (size_t f = 0; f < faces.size(); ++f) {
            const auto& t = faces[f];
            const bool in0 = std::find(t.begin(), t.end(), edges[e][0]) != t.end();
            const bool in1 = std::find(t.begin(), t.end(), edges[e][1]) != t.end();
            a[e][f] = in0 && in1 ? 1 : 0;
        }
    return a;
}

namespace {

// Row reduction; returns rank and whether the system is consistent.
bool gf2_consistent(std::vector<std::vector<int>> m, int cols, int* rank) {
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
        int p = -1;
        for (int i = r; i < static_cast<int>(m.size()); ++i)
            if (m[i][c]) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = 0; i < static_cast<int>(m.size()); ++i)
            if (i != r && m[i][c])
                for (int k = 0; k <= cols; ++k) m[i][k] ^= m[r][k];
        ++r;
    }
    if (rank) *rank = r;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
        if (m[i][cols]) return false;
    return true;
}

}  // namespace

std::optional<Gf2Solution> gf2_solve_least(const std::vector<std::vector<int>>& a, const std::vector<int>& b) {
    const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
    std::vector<std::vector<int>> m;
    for (size_t i = 0; i < a.size(); ++i) {
        auto row = a[i];
        for (int& x : row) x &= 1;
        row.push_back(b[i] & 1);
        m.push_back(row);
    }
    int rank = 0;
    if (!gf2_consistent(m, cols, &rank)) return std::nullopt;
    Gf2Solution s;
    s.kernel_dim = cols - rank;
    // fix coordinates greedily, preferring 0
    for (int c = 0; c < cols; ++c) {
        std::vector<int> row(cols + 1, 0);
        row[c] = 1;
        m.push_back(row);
        if (!gf2_consistent(m, cols, nullptr)) m.back()[cols] = 1;
        s.x.push_back(m.back()[cols]);
    }
    return s;
}

Gf2Solution gf2_face_signs(const QuotientComplex& q) {
    auto s = gf2_solve_least(q.incidence(), std::vector<int>(q.edges.size(), 1));
    if (!s) throw std::logic_error("face sign system has no solution");
    return *s;
}

IdealTriangulation build_double_cover(const QuotientComplex& q, const std::vector<int>& eps) {
    if (eps.size() != q.faces.size()) throw std::invalid_argument("one sign per triangle expected");
    IdealTriangulation t;
    t.gluing.resize(10);
    for (int i = 0; i < 5; ++i)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = q.tri.gluing[i][f];
            const int e = eps[q.face_of[i][f]] & 1;
            for (int s = 0; s < 2; ++s) t.gluing[2 * i + s][f] = FaceGluing{2 * g.tet + (s ^ e), g.face, g.perm};
        }
    check_triangulation(t);
    if (!connected(t)) throw std::logic_error("double cover is disconnected");
    const CellClasses c = cell_classes(t);
    for (int v : c.valence)
        if (v != 6) throw std::logic_error("double cover has an edge of valence " + std::to_string(v));
    return t;
}

std::vector<int> deck_involution(const IdealTriangulation& cover) {
    std::vector<int> m(cover.size());
    for (int k = 0; k < cover.size(); ++k) m[k] = k ^ 1;
    return m;
}

bool is_automorphism(const IdealTriangulation& t, const std::vector<int>& tet_map) {
    if (static_cast<int>(tet_map.size()) != t.size()) return false;
    for (int k = 0; k < t.size(); ++k)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing[k][f];
            const FaceGluing& h = t.gluing[tet_map[k]][f];
            if (h.tet != tet_map[g.tet] || h.face != g.face || h.perm != g.perm) return false;
        }
    return true;
}

}  // namespace bsh::hyp
