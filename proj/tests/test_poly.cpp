#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bsh/classify/census.hpp"
#include "bsh/poly/homology.hpp"
#include "bsh/poly/io.hpp"
#include "bsh/poly/iso.hpp"
#include "bsh/shadow/star.hpp"
#include "bsh/util/snf.hpp"

using namespace bsh;
using poly::CellComplex;

namespace {

std::int64_t det_bareiss(IntMatrix m) {
    const int n = static_cast<int>(m.size());
    std::int64_t sign = 1, prev = 1;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

void subsets(int n, int k, std::vector<std::vector<int>>& out, std::vector<int>& cur, int from = 0) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, out, cur, i + 1);
        cur.pop_back();
    }
}

// Invariant factors from gcds of k x k minors.
std::vector<std::int64_t> determinantal_invariants(const IntMatrix& a) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : 0;
    std::vector<std::int64_t> out;
    std::int64_t prev = 1;
    for (int k = 1; k <= std::min(m, n); ++k) {
        std::vector<std::vector<int>> rs, cs;
        std::vector<int> cur;
        subsets(m, k, rs, cur);
        subsets(n, k, cs, cur);
        std::int64_t g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                IntMatrix sub(k, std::vector<std::int64_t>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub[i][j] = a[r[i]][c[j]];
                g = std::gcd(g, det_bareiss(sub));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    IntMatrix m(rows, std::vector<std::int64_t>(cols));
    for (auto& row : m)
        for (auto& x : row) x = d(rng);
    return m;
}

// Connected graph plus faces that are closed walks, so d1 d2 = 0.
CellComplex random_complex(std::mt19937& rng) {
    CellComplex c;
    c.points = std::uniform_int_distribution<int>(1, 3)(rng);
    const int arcs = std::uniform_int_distribution<int>(c.points, c.points + 3)(rng);
    for (int p = 1; p < c.points; ++p) c.arcs.push_back({std::uniform_int_distribution<int>(0, p - 1)(rng), p});
    std::uniform_int_distribution<int> pt(0, c.points - 1);
    while (static_cast<int>(c.arcs.size()) < arcs) c.arcs.push_back({pt(rng), pt(rng)});
    std::vector<std::vector<int>> inc(c.points);
    for (int a = 0; a < static_cast<int>(c.arcs.size()); ++a) {
        inc[c.arcs[a][0]].push_back(a + 1);
        inc[c.arcs[a][1]].push_back(-(a + 1));
    }
    auto step = [&](int letter) { return letter > 0 ? c.arcs[letter - 1][1] : c.arcs[-letter - 1][0]; };
    const int faces = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int f = 0; f < faces; ++f) {
        std::vector<int> word;
        int at = 0;
        const int len = std::uniform_int_distribution<int>(1, 5)(rng);
        for (int i = 0; i < len; ++i) {
            const auto& opts = inc[at];
            const int l = opts[std::uniform_int_distribution<int>(0, static_cast<int>(opts.size()) - 1)(rng)];
            word.push_back(l);
            at = step(l);
        }
        // back to 0 along the tree arcs p-1 from parents
        while (at != 0) {
            const int a = at - 1;
            word.push_back(-(a + 1));
            at = c.arcs[a][0];
        }
        c.faces.push_back(word);
    }
    return c;
}

poly::AbelianGroup oracle_homology(const CellComplex& c) {
    const int n1 = static_cast<int>(c.arcs.size());
    IntMatrix d1(c.points, std::vector<std::int64_t>(n1, 0));
    for (int a = 0; a < n1; ++a) {
        d1[c.arcs[a][1]][a] += 1;
        d1[c.arcs[a][0]][a] -= 1;
    }
    IntMatrix d2(n1, std::vector<std::int64_t>(c.faces.size(), 0));
    for (size_t f = 0; f < c.faces.size(); ++f)
        for (int x : c.faces[f]) d2[std::abs(x) - 1][f] += x > 0 ? 1 : -1;
    const auto i1 = c.faces.empty() ? std::vector<std::int64_t>{} : determinantal_invariants(d2);
    poly::AbelianGroup g;
    g.rank = n1 - static_cast<int>(determinantal_invariants(d1).size()) - static_cast<int>(i1.size());
    for (auto d : i1)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

std::vector<poly::SimplePolyhedron> sample_polyhedra() {
    std::vector<poly::SimplePolyhedron> out;
    for (const auto& e : classify::run_census().entries) out.push_back(e.representative);
    for (const auto* pd : {"X(1,3,2,4) X(3,1,4,2)", "X(2,4,3,1) X(4,6,5,3) X(6,2,1,5)"}) {
        const auto s = shadow::build_star_shadow(shadow::parse_pd(pd));
        out.push_back(s.polyhedron);
        out.push_back(shadow::remove_outer_region(s).polyhedron);
    }
    return out;
}

}  // namespace

TEST_CASE("smith form factors a random matrix") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
        const auto a = random_matrix(rng, rows, cols, 4);
        const auto s = smith_form(a);
        CHECK(mat_mul(mat_mul(s.u, a), s.v) == s.d);
        IntMatrix id(cols, std::vector<std::int64_t>(cols, 0));
        for (int i = 0; i < cols; ++i) id[i][i] = 1;
        CHECK(mat_mul(s.v, s.v_inv) == id);
        const auto inv = smith_invariants(a);
        CHECK(inv == determinantal_invariants(a));
        CHECK(integer_rank(a) == static_cast<int>(inv.size()));
        for (size_t i = 1; i < inv.size(); ++i) CHECK(inv[i] % inv[i - 1] == 0);
    }
}

TEST_CASE("homology of small standard complexes") {
    CellComplex torus{1, {{0, 0}, {0, 0}}, {{1, 2, -1, -2}}};
    CHECK(poly::first_homology(torus).str() == "Z^2");
    CellComplex rp2{1, {{0, 0}}, {{1, 1}}};
    const auto h = poly::first_homology(rp2);
    CHECK(h.rank == 0);
    CHECK(h.torsion == std::vector<std::int64_t>{2});
    CellComplex disk{2, {{0, 1}, {0, 1}}, {{1, -2}}};
    CHECK(poly::first_homology(disk).trivial());
    CHECK(poly::is_plausibly_trivial(poly::fundamental_group(disk)) == poly::Triviality::yes);
    CHECK(poly::is_plausibly_trivial(poly::fundamental_group(torus)) == poly::Triviality::unknown);
}

TEST_CASE("homology agrees with determinantal divisors on random complexes") {
    std::mt19937 rng(2024);
    int with_torsion = 0;
    for (int i = 0; i < 100; ++i) {
        const auto c = random_complex(rng);
        CAPTURE(i);
        const auto h = oracle_homology(c);
        CHECK(poly::first_homology(c) == h);
        if (!h.torsion.empty()) ++with_torsion;
    }
    CHECK(with_torsion >= 5);
}

TEST_CASE("tietze simplification keeps abelianization") {
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
        const auto c = random_complex(rng);
        const auto g = poly::fundamental_group(c);
        const auto s = poly::tietze_simplify(g);
        CHECK(s.generators <= g.generators);
        CellComplex a{1, std::vector<std::array<int, 2>>(s.generators, {0, 0}), s.relators};
        CHECK(poly::first_homology(a) == poly::first_homology(c));
    }
}

TEST_CASE("spoly text round trip") {
    for (const auto& p : sample_polyhedra()) {
        REQUIRE(poly::is_valid(p));
        const auto text = poly::serialize_spoly(p);
        const auto q = poly::parse_spoly(text);
        CHECK(q == p);
        CHECK(poly::serialize_spoly(q) == text);
    }
    CHECK_THROWS_AS(poly::parse_spoly("SPOLY 2\n"), poly::ParseError);
}

TEST_CASE("validate reports a broken slot") {
    auto p = classify::run_census().entries.at(0).representative;
    for (auto& e : p.edges)
        if (!e.circle) {
            e.ends[0].slot = (e.ends[0].slot + 1) % 4;
            break;
        }
    CHECK_FALSE(poly::validate(p).empty());
}

TEST_CASE("enumerated branchings are exactly the sign vectors passing the edge condition") {
    for (const auto& p : sample_polyhedra()) {
        const auto owners = poly::germ_owners(p);
        const int n = static_cast<int>(p.regions.size());
        REQUIRE(n <= 16);
        std::set<std::vector<int>> brute;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> s(n);
            for (int r = 0; r < n; ++r) s[r] = (mask >> r & 1) ? -1 : 1;
            bool ok = true;
            for (const auto& legs : owners) {
                int sum = 0;
                for (const auto& o : legs) sum += s[o.region] * o.dir;
                if (std::abs(sum) == 3) ok = false;
            }
            if (ok) brute.insert(s);
            CHECK(poly::branching_ok(p, s) == ok);
        }
        const auto listed = poly::enumerate_branchings(p);
        CHECK(std::set<std::vector<int>>(listed.begin(), listed.end()) == brute);
        CHECK(listed.size() == brute.size());
    }
}

TEST_CASE("isomorphism witnesses verify") {
    const auto ps = sample_polyhedra();
    for (const auto& p : ps) {
        const auto iso = poly::isomorphic(p, p, {true, true});
        REQUIRE(iso);
        CHECK(poly::verify_isomorphism(p, p, *iso, {true, true}));
    }
    CHECK_FALSE(poly::isomorphic(ps[0], ps[5]));
}
