#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "bsh/hyp/cusp.hpp"
#include "bsh/hyp/equations.hpp"
#include "bsh/hyp/pants.hpp"
#include "bsh/hyp/pentachoron.hpp"
#include "bsh/hyp/solver.hpp"
#include "bsh/hyp/volume.hpp"

using namespace bsh::hyp;
using cd = std::complex<double>;

namespace {

const cd omega = std::polar(1.0, std::numbers::pi / 3);

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const IdealTriangulation& cover() {
    static const IdealTriangulation t = [] {
        const auto q = build_pentachoron_complex();
        return build_double_cover(q, gf2_face_signs(q).x);
    }();
    return t;
}

IdealTriangulation variant(const std::string& name) {
    return reglue_along_pants(cover(), parse_regluing(slurp(std::string(BSH_DATA_DIR) + "/variants/" + name + ".reglue")));
}

TriErrc itri_error(const std::string& text) {
    try {
        parse_itri(text);
    } catch (const TriangulationError& e) {
        return e.code;
    }
    FAIL("parsed");
    return TriErrc::syntax;
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

IdealTriangulation relabel_random(const IdealTriangulation& t, std::mt19937& rng) {
    const int n = t.size();
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<Perm4> pi(n);
    for (auto& p : pi) {
        p = {0, 1, 2, 3};
        std::shuffle(p.begin(), p.end(), rng);
    }
    IdealTriangulation out;
    out.gluing.resize(n);
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing[a][f];
            out.gluing[sigma[a]][pi[a][f]] = {sigma[g.tet], pi[g.tet][g.face], perm_compose(pi[g.tet], perm_compose(g.perm, perm_inverse(pi[a])))};
        }
    return out;
}

std::vector<cd> regular(int n) { return std::vector<cd>(n, omega); }

Eigen::VectorXcd as_vector(const std::vector<cd>& z) { return Eigen::Map<const Eigen::VectorXcd>(z.data(), z.size()); }

}  // namespace

TEST_CASE("permutation helpers") {
    const Perm4 p{2, 0, 3, 1};
    CHECK(perm_compose(p, perm_inverse(p)) == Perm4{0, 1, 2, 3});
    CHECK(perm_sign(p) == -1);
    CHECK(perm_sign({1, 0, 2, 3}) == -1);
    CHECK(perm_sign({1, 2, 0, 3}) == 1);
    CHECK(perm_word(p) == "2031");
}

TEST_CASE("itri round trip and shipped cover") {
    const auto text = serialize_itri(cover());
    CHECK(parse_itri(text) == cover());
    CHECK(slurp(std::string(BSH_DATA_DIR) + "/cover.itri") == text);
}

TEST_CASE("itri diagnostics") {
    const auto text = serialize_itri(cover());
    CHECK(itri_error(replace_once(text, "ITRI 1", "ITRI 2")) == TriErrc::syntax);
    CHECK(itri_error(replace_once(text, "->(3,1,1023)", "->(3,1,10x3)")) == TriErrc::syntax);
    CHECK(itri_error("ITRI 1\ntetrahedra 0\nend\n") == TriErrc::empty);
    CHECK(itri_error(replace_once(text, "->(3,1,1023)", "->(-)")) == TriErrc::unglued_face);
    CHECK(itri_error(replace_once(text, "->(3,1,1023)", "->(4,1,1023)")) == TriErrc::non_involutive);
    CHECK(itri_error(replace_once(text, "->(3,1,1023)", "->(3,1,0123)")) == TriErrc::inconsistent_permutation);
    try {
        parse_itri(replace_once(text, "ITRI 1", "ITRI 2"));
    } catch (const TriangulationError& e) {
        CHECK(e.line == 1);
    }
}

TEST_CASE("gf2 least solution matches brute force") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int rows = 1 + trial % 5, cols = 1 + trial % 7;
        std::vector<std::vector<int>> a(rows, std::vector<int>(cols));
        std::vector<int> b(rows);
        for (auto& r : a)
            for (auto& x : r) x = rng() & 1;
        for (auto& x : b) x = rng() & 1;
        std::optional<std::vector<int>> least;
        int solutions = 0;
        for (int m = 0; m < (1 << cols); ++m) {
            std::vector<int> x(cols);
            // most significant first, so ascending m is lexicographic
            for (int j = 0; j < cols; ++j) x[j] = m >> (cols - 1 - j) & 1;
            bool ok = true;
            for (int i = 0; i < rows; ++i) {
                int s = 0;
                for (int j = 0; j < cols; ++j) s ^= a[i][j] & x[j];
                ok = ok && s == b[i];
            }
            if (ok && !least) least = x;
            solutions += ok;
        }
        const auto got = gf2_solve_least(a, b);
        REQUIRE(got.has_value() == least.has_value());
        if (got) {
            CHECK(got->x == *least);
            CHECK((1 << got->kernel_dim) == solutions);
        }
    }
}

TEST_CASE("face signs on the pentachoron quotient") {
    const auto q = build_pentachoron_complex();
    CHECK(q.tri.size() == 5);
    CHECK(q.faces.size() == 10);
    CHECK(q.edges.size() == 10);
    const auto s = gf2_face_signs(q);
    CHECK(s.kernel_dim == 4);
    CHECK(s.x == std::vector<int>{0, 0, 1, 0, 1, 1, 0, 1, 1, 1});
    const auto inc = q.incidence();
    for (const auto& row : inc) {
        int sum = 0;
        for (size_t f = 0; f < row.size(); ++f) sum ^= row[f] & s.x[f];
        CHECK(sum == 1);
    }
}

TEST_CASE("ten tetrahedron cover") {
    const auto& t = cover();
    CHECK(t.size() == 10);
    CHECK_NOTHROW(check_triangulation(t));
    CHECK(connected(t));
    CHECK(orientable_gluings(t));
    const auto cc = cell_classes(t);
    CHECK(cc.edges == 10);
    CHECK(std::all_of(cc.valence.begin(), cc.valence.end(), [](int v) { return v == 6; }));
    CHECK(cc.cusps == 5);
    for (int c = 0; c < cc.cusps; ++c) {
        CHECK(cc.cusp_triangles[c] == 8);
        CHECK(cc.cusp_euler(c) == 0);
    }
    const auto deck = deck_involution(t);
    CHECK(is_automorphism(t, deck));
    for (int k = 0; k < t.size(); ++k) {
        CHECK(deck[k] != k);
        CHECK(deck[deck[k]] == k);
    }
    std::vector<int> shift(t.size());
    for (int k = 0; k < t.size(); ++k) shift[k] = (k + 2) % t.size();
    CHECK_FALSE(is_automorphism(t, shift));
}

TEST_CASE("canonical code ignores labels") {
    std::mt19937 rng(3);
    for (int i = 0; i < 5; ++i) {
        const auto r = relabel_random(cover(), rng);
        CHECK_NOTHROW(check_triangulation(r));
        CHECK(canonical_code(r) == canonical_code(cover()));
    }
    CHECK_FALSE(isomorphic(cover(), variant("L2")));
}

TEST_CASE("gluing equations at the regular shape") {
    const auto sys = gluing_equations(cover());
    CHECK(sys.edge_count() == 10);
    CHECK(sys.cusp_count() == 5);
    CHECK(sys.equations.size() == 20);
    CHECK(std::count_if(sys.equations.begin(), sys.equations.end(),
                        [](const Equation& e) { return e.kind == Equation::Kind::cusp; }) == 10);
    CHECK(residual(sys, as_vector(regular(10))).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(residual_extended(sys, regular(10)) < 1e-12);
    for (const auto& e : sys.equations)
        if (e.kind == Equation::Kind::edge) {
            int count = 0;
            for (int t = 0; t < sys.tetrahedra; ++t) count += std::abs(e.a[t]) + std::abs(e.b[t]);
            CHECK(count > 0);
        }
}

TEST_CASE("jacobian matches finite differences") {
    const auto sys = gluing_equations(cover());
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    const double h = 1e-6;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<cd> z(10);
        for (auto& x : z) x = omega + cd(u(rng), u(rng));
        const auto zv = as_vector(z);
        const auto j = jacobian(sys, zv);
        Eigen::MatrixXcd fd(j.rows(), j.cols());
        for (int t = 0; t < 10; ++t) {
            auto zp = zv, zm = zv;
            zp[t] *= std::exp(h);
            zm[t] *= std::exp(-h);
            fd.col(t) = (residual(sys, zp) - residual(sys, zm)) / (2 * h);
        }
        CHECK((fd - j).norm() / j.norm() < 1e-6);
    }
}

TEST_CASE("relabeled systems agree") {
    const auto sys = gluing_equations(cover());
    std::vector<int> map{3, 1, 4, 0, 2, 9, 8, 5, 7, 6};
    const auto r = relabel(sys, map);
    std::vector<cd> z(10), zr(10);
    for (int t = 0; t < 10; ++t) {
        z[t] = omega + cd(0.01 * t, -0.005 * t);
        zr[map[t]] = z[t];
    }
    CHECK((residual(sys, as_vector(z)) - residual(r, as_vector(zr))).norm() < 1e-14);
}

TEST_CASE("newton converges from perturbed starts") {
    const auto sys = gluing_equations(cover());
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto sol = solve_shapes(sys, perturbed_regular_start(10, seed));
        CHECK(sol.geometric);
        CHECK(sol.residual < 1e-12);
        for (const auto& z : sol.shapes) CHECK(std::abs(z - omega) < 1e-9);
        CHECK(std::abs(volume(sol.shapes).volume - 10 * volume_constants().v_tet) < 1e-6);
    }
    const auto a = solve_shapes(sys, perturbed_regular_start(10, 0));
    const auto b = solve_shapes(sys, perturbed_regular_start(10, 0));
    CHECK(a.shapes == b.shapes);
}

TEST_CASE("unsatisfiable targets diverge") {
    auto sys = gluing_equations(cover());
    sys.equations[0].target += 20;
    try {
        solve_shapes(sys, perturbed_regular_start(10, 0));
        FAIL("solved");
    } catch (const SolveError& e) {
        CHECK(e.code == SolveErrc::diverged);
    }
}

TEST_CASE("lobachevsky against quadrature") {
    boost::math::quadrature::tanh_sinh<double> q;
    for (double theta : {0.1, 0.3, std::numbers::pi / 6, 0.7, std::numbers::pi / 4, 1.2, std::numbers::pi / 3, 1.5}) {
        const double ref = -q.integrate([](double t) { return std::log(2 * std::sin(t)); }, 0.0, theta);
        CHECK(std::abs(lobachevsky(theta) - ref) < 1e-12);
    }
    CHECK(std::abs(lobachevsky(std::numbers::pi)) < 1e-15);
    CHECK(std::abs(lobachevsky(-0.4) + lobachevsky(0.4)) < 1e-15);
    CHECK(std::abs(lobachevsky(0.4 + std::numbers::pi) - lobachevsky(0.4)) < 1e-14);
}

TEST_CASE("volume constants") {
    const auto& c = volume_constants();
    CHECK(std::abs(c.v_tet - 1.01494160640965362502) < 1e-13);
    CHECK(std::abs(c.v_oct - 3.66386237670887606021) < 1e-13);
    CHECK(std::abs(c.v_tet - 3 * lobachevsky(std::numbers::pi / 3)) < 1e-15);
}

TEST_CASE("tetrahedron volume symmetries") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> re(-3, 3), im(0.01, 3);
    for (int i = 0; i < 100; ++i) {
        const cd z(re(rng), im(rng));
        const double v = tetrahedron_volume(z);
        CHECK(v > 0);
        CHECK(v <= volume_constants().v_tet + 1e-12);
        CHECK(std::abs(v - tetrahedron_volume(1.0 / (1.0 - z))) < 1e-10);
        CHECK(std::abs(v - tetrahedron_volume(1.0 - 1.0 / z)) < 1e-10);
        CHECK(std::abs(v + tetrahedron_volume(std::conj(z))) < 1e-10);
        CHECK(std::abs(v + tetrahedron_volume(1.0 - z)) < 1e-10);
    }
    CHECK(tetrahedron_volume(2.0) == 0);
}

TEST_CASE("volume formula") {
    const auto& c = volume_constants();
    CHECK(std::abs(volume_formula(1, 0) - 2 * c.v_oct) < 1e-10);
    CHECK(std::abs(volume_formula(2, 1) - 10 * c.v_tet) < 1e-10);
    CHECK(std::abs(volume_formula(5, 2) - (2 * c.v_oct + 20 * c.v_tet)) < 1e-10);
    CHECK_THROWS_AS(volume_formula(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(volume_formula(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(volume_formula(2, -1), std::invalid_argument);
}

TEST_CASE("modulus reduction") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> re(-4, 4), im(0.05, 3);
    for (int i = 0; i < 100; ++i) {
        const cd tau(re(rng), im(rng));
        const cd r = reduce_modulus(tau);
        CHECK(r.imag() > 0);
        CHECK(r.real() >= -0.5 - 1e-12);
        CHECK(r.real() < 0.5 + 1e-12);
        CHECK(std::abs(r) >= 1 - 1e-12);
        CHECK(std::abs(reduce_modulus(tau + 1.0) - r) < 1e-9);
        CHECK(std::abs(reduce_modulus(-1.0 / tau) - r) < 1e-9);
        CHECK(std::abs(reduce_modulus(-tau) - r) < 1e-9);
    }
}

TEST_CASE("cusp shapes of the cover") {
    const auto links = cusp_links(cover());
    CHECK(links.size() == 5);
    for (const auto& l : links) {
        CHECK(l.triangles.size() == 8);
        CHECK(l.torsion.empty());
    }
    const auto m = cusp_moduli(cover(), regular(10));
    for (const auto& c : m) CHECK(std::abs(c.modulus - omega * omega) < 1e-9);
    for (const auto& e : cusp_moduli_exact(cover())) CHECK(e == ExactModulus{-1, 1, 1});
    CHECK(ZOmega{0, 1} * ZOmega{0, 1} == ZOmega{-1, 1});
    CHECK(ZOmega{2, 1}.norm() == 7);
}

TEST_CASE("pants faces") {
    const auto pants = find_pants(cover());
    CHECK(pants.size() == 10);
    const auto fl = face_list(cover());
    CHECK(fl.sides.size() == 20);
    for (const auto& y : pants) {
        const auto s = pants_sides(cover(), y);
        std::set<TetFace> all{s.plus[0], s.plus[1], s.minus[0], s.minus[1]};
        CHECK(all.size() == 4);
    }
    const auto id = identity_regluing(cover(), {pants[0]});
    CHECK(isomorphic(reglue_along_pants(cover(), id), cover()));
}

TEST_CASE("regluing rejects orientation reversing maps") {
    const auto pants = find_pants(cover());
    auto r = identity_regluing(cover(), {pants[0]});
    auto& m = r.maps[0];
    // swap the two vertices other than the one opposite the face
    std::vector<int> others;
    for (int k = 0; k < 4; ++k)
        if (k != m.from.face) others.push_back(k);
    std::swap(m.perm[others[0]], m.perm[others[1]]);
    CHECK_THROWS_AS(reglue_along_pants(cover(), r), RegluingError);
    r.maps.pop_back();
    CHECK_THROWS_AS(reglue_along_pants(cover(), r), RegluingError);
}

TEST_CASE("regluing text round trip") {
    for (const auto* name : {"L2", "L3", "L4"}) {
        const auto text = slurp(std::string(BSH_DATA_DIR) + "/variants/" + name + ".reglue");
        CHECK(serialize_regluing(parse_regluing(text)) == text);
    }
    CHECK_THROWS(parse_regluing("REGLUE 1\nmap 0 0 -> 1 1 perm 01\nend\n"));
}

TEST_CASE("shipped variants are what the search finds") {
    const auto vs = search_variants(cover());
    REQUIRE(vs.size() == 3);
    for (const auto& v : vs) {
        const auto text = slurp(std::string(BSH_DATA_DIR) + "/variants/" + v.name + ".reglue");
        CHECK(serialize_regluing(v.regluing) == text);
    }
    CHECK(vs[0].name == "L2");
    CHECK(vs[0].cusps == 4);
    CHECK(vs[1].cusps == 4);
    CHECK(vs[2].cusps == 3);
}

TEST_CASE("reglued variants are regular with ten tetrahedra of volume") {
    std::vector<IdealTriangulation> ts{cover()};
    const std::map<std::string, std::vector<ExactModulus>> exact{
        {"L2", {{-2, 4, 3}, {-1, 1, 1}, {-1, 1, 1}, {-1, 1, 1}}},
        {"L3", {{-1, 2, 1}, {-1, 1, 1}, {-1, 2, 1}, {-1, 2, 1}}},
        {"L4", {{-3, 4, 2}, {-1, 2, 1}, {-1, 2, 1}}},
    };
    for (const auto& [name, moduli] : exact) {
        CAPTURE(name);
        const auto t = variant(name);
        const auto cc = cell_classes(t);
        CHECK(std::all_of(cc.valence.begin(), cc.valence.end(), [](int v) { return v == 6; }));
        CHECK(cc.cusps == static_cast<int>(moduli.size()));
        const auto sol = solve_shapes(gluing_equations(t), perturbed_regular_start(10, 0));
        CHECK(sol.geometric);
        for (const auto& z : sol.shapes) CHECK(std::abs(z - omega) < 1e-9);
        CHECK(std::abs(volume(sol.shapes).volume - 10 * volume_constants().v_tet) < 1e-6);
        CHECK(cusp_moduli_exact(t) == moduli);
        const auto num = cusp_moduli(t, sol.shapes);
        for (size_t c = 0; c < moduli.size(); ++c) CHECK(std::abs(num[c].modulus - moduli[c].value()) < 1e-8);
        ts.push_back(t);
    }
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) CHECK_FALSE(isomorphic(ts[i], ts[j]));
}

TEST_CASE("smallest variant has three cusps, not four or five") {
    CHECK(cell_classes(variant("L4")).cusps == 3);
}
