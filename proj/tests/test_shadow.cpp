#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "bsh/poly/moves.hpp"
#include "bsh/shadow/star.hpp"

using namespace bsh;
using namespace bsh::shadow;

namespace {

const char* hopf = "X(1,3,2,4) X(3,1,4,2)";

std::vector<int> internal_gleams(const poly::SimplePolyhedron& p) {
    std::vector<int> g;
    for (size_t r = 0; r < p.regions.size(); ++r)
        if (auto x = p.gleam_twice(static_cast<int>(r))) g.push_back(*x);
    std::sort(g.begin(), g.end());
    return g;
}

DiagramErrc parse_error(const std::string& text) {
    try {
        parse_pd(text);
    } catch (const DiagramError& e) {
        return e.code;
    }
    FAIL("parsed: " << text);
    return DiagramErrc::malformed;
}

// corner between position k and k+1: +1/2 when turning counterclockwise
// from the under strand reaches the over strand
int corner_sign(int k) { return k % 2 == 0 ? 1 : -1; }

std::vector<int> random_braid(std::mt19937& rng, int strands) {
    std::uniform_int_distribution<int> gen(1, strands - 1), len(strands, strands + 6), sign(0, 1);
    std::vector<int> w;
    for (int i = 1; i < strands; ++i) w.push_back(sign(rng) ? i : -i);
    const int extra = len(rng) - (strands - 1);
    for (int i = 0; i < extra; ++i) w.push_back(sign(rng) ? gen(rng) : -gen(rng));
    std::shuffle(w.begin(), w.end(), rng);
    return w;
}

int permutation_cycles(int strands, const std::vector<int>& w) {
    std::vector<int> perm(strands);
    std::iota(perm.begin(), perm.end(), 0);
    for (int g : w) std::swap(perm[std::abs(g) - 1], perm[std::abs(g)]);
    std::vector<bool> seen(strands, false);
    int cycles = 0;
    for (int s = 0; s < strands; ++s) {
        if (seen[s]) continue;
        ++cycles;
        for (int t = s; !seen[t]; t = perm[t]) seen[t] = true;
    }
    return cycles;
}

}  // namespace

TEST_CASE("hopf star shadow gleams") {
    const auto d = parse_pd(hopf);
    CHECK(d.crossing_count() == 2);
    CHECK(d.components.size() == 2);
    const auto s = build_star_shadow(d);
    CHECK(poly::is_valid(s.polyhedron));
    CHECK(internal_gleams(s.polyhedron) == std::vector<int>{-2, -2, 2});
    REQUIRE(s.polyhedron.branching);
    CHECK(poly::branching_ok(s.polyhedron, *s.polyhedron.branching));
    CHECK(compatible_orientations(d, {-1, -1}));
    CHECK_FALSE(compatible_orientations(d, {1, -1}));
}

TEST_CASE("hopf reduction leaves a bigon of gleam one") {
    const auto r = remove_outer_region(build_star_shadow(parse_pd(hopf)));
    const auto& p = r.polyhedron;
    CHECK(poly::is_valid(p));
    CHECK(r.outer_region == -1);
    CHECK(p.regions.size() == 3);
    CHECK(internal_gleams(p) == std::vector<int>{2});
    int annuli = 0;
    for (const auto& reg : p.regions) annuli += reg.free.size() == 1 && reg.free[0] == poly::Color::e;
    CHECK(annuli == 2);
}

TEST_CASE("reduction preconditions") {
    try {
        remove_outer_region(build_star_shadow(parse_pd("U()")));
        FAIL("unknot reduced");
    } catch (const ReductionError& e) {
        CHECK(e.code == ReductionErrc::closure_not_annulus);
    }
    try {
        remove_outer_region(build_star_shadow(parse_pd(hopf), std::vector<int>{1, -1}));
        FAIL("incompatible orientation reduced");
    } catch (const ReductionError& e) {
        CHECK(e.code == ReductionErrc::branching_incompatible);
        CHECK(e.edge >= 0);
    }
}

TEST_CASE("unknot star shadow is a disk of gleam zero") {
    const auto s = build_star_shadow(parse_pd("U()"));
    CHECK(internal_gleams(s.polyhedron) == std::vector<int>{0});
}

TEST_CASE("trefoil gleams") {
    const auto pd = braid_closure_pd(2, {1, 1, 1});
    CHECK(pd == "X(2,4,3,1) X(4,6,5,3) X(6,2,1,5)");
    const auto s = build_star_shadow(parse_pd(pd));
    CHECK(internal_gleams(s.polyhedron) == std::vector<int>{-2, -2, -2, 3});
    const auto r = remove_outer_region(s);
    CHECK(poly::is_valid(r.polyhedron));
}

TEST_CASE("diagram errors") {
    CHECK(parse_error("X(1,2,3)") == DiagramErrc::malformed);
    CHECK(parse_error("hello") == DiagramErrc::malformed);
    CHECK(parse_error("X(1,2,3,4)") == DiagramErrc::multiplicity);
    CHECK(parse_error("X(1,2,2,1) X(3,4,4,3)") == DiagramErrc::split);
    CHECK(parse_error(std::string(hopf) + " outer=9") == DiagramErrc::bad_outer);
}

TEST_CASE("outer annotation picks the outer face") {
    const auto pd = braid_closure_pd(3, {1, -2, 1, -2});
    const auto d0 = parse_pd(pd);
    CHECK_THROWS_AS(remove_outer_region(build_star_shadow(d0)), ReductionError);
    const auto f = diagram_faces(d0);
    bool reduced = false;
    for (const auto& face : f.faces) {
        std::string ann = " outer=";
        const auto arcs = face.sorted_arcs();
        for (size_t i = 0; i < arcs.size(); ++i) ann += (i ? "," : "") + std::to_string(d0.input_label[arcs[i]]);
        const auto d = parse_pd(pd + ann);
        CHECK(diagram_faces(d).faces[diagram_faces(d).outer].sorted_arcs() == arcs);
        try {
            const auto r = remove_outer_region(build_star_shadow(d));
            CHECK(poly::is_valid(r.polyhedron));
            reduced = true;
        } catch (const ReductionError&) {
        }
    }
    CHECK(reduced);
}

TEST_CASE("crossing contributions on random diagrams") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int strands = 2 + trial % 3;
        const auto word = random_braid(rng, strands);
        const auto d = parse_pd(braid_closure_pd(strands, word));
        CAPTURE(trial);
        CHECK(static_cast<int>(d.components.size()) == permutation_cycles(strands, word));
        const auto f = diagram_faces(d);
        CHECK(static_cast<int>(f.faces.size()) == d.crossing_count() + 2);

        std::map<int, std::vector<int>> per_crossing;
        int total = 0;
        std::vector<int> face_sum(f.faces.size(), 0);
        for (size_t i = 0; i < f.faces.size(); ++i)
            for (const auto& c : f.faces[i].corners) {
                CHECK(corner_contribution2(c.k) == corner_sign(c.k));
                per_crossing[c.crossing].push_back(c.k);
                face_sum[i] += corner_sign(c.k);
                total += corner_sign(c.k);
            }
        CHECK(total == 0);
        for (auto& [x, ks] : per_crossing) {
            std::sort(ks.begin(), ks.end());
            CHECK(ks == std::vector<int>{0, 1, 2, 3});
            std::vector<int> signs;
            for (int k : ks) signs.push_back(corner_sign(k));
            std::sort(signs.begin(), signs.end());
            CHECK(signs == std::vector<int>{-1, -1, 1, 1});
        }
        CHECK(static_cast<int>(per_crossing.size()) == d.crossing_count());

        const auto s = build_star_shadow(d);
        CHECK(poly::is_valid(s.polyhedron));
        for (size_t r = 0; r < s.origin.size(); ++r) {
            const auto& o = s.origin[r].at(0);
            const auto g = s.polyhedron.gleam_twice(static_cast<int>(r));
            if (o.kind == OriginKind::face) {
                REQUIRE(g);
                CHECK(*g == face_sum[o.index]);
            } else {
                CHECK_FALSE(g);
            }
        }
    }
}
