// One line per acceptance criterion; exit status 1 if any fails.
#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "bsh/classify/census.hpp"
#include "bsh/hyp/pentachoron.hpp"
#include "bsh/hyp/solver.hpp"
#include "bsh/hyp/volume.hpp"
#include "bsh/poly/homology.hpp"
#include "bsh/poly/iso.hpp"

using nlohmann::json;
using namespace bsh;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

struct Output {
    int code = -1;
    std::string text;
};

Output shell(const std::string& cmd) {
    Output o;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return o;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) o.text.append(buf.data(), n);
    const int st = pclose(p);
    o.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return o;
}

json bsh_json(Check& c, const std::string& args, int expect = 0) {
    const auto o = shell(std::string(BSH_EXE) + " " + args);
    c.require(o.code == expect, "bsh " + args + " exited " + std::to_string(o.code));
    try {
        return json::parse(o.text);
    } catch (const json::exception&) {
        c.require(false, "bsh " + args + " printed no JSON");
        return json::object();
    }
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::string data(const std::string& rel) { return std::string(BSH_DATA_DIR) + "/" + rel; }

// runs one named doctest case and insists it ran and passed
void suite(Check& c, const std::string& binary, const std::string& test_case) {
    const auto o = shell(std::string(BSH_TEST_DIR) + "/" + binary + " --no-version -tc=\"" + test_case + "\"");
    std::smatch m;
    const bool ran = std::regex_search(o.text, m, std::regex(R"(test cases:\s*(\d+) \|\s*(\d+) passed \|\s*(\d+) failed)")) &&
                     m[1] == "1" && m[2] == "1" && m[3] == "0";
    c.require(o.code == 0 && ran, binary + ": " + test_case);
}

const double ten_vtet_ref = 10.1494160640965;

void hopf(Check& c) {
    auto j = bsh_json(c, "shadow " + data("diagrams/hopf.pd") + " --star");
    const auto star = sorted(j["star"]["gleams"].get<std::vector<double>>());
    c.require(star == std::vector<double>{-1, -1, 1}, "star gleams " + j["star"]["gleams"].dump());
    j = bsh_json(c, "shadow " + data("diagrams/hopf.pd") + " --reduced");
    c.require(j["reduced"]["gleams"] == json::array({1.0}), "reduced gleams " + j["reduced"]["gleams"].dump());
}

void census(Check& c) {
    auto j = bsh_json(c, "classify --keep-eliminated");
    c.require(j["count"] == 5, "entry count " + j["count"].dump());
    const auto cen = classify::run_census();
    for (size_t a = 0; a < cen.entries.size(); ++a)
        for (size_t b = a + 1; b < cen.entries.size(); ++b)
            c.require(!poly::isomorphic(cen.entries[a].representative, cen.entries[b].representative, {true, false}),
                      cen.entries[a].name + " ~ " + cen.entries[b].name);
    c.require(bsh_json(c, "classify --graph-type 3")["count"] == 0, "type 3 entries");
    c.require(classify::enumerate_closures(3).empty(), "type 3 branchings");
    bool found = false;
    for (const auto& e : j["eliminated"])
        if (e["label"] == "1-(iv)") {
            found = true;
            for (const auto& h : e["certificate"]["nontrivial_h1"]) c.require(h["h1"] != "0", "trivial H1 in certificate");
            c.require(!e["certificate"]["nontrivial_h1"].empty(), "empty certificate");
        }
    c.require(found, "1-(iv) not eliminated");
}

void constants(Check& c) {
    const auto& k = hyp::volume_constants();
    c.require(std::abs(k.v_tet - 1.0149) < 1e-4, "v_tet");
    c.require(std::abs(k.v_oct - 3.6638) < 1e-4, "v_oct");
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> re(-3, 3), im(0.01, 3);
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> z(re(rng), im(rng));
        c.require(std::abs(hyp::tetrahedron_volume(z) - hyp::tetrahedron_volume(1.0 / (1.0 - z))) < 1e-10,
                  "vol(z) != vol(1/(1-z))");
    }
}

void cover(Check& c) {
    const auto j = bsh_json(c, "hyp --build-cover");
    c.require(j["tetrahedra"] == 10 && j["connected"] == true, "size or connectivity");
    for (const auto& v : j["valences"]) c.require(v == 6, "valence " + v.dump());
    c.require(j["cusp_count"] == 5, "cusp count");
    for (const auto& cu : j["cusps"]) c.require(cu["euler"] == 0, "non-torus cusp");
    c.require(j["deck_involution"] == true, "deck involution");
    c.require(std::abs(j["volume"].get<double>() - ten_vtet_ref) < 1e-6, "volume " + j["volume"].dump());

    const auto q = hyp::build_pentachoron_complex();
    const auto t = hyp::build_double_cover(q, hyp::gf2_face_signs(q).x);
    const auto sys = hyp::gluing_equations(t);
    const auto w = std::polar(1.0, std::numbers::pi / 3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        try {
            const auto sol = hyp::solve_shapes(sys, hyp::perturbed_regular_start(t.size(), seed));
            for (const auto& z : sol.shapes) c.require(std::abs(z - w) < 1e-9, "shape off regular, seed " + std::to_string(seed));
            c.require(std::abs(hyp::volume(sol.shapes).volume - 10 * hyp::volume_constants().v_tet) < 1e-6, "volume");
        } catch (const hyp::SolveError& e) {
            c.require(false, std::string("seed ") + std::to_string(seed) + ": " + e.what());
        }
    }
}

void variants(Check& c) {
    for (const auto* v : {"L2", "L3", "L4"}) {
        const auto start = std::chrono::steady_clock::now();
        const auto j = bsh_json(c, std::string("hyp --reglue ") + v);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(j["all_regular"] == true, std::string(v) + " not regular");
        c.require(std::abs(j["volume"].get<double>() - 10 * hyp::volume_constants().v_tet) < 1e-6, std::string(v) + " volume");
        c.require(secs < 10, std::string(v) + " too slow");
    }
}

void formula(Check& c) {
    const auto& k = hyp::volume_constants();
    c.require(std::abs(hyp::volume_formula(1, 0) - 2 * k.v_oct) < 1e-10, "n=1, m=0");
    c.require(std::abs(hyp::volume_formula(2, 1) - 10 * k.v_tet) < 1e-10, "n=2, m=1");
}

void properties(Check& c) {
    suite(c, "test_poly", "homology agrees with determinantal divisors on random complexes");
    suite(c, "test_poly", "enumerated branchings are exactly the sign vectors passing the edge condition");
    suite(c, "test_classify", "gluings and branched closures");
    suite(c, "test_shadow", "crossing contributions on random diagrams");
    suite(c, "test_hyp", "jacobian matches finite differences");
    suite(c, "test_classify", "X replacement round trip on the census");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> all{
        {"hopf gleams", 1, hopf},
        {"census of five", 60, census},
        {"volume constants", 5, constants},
        {"ten tetrahedron cover", 10, cover},
        {"reglued variants", 30, variants},
        {"volume formula", 1, formula},
        {"property suites", 120, properties},
    };
    int failed = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        all[i].run(c);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(secs < all[i].budget, "over time budget");
        std::cout << (c.ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << all[i].name << "  (" << std::fixed
                  << std::setprecision(3) << secs << " s)";
        if (!c.ok) std::cout << "  " << c.why.str();
        std::cout << "\n";
        failed += !c.ok;
    }
    return failed ? 1 : 0;
}
