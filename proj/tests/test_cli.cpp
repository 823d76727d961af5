#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(BSH_EXE) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    Result r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, int expect = 0) {
    const auto r = run(args);
    REQUIRE(r.code == expect);
    return json::parse(r.out);
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("bsh_cli_" + std::to_string(getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data(const std::string& rel) { return std::string(BSH_DATA_DIR) + "/" + rel; }

std::string sha256sum(const fs::path& p) {
    FILE* f = popen(("sha256sum " + p.string()).c_str(), "r");
    REQUIRE(f);
    char buf[65] = {};
    REQUIRE(fread(buf, 1, 64, f) == 64);
    pclose(f);
    return buf;
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("shadow command") {
    auto j = run_json("shadow " + data("diagrams/hopf.pd") + " --star");
    CHECK(sorted(j["star"]["gleams"].get<std::vector<double>>()) == std::vector<double>{-1, -1, 1});
    j = run_json("shadow " + data("diagrams/hopf.pd") + " --reduced");
    CHECK(j["reduced"]["gleams"].get<std::vector<double>>() == std::vector<double>{1});
    CHECK_FALSE(j.contains("star"));
    run_json("shadow " + data("diagrams/unknot.pd") + " --reduced", 3);
    run_json("shadow " + data("diagrams/hopf.pd") + " --reduced --orient +-", 3);
    const auto dir = scratch("pd");
    std::ofstream(dir / "bad.pd") << "X(1,2,3,4)\n";
    const auto r = run("shadow " + (dir / "bad.pd").string(), true);
    CHECK(r.code == 2);
    CHECK(r.out.find("multiplicity") != std::string::npos);
}

TEST_CASE("shadow out-dir files") {
    const auto dir = scratch("shadow");
    run_json("shadow " + data("diagrams/trefoil.pd") + " --star --reduced --out-dir " + dir.string());
    for (const auto* f : {"star.spoly", "reduced.spoly", "gleams.json", "report.json", "manifest.json"})
        CHECK(fs::exists(dir / f));
    const auto m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["command"] == "shadow");
    CHECK(m["inputs"][0]["sha256"] == sha256sum(data("diagrams/trefoil.pd")));
    for (const auto& o : m["outputs"]) CHECK(o["sha256"] == sha256sum(dir / o["file"].get<std::string>()));
    CHECK(m["outputs"].size() == 4);
}

TEST_CASE("classify command") {
    auto j = run_json("classify");
    CHECK(j["count"] == 5);
    CHECK_FALSE(j.contains("eliminated"));
    j = run_json("classify --keep-eliminated");
    REQUIRE(j["eliminated"].size() == 1);
    CHECK(j["eliminated"][0]["label"] == "1-(iv)");
    CHECK(j["eliminated"][0]["certificate"]["nontrivial_h1"].size() > 0);
    CHECK(run_json("classify --graph-type 3")["count"] == 0);
    CHECK(run("classify --graph-type 7").code != 0);
}

TEST_CASE("classify output is byte stable") {
    const auto a = scratch("cl_a"), b = scratch("cl_b");
    run_json("classify --keep-eliminated --out-dir " + a.string());
    run_json("classify --keep-eliminated --out-dir " + b.string());
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename());
    std::sort(names.begin(), names.end());
    CHECK(names.size() == 8);
    for (const auto& n : names) CHECK(slurp(a / n) == slurp(b / n));
    const auto m = json::parse(slurp(a / "manifest.json"));
    CHECK(m["outputs"].size() == names.size() - 1);
}

TEST_CASE("hyp command") {
    const double ten_vtet = 10.1494160640965;
    auto j = run_json("hyp --build-cover");
    CHECK(std::abs(j["volume"].get<double>() - ten_vtet) < 1e-6);
    CHECK(j["cusps"].size() == 5);
    CHECK(j["deck_involution"] == true);
    for (const auto* v : {"L2", "L3", "L4"}) {
        j = run_json(std::string("hyp --reglue ") + v);
        CHECK(std::abs(j["volume"].get<double>() - ten_vtet) < 1e-6);
        CHECK(j["all_regular"] == true);
    }
    j = run_json("hyp " + data("cover.itri") + " --seed 3");
    CHECK(j["geometric"] == true);
    CHECK(run("hyp").code == 1);
    CHECK(run("hyp --build-cover --reglue L2").code == 1);
}

TEST_CASE("hyp rejects a corrupted triangulation") {
    const auto dir = scratch("itri");
    std::string text = slurp(data("cover.itri"));
    text.replace(text.find("->(3,1,1023)"), 12, "->(3,1,0123)");
    std::ofstream(dir / "bad.itri") << text;
    auto r = run("hyp " + (dir / "bad.itri").string(), true);
    CHECK(r.code == 2);
    CHECK(r.out.find("inconsistent_permutation") != std::string::npos);
    std::ofstream(dir / "junk.itri") << "ITRI 1\ntetrahedra two\n";
    r = run("hyp " + (dir / "junk.itri").string(), true);
    CHECK(r.code == 2);
    CHECK(r.out.find("line 2") != std::string::npos);
}

TEST_CASE("poly commands") {
    const auto dir = scratch("poly");
    run_json("classify --out-dir " + dir.string());
    const auto p1 = (dir / "P1.spoly").string(), p2 = (dir / "P2.spoly").string();
    CHECK(run_json("poly validate " + p1)["valid"] == true);
    CHECK(run_json("poly homology " + p1)["h1"].is_string());
    CHECK(run_json("poly branchings " + p1)["count"].get<int>() > 0);
    CHECK(run_json("poly iso " + p1 + " " + p1)["isomorphic"] == true);
    CHECK(run_json("poly iso " + p1 + " " + p2 + " --respect-branching")["isomorphic"] == false);
    std::string text = slurp(dir / "P1.spoly");
    std::ofstream(dir / "bad.spoly") << text.substr(0, text.size() / 2);
    CHECK(run("poly validate " + (dir / "bad.spoly").string()).code == 2);
    CHECK(run("poly frobnicate " + p1).code == 1);
}

TEST_CASE("remove scratch") { fs::remove_all(fs::temp_directory_path() / ("bsh_cli_" + std::to_string(getpid()))); }
