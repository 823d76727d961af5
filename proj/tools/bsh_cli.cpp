#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "bsh/classify/census.hpp"
#include "bsh/hyp/cusp.hpp"
#include "bsh/hyp/pants.hpp"
#include "bsh/hyp/pentachoron.hpp"
#include "bsh/hyp/solver.hpp"
#include "bsh/hyp/volume.hpp"
#include "bsh/poly/homology.hpp"
#include "bsh/poly/io.hpp"
#include "bsh/poly/iso.hpp"
#include "bsh/shadow/star.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace bsh;

namespace {

enum Exit { ok = 0, usage = 1, bad_input = 2, reduction_failed = 3, non_geometric = 4 };

struct Failure {
    int code;
    std::string message;
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{usage, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    std::string command;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    std::string out_dir;
    ordered_json inputs = ordered_json::array();
    ordered_json outputs = ordered_json::array();

    std::string input(const std::string& path) {
        std::string text = read_file(path);
        inputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
        return text;
    }
    void note_input(const std::string& what, const std::string& text) {
        inputs.push_back({{"path", what}, {"sha256", sha256_hex(text)}});
    }
    void output(const std::string& name, const std::string& content) {
        if (out_dir.empty()) return;
        fs::create_directories(out_dir);
        std::ofstream(fs::path(out_dir) / name, std::ios::binary) << content;
        outputs.push_back({{"file", name}, {"sha256", sha256_hex(content)}});
    }
    void finish(const ordered_json& report) {
        const std::string text = report.dump(2) + "\n";
        std::cout << text;
        if (out_dir.empty()) return;
        output("report.json", text);
        ordered_json m;
        m["command"] = command;
        m["version"] = BSH_VERSION;
        m["inputs"] = inputs;
        m["settings"] = {{"tol", tol}, {"seed", seed}};
        m["outputs"] = outputs;
        std::ofstream(fs::path(out_dir) / "manifest.json") << m.dump(2) << "\n";
    }
};

double half(int twice) { return twice / 2.0; }

std::string origin_text(const std::vector<shadow::RegionOrigin>& os) {
    std::string s;
    for (const auto& o : os) {
        if (!s.empty()) s += " + ";
        s += o.kind == shadow::OriginKind::face ? "face " : o.kind == shadow::OriginKind::outer ? "outer face " : "annulus ";
        s += std::to_string(o.index);
    }
    return s;
}

ordered_json shadow_json(const shadow::StarShadow& s) {
    const auto& p = s.polyhedron;
    ordered_json regions = ordered_json::array(), gleams = ordered_json::array();
    for (size_t r = 0; r < p.regions.size(); ++r) {
        ordered_json j{{"region", r}, {"origin", origin_text(s.origin[r])}};
        std::string colors;
        for (auto c : p.regions[r].free) colors += poly::color_char(c);
        j["boundary"] = colors;
        if (p.branching) j["orientation"] = (*p.branching)[r] > 0 ? "+" : "-";
        if (auto g = p.gleam_twice(r)) {
            j["gleam"] = poly::format_half(*g);
            gleams.push_back(half(*g));
        }
        regions.push_back(j);
    }
    return {{"vertices", p.vertices.size()}, {"edges", p.edges.size()}, {"regions", regions}, {"gleams", gleams},
            {"valid", poly::is_valid(p)}};
}

int cmd_shadow(Run& run, const std::string& file, bool star, bool reduced, const std::string& orient) {
    const std::string text = run.input(file);
    shadow::LinkDiagram d;
    try {
        d = shadow::parse_pd(text);
    } catch (const shadow::DiagramError& e) {
        static const char* names[] = {"malformed", "multiplicity", "split", "bad_outer"};
        throw Failure{bad_input, std::string("diagram error (") + names[static_cast<int>(e.code)] + "): " + e.what()};
    }
    std::optional<std::vector<int>> signs;
    if (!orient.empty()) {
        std::vector<int> v;
        for (char c : orient) {
            if (c != '+' && c != '-') throw Failure{usage, "--orient takes a string of + and -"};
            v.push_back(c == '+' ? 1 : -1);
        }
        if (v.size() != d.components.size()) throw Failure{usage, "--orient needs one sign per component"};
        signs = v;
    }
    const auto faces = shadow::diagram_faces(d);
    const auto s = shadow::build_star_shadow(d, signs);
    ordered_json report;
    report["diagram"] = {{"crossings", d.crossing_count()}, {"components", d.components.size()},
                         {"faces", faces.faces.size()}, {"outer_face", faces.outer}};
    if (star || !reduced) {
        report["star"] = shadow_json(s);
        run.output("star.spoly", poly::serialize_spoly(s.polyhedron));
    }
    if (reduced) {
        try {
            const auto r = shadow::remove_outer_region(s);
            report["reduced"] = shadow_json(r);
            run.output("reduced.spoly", poly::serialize_spoly(r.polyhedron));
        } catch (const shadow::ReductionError& e) {
            const bool closure = e.code == shadow::ReductionErrc::closure_not_annulus;
            std::string msg = std::string(closure ? "closure_not_annulus" : "branching_incompatible") + ": " + e.what();
            report["error"] = {{"code", closure ? "closure_not_annulus" : "branching_incompatible"}, {"edge", e.edge},
                               {"message", e.what()}};
            run.finish(report);
            std::cerr << "reduction failed: " << msg << "\n";
            return reduction_failed;
        }
    }
    run.output("gleams.json", report.dump(2) + "\n");
    run.finish(report);
    return ok;
}

ordered_json plan_json(const classify::TowerPlan& p) { return {{"circles", p.circles}, {"disks", p.disks}}; }

ordered_json certificate_json(const classify::Certificate& c) {
    ordered_json j;
    if (c.plan) j["simply_connected_with"] = plan_json(*c.plan);
    if (!c.homology.empty()) {
        ordered_json h = ordered_json::array();
        for (const auto& [plan, g] : c.homology) h.push_back({{"towers", plan_json(plan)}, {"h1", g.str()}});
        j["nontrivial_h1"] = h;
    }
    j["unknown"] = c.unknown;
    return j;
}

int cmd_classify(Run& run, bool keep_eliminated, std::optional<int> graph_type) {
    if (graph_type && (*graph_type < 1 || *graph_type > 3)) throw Failure{usage, "--graph-type is 1, 2 or 3"};
    const auto census = classify::run_census(graph_type);
    ordered_json report;
    report["symmetry_order"] = census.symmetry_order;
    report["symmetry_order_branched"] = census.symmetry_order_branched;
    ordered_json entries = ordered_json::array();
    for (const auto& e : census.entries) {
        const std::string file = e.name + ".spoly";
        run.output(file, poly::serialize_spoly(e.representative));
        const auto& x = e.x_witness;
        entries.push_back({{"name", e.name},
                           {"label", e.label},
                           {"class", e.members},
                           {"file", file},
                           {"certificate", certificate_json(e.certificate)},
                           {"witness", {{"x_vertices", {x.v, x.w}}, {"bigon_edges", {x.e0, x.e1}}, {"bigon", x.bigon}}}});
    }
    report["entries"] = entries;
    report["count"] = census.entries.size();
    if (keep_eliminated) {
        ordered_json el = ordered_json::array();
        for (const auto& [c, cert] : census.eliminated) {
            const std::string file = "eliminated_" + c.label + ".spoly";
            run.output(file, poly::serialize_spoly(c.polyhedron));
            el.push_back({{"label", c.label}, {"file", file}, {"certificate", certificate_json(cert)}});
        }
        report["eliminated"] = el;
    }
    run.finish(report);
    return ok;
}

ordered_json complex_json(std::complex<double> z) { return ordered_json::array({z.real(), z.imag()}); }

int cmd_hyp(Run& run, const std::string& file, bool build_cover, const std::string& reglue, const std::string& data_dir) {
    const int sources = !file.empty() + build_cover + !reglue.empty();
    if (sources != 1) throw Failure{usage, "give exactly one of FILE, --build-cover, --reglue"};
    hyp::IdealTriangulation t;
    ordered_json report;
    auto q = hyp::build_pentachoron_complex();
    if (!file.empty()) {
        const std::string text = run.input(file);
        try {
            t = hyp::parse_itri(text);
        } catch (const hyp::TriangulationError& e) {
            static const char* names[] = {"syntax", "empty", "unglued_face", "non_involutive", "inconsistent_permutation"};
            throw Failure{bad_input, std::string("triangulation error (") + names[static_cast<int>(e.code)] + ")" +
                                         (e.line ? " at line " + std::to_string(e.line) : "") + ": " + e.what()};
        }
    } else {
        const auto eps = hyp::gf2_face_signs(q);
        t = hyp::build_double_cover(q, eps.x);
        report["face_signs"] = eps.x;
        report["sign_kernel_dimension"] = eps.kernel_dim;
        if (build_cover) {
            report["deck_involution"] = hyp::is_automorphism(t, hyp::deck_involution(t));
        } else {
            std::string path = reglue;
            if (path.find('/') == std::string::npos && path.find('.') == std::string::npos)
                path = data_dir + "/variants/" + reglue + ".reglue";
            const std::string text = run.input(path);
            try {
                t = hyp::reglue_along_pants(t, hyp::parse_regluing(text));
            } catch (const hyp::RegluingError& e) {
                throw Failure{bad_input, std::string("regluing rejected: ") + e.what()};
            } catch (const std::invalid_argument& e) {
                throw Failure{bad_input, std::string("regluing file: ") + e.what()};
            }
            report["variant"] = reglue;
        }
    }
    run.output("triangulation.itri", hyp::serialize_itri(t));
    const auto cc = hyp::cell_classes(t);
    report["tetrahedra"] = t.size();
    report["connected"] = hyp::connected(t);
    report["edge_classes"] = cc.edges;
    report["valences"] = cc.valence;
    report["cusp_count"] = cc.cusps;

    hyp::GluingSystem sys;
    try {
        sys = hyp::gluing_equations(t);
    } catch (const std::invalid_argument& e) {
        throw Failure{bad_input, e.what()};
    }
    hyp::SolverOptions opt;
    opt.tol = run.tol;
    hyp::ShapeSolution sol;
    try {
        sol = hyp::solve_shapes(sys, hyp::perturbed_regular_start(t.size(), run.seed), opt);
    } catch (const hyp::SolveError& e) {
        report["error"] = {{"code", e.code == hyp::SolveErrc::diverged ? "diverged" : "degenerate"}, {"message", e.what()}};
        run.finish(report);
        std::cerr << "solve failed: " << e.what() << "\n";
        return non_geometric;
    }
    ordered_json shapes = ordered_json::array();
    bool regular = true;
    const auto w = std::polar(1.0, std::numbers::pi / 3);
    for (const auto& z : sol.shapes) {
        shapes.push_back(complex_json(z));
        if (std::abs(z - w) > 1e-9) regular = false;
    }
    const auto vol = hyp::volume(sol.shapes);
    report["shapes"] = shapes;
    report["all_regular"] = regular;
    report["residual"] = sol.residual;
    report["residual_extended"] = static_cast<double>(hyp::residual_extended(sys, sol.shapes));
    report["iterations"] = sol.iterations;
    report["geometric"] = sol.geometric;
    report["volume"] = vol.volume;
    report["volume_over_vtet"] = vol.volume / hyp::volume_constants().v_tet;
    ordered_json cusps = ordered_json::array();
    const auto moduli = hyp::cusp_moduli(t, sol.shapes);
    std::vector<hyp::ExactModulus> exact;
    if (regular) exact = hyp::cusp_moduli_exact(t);
    for (size_t i = 0; i < moduli.size(); ++i) {
        ordered_json c{{"cusp", moduli[i].cusp}, {"triangles", moduli[i].triangles}, {"euler", moduli[i].euler},
                       {"modulus", complex_json(moduli[i].modulus)}};
        if (regular) {
            const auto& e = exact[i];
            c["modulus_exact"] = "(" + std::to_string(e.p) + " + " + std::to_string(e.q) + "w)/" + std::to_string(e.den);
        }
        cusps.push_back(c);
    }
    report["cusps"] = cusps;
    run.output("solution.json", report.dump(2) + "\n");
    run.finish(report);
    return sol.geometric ? ok : non_geometric;
}

poly::SimplePolyhedron load_poly(Run& run, const std::string& file) {
    const std::string text = run.input(file);
    try {
        return poly::parse_spoly(text);
    } catch (const poly::ParseError& e) {
        throw Failure{bad_input, file + ": " + e.what()};
    }
}

void require_valid(const poly::SimplePolyhedron& p, const std::string& file) {
    const auto v = poly::validate(p);
    if (!v.empty()) throw Failure{bad_input, file + ": invalid polyhedron: " + v[0].cell + ": " + v[0].what};
}

int cmd_poly(Run& run, const std::string& action, const std::vector<std::string>& files, bool rb, bool rg) {
    if (files.empty()) throw Failure{usage, "poly needs an input file"};
    const auto p = load_poly(run, files[0]);
    ordered_json report;
    if (action == "validate") {
        const auto v = poly::validate(p);
        ordered_json vs = ordered_json::array();
        for (const auto& x : v) vs.push_back({{"cell", x.cell}, {"what", x.what}});
        report["valid"] = v.empty();
        report["violations"] = vs;
        if (v.empty()) report["euler_characteristic"] = poly::euler_characteristic(p);
        run.finish(report);
        return v.empty() ? ok : bad_input;
    }
    require_valid(p, files[0]);
    if (action == "homology") {
        const auto h = poly::first_homology(p);
        report["h1"] = h.str();
        report["rank"] = h.rank;
        report["torsion"] = h.torsion;
        report["euler_characteristic"] = poly::euler_characteristic(p);
        const auto g = poly::fundamental_group(p);
        report["pi1_generators"] = g.generators;
        report["pi1_relators"] = g.relators.size();
        report["pi1_trivial"] = poly::is_plausibly_trivial(g) == poly::Triviality::yes ? "yes" : "unknown";
    } else if (action == "branchings") {
        ordered_json bs = ordered_json::array();
        for (const auto& b : poly::enumerate_branchings(p)) {
            std::string s;
            for (int x : b) s += x > 0 ? '+' : '-';
            bs.push_back(s);
        }
        report["count"] = bs.size();
        report["branchings"] = bs;
    } else if (action == "iso") {
        if (files.size() != 2) throw Failure{usage, "poly iso needs two files"};
        const auto q = load_poly(run, files[1]);
        require_valid(q, files[1]);
        const auto iso = poly::isomorphic(p, q, {rb, rg});
        report["isomorphic"] = iso.has_value();
        if (iso) {
            ordered_json edges = ordered_json::array();
            for (const auto& e : iso->edge) edges.push_back({{"edge", e.edge}, {"flip", e.flip}, {"legs", e.leg}});
            report["witness"] = {{"vertex", iso->vertex}, {"edge", edges}, {"region", iso->region},
                                 {"region_sign", iso->region_sign}};
        }
    } else {
        throw Failure{usage, "unknown poly action " + action};
    }
    run.finish(report);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Branched shadows, two-vertex closures and ideal triangulations"};
    app.require_subcommand(1);
    app.fallthrough();
    Run run;
    std::string data_dir = BSH_DATA_DIR;
    app.add_option("--tol", run.tol, "Solver tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", run.seed, "Seed of the start perturbation");
    app.add_option("--out-dir", run.out_dir, "Directory for output files and the run manifest");
    app.add_option("--data-dir", data_dir, "Directory holding the shipped variants");

    auto* sh = app.add_subcommand("shadow", "Star shadow of a PD diagram, optionally reduced");
    std::string pd_file, orient;
    bool star = false, reduced = false;
    sh->add_option("file", pd_file, "PD file")->required();
    sh->add_flag("--star", star, "Emit the star shadow (default)");
    sh->add_flag("--reduced", reduced, "Also remove the outer region");
    sh->add_option("--orient", orient, "Annulus orientations, one + or - per component");

    auto* cl = app.add_subcommand("classify", "Census of two-vertex branched closures of X");
    bool keep = false;
    std::optional<int> graph_type;
    cl->add_flag("--keep-eliminated", keep, "List eliminated candidates with certificates");
    cl->add_option("--graph-type", graph_type, "Restrict to one graph type");

    auto* hy = app.add_subcommand("hyp", "Solve the gluing equations of a triangulation");
    std::string itri_file, reglue;
    bool cover = false;
    hy->add_option("file", itri_file, "ITRI file");
    hy->add_flag("--build-cover", cover, "Use the ten-tetrahedron double cover");
    hy->add_option("--reglue", reglue, "Variant name (L2, L3, L4) or REGLUE file");

    auto* po = app.add_subcommand("poly", "Inspect SPOLY files");
    std::string action;
    std::vector<std::string> files;
    bool rb = false, rg = false;
    po->add_option("action", action, "validate | homology | branchings | iso")
        ->required()
        ->check(CLI::IsMember({"validate", "homology", "branchings", "iso"}));
    po->add_option("files", files, "SPOLY file(s)");
    po->add_flag("--respect-branching", rb, "iso: require branchings to correspond");
    po->add_flag("--respect-gleams", rg, "iso: require gleams to correspond");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }
    try {
        if (sh->parsed()) {
            run.command = "shadow";
            return cmd_shadow(run, pd_file, star, reduced, orient);
        }
        if (cl->parsed()) {
            run.command = "classify";
            return cmd_classify(run, keep, graph_type);
        }
        if (hy->parsed()) {
            run.command = "hyp";
            return cmd_hyp(run, itri_file, cover, reglue, data_dir);
        }
        run.command = "poly " + action;
        return cmd_poly(run, action, files, rb, rg);
    } catch (const Failure& f) {
        std::cerr << "bsh: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "bsh: " << e.what() << "\n";
        return usage;
    }
}
