#include "bsh/hyp/pants.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

namespace bsh::hyp {

namespace {

std::vector<int> others(int f) {
    std::vector<int> v;
    for (int x = 0; x < 4; ++x)
        if (x != f) v.push_back(x);
    return v;
}

// Faces met going around edge ab of tet t, starting by leaving through
// face c (c, d the remaining vertices).
std::vector<int> face_ring(const IdealTriangulation& tr, const FaceList& fl, int t, int a, int b, int c, int d) {
    std::vector<int> seq;
    const int t0 = t, c0 = c;
    for (;;) {
        seq.push_back(fl.id[t][c]);
        const FaceGluing& g = tr.gluing[t][c];
        const int na = g.perm[a], nb = g.perm[b], nc = g.perm[d], nd = g.face;
        t = g.tet;
        a = na;
        b = nb;
        c = nc;
        d = nd;
        if (t == t0 && c == c0) break;
        if (seq.size() > 6 * static_cast<size_t>(tr.size())) throw std::logic_error("edge ring does not close");
    }
    return seq;
}

std::vector<int> face_edge_classes(const CellClasses& cc, const TetFace& s) {
    std::vector<int> e;
    const auto v = others(s.face);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) e.push_back(cc.edge_of[s.tet][local_edge(v[i], v[j])]);
    std::sort(e.begin(), e.end());
    return e;
}

bool all_odd(const std::vector<FaceMap>& ms) {
    return std::all_of(ms.begin(), ms.end(), [](const FaceMap& m) { return perm_sign(m.perm) == -1; });
}

// Face maps from two sides to two targets with per-face vertex orders,
// odd, inducing one bijection on the three punctures.
std::vector<std::vector<FaceMap>> side_maps(const CellClasses& cc, const std::array<TetFace, 2>& from,
                                            const std::array<TetFace, 2>& to) {
    std::vector<std::vector<FaceMap>> out;
    std::array<int, 3> base{0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    do perms.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    for (int sw = 0; sw < 2; ++sw) {
        const std::array<TetFace, 2> tgt = sw == 0 ? to : std::array<TetFace, 2>{to[1], to[0]};
        for (const auto& p1 : perms)
            for (const auto& p2 : perms) {
                std::vector<FaceMap> ms;
                std::map<int, int> cusp_map;
                bool ok = true;
                for (int k = 0; k < 2; ++k) {
                    const auto& pr = k == 0 ? p1 : p2;
                    const TetFace s = from[k], s2 = tgt[k];
                    const auto fa = others(s.face), fb = others(s2.face);
                    Perm4 q{};
                    q[s.face] = s2.face;
                    for (int j = 0; j < 3; ++j) q[fa[j]] = fb[pr[j]];
                    for (int x : fa) {
                        const int a = cc.cusp_of[s.tet][x], b = cc.cusp_of[s2.tet][q[x]];
                        auto [it, fresh] = cusp_map.emplace(a, b);
                        if (!fresh && it->second != b) ok = false;
                    }
                    ms.push_back(FaceMap{s, s2, q});
                }
                std::set<int> images;
                for (const auto& [a, b] : cusp_map) images.insert(b);
                if (ok && all_odd(ms) && images.size() == 3 && cusp_map.size() == 3) out.push_back(ms);
            }
    }
    return out;
}

}  // namespace

FaceList face_list(const IdealTriangulation& t) {
    FaceList fl;
    fl.id.assign(t.size(), {-1, -1, -1, -1});
    for (int k = 0; k < t.size(); ++k)
        for (int f = 0; f < 4; ++f) {
            if (fl.id[k][f] >= 0) continue;
            const FaceGluing& g = t.gluing[k][f];
            const int i = static_cast<int>(fl.sides.size());
            fl.sides.push_back({TetFace{k, f}, TetFace{g.tet, g.face}});
            fl.id[k][f] = fl.id[g.tet][g.face] = i;
        }
    return fl;
}

std::vector<PantsPair> find_pants(const IdealTriangulation& t) {
    const FaceList fl = face_list(t);
    const CellClasses cc = cell_classes(t);
    std::vector<PantsPair> out;
    const int nf = static_cast<int>(fl.sides.size());
    for (int f = 0; f < nf; ++f)
        for (int g = f + 1; g < nf; ++g) {
            const TetFace s = fl.sides[f][0];
            if (face_edge_classes(cc, s) != face_edge_classes(cc, fl.sides[g][0])) continue;
            bool ok = true;
            const auto v = others(s.face);
            for (int i = 0; i < 3 && ok; ++i)
                for (int j = i + 1; j < 3 && ok; ++j) {
                    const int a = v[i], b = v[j];
                    std::vector<int> cd;
                    for (int x = 0; x < 4; ++x)
                        if (x != a && x != b) cd.push_back(x);
                    const auto ring = face_ring(t, fl, s.tet, a, b, cd[0], cd[1]);
                    const int L = static_cast<int>(ring.size());
                    const auto pf = std::find(ring.begin(), ring.end(), f) - ring.begin();
                    const auto pg = std::find(ring.begin(), ring.end(), g) - ring.begin();
                    if (L % 2 != 0 || pg == L || ((pg - pf) % L + L) % L != L / 2) ok = false;
                }
            if (ok) out.push_back({f, g});
        }
    return out;
}

PantsSides pants_sides(const IdealTriangulation& t, const PantsPair& y) {
    const FaceList fl = face_list(t);
    const TetFace s0 = fl.sides.at(y.first)[0];
    const auto v = others(s0.face);
    const int a = v[0], b = v[1];
    std::vector<int> cd;
    for (int x = 0; x < 4; ++x)
        if (x != a && x != b) cd.push_back(x);
    int c = cd[0], d = cd[1];
    if (c != s0.face) std::swap(c, d);
    // walk the ring, remembering the side we leave through
    std::vector<std::pair<int, TetFace>> seq;
    int tt = s0.tet, aa = a, bb = b, x = c, yv = d;
    for (;;) {
        seq.push_back({fl.id[tt][x], TetFace{tt, x}});
        const FaceGluing& g = t.gluing[tt][x];
        const int na = g.perm[aa], nb = g.perm[bb], nc = g.perm[yv], nd = g.face;
        tt = g.tet;
        aa = na;
        bb = nb;
        x = nc;
        yv = nd;
        if (tt == s0.tet && x == s0.face) break;
    }
    auto at = [&](int face) {
        for (const auto& [f, side] : seq)
            if (f == face) return side;
        throw std::invalid_argument("face is not around the chosen edge");
    };
    const TetFace f_out = at(y.first), g_out = at(y.second);
    auto partner = [&](TetFace s) {
        const FaceGluing& g = t.gluing[s.tet][s.face];
        return TetFace{g.tet, g.face};
    };
    PantsSides ps;
    ps.plus = {partner(f_out), g_out};
    ps.minus = {f_out, partner(g_out)};
    return ps;
}

IdealTriangulation reglue_along_pants(const IdealTriangulation& t, const Regluing& r) {
    std::set<TetFace> plus, minus;
    for (const PantsPair& y : r.pants) {
        const PantsSides ps = pants_sides(t, y);
        for (const TetFace& s : ps.plus)
            if (!plus.insert(s).second || minus.count(s)) throw RegluingError("pants overlap");
        for (const TetFace& s : ps.minus)
            if (!minus.insert(s).second || plus.count(s)) throw RegluingError("pants overlap");
    }
    IdealTriangulation out = t;
    for (const auto* set : {&plus, &minus})
        for (const TetFace& s : *set) out.gluing[s.tet][s.face] = FaceGluing{};
    std::set<TetFace> used_from, used_to;
    for (const FaceMap& m : r.maps) {
        if (!plus.count(m.from) || !used_from.insert(m.from).second)
            throw RegluingError("map source is not an unused plus side");
        if (!minus.count(m.to) || !used_to.insert(m.to).second)
            throw RegluingError("map target is not an unused minus side");
        Perm4 sorted = m.perm;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != Perm4{0, 1, 2, 3} || m.perm[m.from.face] != m.to.face)
            throw RegluingError("face map does not carry the face");
        if (perm_sign(m.perm) != -1) throw RegluingError("face map preserves orientation");
        glue(out, m.from.tet, m.from.face, m.to.tet, m.perm);
    }
    if (used_from.size() != plus.size()) throw RegluingError("some cut side is left unglued");
    check_triangulation(out);
    const CellClasses cc = cell_classes(out);
    for (int e = 0; e < cc.edges; ++e)
        if (cc.valence[e] != 6)
            throw RegluingError("edge class " + std::to_string(e) + " has valence " + std::to_string(cc.valence[e]), e);
    if (!connected(out)) throw RegluingError("regluing disconnects the triangulation");
    return out;
}

Regluing identity_regluing(const IdealTriangulation& t, const std::vector<PantsPair>& pants) {
    Regluing r;
    r.pants = pants;
    for (const PantsPair& y : pants) {
        const PantsSides ps = pants_sides(t, y);
        for (const TetFace& s : ps.plus) {
            const FaceGluing& g = t.gluing[s.tet][s.face];
            r.maps.push_back(FaceMap{s, TetFace{g.tet, g.face}, g.perm});
        }
    }
    return r;
}

std::vector<RegluingCandidate> enumerate_regluings(const IdealTriangulation& t, const PantsPair& y1, const PantsPair& y2) {
    const CellClasses cc = cell_classes(t);
    const PantsSides s1 = pants_sides(t, y1), s2 = pants_sides(t, y2);
    std::vector<RegluingCandidate> out;
    for (int crossed = 0; crossed < 2; ++crossed) {
        const auto& to1 = crossed ? s2.minus : s1.minus;
        const auto& to2 = crossed ? s1.minus : s2.minus;
        for (const auto& m1 : side_maps(cc, s1.plus, to1))
            for (const auto& m2 : side_maps(cc, s2.plus, to2)) {
                RegluingCandidate c;
                c.crossed = crossed == 1;
                c.regluing.pants = {y1, y2};
                c.regluing.maps = m1;
                c.regluing.maps.insert(c.regluing.maps.end(), m2.begin(), m2.end());
                out.push_back(std::move(c));
            }
    }
    return out;
}

Regluing parse_regluing(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Regluing r;
    bool header = false, ended = false;
    static const std::regex pants_re(R"(pants\s+(\d+)\s+(\d+))");
    static const std::regex map_re(R"(map\s+(\d+)\s+([0-3])\s+->\s+(\d+)\s+([0-3])\s+perm\s+([0-3]{4}))");
    for (int no = 1; std::getline(in, line); ++no) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(no) + ": ";
        if (ended) throw std::invalid_argument(where + "content after 'end'");
        std::smatch m;
        if (!header) {
            if (line != "REGLUE 1") throw std::invalid_argument(where + "expected header 'REGLUE 1'");
            header = true;
        } else if (line == "end") {
            ended = true;
        } else if (std::regex_match(line, m, pants_re)) {
            r.pants.push_back({std::stoi(m[1].str()), std::stoi(m[2].str())});
        } else if (std::regex_match(line, m, map_re)) {
            FaceMap f{{std::stoi(m[1].str()), std::stoi(m[2].str())}, {std::stoi(m[3].str()), std::stoi(m[4].str())}, {}};
            for (int j = 0; j < 4; ++j) f.perm[j] = m[5].str()[j] - '0';
            r.maps.push_back(f);
        } else {
            throw std::invalid_argument(where + "unrecognized line");
        }
    }
    if (!ended) throw std::invalid_argument("regluing file has no 'end'");
    return r;
}

std::string serialize_regluing(const Regluing& r) {
    std::ostringstream out;
    out << "REGLUE 1\n";
    for (const PantsPair& y : r.pants) out << "pants " << y.first << " " << y.second << "\n";
    for (const FaceMap& m : r.maps)
        out << "map " << m.from.tet << " " << m.from.face << " -> " << m.to.tet << " " << m.to.face << " perm "
            << perm_word(m.perm) << "\n";
    out << "end\n";
    return out.str();
}

std::vector<Variant> search_variants(const IdealTriangulation& cover) {
    const auto pants = find_pants(cover);
    const CellClasses cc = cell_classes(cover);
    auto disjoint = [&](const PantsPair& a, const PantsPair& b) {
        const FaceList fl = face_list(cover);
        const auto ea = face_edge_classes(cc, fl.sides[a.first][0]);
        const auto eb = face_edge_classes(cc, fl.sides[b.first][0]);
        for (int x : ea)
            if (std::find(eb.begin(), eb.end(), x) != eb.end()) return false;
        return true;
    };
    std::vector<std::pair<PantsPair, PantsPair>> pairs;
    for (size_t i = 0; i < pants.size(); ++i)
        for (size_t j = i + 1; j < pants.size(); ++j)
            if (disjoint(pants[i], pants[j])) pairs.push_back({pants[i], pants[j]});
    if (pairs.empty()) throw std::logic_error("no disjoint pants");

    struct Class {
        std::vector<int> code;
        Regluing rep;
        int cusps;
    };
    // canonical classes of a candidate family, least code first
    auto classes = [&](const std::pair<PantsPair, PantsPair>& yy, bool crossed, bool keep_first) {
        std::map<std::vector<int>, Class> by_code;
        const Regluing id1 = identity_regluing(cover, {yy.first});
        for (const auto& c : enumerate_regluings(cover, yy.first, yy.second)) {
            if (c.crossed != crossed) continue;
            if (keep_first && !std::equal(id1.maps.begin(), id1.maps.end(), c.regluing.maps.begin())) continue;
            const IdealTriangulation r = reglue_along_pants(cover, c.regluing);
            auto code = canonical_code(r);
            const int cusps = cell_classes(r).cusps;
            auto it = by_code.find(code);
            if (it == by_code.end())
                by_code.emplace(code, Class{code, c.regluing, cusps});
            else if (serialize_regluing(c.regluing) < serialize_regluing(it->second.rep))
                it->second.rep = c.regluing;
        }
        std::vector<Class> out;
        for (auto& [k, v] : by_code) out.push_back(v);
        return out;
    };
    auto first_with = [](const std::vector<Class>& cs, int cusps, const std::vector<int>* avoid) -> std::optional<Class> {
        for (const Class& c : cs)
            if (c.cusps == cusps && (!avoid || c.code != *avoid)) return c;
        return std::nullopt;
    };
    std::vector<Variant> out;
    const auto l2 = first_with(classes(pairs[0], false, true), 4, nullptr);
    if (!l2) throw std::logic_error("no straight 4-cusp regluing");
    out.push_back({"L2", l2->rep, l2->cusps});
    for (const auto& yy : pairs) {
        const auto cs = classes(yy, true, false);
        const auto l3 = first_with(cs, 4, &l2->code);
        if (!l3) continue;
        out.push_back({"L3", l3->rep, l3->cusps});
        const auto l4 = first_with(cs, 3, nullptr);
        if (!l4) throw std::logic_error("no 3-cusp class next to the crossed 4-cusp class");
        out.push_back({"L4", l4->rep, l4->cusps});
        return out;
    }
    throw std::logic_error("no crossed 4-cusp regluing");
}

}  // namespace bsh::hyp
