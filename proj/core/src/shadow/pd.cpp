#include "bsh/shadow/pd.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <regex>

namespace bsh::shadow {

namespace {

[[noreturn]] void fail(DiagramErrc c, const std::string& what) { throw DiagramError(c, what); }

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_label(const std::string& s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(DiagramErrc::malformed, "bad arc label '" + s + "'");
    return std::stoi(s);
}

Faces trace_faces(const LinkDiagram& d) {
    Faces out;
    const int n = d.arc_count();
    if (d.crossings.empty()) {
        out.faces.push_back(Face{{Side{0, 1}}, {}});
        out.faces.push_back(Face{{Side{0, -1}}, {}});
        out.outer = 1;
        return out;
    }
    std::vector<std::array<bool, 2>> seen(n, {false, false});
    for (int a0 = 0; a0 < n; ++a0)
        for (int s0 = 0; s0 < 2; ++s0) {
            if (seen[a0][s0]) continue;
            Face f;
            int a = a0, dir = s0 == 0 ? 1 : -1;
            while (!seen[a][dir > 0 ? 0 : 1]) {
                seen[a][dir > 0 ? 0 : 1] = true;
                f.sides.push_back(Side{a, dir});
                const Dart at = d.arc_ends[a][dir > 0 ? 1 : 0];
                const int k = (at.pos + 3) % 4;
                f.corners.push_back(Corner{at.crossing, k});
                const int b = d.crossings[at.crossing][k];
                // leaving through position k: forward if it is b's tail there
                const Dart tail = d.arc_ends[b][0];
                dir = (tail.crossing == at.crossing && tail.pos == k) ? 1 : -1;
                a = b;
            }
            out.faces.push_back(std::move(f));
        }
    return out;
}

int choose_outer(const LinkDiagram& d, const Faces& fs) {
    if (d.crossings.empty()) return 1;
    if (d.outer) {
        std::vector<int> want = *d.outer;
        std::sort(want.begin(), want.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        int found = -1;
        for (int i = 0; i < static_cast<int>(fs.faces.size()); ++i) {
            auto arcs = fs.faces[i].sorted_arcs();
            arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
            if (arcs == want) {
                if (found >= 0) fail(DiagramErrc::bad_outer, "outer annotation matches several faces");
                found = i;
            }
        }
        if (found < 0) fail(DiagramErrc::bad_outer, "outer annotation matches no face");
        return found;
    }
    int best = 0;
    for (int i = 1; i < static_cast<int>(fs.faces.size()); ++i) {
        const auto& a = fs.faces[i];
        const auto& b = fs.faces[best];
        if (a.sides.size() > b.sides.size() ||
            (a.sides.size() == b.sides.size() && a.sorted_arcs() < b.sorted_arcs()))
            best = i;
    }
    return best;
}

}  // namespace

std::vector<int> Face::sorted_arcs() const {
    std::vector<int> v;
    for (const Side& s : sides) v.push_back(s.arc);
    std::sort(v.begin(), v.end());
    return v;
}

int corner_contribution2(int k) { return (k % 2 == 0) ? 1 : -1; }

LinkDiagram parse_pd(const std::string& text) {
    static const std::regex tok(R"(\s*(X\(([^()]*)\)|U\(\s*\)|outer\s*=\s*([0-9,\s]*[0-9])|\S+))");
    std::vector<std::array<int, 4>> raw;
    int unknots = 0;
    std::optional<std::vector<int>> outer_raw;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), tok); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        const std::string whole = m[1].str();
        if (m[2].matched) {
            auto parts = split_commas(m[2].str());
            if (parts.size() != 4) fail(DiagramErrc::malformed, "crossing tuple needs 4 labels: " + whole);
            std::array<int, 4> x{};
            for (int i = 0; i < 4; ++i) x[i] = parse_label(parts[i]);
            raw.push_back(x);
        } else if (whole.rfind("U(", 0) == 0) {
            ++unknots;
        } else if (m[3].matched) {
            if (outer_raw) fail(DiagramErrc::bad_outer, "outer given twice");
            std::vector<int> v;
            for (const auto& s : split_commas(m[3].str())) v.push_back(parse_label(s));
            outer_raw = v;
        } else {
            fail(DiagramErrc::malformed, "unexpected token '" + whole + "'");
        }
    }
    LinkDiagram d;
    if (raw.empty() && unknots == 0) fail(DiagramErrc::malformed, "empty diagram");
    if (unknots > 0) {
        if (unknots > 1 || !raw.empty()) fail(DiagramErrc::split, "closed component disjoint from the rest");
        if (outer_raw) fail(DiagramErrc::bad_outer, "outer annotation on a crossingless diagram");
        d.input_label = {0};
        d.arc_component = {0};
        d.components = {{0}};
        d.arc_ends = {{Dart{}, Dart{}}};
        return d;
    }

    std::map<int, int> canon;
    std::map<int, int> count;
    for (const auto& x : raw)
        for (int l : x) {
            ++count[l];
            if (!canon.count(l)) {
                canon[l] = static_cast<int>(d.input_label.size());
                d.input_label.push_back(l);
            }
        }
    for (const auto& [l, c] : count)
        if (c != 2) fail(DiagramErrc::multiplicity, "arc " + std::to_string(l) + " occurs " + std::to_string(c) + " times");
    for (const auto& x : raw) {
        std::array<int, 4> y{};
        for (int i = 0; i < 4; ++i) y[i] = canon[x[i]];
        d.crossings.push_back(y);
    }
    const int nc = d.crossing_count();
    const int na = static_cast<int>(d.input_label.size());

    // darts of each arc, in order of appearance
    std::vector<std::vector<Dart>> darts(na);
    for (int x = 0; x < nc; ++x)
        for (int p = 0; p < 4; ++p) darts[d.crossings[x][p]].push_back(Dart{x, p});

    std::vector<int> uf(nc);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    };
    for (int a = 0; a < na; ++a) uf[find(darts[a][0].crossing)] = find(darts[a][1].crossing);
    for (int x = 0; x < nc; ++x)
        if (find(x) != find(0)) fail(DiagramErrc::split, "diagram is not connected");

    // the dart of the same arc other than (x, p)
    auto other = [&](int a, Dart dt) { return darts[a][0] == dt ? darts[a][1] : darts[a][0]; };

    d.arc_ends.assign(na, {Dart{}, Dart{}});
    d.arc_component.assign(na, -1);
    for (int start = 0; start < na; ++start) {
        if (d.arc_component[start] >= 0) continue;
        // collect the component unoriented, then orient it
        std::vector<int> cyc{start};
        Dart head = darts[start][1];
        auto walk = [&](int a0, Dart h0) {
            std::vector<std::pair<int, Dart>> seq;
            int a = a0;
            Dart h = h0;
            for (;;) {
                seq.push_back({a, h});
                const Dart out{h.crossing, (h.pos + 2) % 4};
                const int b = d.crossings[h.crossing][out.pos];
                const Dart nh = other(b, out);
                if (b == a0 && nh == h0) break;
                if (seq.size() > static_cast<size_t>(2 * na)) fail(DiagramErrc::malformed, "strand does not close");
                a = b;
                h = nh;
            }
            return seq;
        };
        auto seq = walk(start, head);
        bool has_under = false, fwd_ok = true, bwd_ok = true;
        for (const auto& [a, h] : seq) {
            const Dart t = other(a, h);
            if (h.pos % 2 == 0 || t.pos % 2 == 0) has_under = true;
            if (h.pos == 2 || t.pos == 0) fwd_ok = false;
            if (h.pos == 0 || t.pos == 2) bwd_ok = false;
        }
        bool forward = true;
        if (has_under) {
            if (!fwd_ok && !bwd_ok) fail(DiagramErrc::malformed, "under-strand direction is inconsistent");
            forward = fwd_ok;
        } else {
            // least arc, heading toward the smaller of its two neighbours
            int least = start;
            for (const auto& [a, h] : seq) least = std::min(least, a);
            for (size_t i = 0; i < seq.size(); ++i)
                if (seq[i].first == least) {
                    const int next = seq[(i + 1) % seq.size()].first;
                    const int prev = seq[(i + seq.size() - 1) % seq.size()].first;
                    forward = next <= prev;
                    std::rotate(seq.begin(), seq.begin() + static_cast<long>(i), seq.end());
                    break;
                }
        }
        if (!forward) {
            const int a0 = seq.front().first;
            seq = walk(a0, other(a0, seq.front().second));
        }
        // start each component at its least arc
        auto least_it = std::min_element(seq.begin(), seq.end(),
                                         [](const auto& u, const auto& v) { return u.first < v.first; });
        std::rotate(seq.begin(), least_it, seq.end());
        const int comp = static_cast<int>(d.components.size());
        d.components.emplace_back();
        for (const auto& [a, h] : seq) {
            if (d.arc_component[a] >= 0) fail(DiagramErrc::malformed, "strand passes an arc twice");
            d.arc_component[a] = comp;
            d.arc_ends[a] = {other(a, h), h};
            d.components.back().push_back(a);
        }
    }
    if (outer_raw) {
        std::vector<int> v;
        for (int l : *outer_raw) {
            if (!canon.count(l)) fail(DiagramErrc::bad_outer, "outer names unknown arc " + std::to_string(l));
            v.push_back(canon[l]);
        }
        d.outer = v;
    }
    const Faces fs = trace_faces(d);
    if (static_cast<int>(fs.faces.size()) != nc + 2) fail(DiagramErrc::malformed, "crossing data is not planar");
    choose_outer(d, fs);
    return d;
}

Faces diagram_faces(const LinkDiagram& d) {
    Faces fs = trace_faces(d);
    fs.outer = choose_outer(d, fs);
    return fs;
}

std::string braid_closure_pd(int strands, const std::vector<int>& word) {
    if (strands < 1) throw std::invalid_argument("braid needs a strand");
    std::vector<bool> used(strands, false);
    for (int g : word) {
        if (g == 0 || std::abs(g) >= strands) throw std::invalid_argument("braid letter out of range");
        used[std::abs(g)] = true;
    }
    for (int i = 1; i < strands; ++i)
        if (!used[i]) throw std::invalid_argument("braid closure would be split");
    if (word.empty()) return "U()";
    std::vector<int> cur(strands), first(strands);
    std::iota(cur.begin(), cur.end(), 1);
    first = cur;
    int next = strands + 1;
    std::vector<std::array<int, 4>> xs;
    for (int g : word) {
        const int i = std::abs(g) - 1;
        const int a = cur[i], b = cur[i + 1];
        const int c = next++, dd = next++;
        // outgoing labels: c at position i, dd at position i + 1
        if (g > 0)
            xs.push_back({b, dd, c, a});
        else
            xs.push_back({a, b, dd, c});
        cur[i] = c;
        cur[i + 1] = dd;
    }
    // close up: the last label on each strand is renamed to the first
    std::map<int, int> rename;
    for (int s = 0; s < strands; ++s) rename[cur[s]] = first[s];
    std::string out;
    for (auto& x : xs) {
        for (int& l : x)
            if (rename.count(l)) l = rename[l];
        if (!out.empty()) out += ' ';
        out += "X(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
               std::to_string(x[3]) + ")";
    }
    return out;
}

}  // namespace bsh::shadow
