#include "bsh/poly/io.hpp"

#include <sstream>
#include <vector>

namespace bsh::poly {

namespace {

struct Lines {
    std::vector<std::string> rows;
    std::vector<int> numbers;
    size_t at = 0;

    explicit Lines(const std::string& text) {
        std::istringstream in(text);
        std::string s;
        int n = 0;
        while (std::getline(in, s)) {
            ++n;
            if (!s.empty() && s.back() == '\r') s.pop_back();
            const auto hash = s.find('#');
            if (hash != std::string::npos) s.erase(hash);
            if (s.find_first_not_of(" \t") == std::string::npos) continue;
            rows.push_back(s);
            numbers.push_back(n);
        }
    }
    bool done() const { return at >= rows.size(); }
    int line() const { return at < numbers.size() ? numbers[at] : (numbers.empty() ? 0 : numbers.back()); }
    std::vector<std::string> next(const char* expecting) {
        if (done()) throw ParseError(line(), std::string("unexpected end of input, expected ") + expecting);
        std::istringstream in(rows[at++]);
        std::vector<std::string> out;
        std::string w;
        while (in >> w) out.push_back(w);
        return out;
    }
    std::vector<std::string> peek() const {
        std::istringstream in(rows[at]);
        std::vector<std::string> out;
        std::string w;
        while (in >> w) out.push_back(w);
        return out;
    }
};

int to_int(const std::string& s, int line) {
    try {
        size_t n = 0;
        const int v = std::stoi(s, &n);
        if (n != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
}

void expect_word(const std::vector<std::string>& w, size_t i, const char* word, int line) {
    if (w.size() <= i || w[i] != word) throw ParseError(line, std::string("expected '") + word + "'");
}

Germ parse_germ(const std::string& s, int line) {
    const auto dot = s.find('.');
    if (dot == std::string::npos || s.size() < dot + 3) throw ParseError(line, "bad germ '" + s + "'");
    const char sign = s.back();
    if (sign != '+' && sign != '-') throw ParseError(line, "bad germ direction in '" + s + "'");
    return {to_int(s.substr(0, dot), line), to_int(s.substr(dot + 1, s.size() - dot - 2), line),
            sign == '+' ? 1 : -1};
}

int parse_half(const std::string& s, int line) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return 2 * to_int(s, line);
    if (s.substr(slash + 1) != "2") throw ParseError(line, "gleam denominator must be 1 or 2");
    return to_int(s.substr(0, slash), line);
}

}  // namespace

std::string format_half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

SimplePolyhedron parse_spoly(const std::string& text) {
    Lines in(text);
    SimplePolyhedron p;
    auto head = in.next("header");
    if (head.size() != 2 || head[0] != "SPOLY" || head[1] != "1") throw ParseError(in.line(), "expected header 'SPOLY 1'");

    auto w = in.next("vertices");
    expect_word(w, 0, "vertices", in.line());
    if (w.size() != 2) throw ParseError(in.line(), "expected 'vertices <n>'");
    const int nv = to_int(w[1], in.line());
    if (nv < 0) throw ParseError(in.line(), "negative vertex count");
    p.vertices.resize(nv);

    if (!in.done() && in.peek().at(0) == "ii3_flags") {
        w = in.next("ii3_flags");
        for (size_t i = 1; i < w.size(); ++i) {
            const int v = to_int(w[i], in.line());
            if (v < 0 || v >= nv) throw ParseError(in.line(), "ii3 flag names a missing vertex");
            p.vertices[v].kind = VertexKind::ii3;
        }
    }

    w = in.next("edges");
    expect_word(w, 0, "edges", in.line());
    if (w.size() != 2) throw ParseError(in.line(), "expected 'edges <m>'");
    const int ne = to_int(w[1], in.line());
    if (ne < 0) throw ParseError(in.line(), "negative edge count");
    for (int e = 0; e < ne; ++e) {
        w = in.next("edge record");
        const int ln = in.line();
        if (w.size() < 2 || to_int(w[0], ln) != e) throw ParseError(ln, "edge records must be numbered in order");
        Edge ed;
        if (w[1] == "circle") {
            if (w.size() != 5) throw ParseError(ln, "circle edge needs 3 monodromy entries");
            ed.circle = true;
            for (int j = 0; j < 3; ++j) ed.monodromy[j] = to_int(w[2 + j], ln);
        } else if (w[1] == "interval") {
            if (w.size() != 10) throw ParseError(ln, "interval edge needs 2 endpoints and 6 wing ids");
            for (int k = 0; k < 2; ++k) {
                const auto& s = w[2 + k];
                const auto colon = s.find(':');
                if (colon == std::string::npos) throw ParseError(ln, "endpoint must be vertex:slot");
                ed.ends[k].vertex = to_int(s.substr(0, colon), ln);
                ed.ends[k].slot = to_int(s.substr(colon + 1), ln);
                for (int j = 0; j < 3; ++j) ed.ends[k].leg[j] = to_int(w[4 + 3 * k + j], ln);
            }
        } else {
            throw ParseError(ln, "edge kind must be 'interval' or 'circle'");
        }
        p.edges.push_back(ed);
    }

    w = in.next("regions");
    expect_word(w, 0, "regions", in.line());
    if (w.size() != 2) throw ParseError(in.line(), "expected 'regions <r>'");
    const int nr = to_int(w[1], in.line());
    if (nr < 0) throw ParseError(in.line(), "negative region count");
    std::vector<int> free_count(nr, 0);
    for (int r = 0; r < nr; ++r) {
        w = in.next("region record");
        const int ln = in.line();
        if (w.size() != 7 || to_int(w[0], ln) != r) throw ParseError(ln, "expected '<r> genus g free n circuits c'");
        expect_word(w, 1, "genus", ln);
        expect_word(w, 3, "free", ln);
        expect_word(w, 5, "circuits", ln);
        Region reg;
        reg.genus = to_int(w[2], ln);
        free_count[r] = to_int(w[4], ln);
        const int nc = to_int(w[6], ln);
        if (free_count[r] < 0 || nc < 0) throw ParseError(ln, "negative count");
        for (int c = 0; c < nc; ++c) {
            auto cw = in.next("circuit");
            expect_word(cw, 0, "circuit", in.line());
            Circuit cir;
            for (size_t i = 1; i < cw.size(); ++i) cir.push_back(parse_germ(cw[i], in.line()));
            reg.circuits.push_back(std::move(cir));
        }
        reg.free.assign(free_count[r], Color::e);
        p.regions.push_back(std::move(reg));
    }

    w = in.next("colors");
    expect_word(w, 0, "colors", in.line());
    std::vector<bool> colored(nr, false);
    while (!in.done()) {
        const auto pk = in.peek();
        if (pk[0] == "branching" || pk[0] == "gleams" || pk[0] == "end") break;
        w = in.next("color record");
        const int ln = in.line();
        if (w.size() != 2) throw ParseError(ln, "expected '<region> <letters>'");
        const int r = to_int(w[0], ln);
        if (r < 0 || r >= nr) throw ParseError(ln, "color record names a missing region");
        if (static_cast<int>(w[1].size()) != free_count[r]) throw ParseError(ln, "color count differs from free count");
        for (size_t i = 0; i < w[1].size(); ++i) {
            const auto c = color_from_char(w[1][i]);
            if (!c) throw ParseError(ln, "color must be one of i, e, f");
            p.regions[r].free[i] = *c;
        }
        colored[r] = true;
    }
    for (int r = 0; r < nr; ++r)
        if (free_count[r] > 0 && !colored[r])
            throw ParseError(in.line(), "region " + std::to_string(r) + " has uncolored free circles");

    if (!in.done() && in.peek()[0] == "branching") {
        w = in.next("branching");
        if (w.size() != 2 || static_cast<int>(w[1].size()) != nr)
            throw ParseError(in.line(), "branching needs one sign per region");
        std::vector<int> b;
        for (char c : w[1]) {
            if (c != '+' && c != '-') throw ParseError(in.line(), "branching signs must be + or -");
            b.push_back(c == '+' ? 1 : -1);
        }
        p.branching = b;
    }
    if (!in.done() && in.peek()[0] == "gleams") {
        in.next("gleams");
        p.gleam2.assign(nr, std::nullopt);
        while (!in.done() && in.peek()[0] != "end") {
            w = in.next("gleam record");
            const int ln = in.line();
            if (w.size() != 2) throw ParseError(ln, "expected '<region> <gleam>'");
            const int r = to_int(w[0], ln);
            if (r < 0 || r >= nr) throw ParseError(ln, "gleam names a missing region");
            p.gleam2[r] = parse_half(w[1], ln);
        }
    }
    w = in.next("end");
    if (w.size() != 1 || w[0] != "end") throw ParseError(in.line(), "expected 'end'");
    if (!in.done()) throw ParseError(in.line(), "trailing content after 'end'");
    return p;
}

std::string serialize_spoly(const SimplePolyhedron& p) {
    std::ostringstream os;
    os << "SPOLY 1\n";
    os << "vertices " << p.vertices.size() << "\n";
    if (p.ii3_count() > 0) {
        os << "ii3_flags";
        for (size_t v = 0; v < p.vertices.size(); ++v)
            if (p.vertices[v].kind == VertexKind::ii3) os << " " << v;
        os << "\n";
    }
    os << "edges " << p.edges.size() << "\n";
    for (size_t e = 0; e < p.edges.size(); ++e) {
        const Edge& ed = p.edges[e];
        os << e;
        if (ed.circle) {
            os << " circle " << ed.monodromy[0] << " " << ed.monodromy[1] << " " << ed.monodromy[2];
        } else {
            os << " interval " << ed.ends[0].vertex << ":" << ed.ends[0].slot << " " << ed.ends[1].vertex << ":"
               << ed.ends[1].slot;
            for (const auto& en : ed.ends)
                for (int l : en.leg) os << " " << l;
        }
        os << "\n";
    }
    os << "regions " << p.regions.size() << "\n";
    for (size_t r = 0; r < p.regions.size(); ++r) {
        const Region& reg = p.regions[r];
        os << r << " genus " << reg.genus << " free " << reg.free.size() << " circuits " << reg.circuits.size()
           << "\n";
        for (const auto& c : reg.circuits) {
            os << "circuit";
            for (const Germ& g : c) os << " " << g.edge << "." << g.leg << (g.dir > 0 ? '+' : '-');
            os << "\n";
        }
    }
    os << "colors\n";
    for (size_t r = 0; r < p.regions.size(); ++r) {
        if (p.regions[r].free.empty()) continue;
        os << r << " ";
        for (Color c : p.regions[r].free) os << color_char(c);
        os << "\n";
    }
    if (p.branching) {
        os << "branching ";
        for (int s : *p.branching) os << (s > 0 ? '+' : '-');
        os << "\n";
    }
    bool any_gleam = false;
    for (const auto& g : p.gleam2) any_gleam = any_gleam || g.has_value();
    if (any_gleam) {
        os << "gleams\n";
        for (size_t r = 0; r < p.gleam2.size(); ++r)
            if (p.gleam2[r]) os << r << " " << format_half(*p.gleam2[r]) << "\n";
    }
    os << "end\n";
    return os.str();
}

}  // namespace bsh::poly
