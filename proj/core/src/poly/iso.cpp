#include "bsh/poly/iso.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace bsh::poly {

namespace {

// wing neighbour of leg-end (e, k, j): {edge, end, leg}
using LegEnd = std::array<int, 3>;

std::vector<std::array<std::array<LegEnd, 3>, 2>> wing_partners(const SimplePolyhedron& p) {
    Incidence inc(p);
    std::vector<std::array<std::array<LegEnd, 3>, 2>> out(p.edges.size());
    for (size_t e = 0; e < p.edges.size(); ++e) {
        const Edge& ed = p.edges[e];
        if (ed.circle) continue;
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 3; ++j) {
                const EdgeEnd& en = ed.ends[k];
                const int wing = en.leg[j];
                const int t = wing_other(p.vertices[en.vertex].kind, wing, en.slot);
                const auto [e2, k2] = inc.at[en.vertex][t];
                const auto& legs = p.edges[e2].ends[k2].leg;
                const int j2 = static_cast<int>(std::find(legs.begin(), legs.end(), wing) - legs.begin());
                out[e][k][j] = {e2, k2, j2};
            }
    }
    return out;
}

struct RegionKey {
    int genus;
    std::vector<int> lengths;
    std::vector<int> colors;
    std::optional<int> gleam;
    bool operator<(const RegionKey& o) const {
        return std::tie(genus, lengths, colors, gleam) < std::tie(o.genus, o.lengths, o.colors, o.gleam);
    }
    bool operator==(const RegionKey&) const = default;
};

RegionKey region_key(const SimplePolyhedron& p, int r, bool gleams) {
    RegionKey k;
    const Region& reg = p.regions[r];
    k.genus = reg.genus;
    for (const auto& c : reg.circuits) k.lengths.push_back(static_cast<int>(c.size()));
    std::sort(k.lengths.begin(), k.lengths.end());
    for (Color c : reg.free) k.colors.push_back(static_cast<int>(c));
    std::sort(k.colors.begin(), k.colors.end());
    if (gleams) k.gleam = p.gleam_twice(r);
    return k;
}

bool same_invariants(const SimplePolyhedron& p, const SimplePolyhedron& q, IsoOptions opt) {
    if (p.vertices.size() != q.vertices.size() || p.edges.size() != q.edges.size() ||
        p.regions.size() != q.regions.size() || p.ii3_count() != q.ii3_count())
        return false;
    auto circles = [](const SimplePolyhedron& s) {
        return std::count_if(s.edges.begin(), s.edges.end(), [](const Edge& e) { return e.circle; });
    };
    if (circles(p) != circles(q)) return false;
    if (opt.respect_branching && p.branching.has_value() != q.branching.has_value()) return false;
    std::vector<RegionKey> a, b;
    for (size_t r = 0; r < p.regions.size(); ++r) {
        a.push_back(region_key(p, static_cast<int>(r), opt.respect_gleams));
        b.push_back(region_key(q, static_cast<int>(r), opt.respect_gleams));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

int inverse_at(const std::array<int, 3>& m, int x) {
    for (int j = 0; j < 3; ++j)
        if (m[j] == x) return j;
    return -1;
}

class Search {
public:
    Search(const SimplePolyhedron& p, const SimplePolyhedron& q, IsoOptions opt,
           std::function<bool(const Isomorphism&)> found)
        : p_(p), q_(q), opt_(opt), found_(std::move(found)), pw_(wing_partners(p)), qw_(wing_partners(q)),
          qown_(germ_owners(q)), comps_(singular_components(p)), pinc_(p) {}

    void run() {
        if (!same_invariants(p_, q_, opt_)) return;
        State s;
        s.img.assign(p_.edges.size(), EdgeImage{});
        s.used.assign(q_.edges.size(), false);
        component(s, 0);
    }

private:
    struct State {
        std::vector<EdgeImage> img;
        std::vector<bool> used;
    };

    bool assign(State& s, int e, int e2, bool flip, int j, int j2, std::vector<LegEnd>& queue) const {
        EdgeImage& im = s.img[e];
        if (im.edge < 0) {
            if (s.used[e2] || p_.edges[e].circle != q_.edges[e2].circle) return false;
            im.edge = e2;
            im.flip = flip;
            s.used[e2] = true;
        } else if (im.edge != e2 || im.flip != flip) {
            return false;
        }
        if (im.leg[j] >= 0) return im.leg[j] == j2;
        for (int x = 0; x < 3; ++x)
            if (im.leg[x] == j2) return false;
        im.leg[j] = j2;
        queue.push_back({e, 0, j});
        queue.push_back({e, 1, j});
        return true;
    }

    bool drain(State& s, std::vector<LegEnd>& queue) const {
        while (!queue.empty()) {
            const auto [e, k, j] = queue.back();
            queue.pop_back();
            if (p_.edges[e].circle) continue;
            const EdgeImage& im = s.img[e];
            const int kq = im.flip ? 1 - k : k;
            const LegEnd pp = pw_[e][k][j];
            const LegEnd qp = qw_[im.edge][kq][im.leg[j]];
            if (!assign(s, pp[0], qp[0], pp[1] != qp[1], pp[2], qp[2], queue)) return false;
        }
        return true;
    }

    // Once the four ends at a vertex have images, the wing between slots
    // s and t must go to the wing between their image slots.
    bool vertex_pass(State& s, std::vector<LegEnd>& queue) const {
        for (size_t v = 0; v < p_.vertices.size(); ++v) {
            std::array<std::array<int, 2>, 4> img_end{};  // (edge, end) in q
            bool all = true;
            for (int sl = 0; sl < 4 && all; ++sl) {
                const auto [e, k] = pinc_.at[v][sl];
                if (s.img[e].edge < 0) all = false;
                else img_end[sl] = {s.img[e].edge, s.img[e].flip ? 1 - k : k};
            }
            if (!all) continue;
            std::array<int, 4> img_slot{};
            const int v2 = q_.edges[img_end[0][0]].ends[img_end[0][1]].vertex;
            for (int sl = 0; sl < 4; ++sl) {
                const EdgeEnd& en = q_.edges[img_end[sl][0]].ends[img_end[sl][1]];
                if (en.vertex != v2) return false;
                img_slot[sl] = en.slot;
            }
            const VertexKind kp = p_.vertices[v].kind, kq = q_.vertices[v2].kind;
            if (kp != kq) return false;
            for (int sl = 0; sl < 4; ++sl) {
                const auto [e, k] = pinc_.at[v][sl];
                const EdgeEnd& a = p_.edges[e].ends[k];
                const EdgeEnd& a2 = q_.edges[img_end[sl][0]].ends[img_end[sl][1]];
                for (int j = 0; j < 3; ++j) {
                    const int t = wing_other(kp, a.leg[j], sl);
                    std::vector<int> cand;
                    for (int j2 = 0; j2 < 3; ++j2)
                        if (wing_other(kq, a2.leg[j2], img_slot[sl]) == img_slot[t]) cand.push_back(j2);
                    const EdgeImage& im = s.img[e];
                    if (im.leg[j] >= 0) {
                        if (std::find(cand.begin(), cand.end(), im.leg[j]) == cand.end()) return false;
                        continue;
                    }
                    std::erase_if(cand, [&](int j2) {
                        return std::find(im.leg.begin(), im.leg.end(), j2) != im.leg.end();
                    });
                    if (cand.empty()) return false;
                    if (cand.size() == 1 && !assign(s, e, im.edge, im.flip, j, cand[0], queue)) return false;
                }
            }
        }
        return true;
    }

    bool propagate(State& s, std::vector<LegEnd> queue) const {
        do {
            if (!drain(s, queue)) return false;
            if (!vertex_pass(s, queue)) return false;
        } while (!queue.empty());
        return true;
    }

    // branch on a leg left open by propagation (doubled wings at II3 vertices)
    void settle(State& s, size_t c) {
        for (int e : comps_[c])
            for (int j = 0; j < 3; ++j) {
                if (s.img[e].edge >= 0 && s.img[e].leg[j] >= 0) continue;
                if (s.img[e].edge < 0) return;  // unreachable edge: not a component map
                for (int j2 = 0; j2 < 3 && !stop_; ++j2) {
                    State t = s;
                    std::vector<LegEnd> queue;
                    if (!assign(t, e, t.img[e].edge, t.img[e].flip, j, j2, queue)) continue;
                    if (!propagate(t, std::move(queue))) continue;
                    settle(t, c);
                }
                return;
            }
        component(s, c + 1);
    }

    void component(State& s, size_t c) {
        if (stop_) return;
        if (c == comps_.size()) {
            finish(s);
            return;
        }
        const int anchor = comps_[c][0];
        std::array<int, 3> lam{0, 1, 2};
        for (int e2 = 0; e2 < static_cast<int>(q_.edges.size()) && !stop_; ++e2) {
            if (s.used[e2] || p_.edges[anchor].circle != q_.edges[e2].circle) continue;
            for (bool flip : {false, true}) {
                std::sort(lam.begin(), lam.end());
                do {
                    if (p_.edges[anchor].circle) {
                        const auto& m = p_.edges[anchor].monodromy;
                        const auto& m2 = q_.edges[e2].monodromy;
                        bool ok = true;
                        for (int j = 0; j < 3; ++j) {
                            const int want = flip ? inverse_at(m2, lam[j]) : m2[lam[j]];
                            ok = ok && lam[m[j]] == want;
                        }
                        if (!ok) continue;
                    }
                    State t = s;
                    std::vector<LegEnd> queue;
                    bool ok = true;
                    for (int j = 0; j < 3 && ok; ++j) ok = assign(t, anchor, e2, flip, j, lam[j], queue);
                    if (!ok || !propagate(t, std::move(queue))) continue;
                    settle(t, c);
                    if (stop_) return;
                } while (std::next_permutation(lam.begin(), lam.end()));
            }
        }
    }

    void finish(const State& s) {
        Isomorphism iso;
        iso.edge = s.img;
        iso.vertex.assign(p_.vertices.size(), -1);
        for (size_t e = 0; e < p_.edges.size(); ++e) {
            if (p_.edges[e].circle) continue;
            for (int k = 0; k < 2; ++k) {
                const int v = p_.edges[e].ends[k].vertex;
                const int w = q_.edges[s.img[e].edge].ends[s.img[e].flip ? 1 - k : k].vertex;
                if (iso.vertex[v] >= 0 && iso.vertex[v] != w) return;
                if (p_.vertices[v].kind != q_.vertices[w].kind) return;
                iso.vertex[v] = w;
            }
        }
        const int nr = static_cast<int>(p_.regions.size());
        iso.region.assign(nr, -1);
        iso.region_sign.assign(nr, 0);
        std::vector<bool> hit(nr, false);
        std::vector<int> spare_q;
        for (int r = 0; r < nr; ++r)
            if (q_.regions[r].circuits.empty()) spare_q.push_back(r);
        for (int r = 0; r < nr; ++r) {
            const Region& reg = p_.regions[r];
            if (reg.circuits.empty()) {
                // only in edgeless inputs: pair up by invariants
                const auto key = region_key(p_, r, opt_.respect_gleams);
                auto it = std::find_if(spare_q.begin(), spare_q.end(), [&](int r2) {
                    return !hit[r2] && region_key(q_, r2, opt_.respect_gleams) == key;
                });
                if (it == spare_q.end()) return;
                iso.region[r] = *it;
                iso.region_sign[r] = 1;
                hit[*it] = true;
                continue;
            }
            std::vector<bool> circ_hit;
            for (const auto& cir : reg.circuits) {
                int r2 = -1, c2 = -1, delta = 0;
                for (const Germ& g : cir) {
                    const EdgeImage& im = s.img[g.edge];
                    const GermOwner& o = qown_[im.edge][im.leg[g.leg]];
                    const int d = (im.flip ? -g.dir : g.dir) * o.dir;
                    if (r2 < 0) {
                        r2 = o.region;
                        c2 = o.circuit;
                        delta = d;
                    } else if (o.region != r2 || o.circuit != c2 || d != delta) {
                        return;
                    }
                }
                if (iso.region[r] < 0) {
                    if (hit[r2]) return;
                    iso.region[r] = r2;
                    iso.region_sign[r] = delta;
                    hit[r2] = true;
                    circ_hit.assign(q_.regions[r2].circuits.size(), false);
                } else if (iso.region[r] != r2 || iso.region_sign[r] != delta) {
                    return;
                }
                if (q_.regions[r2].circuits[c2].size() != cir.size() || circ_hit[c2]) return;
                circ_hit[c2] = true;
            }
            const int r2 = iso.region[r];
            if (q_.regions[r2].circuits.size() != reg.circuits.size()) return;
            if (!(region_key(p_, r, opt_.respect_gleams) == region_key(q_, r2, opt_.respect_gleams))) return;
            if (opt_.respect_branching && p_.branching &&
                (*p_.branching)[r] != (*q_.branching)[r2] * iso.region_sign[r])
                return;
        }
        if (found_(iso)) stop_ = true;
    }

    const SimplePolyhedron& p_;
    const SimplePolyhedron& q_;
    IsoOptions opt_;
    std::function<bool(const Isomorphism&)> found_;
    std::vector<std::array<std::array<LegEnd, 3>, 2>> pw_, qw_;
    std::vector<std::array<GermOwner, 3>> qown_;
    std::vector<std::vector<int>> comps_;
    Incidence pinc_;
    bool stop_ = false;
};

}  // namespace

std::optional<Isomorphism> isomorphic(const SimplePolyhedron& p, const SimplePolyhedron& q, IsoOptions opt) {
    std::optional<Isomorphism> out;
    Search(p, q, opt, [&](const Isomorphism& iso) {
        out = iso;
        return true;
    }).run();
    return out;
}

std::vector<Isomorphism> all_isomorphisms(const SimplePolyhedron& p, const SimplePolyhedron& q, IsoOptions opt) {
    std::vector<Isomorphism> out;
    Search(p, q, opt, [&](const Isomorphism& iso) {
        out.push_back(iso);
        return false;
    }).run();
    return out;
}

bool verify_isomorphism(const SimplePolyhedron& p, const SimplePolyhedron& q, const Isomorphism& iso,
                        IsoOptions opt) {
    const size_t ne = p.edges.size();
    if (iso.edge.size() != ne || q.edges.size() != ne || iso.region.size() != p.regions.size() ||
        q.regions.size() != p.regions.size())
        return false;
    std::vector<bool> used(ne, false);
    for (const auto& im : iso.edge) {
        if (im.edge < 0 || im.edge >= static_cast<int>(ne) || used[im.edge]) return false;
        used[im.edge] = true;
    }
    // every stored germ maps to a stored germ of the image region with the
    // region's sign, and consecutive germs stay consecutive
    for (size_t r = 0; r < p.regions.size(); ++r) {
        const int r2 = iso.region[r];
        const int eps = iso.region_sign[r];
        if (r2 < 0) return false;
        const Region& a = p.regions[r];
        const Region& b = q.regions[r2];
        if (a.genus != b.genus || a.circuits.size() != b.circuits.size()) return false;
        auto ca = a.free, cb = b.free;
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (ca != cb) return false;
        if (opt.respect_gleams && p.gleam_twice(static_cast<int>(r)) != q.gleam_twice(r2)) return false;
        if (opt.respect_branching && p.branching && q.branching &&
            (*p.branching)[r] != (*q.branching)[r2] * eps)
            return false;
        for (const auto& cir : a.circuits) {
            std::vector<Germ> img;
            for (const Germ& g : cir) {
                const EdgeImage& im = iso.edge[g.edge];
                const int d = (im.flip ? -g.dir : g.dir) * eps;
                img.push_back({im.edge, im.leg[g.leg], d});
            }
            if (eps < 0) std::reverse(img.begin(), img.end());
            bool matched = false;
            for (const auto& cb2 : b.circuits) {
                if (cb2.size() != img.size()) continue;
                for (size_t sh = 0; sh < img.size() && !matched; ++sh) {
                    bool all = true;
                    for (size_t i = 0; i < img.size() && all; ++i) all = cb2[(i + sh) % img.size()] == img[i];
                    matched = all;
                }
                if (matched) break;
            }
            if (!matched) return false;
        }
    }
    return true;
}

}  // namespace bsh::poly
