#pragma once

// Corpus production: rectilinear drawings from exact random or convex-position
// point sets, tin-can (two-latitude geodesic) drawings, and the exhaustive
// catalogue of small good drawings obtained by vertex extension.

#include "kndraw/convexity.hpp"
#include "kndraw/drawing.hpp"
#include "kndraw/mutable_map.hpp"

#include <cmath>
#include <functional>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace kndraw {

struct GeneratorError : std::runtime_error {
    explicit GeneratorError(const std::string& m) : std::runtime_error(m) {}
};

// Deterministic, platform-independent generator (splitmix64).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t operator()() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return (*this)() % n; }
};

struct GeneratorSpec {
    enum Kind { RandomPoints, ConvexPosition, TinCan, File } kind = RandomPoints;
    int n = 0;
    std::uint64_t seed = 0;
    long long bound = 0;
};

// ── rectilinear generators ──────────────────────────────────────────

/// Strictly convex position on the parabola (i, i^2); no three collinear.
inline Drawing gen_convex_position(int n) {
    std::vector<ExactPoint> p;
    for (int i = 1; i <= n; ++i) p.push_back({Int(i), Int(i) * Int(i)});
    return from_points(p);
}

/// Uniform integer points, reseeded until the point set is degeneracy-free.
inline Drawing gen_random_points(int n, std::uint64_t seed, long long bound) {
    if (bound < static_cast<long long>(n) * n) bound = static_cast<long long>(n) * n;
    for (int attempt = 0; attempt < 256; ++attempt) {
        SplitMix64 rng(seed * 0x100000001ull + static_cast<std::uint64_t>(attempt));
        std::set<std::pair<long long, long long>> used;
        std::vector<ExactPoint> p;
        while (static_cast<int>(p.size()) < n) {
            long long x = static_cast<long long>(rng.below(bound + 1));
            long long y = static_cast<long long>(rng.below(bound + 1));
            if (used.insert({x, y}).second) p.push_back({Int(x), Int(y)});
        }
        try {
            return from_points(p);
        } catch (const DrawingError&) {
            continue;
        }
    }
    throw GeneratorError("exhausted retries generating a degeneracy-free point set");
}

// ── tin-can drawings ────────────────────────────────────────────────

namespace detail {

/// Integer direction for the sphere point at latitude ring (rho,z) ~ (3,±4)/5
/// and turn angle `theta`, via the rational parametrization of the circle.
inline Vec3 ring_point(double theta, bool north) {
    // wrap to (-pi, pi) for the half-angle substitution
    const double pi = 3.14159265358979323846;
    while (theta >= pi) theta -= 2 * pi;
    while (theta < -pi) theta += 2 * pi;
    const long long q = 1 << 12;
    double t = std::tan(theta / 2);
    long long pp = static_cast<long long>(std::llround(t * static_cast<double>(q)));
    Int P(pp), Q(q);
    Int x = 3 * (Q * Q - P * P);
    Int y = 6 * P * Q;
    Int z = 4 * (Q * Q + P * P);
    return {x, y, north ? z : -z};
}

}  // namespace detail

inline Int harary_hill(int n) {
    return Int(n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4;
}

/// The two-latitude geodesic ("tin can") drawing: ceil(n/2) vertices on a
/// northern circle, floor(n/2) on the antipodal southern circle, all edges
/// minor great-circle arcs.  Inner-inner edges stay in the northern cap,
/// outer-outer edges in the southern cap, and the mixed edges wind through
/// the band with minimal turning, which yields exactly H(n) crossings.
inline Drawing gen_tin_can(int n) {
    if (n < 3) throw GeneratorError("tin can needs n >= 3");
    const int a = (n + 1) / 2, b = n / 2;
    const double pi = 3.14159265358979323846;
    for (int attempt = 0; attempt < 64; ++attempt) {
        double phase = pi / (2.0 * a * b) * (1.0 + attempt * 0.37);
        std::vector<Vec3> pts;
        for (int k = 0; k < a; ++k) {
            double jit = 1e-4 * ((k * 29 + attempt * 13) % 17 - 8);
            pts.push_back(detail::ring_point(2 * pi * k / a + jit, true));
        }
        for (int l = 0; l < b; ++l) {
            double jit = 1e-4 * ((l * 41 + attempt * 7) % 19 - 9);
            pts.push_back(detail::ring_point(2 * pi * l / b + phase + jit, false));
        }
        try {
            Drawing d = from_sphere_points(pts);
            if (Int(d.num_crossings()) != harary_hill(n)) continue;
            if (!validate_good(d).ok()) continue;
            return d;
        } catch (const DrawingError&) {
            continue;
        }
    }
    throw GeneratorError("tin can generation failed for n=" + std::to_string(n));
}

// ── exhaustive small corpus ─────────────────────────────────────────

namespace detail {

/// Canonical code of a drawing's planarized map up to dart relabeling and
/// reflection, with graph vertices marked.  Two drawings get the same code
/// iff they are weakly isomorphic (relabeling + sphere homeomorphism).
inline std::string canonical_code(const PlanarMap& m, int n_graph) {
    std::string best;
    for (int orient = 0; orient < 2; ++orient) {
        const auto& nx = orient == 0 ? m.next : m.prev;
        for (Dart start = 0; start < m.num_darts(); ++start) {
            std::vector<int> id(m.num_darts(), -1);
            std::vector<Dart> order;
            id[start] = 0;
            order.push_back(start);
            std::string code;
            for (size_t i = 0; i < order.size(); ++i) {
                Dart d = order[i];
                for (Dart e : {m.twin[d], nx[d]}) {
                    if (id[e] == -1) {
                        id[e] = static_cast<int>(order.size());
                        order.push_back(e);
                    }
                }
                code += std::to_string(id[m.twin[d]]) + ',' + std::to_string(id[nx[d]]) +
                        (m.vertex_of[d] < n_graph ? "g;" : "x;");
            }
            if (best.empty() || code < best) best = std::move(code);
        }
    }
    return best;
}

/// Extend a good drawing of K_{n-1} by one vertex in every combinatorially
/// distinct way; appends the resulting drawings of K_n to `out`.
inline void extend_by_vertex(const Drawing& base, std::vector<Drawing>& out) {
    const int n = base.n + 1;
    const int vn = base.map.V;  // id of the new vertex inside the mutable map

    MutableMap mm0 = MutableMap::from(base.map, base.chain);
    mm0.new_vertex();
    mm0.refresh();

    struct Frame {
        MutableMap mm;
        // crossings chosen so far: set of (new edge target w, base edge)
        std::set<std::pair<int, int>> crossed;
        std::vector<std::vector<Dart>> new_chains;  // per target w: darts vn->w
    };

    // k4_used[{x,y}] true if K4 {vn,w,x,y} already has a crossing
    auto k4_blocked = [&](const Frame& fr, int w, int basee) {
        auto [x, y] = edge_pair(base.n, basee);
        // the K4 is {vn, w, x, y}: crossings possible: (vn,w)x(x,y),
        // (vn,x)x(w,y), (vn,y)x(w,x)
        if (fr.crossed.count({w, basee})) return true;
        if (fr.crossed.count({x, edge_index(base.n, std::min(w, y), std::max(w, y))}))
            return true;
        if (fr.crossed.count({y, edge_index(base.n, std::min(w, x), std::max(w, x))}))
            return true;
        // base edges (x,y) pairs: the base drawing may already cross inside
        // {w,x,y,...}: irrelevant, those K4s don't contain vn
        return false;
    };

    std::vector<Drawing> results;
    std::set<std::string> seen;

    // route edges vn->0, vn->1, ... depth-first over all routes
    auto finish = [&](Frame& fr) {
        // assemble a Drawing of K_n
        std::vector<std::vector<Dart>> chains(n * (n - 1) / 2);
        for (int e = 0; e < base.num_edges(); ++e) {
            auto [u, v] = edge_pair(base.n, e);
            chains[edge_index(n, u, v)] = fr.mm.curves[e];
        }
        for (int w = 0; w < base.n; ++w) {
            // recorded vn->w; edge index (w, vn) with w < vn needs w->vn
            std::vector<Dart> rev;
            for (auto it = fr.new_chains[w].rbegin(); it != fr.new_chains[w].rend(); ++it)
                rev.push_back(fr.mm.twin[*it]);
            chains[edge_index(n, w, n - 1)] = rev;
        }
        // compact vertices: graph 0..n-2 keep, vn -> n-1, crossings after
        std::vector<int> remap(fr.mm.num_vertices(), -1);
        for (int v = 0; v < base.n; ++v) remap[v] = v;
        remap[vn] = n - 1;
        int nextid = n;
        for (int v = 0; v < fr.mm.num_vertices(); ++v) {
            if (remap[v] >= 0) continue;
            if (fr.mm.dart_at[v] < 0) continue;
            remap[v] = nextid++;
        }
        std::vector<int> vo(fr.mm.num_darts());
        for (Dart d = 0; d < fr.mm.num_darts(); ++d) vo[d] = remap[fr.mm.vertex_of[d]];
        PlanarMap pm = build_map(fr.mm.twin, fr.mm.next, vo);
        Drawing dd = make_drawing(n, std::move(pm), std::move(chains));
        if (!validate_good(dd).ok()) return;
        std::string code = canonical_code(dd.map, n);
        if (seen.insert(code).second) results.push_back(std::move(dd));
    };

    std::function<void(Frame, int, int)> go = [&](Frame fr, int w, int float_face) {
        if (w == base.n) {
            finish(fr);
            return;
        }
        fr.mm.refresh();
        std::vector<std::pair<MutableMap::Anchor, int>> starts;  // anchor, start face
        if (fr.mm.dart_at[vn] < 0) {
            starts.push_back({MutableMap::Anchor::corner(vn, -1), float_face});
        } else {
            for (Dart dv : fr.mm.vertex_darts(vn))
                starts.push_back({MutableMap::Anchor::corner(vn, dv), fr.mm.face_of[dv]});
        }
        for (auto& [anchor, f0] : starts) {
            // DFS over dual walks from f0 to a corner of w
            struct Node {
                int face;
                std::vector<Dart> steps;
                std::set<int> used;  // base edges crossed on this walk
            };
            std::vector<Node> stack{{f0, {}, {}}};
            while (!stack.empty()) {
                Node nd = std::move(stack.back());
                stack.pop_back();
                // end here? corners of w on this face
                for (Dart dw : fr.mm.vertex_darts(w)) {
                    if (fr.mm.face_of[dw] != nd.face) continue;
                    Frame child = fr;
                    // re-identify darts: indices are stable (copy preserves ids)
                    auto segs = child.mm.route(-1, anchor, nd.steps,
                                               MutableMap::Anchor::corner(w, dw));
                    int cid = child.mm.new_curve();
                    child.mm.curves[cid] = segs;
                    for (Dart s : segs) {
                        child.mm.curve_of[s] = cid;
                        child.mm.curve_of[child.mm.twin[s]] = cid;
                    }
                    for (int be : nd.used) child.crossed.insert({w, be});
                    child.new_chains.push_back(segs);
                    try {
                        go(std::move(child), w + 1, -1);
                    } catch (const MapError&) {
                    }
                }
                if (nd.steps.size() >= 8) continue;  // good drawings never need more
                for (Dart dd : fr.mm.face_walk(nd.face)) {
                    int c = fr.mm.curve_of[dd];
                    if (c < 0 || c >= base.num_edges()) continue;  // only base edges
                    auto [x, y] = edge_pair(base.n, c);
                    if (x == w || y == w) continue;       // adjacent at w
                    if (nd.used.count(c)) continue;       // at most once per pair
                    if (k4_blocked(fr, w, c)) continue;   // one crossing per K4
                    Node nxt = nd;
                    nxt.face = fr.mm.face_of[fr.mm.twin[dd]];
                    nxt.steps.push_back(dd);
                    nxt.used.insert(c);
                    stack.push_back(std::move(nxt));
                }
            }
        }
    };

    for (int f0 = 0; f0 < mm0.F; ++f0) {
        Frame fr{mm0, {}, {}};
        go(fr, 0, f0);
    }
    for (auto& d : results) out.push_back(std::move(d));
}

}  // namespace detail

/// All combinatorially distinct good drawings of K_n for n <= 5, enumerated
/// by repeated vertex extension and deduplicated by canonical map code.
inline std::vector<Drawing> gen_exhaustive_small(int n) {
    if (n < 3 || n > 5) throw GeneratorError("exhaustive corpus only for 3 <= n <= 5");
    std::vector<ExactPoint> tri = {{Int(0), Int(0)}, {Int(4), Int(0)}, {Int(2), Int(3)}};
    std::vector<Drawing> cur{from_points(tri)};
    for (int k = 4; k <= n; ++k) {
        std::vector<Drawing> nxt;
        std::set<std::string> seen;
        for (const Drawing& b : cur) {
            std::vector<Drawing> ext;
            detail::extend_by_vertex(b, ext);
            for (auto& d : ext) {
                std::string code = detail::canonical_code(d.map, d.n);
                if (seen.insert(code).second) nxt.push_back(std::move(d));
            }
        }
        cur = std::move(nxt);
    }
    return cur;
}

}  // namespace kndraw
