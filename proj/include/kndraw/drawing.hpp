#pragma once

// Good drawings of K_n as planarized maps.  A Drawing owns the sphere map of
// the planarization (graph vertices plus degree-4 crossing vertices), the
// per-edge chains of map darts, and the crossing registry.  Ingestion paths:
// exact planar point sets (straight-line edges) and exact sphere direction
// sets (geodesic edges); both reject degeneracies instead of perturbing.

#include "kndraw/exact.hpp"
#include "kndraw/planar_map.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kndraw {

struct DrawingError : std::runtime_error {
    enum Kind { CollinearTriple, ConcurrentCrossing, BadChain, EndpointOutside, TooFewVertices };
    Kind kind;
    std::vector<int> witness;
    DrawingError(Kind k, const std::string& msg, std::vector<int> w = {})
        : std::runtime_error(msg), kind(k), witness(std::move(w)) {}
};

/// Lexicographic index of pair {u,v}, 0-based, u != v, among all C(n,2) pairs.
inline int edge_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

inline std::pair<int, int> edge_pair(int n, int e) {
    for (int u = 0;; ++u) {
        int row = n - u - 1;
        if (e < row) return {u, u + 1 + e};
        e -= row;
    }
}

struct Drawing {
    int n = 0;
    PlanarMap map;
    // graph vertex i <-> map vertex i; crossing vertices are n..V-1
    std::vector<std::vector<Dart>> chain;              // edge -> darts, oriented u->v (u<v)
    std::map<std::pair<int, int>, int> crossing_of;    // (e<f) -> crossing map vertex
    std::vector<std::array<int, 2>> edges_at_vertex;   // map vertex -> crossing's two edges, or {-1,-1}
    std::optional<int> outer_face;
    std::optional<std::vector<ExactPoint>> coords;     // planar ingestion only
    std::optional<std::vector<Vec3>> sphere_coords;    // geodesic ingestion only

    int num_edges() const { return n * (n - 1) / 2; }
    bool is_graph_vertex(int v) const { return v < n; }
    bool is_crossing_vertex(int v) const { return v >= n && v < map.V; }

    int num_crossings() const { return static_cast<int>(crossing_of.size()); }

    /// Chain of edge {u,v} oriented from u to v.
    std::vector<Dart> oriented_chain(int u, int v) const {
        const auto& ch = chain[edge_index(n, u, v)];
        if (u < v) return ch;
        std::vector<Dart> rev;
        rev.reserve(ch.size());
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) rev.push_back(map.twin[*it]);
        return rev;
    }

    /// The crossing vertex of edges e and f, or -1.
    int crossing_between(int e, int f) const {
        if (e > f) std::swap(e, f);
        auto it = crossing_of.find({e, f});
        return it == crossing_of.end() ? -1 : it->second;
    }
};

// ── assembly from geometry-neutral planarization data ───────────────

namespace detail {

struct PlanarizeData {
    int n = 0;
    // edge -> crossing partners, ordered along the edge from its low endpoint
    std::vector<std::vector<int>> events;
    // graph vertex -> incident edges in ccw order
    std::vector<std::vector<int>> vertex_rot;
    // crossing (e<f) -> the four branches in ccw order; branch = (edge, toward_high_end)
    std::map<std::pair<int, int>, std::array<std::pair<int, bool>, 4>> crossing_rot;
};

inline Drawing assemble_drawing(const PlanarizeData& pd) {
    const int n = pd.n;
    const int ne = n * (n - 1) / 2;
    Drawing dr;
    dr.n = n;

    // crossing vertex ids in lexicographic (e,f) order
    std::map<std::pair<int, int>, int> xid;
    for (const auto& [ef, rot] : pd.crossing_rot) {
        (void)rot;
        xid[ef] = n + static_cast<int>(xid.size());
    }
    const int nv = n + static_cast<int>(xid.size());

    // darts per edge chain
    std::vector<int> twin, vertex_of;
    std::vector<std::vector<Dart>> chains(ne);
    // at each crossing vertex, the four darts by branch tag
    std::map<std::pair<std::pair<int, bool>, int>, Dart> branch_dart;  // ((edge,toward_high), xvertex)
    std::vector<Dart> out_at_low(ne, -1), out_at_high(ne, -1);

    for (int e = 0; e < ne; ++e) {
        auto [u, v] = edge_pair(n, e);
        std::vector<int> seq;
        seq.push_back(u);
        for (int f : pd.events[e]) seq.push_back(xid.at({std::min(e, f), std::max(e, f)}));
        seq.push_back(v);
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            Dart d = static_cast<int>(twin.size());
            twin.push_back(d + 1);
            twin.push_back(d);
            vertex_of.push_back(seq[i]);
            vertex_of.push_back(seq[i + 1]);
            chains[e].push_back(d);
            if (i == 0) out_at_low[e] = d;
            if (i + 2 == seq.size()) out_at_high[e] = d + 1;
        }
        // at each interior (crossing) vertex of the chain, the back branch is
        // the twin of the arriving segment, the forward branch the next one
        for (size_t i = 0; i + 1 < chains[e].size(); ++i) {
            int x = seq[i + 1];
            branch_dart[{{e, false}, x}] = chains[e][i] + 1;
            branch_dart[{{e, true}, x}] = chains[e][i + 1];
        }
    }

    // rotations
    std::vector<int> nxt(twin.size(), -1);
    for (int u = 0; u < n; ++u) {
        std::vector<Dart> order;
        for (int e : pd.vertex_rot[u]) {
            auto [a, b] = edge_pair(n, e);
            order.push_back(a == u ? out_at_low[e] : out_at_high[e]);
        }
        for (size_t i = 0; i < order.size(); ++i) nxt[order[i]] = order[(i + 1) % order.size()];
    }
    for (const auto& [ef, rot] : pd.crossing_rot) {
        int x = xid.at(ef);
        std::array<Dart, 4> order{};
        for (int i = 0; i < 4; ++i) order[i] = branch_dart.at({rot[i], x});
        for (int i = 0; i < 4; ++i) nxt[order[i]] = order[(i + 1) % 4];
    }

    dr.map = build_map(std::move(twin), std::move(nxt), std::move(vertex_of));
    dr.chain = std::move(chains);
    for (const auto& [ef, x] : xid) dr.crossing_of[ef] = x;
    dr.edges_at_vertex.assign(nv, {-1, -1});
    for (const auto& [ef, x] : xid) dr.edges_at_vertex[x] = {ef.first, ef.second};
    return dr;
}

}  // namespace detail

// ── planar ingestion ────────────────────────────────────────────────

inline Drawing from_points(const std::vector<ExactPoint>& pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) throw DrawingError(DrawingError::TooFewVertices, "need at least 3 points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (orient(pts[i], pts[j], pts[k]) == 0)
                    throw DrawingError(DrawingError::CollinearTriple, "collinear triple",
                                       {i, j, k});

    const int ne = n * (n - 1) / 2;
    detail::PlanarizeData pd;
    pd.n = n;
    pd.events.assign(ne, {});

    // pairwise proper crossings of disjoint straight edges
    std::vector<std::vector<std::pair<Rat, int>>> ev(ne);
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = edge_pair(n, e);
        for (int f = e + 1; f < ne; ++f) {
            auto [c, d] = edge_pair(n, f);
            if (a == c || a == d || b == c || b == d) continue;
            if (!segments_cross(pts[a], pts[b], pts[c], pts[d])) continue;
            ev[e].push_back({cross_param(pts[a], pts[b], pts[c], pts[d]), f});
            ev[f].push_back({cross_param(pts[c], pts[d], pts[a], pts[b]), e});
            pd.crossing_rot[{e, f}] = {};  // placeholder, filled below
        }
    }
    for (int e = 0; e < ne; ++e) {
        std::sort(ev[e].begin(), ev[e].end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });
        for (size_t i = 0; i + 1 < ev[e].size(); ++i)
            if (ev[e][i].first == ev[e][i + 1].first)
                throw DrawingError(DrawingError::ConcurrentCrossing,
                                   "three edges through one interior point",
                                   {e, ev[e][i].second, ev[e][i + 1].second});
        for (auto& [t, f] : ev[e]) pd.events[e].push_back(f);
    }

    // crossing rotations from direction vectors
    for (auto& [ef, rot] : pd.crossing_rot) {
        auto [e, f] = ef;
        auto [a, b] = edge_pair(n, e);
        auto [c, d] = edge_pair(n, f);
        std::array<std::pair<int, bool>, 4> tags = {
            {{e, true}, {e, false}, {f, true}, {f, false}}};
        std::array<Vec2, 4> dirs = {pts[b] - pts[a], pts[a] - pts[b], pts[d] - pts[c],
                                    pts[c] - pts[d]};
        std::array<int, 4> idx = {0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(),
                  [&](int i, int j) { return ccw_less(dirs[i], dirs[j]); });
        for (int i = 0; i < 4; ++i) rot[i] = tags[idx[i]];
    }

    // vertex rotations: angular order of the other endpoints
    pd.vertex_rot.assign(n, {});
    for (int u = 0; u < n; ++u) {
        std::vector<int> others;
        for (int w = 0; w < n; ++w)
            if (w != u) others.push_back(w);
        std::sort(others.begin(), others.end(), [&](int w1, int w2) {
            return ccw_less(pts[w1] - pts[u], pts[w2] - pts[u]);
        });
        for (int w : others) pd.vertex_rot[u].push_back(edge_index(n, u, w));
    }

    Drawing dr = detail::assemble_drawing(pd);
    dr.coords = pts;

    // unbounded face: at the bottom-most (then leftmost) point, the corner
    // from the angularly largest edge direction around to the smallest
    int p = 0;
    for (int i = 1; i < n; ++i)
        if (pts[i].y < pts[p].y || (pts[i].y == pts[p].y && pts[i].x < pts[p].x)) p = i;
    int best = -1;
    for (int w = 0; w < n; ++w) {
        if (w == p) continue;
        if (best == -1 || ccw_less(pts[best] - pts[p], pts[w] - pts[p])) best = w;
    }
    Dart d0 = dr.oriented_chain(p, best)[0];
    dr.outer_face = dr.map.face_of[d0];
    return dr;
}

// ── geodesic (sphere) ingestion ─────────────────────────────────────

/// Drawing of K_n with vertices at exact integer directions and edges drawn
/// as minor great-circle arcs.  Degenerate inputs (equal/antipodal rays, a
/// vertex on another edge's great circle, concurrent crossings) are rejected.
inline Drawing from_sphere_points(const std::vector<Vec3>& pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) throw DrawingError(DrawingError::TooFewVertices, "need at least 3 points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cross(pts[i], pts[j]).is_zero())
                throw DrawingError(DrawingError::CollinearTriple,
                                   "equal or antipodal vertex rays", {i, j});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (orient(pts[i], pts[j], pts[k]) == 0)
                    throw DrawingError(DrawingError::CollinearTriple,
                                       "three vertex rays on one great circle", {i, j, k});

    const int ne = n * (n - 1) / 2;
    detail::PlanarizeData pd;
    pd.n = n;
    pd.events.assign(ne, {});

    std::vector<std::vector<std::pair<Vec3, int>>> ev(ne);
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = edge_pair(n, e);
        for (int f = e + 1; f < ne; ++f) {
            auto [c, d] = edge_pair(n, f);
            if (a == c || a == d || b == c || b == d) continue;
            if (!arcs_cross(pts[a], pts[b], pts[c], pts[d])) continue;
            Vec3 x = arc_crossing_point(pts[a], pts[b], pts[c], pts[d]);
            ev[e].push_back({x, f});
            ev[f].push_back({x, e});
            pd.crossing_rot[{e, f}] = {};
        }
    }
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = edge_pair(n, e);
        std::sort(ev[e].begin(), ev[e].end(), [&](const auto& p, const auto& q) {
            return arc_order_less(pts[a], pts[b], p.first, q.first);
        });
        for (size_t i = 0; i + 1 < ev[e].size(); ++i)
            if (!arc_order_less(pts[a], pts[b], ev[e][i].first, ev[e][i + 1].first))
                throw DrawingError(DrawingError::ConcurrentCrossing,
                                   "three arcs through one point",
                                   {e, ev[e][i].second, ev[e][i + 1].second});
        for (auto& [x, f] : ev[e]) pd.events[e].push_back(f);
    }

    for (auto& [ef, rot] : pd.crossing_rot) {
        auto [e, f] = ef;
        auto [a, b] = edge_pair(n, e);
        auto [c, d] = edge_pair(n, f);
        Vec3 x = arc_crossing_point(pts[a], pts[b], pts[c], pts[d]);
        std::array<std::pair<int, bool>, 4> tags = {
            {{e, true}, {e, false}, {f, true}, {f, false}}};
        std::array<Vec3, 4> dirs = {arc_tangent_at(pts[a], pts[b], x),
                                    -arc_tangent_at(pts[a], pts[b], x),
                                    arc_tangent_at(pts[c], pts[d], x),
                                    -arc_tangent_at(pts[c], pts[d], x)};
        std::array<int, 4> idx = {0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(), [&](int i, int j) {
            return ccw_less_around(x, dirs[0], dirs[i], dirs[j]);
        });
        for (int i = 0; i < 4; ++i) rot[i] = tags[idx[i]];
    }

    pd.vertex_rot.assign(n, {});
    for (int u = 0; u < n; ++u) {
        std::vector<int> others;
        for (int w = 0; w < n; ++w)
            if (w != u) others.push_back(w);
        Vec3 ref = tangent_at_vertex(pts[u], pts[others[0]]);
        std::sort(others.begin(), others.end(), [&](int w1, int w2) {
            return ccw_less_around(pts[u], ref, tangent_at_vertex(pts[u], pts[w1]),
                                   tangent_at_vertex(pts[u], pts[w2]));
        });
        for (int w : others) pd.vertex_rot[u].push_back(edge_index(n, u, w));
    }

    Drawing dr = detail::assemble_drawing(pd);
    dr.sphere_coords = pts;
    return dr;
}

// ── goodness validation ─────────────────────────────────────────────

struct GoodnessResult {
    enum Violation { None, TriplePoint, AdjacentCross, SamePairTwice, BadStructure };
    Violation violation = None;
    std::vector<int> witness;  // vertices/edges involved
    std::string detail;
    bool ok() const { return violation == None; }
};

inline GoodnessResult validate_good(const Drawing& d) {
    GoodnessResult r;
    // every non-graph vertex has degree 4
    for (int v = d.n; v < d.map.V; ++v) {
        if (d.map.degree(v) != 4) {
            r.violation = GoodnessResult::TriplePoint;
            r.witness = {v};
            r.detail = "crossing vertex of degree " + std::to_string(d.map.degree(v));
            return r;
        }
    }
    // each crossing vertex lies on exactly two chains; collect per-pair counts
    std::map<std::pair<int, int>, std::vector<int>> pair_crossings;
    std::vector<std::vector<int>> edges_through(d.map.V);
    for (int e = 0; e < d.num_edges(); ++e) {
        const auto& ch = d.chain[e];
        for (size_t i = 0; i + 1 < ch.size(); ++i) {
            int x = d.map.head(ch[i]);
            edges_through[x].push_back(e);
        }
    }
    for (int v = d.n; v < d.map.V; ++v) {
        if (edges_through[v].size() != 2) {
            r.violation = GoodnessResult::BadStructure;
            r.witness = {v};
            r.detail = "crossing vertex not on exactly two chains";
            return r;
        }
        int e = edges_through[v][0], f = edges_through[v][1];
        if (e > f) std::swap(e, f);
        auto [a, b] = edge_pair(d.n, e);
        auto [c, g] = edge_pair(d.n, f);
        if (a == c || a == g || b == c || b == g) {
            r.violation = GoodnessResult::AdjacentCross;
            r.witness = {e, f, v};
            r.detail = "edges sharing a vertex cross";
            return r;
        }
        pair_crossings[{e, f}].push_back(v);
    }
    for (auto& [ef, xs] : pair_crossings) {
        if (xs.size() > 1) {
            r.violation = GoodnessResult::SamePairTwice;
            r.witness = {ef.first, ef.second};
            r.detail = "edge pair crosses more than once";
            return r;
        }
    }
    return r;
}

// ── rotation systems and K4 classification ─────────────────────────

/// For each graph vertex, the ccw cyclic order of the other n-1 vertices.
inline std::vector<std::vector<int>> rotation_system(const Drawing& d) {
    std::vector<std::vector<int>> rot(d.n);
    std::vector<int> endpoint_of_chain_dart(d.map.num_darts(), -1);
    for (int e = 0; e < d.num_edges(); ++e) {
        auto [u, v] = edge_pair(d.n, e);
        const auto& ch = d.chain[e];
        endpoint_of_chain_dart[ch.front()] = v;
        endpoint_of_chain_dart[d.map.twin[ch.back()]] = u;
    }
    for (int u = 0; u < d.n; ++u) {
        for (Dart dd : d.map.vertex_darts(u)) {
            int w = endpoint_of_chain_dart[dd];
            if (w >= 0) rot[u].push_back(w);
        }
    }
    return rot;
}

struct K4Type {
    bool crossing = false;
    std::pair<int, int> pair{-1, -1};  // crossing edge ids (e<f)
};

inline K4Type k4_type(const Drawing& d, std::array<int, 4> vs) {
    std::sort(vs.begin(), vs.end());
    auto [a, b, c, e] = std::tuple(vs[0], vs[1], vs[2], vs[3]);
    std::array<std::pair<int, int>, 3> cand = {
        std::pair{edge_index(d.n, a, b), edge_index(d.n, c, e)},
        std::pair{edge_index(d.n, a, c), edge_index(d.n, b, e)},
        std::pair{edge_index(d.n, a, e), edge_index(d.n, b, c)}};
    K4Type t;
    for (auto [p, q] : cand) {
        if (d.crossing_between(p, q) >= 0) {
            t.crossing = true;
            t.pair = {std::min(p, q), std::max(p, q)};
            return t;
        }
    }
    return t;
}

// ── triangle sides ──────────────────────────────────────────────────

struct TriangleDisc {
    std::array<int, 3> tri{};        // sorted vertex ids
    std::vector<char> in_side;       // face id -> membership
    std::vector<int> contained;      // graph vertices strictly inside (sorted)

    bool has_face(int f) const { return in_side[f] != 0; }
};

/// The two closed discs bounded by D[T], computed by cutting the dual along
/// the chains of T's edges and flooding.  First disc is the one left of the
/// first dart of chain(a->b) for T = {a<b<c}.
inline std::pair<TriangleDisc, TriangleDisc> triangle_sides(const Drawing& d,
                                                            std::array<int, 3> T) {
    std::sort(T.begin(), T.end());
    auto [a, b, c] = std::tuple(T[0], T[1], T[2]);
    std::vector<char> wall(d.map.seg_dart.size(), 0);
    for (auto [u, v] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}})
        for (Dart dd : d.chain[edge_index(d.n, u, v)]) wall[d.map.seg_of[dd]] = 1;

    std::vector<int> side(d.map.F, -1);
    auto flood = [&](int f0, int label) {
        std::vector<int> stack{f0};
        side[f0] = label;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (Dart dd : d.map.face_walk(f)) {
                if (wall[d.map.seg_of[dd]]) continue;
                int g = d.map.face_of[d.map.twin[dd]];
                if (side[g] == -1) {
                    side[g] = label;
                    stack.push_back(g);
                }
            }
        }
    };
    Dart d0 = d.chain[edge_index(d.n, a, b)][0];
    flood(d.map.face_of[d0], 0);
    int other = -1;
    for (int f = 0; f < d.map.F && other == -1; ++f)
        if (side[f] == -1) other = f;
    flood(other, 1);
    for (int f = 0; f < d.map.F; ++f)
        if (side[f] == -1) throw DrawingError(DrawingError::BadChain, "triangle cut not two-sided");

    TriangleDisc s0, s1;
    s0.tri = s1.tri = T;
    s0.in_side.assign(d.map.F, 0);
    s1.in_side.assign(d.map.F, 0);
    for (int f = 0; f < d.map.F; ++f) (side[f] == 0 ? s0 : s1).in_side[f] = 1;
    for (int v = 0; v < d.n; ++v) {
        if (v == a || v == b || v == c) continue;
        int f = d.map.face_of[d.map.vertex_dart[v]];
        (side[f] == 0 ? s0 : s1).contained.push_back(v);
    }
    return {std::move(s0), std::move(s1)};
}

/// Does every segment of D[uv] lie inside the closed disc?
inline bool edge_in_disc(const Drawing& d, int u, int v, const TriangleDisc& disc) {
    auto in_closed = [&](int w) {
        if (w == disc.tri[0] || w == disc.tri[1] || w == disc.tri[2]) return true;
        return std::binary_search(disc.contained.begin(), disc.contained.end(), w);
    };
    if (!in_closed(u) || !in_closed(v))
        throw DrawingError(DrawingError::EndpointOutside, "edge endpoint outside disc",
                           {u, v});
    for (Dart dd : d.chain[edge_index(d.n, u, v)]) {
        if (!disc.has_face(d.map.face_of[dd]) && !disc.has_face(d.map.face_of[d.map.twin[dd]]))
            return false;
    }
    return true;
}

// ── construction from raw parts (fixtures, generators, io) ─────────

/// Assemble a Drawing from a validated map plus per-edge chains.  Chains must
/// run u->v (u<v) through the map; crossing registry is derived.
inline Drawing make_drawing(int n, PlanarMap map, std::vector<std::vector<Dart>> chains,
                            std::optional<int> outer = std::nullopt) {
    Drawing d;
    d.n = n;
    d.map = std::move(map);
    d.chain = std::move(chains);
    d.outer_face = outer;
    if (static_cast<int>(d.chain.size()) != n * (n - 1) / 2)
        throw DrawingError(DrawingError::BadChain, "wrong number of edge chains");
    for (int e = 0; e < d.num_edges(); ++e) {
        auto [u, v] = edge_pair(n, e);
        const auto& ch = d.chain[e];
        if (ch.empty() || d.map.tail(ch.front()) != u || d.map.head(ch.back()) != v)
            throw DrawingError(DrawingError::BadChain, "chain endpoints mismatch", {u, v});
        for (size_t i = 0; i + 1 < ch.size(); ++i)
            if (d.map.head(ch[i]) != d.map.tail(ch[i + 1]))
                throw DrawingError(DrawingError::BadChain, "chain not connected", {u, v});
    }
    d.edges_at_vertex.assign(d.map.V, {-1, -1});
    std::vector<std::vector<int>> through(d.map.V);
    for (int e = 0; e < d.num_edges(); ++e)
        for (size_t i = 0; i + 1 < d.chain[e].size(); ++i)
            through[d.map.head(d.chain[e][i])].push_back(e);
    for (int x = n; x < d.map.V; ++x) {
        if (through[x].size() != 2)
            throw DrawingError(DrawingError::BadChain,
                               "interior chain vertex not on exactly two chains", {x});
        int e = std::min(through[x][0], through[x][1]);
        int f = std::max(through[x][0], through[x][1]);
        d.crossing_of[{e, f}] = x;
        d.edges_at_vertex[x] = {e, f};
    }
    return d;
}

}  // namespace kndraw
