#pragma once

// Convexity hierarchy of good drawings: convex discs, convex and face-convex
// drawings, the forbidden crossing-K4 configuration, side sets of an edge,
// convex hulls inside a face-convex drawing, and the structural-lemma
// checkers used as test oracles.  Everything works on the planarized map
// through dual floods; no geometry.

#include "kndraw/drawing.hpp"

#include <array>
#include <optional>
#include <set>
#include <vector>

namespace kndraw {

// ── regions bounded by a set of drawn edges ─────────────────────────

namespace detail {

/// Faces reachable from `start` without crossing any segment of the listed
/// edges' chains.
inline std::vector<char> flood_region(const Drawing& d, int start_face,
                                      const std::vector<int>& wall_edges) {
    std::vector<char> wall_seg(d.map.seg_dart.size(), 0);
    for (int e : wall_edges)
        for (Dart dd : d.chain[e]) wall_seg[d.map.seg_of[dd]] = 1;
    std::vector<char> in(d.map.F, 0);
    std::vector<int> stack{start_face};
    in[start_face] = 1;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (Dart dd : d.map.face_walk(f)) {
            if (wall_seg[d.map.seg_of[dd]]) continue;
            int g = d.map.face_of[d.map.twin[dd]];
            if (!in[g]) {
                in[g] = 1;
                stack.push_back(g);
            }
        }
    }
    return in;
}

/// Boundary walk of a union-of-faces region, keeping the region on the left.
/// Returns the walk through the component of the boundary containing the
/// lowest-id boundary dart.
inline std::vector<Dart> region_boundary(const PlanarMap& m, const std::vector<char>& in) {
    auto interior = [&](Dart dd) {
        return in[m.face_of[dd]] && in[m.face_of[m.twin[dd]]];
    };
    Dart start = -1;
    for (Dart dd = 0; dd < m.num_darts() && start < 0; ++dd)
        if (in[m.face_of[dd]] && !in[m.face_of[m.twin[dd]]]) start = dd;
    if (start < 0) throw InternalError("region has no boundary");
    std::vector<Dart> walk;
    Dart dd = start;
    do {
        walk.push_back(dd);
        Dart e = m.prev[m.twin[dd]];
        while (interior(e)) e = m.prev[e];
        if (!in[m.face_of[e]] || in[m.face_of[m.twin[e]]])
            throw InternalError("region boundary walk left the boundary");
        dd = e;
        if (walk.size() > m.twin.size()) throw InternalError("runaway boundary walk");
    } while (dd != start);
    return walk;
}

}  // namespace detail

// ── convex discs and convex drawings ────────────────────────────────

/// Definition of a convex side: every edge joining vertices of the closed
/// disc stays inside it.
inline bool is_convex_disc(const Drawing& d, const TriangleDisc& side) {
    std::vector<int> verts(side.contained);
    verts.insert(verts.end(), side.tri.begin(), side.tri.end());
    std::sort(verts.begin(), verts.end());
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (!edge_in_disc(d, verts[i], verts[j], side)) return false;
    return true;
}

struct ConvexityWitness {
    bool ok = true;
    std::array<int, 3> triangle{-1, -1, -1};
};

/// Is every 3-cycle bounded by at least one convex closed disc?
inline ConvexityWitness is_convex_drawing(const Drawing& d) {
    for (int a = 0; a < d.n; ++a)
        for (int b = a + 1; b < d.n; ++b)
            for (int c = b + 1; c < d.n; ++c) {
                auto [s0, s1] = triangle_sides(d, {a, b, c});
                if (!is_convex_disc(d, s0) && !is_convex_disc(d, s1))
                    return {false, {a, b, c}};
            }
    return {};
}

/// All faces F such that, for every triangle, the closed disc away from F is
/// convex.
inline std::vector<int> face_convex_witnesses(const Drawing& d) {
    std::vector<char> allowed(d.map.F, 1);
    for (int a = 0; a < d.n; ++a)
        for (int b = a + 1; b < d.n; ++b)
            for (int c = b + 1; c < d.n; ++c) {
                auto [s0, s1] = triangle_sides(d, {a, b, c});
                bool c0 = is_convex_disc(d, s0);
                bool c1 = is_convex_disc(d, s1);
                if (c0 && c1) continue;
                if (!c0 && !c1) return {};
                const TriangleDisc& must_hold_f = c0 ? s1 : s0;  // F must avoid the bad side
                for (int f = 0; f < d.map.F; ++f)
                    if (!must_hold_f.has_face(f)) allowed[f] = 0;
            }
    std::vector<int> out;
    for (int f = 0; f < d.map.F; ++f)
        if (allowed[f]) out.push_back(f);
    return out;
}

inline bool is_face_convex_with(const Drawing& d, int F) {
    for (int a = 0; a < d.n; ++a)
        for (int b = a + 1; b < d.n; ++b)
            for (int c = b + 1; c < d.n; ++c) {
                auto [s0, s1] = triangle_sides(d, {a, b, c});
                const TriangleDisc& avoid = s0.has_face(F) ? s1 : s0;
                if (!is_convex_disc(d, avoid)) return false;
            }
    return true;
}

// ── forbidden configuration (crossing K4 vs. candidate outer face) ──

struct ForbiddenConfig {
    bool ok = true;
    std::array<int, 4> k4{-1, -1, -1, -1};  // witness when !ok
};

/// True iff for every crossing K4 J, F lies in the face of D[J] bounded by a
/// 4-cycle of J — equivalently, F is on the same side as the fourth vertex
/// for each triangle of J.
inline ForbiddenConfig forbidden_config_check(const Drawing& d, int F) {
    for (int a = 0; a < d.n; ++a)
        for (int b = a + 1; b < d.n; ++b)
            for (int c = b + 1; c < d.n; ++c)
                for (int e = c + 1; e < d.n; ++e) {
                    if (!k4_type(d, {a, b, c, e}).crossing) continue;
                    std::array<int, 4> vs{a, b, c, e};
                    for (int skip = 0; skip < 4; ++skip) {
                        std::array<int, 3> T{};
                        int k = 0, fourth = -1;
                        for (int i = 0; i < 4; ++i)
                            (i == skip ? fourth : T[k++]) = vs[i];
                        auto [s0, s1] = triangle_sides(d, T);
                        const TriangleDisc& with_f = s0.has_face(F) ? s0 : s1;
                        if (!std::binary_search(with_f.contained.begin(),
                                                with_f.contained.end(), fourth))
                            return {false, vs};
                    }
                }
    return {};
}

// ── side sets ───────────────────────────────────────────────────────

struct SideSets {
    int u = -1, v = -1;   // the directed edge u->v that fixes the labels
    std::vector<int> side1, side2;  // sorted; both include u and v

    bool on_side1(int w) const {
        return std::binary_search(side1.begin(), side1.end(), w);
    }
    bool on_side2(int w) const {
        return std::binary_search(side2.begin(), side2.end(), w);
    }
};

/// Side sets of the directed edge u->v relative to witness face F: w is on
/// side 1 when the F-avoiding disc of {u,v,w} lies to the left of u->v.
inline SideSets side_sets_directed(const Drawing& d, int F, int u, int v) {
    SideSets s;
    s.u = u;
    s.v = v;
    s.side1 = {u, v};
    s.side2 = {u, v};
    for (int w = 0; w < d.n; ++w) {
        if (w == u || w == v) continue;
        auto [s0, s1] = triangle_sides(d, {u, v, w});
        const TriangleDisc& avoid = s0.has_face(F) ? s1 : s0;
        Dart d0 = d.oriented_chain(u, v)[0];
        bool left = avoid.has_face(d.map.face_of[d0]);
        (left ? s.side1 : s.side2).push_back(w);
    }
    std::sort(s.side1.begin(), s.side1.end());
    std::sort(s.side2.begin(), s.side2.end());
    return s;
}

/// Spec labelling: orientation u->v with u < v.
inline SideSets side_sets(const Drawing& d, int F, int u, int v) {
    if (u > v) std::swap(u, v);
    return side_sets_directed(d, F, u, v);
}

// ── convex hulls ────────────────────────────────────────────────────

struct ConvexHull {
    std::vector<int> members;       // W, sorted
    std::vector<int> cycle;         // C_W: graph vertices in cyclic boundary order
    std::vector<char> region_face;  // faces of the F-side region (complement of disc)
    std::vector<char> disc_face;    // faces of the closed disc Δ_W
    std::vector<Dart> boundary;     // boundary walk darts (region on the left)

    bool cycle_has_edge(int a, int b) const {
        int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) {
            int x = cycle[i], y = cycle[(i + 1) % k];
            if ((x == a && y == b) || (x == b && y == a)) return true;
        }
        return false;
    }
};

/// Convex hull of W in a face-convex drawing with witness face F: boundary
/// cycle of the face of D[W] containing F, and the closed disc on the other
/// side.
inline ConvexHull convex_hull(const Drawing& d, int F, std::vector<int> W) {
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());
    if (W.size() < 3) throw DrawingError(DrawingError::TooFewVertices, "hull needs |W| >= 3");
    ConvexHull h;
    h.members = W;
    std::vector<int> walls;
    for (size_t i = 0; i < W.size(); ++i)
        for (size_t j = i + 1; j < W.size(); ++j) walls.push_back(edge_index(d.n, W[i], W[j]));
    h.region_face = detail::flood_region(d, F, walls);
    h.disc_face.assign(d.map.F, 0);
    for (int f = 0; f < d.map.F; ++f) h.disc_face[f] = h.region_face[f] ? 0 : 1;
    h.boundary = detail::region_boundary(d.map, h.region_face);
    for (Dart dd : h.boundary) {
        int vtx = d.map.tail(dd);
        if (d.is_graph_vertex(vtx)) h.cycle.push_back(vtx);
    }
    // sanity: every cycle vertex is in W and appears exactly once
    std::set<int> seen;
    for (int x : h.cycle) {
        if (!std::binary_search(W.begin(), W.end(), x))
            throw InternalError("hull boundary met a vertex outside W");
        if (!seen.insert(x).second)
            throw InternalError("hull boundary is not a cycle (vertex repeated)");
    }
    return h;
}

/// Is graph vertex x in the closed disc Δ_W?
inline bool hull_contains_vertex(const Drawing& d, const ConvexHull& h, int x) {
    for (int c : h.cycle)
        if (c == x) return true;
    return h.disc_face[d.map.face_of[d.map.vertex_dart[x]]] != 0;
}

// ── Lemma 3.4 / 3.5 oracles ─────────────────────────────────────────

namespace detail {

/// Segments of the closed disc (interior plus boundary) of a hull.
inline std::vector<char> closed_disc_segments(const Drawing& d, const ConvexHull& h) {
    std::vector<char> in(d.map.seg_dart.size(), 0);
    for (size_t s = 0; s < d.map.seg_dart.size(); ++s) {
        Dart dd = d.map.seg_dart[s];
        if (h.disc_face[d.map.face_of[dd]] && h.disc_face[d.map.face_of[d.map.twin[dd]]])
            in[s] = 1;
    }
    for (Dart dd : h.boundary) in[d.map.seg_of[dd]] = 1;
    return in;
}

/// Map vertices of the closed disc of a hull.
inline std::vector<char> closed_disc_vertices(const Drawing& d, const ConvexHull& h) {
    std::vector<char> in(d.map.V, 0);
    for (int v = 0; v < d.map.V; ++v) {
        // a vertex is in the closed disc iff some incident dart has a
        // disc face on one of its sides
        for (Dart dd : d.map.vertex_darts(v)) {
            if (h.disc_face[d.map.face_of[dd]] || h.disc_face[d.map.face_of[d.map.twin[dd]]]) {
                in[v] = 1;
                break;
            }
        }
    }
    return in;
}

}  // namespace detail

struct Lemma34Report {
    bool item1 = true;  // nonempty sides <=> uv not on C_{W u {u,v}}
    bool item2 = true;  // no side-i vertex inside the hull of the j side
    bool item3 = true;  // no crossing between a side-1 edge and a side-2 edge
    bool item4 = true;  // closed hull discs of the two sides meet exactly in D[uv]
    std::vector<int> witness;
    bool all() const { return item1 && item2 && item3 && item4; }
};

inline Lemma34Report check_lemma34(const Drawing& d, int F, int u, int v,
                                   const std::vector<int>& W_in) {
    Lemma34Report r;
    if (u > v) std::swap(u, v);
    SideSets ss = side_sets(d, F, u, v);
    std::vector<int> W(W_in);
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());

    std::vector<int> Wu(W);  // W u {u,v}
    for (int x : {u, v})
        if (!std::binary_search(Wu.begin(), Wu.end(), x))
            Wu.insert(std::lower_bound(Wu.begin(), Wu.end(), x), x);

    std::vector<int> w1, w2;  // (W u {u,v}) ∩ side_i
    for (int x : Wu) {
        if (ss.on_side1(x)) w1.push_back(x);
        if (ss.on_side2(x)) w2.push_back(x);
    }
    // u,v sit in both sides, so "nonempty" means a third element
    bool side1_nonempty = false, side2_nonempty = false;
    for (int x : w1)
        if (x != u && x != v) side1_nonempty = true;
    for (int x : w2)
        if (x != u && x != v) side2_nonempty = true;

    // (3.4.1)
    bool incident;
    if (Wu.size() < 3) {
        incident = true;  // hull degenerates to the edge itself
    } else {
        ConvexHull hW = convex_hull(d, F, Wu);
        incident = hW.cycle_has_edge(u, v);
    }
    if ((side1_nonempty && side2_nonempty) != !incident) {
        r.item1 = false;
        r.witness = {u, v};
    }

    // (3.4.2)
    for (int pass = 0; pass < 2; ++pass) {
        const auto& wj = pass == 0 ? w2 : w1;
        if (wj.size() < 3) continue;  // disc degenerates to D[uv]; no interior
        ConvexHull hj = convex_hull(d, F, wj);
        const auto& side_i_all = pass == 0 ? ss.side1 : ss.side2;
        for (int x : side_i_all) {
            if (x == u || x == v) continue;
            if (hull_contains_vertex(d, hj, x)) {
                r.item2 = false;
                r.witness = {u, v, x};
            }
        }
    }

    // (3.4.3): registry sweep
    for (const auto& [ef, xv] : d.crossing_of) {
        (void)xv;
        auto [a1, b1] = edge_pair(d.n, ef.first);
        auto [a2, b2] = edge_pair(d.n, ef.second);
        bool first_in_1 = ss.on_side1(a1) && ss.on_side1(b1);
        bool first_in_2 = ss.on_side2(a1) && ss.on_side2(b1);
        bool second_in_1 = ss.on_side1(a2) && ss.on_side1(b2);
        bool second_in_2 = ss.on_side2(a2) && ss.on_side2(b2);
        if ((first_in_1 && second_in_2) || (first_in_2 && second_in_1)) {
            r.item3 = false;
            r.witness = {a1, b1, a2, b2};
        }
    }

    // (3.4.4)
    if (ss.side1.size() >= 3 && ss.side2.size() >= 3) {
        ConvexHull h1 = convex_hull(d, F, ss.side1);
        ConvexHull h2 = convex_hull(d, F, ss.side2);
        for (int f = 0; f < d.map.F; ++f)
            if (h1.disc_face[f] && h2.disc_face[f]) {
                r.item4 = false;
                r.witness = {u, v, f};
            }
        auto seg1 = detail::closed_disc_segments(d, h1);
        auto seg2 = detail::closed_disc_segments(d, h2);
        std::vector<char> uv_seg(d.map.seg_dart.size(), 0);
        for (Dart dd : d.chain[edge_index(d.n, u, v)]) uv_seg[d.map.seg_of[dd]] = 1;
        for (size_t s = 0; s < seg1.size(); ++s)
            if ((seg1[s] && seg2[s]) != (uv_seg[s] != 0)) {
                r.item4 = false;
                r.witness = {u, v};
            }
        auto vx1 = detail::closed_disc_vertices(d, h1);
        auto vx2 = detail::closed_disc_vertices(d, h2);
        std::vector<char> uv_vert(d.map.V, 0);
        uv_vert[u] = uv_vert[v] = 1;
        for (Dart dd : d.chain[edge_index(d.n, u, v)]) uv_vert[d.map.head(dd)] = 1;
        for (int x = 0; x < d.map.V; ++x)
            if ((vx1[x] && vx2[x]) != (uv_vert[x] != 0)) {
                r.item4 = false;
                r.witness = {u, v, x};
            }
    }
    return r;
}

/// Lemma 3.5 oracle: no four vertices of C_W alternate between the two sides
/// of uv around the cycle.
inline bool check_lemma35(const Drawing& d, int F, int u, int v, const std::vector<int>& W_in) {
    if (u > v) std::swap(u, v);
    std::vector<int> W(W_in);
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());
    if (W.size() < 4) return true;
    SideSets ss = side_sets(d, F, u, v);
    ConvexHull h = convex_hull(d, F, W);
    const auto& cyc = h.cycle;
    int k = static_cast<int>(cyc.size());
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c)
                for (int e = c + 1; e < k; ++e) {
                    bool pat1 = ss.on_side1(cyc[a]) && ss.on_side2(cyc[b]) &&
                                ss.on_side1(cyc[c]) && ss.on_side2(cyc[e]);
                    bool pat2 = ss.on_side2(cyc[a]) && ss.on_side1(cyc[b]) &&
                                ss.on_side2(cyc[c]) && ss.on_side1(cyc[e]);
                    if (pat1 || pat2) return false;
                }
    return true;
}

}  // namespace kndraw
