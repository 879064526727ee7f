#pragma once

// Sphere-embedded combinatorial maps.  A map is a set of darts (directed
// half-edges) with a fixed-point-free involution `twin` and a permutation
// `next` giving the counterclockwise successor at the dart's origin vertex.
// Faces are the orbits of d -> prev[twin[d]] (the inverse of twin
// composed with next); with counterclockwise rotations this puts each face
// on the LEFT of its darts.  Only genus-0
// (Euler characteristic 2) maps are accepted, and bridges are rejected.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kndraw {

using Dart = int;

struct MapError : std::runtime_error {
    enum Kind { NonInvolution, NotPermutation, NonSphere, Bridge, BadVertexMap };
    Kind kind;
    MapError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// A verified construction invariant failed; indicates a precondition
/// violation (e.g. a non-face-convex input slipped through) or a bug.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

struct PlanarMap {
    int V = 0, E = 0, F = 0;
    std::vector<Dart> twin;
    std::vector<Dart> next;      // ccw successor at origin vertex
    std::vector<Dart> prev;      // inverse of next
    std::vector<int> vertex_of;  // dart -> origin vertex
    std::vector<int> face_of;    // dart -> face on its left
    std::vector<int> seg_of;     // dart -> segment (undirected map edge) id
    std::vector<Dart> vertex_dart;  // lowest dart at each vertex
    std::vector<Dart> face_dart;    // lowest dart of each face orbit
    std::vector<Dart> seg_dart;     // lower dart of each segment

    int num_darts() const { return static_cast<int>(twin.size()); }
    Dart face_next(Dart d) const { return prev[twin[d]]; }
    Dart face_prev(Dart d) const { return twin[next[d]]; }
    int head(Dart d) const { return vertex_of[twin[d]]; }
    int tail(Dart d) const { return vertex_of[d]; }
    int left_face(Dart d) const { return face_of[d]; }
    int right_face(Dart d) const { return face_of[twin[d]]; }

    int degree(int v) const {
        Dart d0 = vertex_dart[v];
        int deg = 0;
        Dart d = d0;
        do {
            ++deg;
            d = next[d];
        } while (d != d0);
        return deg;
    }

    std::vector<Dart> face_walk(int f) const {
        std::vector<Dart> walk;
        Dart d0 = face_dart[f];
        Dart d = d0;
        do {
            walk.push_back(d);
            d = face_next(d);
        } while (d != d0);
        return walk;
    }

    std::vector<Dart> vertex_darts(int v) const {
        std::vector<Dart> ds;
        Dart d0 = vertex_dart[v];
        Dart d = d0;
        do {
            ds.push_back(d);
            d = next[d];
        } while (d != d0);
        return ds;
    }
};

namespace detail {

inline void index_orbits(const std::vector<Dart>& perm, std::vector<int>& id_of,
                         std::vector<Dart>& rep) {
    int nd = static_cast<int>(perm.size());
    id_of.assign(nd, -1);
    rep.clear();
    for (Dart d = 0; d < nd; ++d) {
        if (id_of[d] >= 0) continue;
        int id = static_cast<int>(rep.size());
        rep.push_back(d);
        Dart e = d;
        while (id_of[e] < 0) {
            id_of[e] = id;
            e = perm[e];
        }
    }
}

}  // namespace detail

/// Build and fully validate a map from its permutation pair.
inline PlanarMap build_map(std::vector<Dart> twin, std::vector<Dart> next,
                           std::vector<int> vertex_of) {
    const int nd = static_cast<int>(twin.size());
    if (static_cast<int>(next.size()) != nd || static_cast<int>(vertex_of.size()) != nd)
        throw MapError(MapError::NotPermutation, "dart arrays differ in length");
    if (nd == 0 || nd % 2 != 0)
        throw MapError(MapError::NonInvolution, "dart count must be positive and even");

    for (Dart d = 0; d < nd; ++d) {
        if (twin[d] < 0 || twin[d] >= nd || twin[d] == d || twin[twin[d]] != d)
            throw MapError(MapError::NonInvolution, "twin is not a fixed-point-free involution");
    }
    std::vector<char> seen(nd, 0);
    for (Dart d = 0; d < nd; ++d) {
        if (next[d] < 0 || next[d] >= nd || seen[next[d]])
            throw MapError(MapError::NotPermutation, "next is not a permutation");
        seen[next[d]] = 1;
    }

    PlanarMap m;
    m.twin = std::move(twin);
    m.next = std::move(next);
    m.vertex_of = std::move(vertex_of);
    m.prev.assign(nd, -1);
    for (Dart d = 0; d < nd; ++d) m.prev[m.next[d]] = d;

    // vertex orbits must agree with vertex_of, with dense ids
    std::vector<int> orbit_id;
    std::vector<Dart> orbit_rep;
    detail::index_orbits(m.next, orbit_id, orbit_rep);
    int nv = 0;
    for (int v : m.vertex_of) nv = std::max(nv, v + 1);
    std::vector<int> vertex_orbit(nv, -1);
    for (Dart d = 0; d < nd; ++d) {
        int v = m.vertex_of[d];
        if (v < 0) throw MapError(MapError::BadVertexMap, "negative vertex id");
        if (vertex_orbit[v] == -1) vertex_orbit[v] = orbit_id[d];
        if (vertex_orbit[v] != orbit_id[d])
            throw MapError(MapError::BadVertexMap, "vertex spans several rotation orbits");
    }
    if (static_cast<int>(orbit_rep.size()) != nv)
        throw MapError(MapError::BadVertexMap, "rotation orbits do not match vertex ids");
    for (int v = 0; v < nv; ++v)
        if (vertex_orbit[v] == -1)
            throw MapError(MapError::BadVertexMap, "vertex id with no darts");
    m.V = nv;
    m.vertex_dart.assign(nv, -1);
    for (Dart d = nd - 1; d >= 0; --d) m.vertex_dart[m.vertex_of[d]] = d;

    // faces: orbits of d -> prev[twin[d]]
    std::vector<Dart> phi(nd);
    for (Dart d = 0; d < nd; ++d) phi[d] = m.prev[m.twin[d]];
    detail::index_orbits(phi, m.face_of, m.face_dart);
    m.F = static_cast<int>(m.face_dart.size());
    m.E = nd / 2;

    if (m.V - m.E + m.F != 2)
        throw MapError(MapError::NonSphere, "Euler characteristic is not 2 (V=" +
                                                std::to_string(m.V) + " E=" + std::to_string(m.E) +
                                                " F=" + std::to_string(m.F) + ")");
    for (Dart d = 0; d < nd; ++d)
        if (m.face_of[d] == m.face_of[m.twin[d]])
            throw MapError(MapError::Bridge, "bridge dart " + std::to_string(d));

    // segments
    m.seg_of.assign(nd, -1);
    for (Dart d = 0; d < nd; ++d) {
        if (m.seg_of[d] >= 0) continue;
        int s = static_cast<int>(m.seg_dart.size());
        m.seg_of[d] = m.seg_of[m.twin[d]] = s;
        m.seg_dart.push_back(std::min(d, m.twin[d]));
    }
    return m;
}

/// All face walks, indexed by face id.
inline std::vector<std::vector<Dart>> faces(const PlanarMap& m) {
    std::vector<std::vector<Dart>> out(m.F);
    for (int f = 0; f < m.F; ++f) out[f] = m.face_walk(f);
    return out;
}

struct DualGraph {
    int num_faces = 0;
    struct Edge {
        int f1, f2;   // faces left of the segment's two darts
        int segment;  // map segment id
    };
    std::vector<Edge> edges;                 // one per map segment, indexed by segment id
    std::vector<std::vector<int>> incident;  // face -> incident dual edge ids
};

inline DualGraph dual_graph(const PlanarMap& m) {
    DualGraph dg;
    dg.num_faces = m.F;
    dg.edges.resize(m.seg_dart.size());
    dg.incident.assign(m.F, {});
    for (size_t s = 0; s < m.seg_dart.size(); ++s) {
        Dart d = m.seg_dart[s];
        dg.edges[s] = {m.face_of[d], m.face_of[m.twin[d]], static_cast<int>(s)};
        dg.incident[dg.edges[s].f1].push_back(static_cast<int>(s));
        dg.incident[dg.edges[s].f2].push_back(static_cast<int>(s));
    }
    return dg;
}

/// Mirror image: reverses every rotation (and hence the global orientation).
inline PlanarMap mirror(const PlanarMap& m) {
    return build_map(m.twin, m.prev, m.vertex_of);
}

}  // namespace kndraw
