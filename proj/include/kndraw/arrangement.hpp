#pragma once

// Arrangements of arcs and pseudolines in the disk model of the projective
// plane: the boundary circle carries an even number of endpoint slots with
// the antipodal pairing slot i <-> i+m, and each arc is an ordered list of
// crossing events.  The subdivision map is reconstructed exactly from this
// data (crossing orientations are forced by the slot order), so loading,
// validating and extending arrangements all share one code path.
//
// Dual paths (the constructive core of the Levi extension) follow the
// separator-greedy argument: repeatedly cross an incident arc that separates
// the current face from the target.

#include "kndraw/planar_map.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kndraw {

struct ArrangementError : std::runtime_error {
    enum Kind { BadStructure, InvalidLocator, SameLine, NotPseudolines };
    Kind kind;
    explicit ArrangementError(Kind k, const std::string& m) : std::runtime_error(m), kind(k) {}
};

struct DiskArrangement {
    int m = 0;                             // number of arcs
    std::vector<int> slots;                // 2m arc ids, ccw around the circle
    std::vector<std::vector<int>> events;  // per arc, partners in traversal order
    std::vector<char> pseudoline;          // per-arc flag

    /// Slot positions of arc a: (first, second) occurrence in `slots`.
    std::pair<int, int> slot_pair(int a) const {
        int s0 = -1, s1 = -1;
        for (int s = 0; s < static_cast<int>(slots.size()); ++s) {
            if (slots[s] != a) continue;
            (s0 < 0 ? s0 : s1) = s;
        }
        return {s0, s1};
    }
};

/// A point locator in an arrangement: either a face of the subdivision or a
/// point in the interior of one arc segment.
struct ArrPoint {
    enum Kind { Face, Segment } kind = Face;
    int face = -1;
    int arc = -1;
    int seg = -1;  // segment index along the arc: 0..#events

    static ArrPoint on_face(int f) {
        ArrPoint p;
        p.kind = Face;
        p.face = f;
        return p;
    }
    static ArrPoint on_segment(int arc, int seg) {
        ArrPoint p;
        p.kind = Segment;
        p.arc = arc;
        p.seg = seg;
        return p;
    }
};

// ── reconstruction ──────────────────────────────────────────────────

/// The subdivision map of a DiskArrangement, including the boundary circle.
struct ArrangementStructure {
    PlanarMap map;
    int outer_face = -1;
    std::vector<std::vector<Dart>> arc_chain;  // per arc, darts along traversal
    std::vector<Dart> circle_chain;            // gamma darts: slot s -> slot s+1
    std::map<std::pair<int, int>, int> crossing_vertex;
    std::vector<int> arc_of_seg;  // map segment -> arc id, or -1 for gamma
};

namespace detail {

/// Is slot s on the left of arc a (traversing a from its first slot to its
/// second)?  Left = the ccw circle interval from the second slot back to the
/// first.
inline bool slot_on_left(const DiskArrangement& arr, int a, int s) {
    auto [a0, a1] = arr.slot_pair(a);
    return s < a0 || s > a1;
}

}  // namespace detail

inline ArrangementStructure build_structure(const DiskArrangement& arr) {
    const int m = arr.m;
    if (static_cast<int>(arr.slots.size()) != 2 * m ||
        static_cast<int>(arr.events.size()) != m)
        throw ArrangementError(ArrangementError::BadStructure, "slot/event sizes mismatch");
    std::vector<int> cnt(m, 0);
    for (int a : arr.slots) {
        if (a < 0 || a >= m)
            throw ArrangementError(ArrangementError::BadStructure, "slot holds bad arc id");
        ++cnt[a];
    }
    for (int a = 0; a < m; ++a)
        if (cnt[a] != 2)
            throw ArrangementError(ArrangementError::BadStructure,
                                   "arc " + std::to_string(a) + " must own exactly two slots");
    // mutual consistency and at-most-one crossing
    for (int a = 0; a < m; ++a) {
        std::set<int> seen;
        for (int b : arr.events[a]) {
            if (b < 0 || b >= m || b == a)
                throw ArrangementError(ArrangementError::BadStructure, "bad crossing partner");
            if (!seen.insert(b).second)
                throw ArrangementError(ArrangementError::BadStructure,
                                       "arcs " + std::to_string(a) + "," + std::to_string(b) +
                                           " cross twice");
        }
    }
    for (int a = 0; a < m; ++a)
        for (int b : arr.events[a])
            if (std::count(arr.events[b].begin(), arr.events[b].end(), a) != 1)
                throw ArrangementError(ArrangementError::BadStructure,
                                       "crossing lists not mutually consistent");

    ArrangementStructure st;
    // vertices: slots 0..2m-1, then one per crossing
    int nv = 2 * m;
    for (int a = 0; a < m; ++a)
        for (int b : arr.events[a])
            if (a < b) st.crossing_vertex[{a, b}] = nv++;

    std::vector<Dart> twin, next;
    std::vector<int> vertex_of;
    auto fresh_pair = [&](int u, int v) {
        Dart d = static_cast<int>(twin.size());
        twin.push_back(d + 1);
        twin.push_back(d);
        vertex_of.push_back(u);
        vertex_of.push_back(v);
        next.push_back(-1);
        next.push_back(-1);
        return d;
    };

    // gamma circle
    st.circle_chain.resize(2 * m >= 1 ? 2 * m : 0);
    for (int s = 0; s < 2 * m; ++s) {
        Dart d = fresh_pair(s, (s + 1) % (2 * m));
        st.circle_chain[s] = d;
    }
    // arcs
    st.arc_chain.assign(m, {});
    std::vector<Dart> arc_end_dart(m * 2, -1);  // dart at each slot, pointing inward
    std::map<std::pair<int, int>, std::array<Dart, 2>> cross_darts_fwd;
    // walk each arc, creating its segments
    for (int a = 0; a < m; ++a) {
        auto [s0, s1] = arr.slot_pair(a);
        std::vector<int> seq{s0};
        for (int b : arr.events[a]) seq.push_back(st.crossing_vertex.at({std::min(a, b), std::max(a, b)}));
        seq.push_back(s1);
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            Dart d = fresh_pair(seq[i], seq[i + 1]);
            st.arc_chain[a].push_back(d);
        }
        arc_end_dart[s0] = st.arc_chain[a].front();
        arc_end_dart[s1] = twin[st.arc_chain[a].back()];
    }

    // rotations at slot vertices: ccw (gamma-forward, arc, gamma-backward)
    for (int s = 0; s < 2 * m; ++s) {
        Dart gf = st.circle_chain[s];                          // s -> s+1
        Dart gb = twin[st.circle_chain[(s + 2 * m - 1) % (2 * m)]];  // s -> s-1
        Dart ad = arc_end_dart[s];
        next[gf] = ad;
        next[ad] = gb;
        next[gb] = gf;
    }
    // rotations at crossings
    for (auto& [ab, x] : st.crossing_vertex) {
        auto [a, b] = ab;
        // position of b in a's events and vice versa
        int ia = static_cast<int>(std::find(arr.events[a].begin(), arr.events[a].end(), b) -
                                  arr.events[a].begin());
        int ib = static_cast<int>(std::find(arr.events[b].begin(), arr.events[b].end(), a) -
                                  arr.events[b].begin());
        Dart a_back = twin[st.arc_chain[a][ia]];  // x -> previous along a
        Dart a_fwd = st.arc_chain[a][ia + 1];     // x -> next along a
        Dart b_back = twin[st.arc_chain[b][ib]];
        Dart b_fwd = st.arc_chain[b][ib + 1];
        // does b arrive from the left of a?  b stays on its start side until
        // it crosses a, so test b's first slot.
        auto [b0, b1] = arr.slot_pair(b);
        (void)b1;
        bool from_left = detail::slot_on_left(arr, a, b0);
        std::array<Dart, 4> cyc = from_left ? std::array<Dart, 4>{a_fwd, b_back, a_back, b_fwd}
                                            : std::array<Dart, 4>{a_fwd, b_fwd, a_back, b_back};
        for (int i = 0; i < 4; ++i) next[cyc[i]] = cyc[(i + 1) % 4];
        (void)x;
    }

    st.map = build_map(std::move(twin), std::move(next), std::move(vertex_of));
    st.outer_face = st.map.face_of[st.map.twin[st.circle_chain[0]]];
    st.arc_of_seg.assign(st.map.seg_dart.size(), -1);
    for (int a = 0; a < m; ++a)
        for (Dart d : st.arc_chain[a]) st.arc_of_seg[st.map.seg_of[d]] = a;
    return st;
}

// ── validation ──────────────────────────────────────────────────────

struct ArrValidation {
    bool ok = true;
    std::string message;
    std::pair<int, int> witness{-1, -1};
};

inline ArrValidation validate_arrangement(const DiskArrangement& arr, bool require_pseudolines) {
    ArrValidation r;
    if (arr.m == 0) return r;
    try {
        // interleaving <=> crossing for every pair
        for (int a = 0; a < arr.m; ++a) {
            auto [a0, a1] = arr.slot_pair(a);
            if (a0 < 0 || a1 < 0)
                throw ArrangementError(ArrangementError::BadStructure, "arc missing slots");
            for (int b = a + 1; b < arr.m; ++b) {
                auto [b0, b1] = arr.slot_pair(b);
                bool in0 = a0 < b0 && b0 < a1;
                bool in1 = a0 < b1 && b1 < a1;
                bool interleave = in0 != in1;
                bool crossing = std::count(arr.events[a].begin(), arr.events[a].end(), b) > 0;
                if (interleave != crossing) {
                    r.ok = false;
                    r.message = interleave ? "interleaved endpoints but no crossing listed"
                                           : "crossing listed but endpoints do not interleave";
                    r.witness = {a, b};
                    return r;
                }
            }
        }
        ArrangementStructure st = build_structure(arr);  // Euler-checks planarity
        (void)st;
        if (require_pseudolines) {
            for (int a = 0; a < arr.m; ++a) {
                auto [a0, a1] = arr.slot_pair(a);
                if (a1 - a0 != arr.m) {
                    r.ok = false;
                    r.message = "pseudoline endpoints not antipodal";
                    r.witness = {a, -1};
                    return r;
                }
                if (static_cast<int>(arr.events[a].size()) != arr.m - 1) {
                    r.ok = false;
                    r.message = "pseudoline pair without a crossing";
                    r.witness = {a, -1};
                    return r;
                }
            }
        }
    } catch (const std::exception& e) {
        r.ok = false;
        r.message = e.what();
    }
    return r;
}

// ── disk dual and dual paths ────────────────────────────────────────

namespace detail {

/// Two-colour the interior faces by the side of arc `a`; outer face gets -1.
inline std::vector<int> side_coloring(const ArrangementStructure& st, int a) {
    std::vector<int> col(st.map.F, -1);
    std::vector<char> wall(st.map.seg_dart.size(), 0);
    for (Dart d : st.arc_chain[a]) wall[st.map.seg_of[d]] = 1;
    for (Dart d : st.circle_chain) wall[st.map.seg_of[d]] = 1;
    int label = 0;
    for (int f0 = 0; f0 < st.map.F; ++f0) {
        if (col[f0] != -1 || f0 == st.outer_face) continue;
        std::vector<int> stack{f0};
        col[f0] = label;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (Dart dd : st.map.face_walk(f)) {
                if (wall[st.map.seg_of[dd]]) continue;
                int g = st.map.face_of[st.map.twin[dd]];
                if (g == st.outer_face || col[g] != -1) continue;
                col[g] = label;
                stack.push_back(g);
            }
        }
        ++label;
    }
    if (label != 2) throw InternalError("arc does not two-colour the disk");
    return col;
}

/// Representative interior face of a locator, chosen on the same side of the
/// locator's arc as the reference point (for segment locators).
inline int locator_face(const ArrangementStructure& st, const DiskArrangement& arr,
                        const ArrPoint& p, const ArrPoint& other) {
    if (p.kind == ArrPoint::Face) {
        if (p.face < 0 || p.face >= st.map.F || p.face == st.outer_face)
            throw ArrangementError(ArrangementError::InvalidLocator, "bad face locator");
        return p.face;
    }
    if (p.arc < 0 || p.arc >= arr.m || p.seg < 0 ||
        p.seg >= static_cast<int>(st.arc_chain[p.arc].size()))
        throw ArrangementError(ArrangementError::InvalidLocator, "bad segment locator");
    Dart d = st.arc_chain[p.arc][p.seg];
    int left = st.map.face_of[d];
    int right = st.map.face_of[st.map.twin[d]];
    // pick the flank on the other point's side of this arc
    auto col = side_coloring(st, p.arc);
    int other_face;
    if (other.kind == ArrPoint::Face) {
        other_face = other.face;
    } else {
        Dart od = st.arc_chain[other.arc][other.seg];
        other_face = st.map.face_of[od];
    }
    if (other_face < 0 || other_face >= st.map.F || col[other_face] == -1)
        throw ArrangementError(ArrangementError::InvalidLocator, "bad companion locator");
    return col[left] == col[other_face] ? left : right;
}

}  // namespace detail

struct DualPath {
    std::vector<int> faces;
    std::vector<int> crossed_arcs;  // in crossing order
};

/// Walk in the disk dual from a to b crossing each arc at most once — in
/// fact, exactly the arcs separating a from b.  Greedy per the existence
/// proof: cross the first incident separating arc (first in the face walk
/// from the face's lowest dart).
inline DualPath dual_path(const DiskArrangement& arr, const ArrPoint& a, const ArrPoint& b) {
    ArrangementStructure st = build_structure(arr);
    if (a.kind == ArrPoint::Segment && b.kind == ArrPoint::Segment && a.arc == b.arc)
        throw ArrangementError(ArrangementError::InvalidLocator,
                               "locators on a common arc");
    int fa = detail::locator_face(st, arr, a, b);
    int fb = detail::locator_face(st, arr, b, a);

    std::vector<std::vector<int>> col(arr.m);
    for (int c = 0; c < arr.m; ++c) col[c] = detail::side_coloring(st, c);

    DualPath out;
    out.faces.push_back(fa);
    int cur = fa;
    std::set<int> crossed;
    while (cur != fb) {
        int pick_arc = -1;
        Dart pick_dart = -1;
        for (Dart dd : st.map.face_walk(cur)) {
            int c = st.arc_of_seg[st.map.seg_of[dd]];
            if (c < 0) continue;  // gamma
            if (col[c][cur] == col[c][fb]) continue;
            pick_arc = c;
            pick_dart = dd;
            break;
        }
        if (pick_arc < 0) throw InternalError("dual path: no separating arc incident");
        if (crossed.count(pick_arc)) throw InternalError("dual path crossed an arc twice");
        crossed.insert(pick_arc);
        cur = st.map.face_of[st.map.twin[pick_dart]];
        out.faces.push_back(cur);
        out.crossed_arcs.push_back(pick_arc);
    }
    return out;
}

// ── Levi enlargement ────────────────────────────────────────────────

/// Levi enlargement: a new pseudoline through points a and b, constructed by
/// little arcs across the host lines and separator-greedy dual paths in the
/// two faces of {A,B}; the returned arrangement is validated.
inline DiskArrangement levi_extend(const DiskArrangement& arr, ArrPoint a, ArrPoint b);

}  // namespace kndraw

#include "kndraw/levi_impl.hpp"
