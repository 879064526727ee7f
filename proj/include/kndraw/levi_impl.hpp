#pragma once

// Implementation of the Levi enlargement on the disk model.  The two dual
// paths run inside the two faces of the sub-arrangement {A,B} in the
// projective plane; faces are merged across antipodal boundary segments
// through "portal" dual edges, and the whole boundary chord of a region
// counts as a single crossable obstacle (crossing it fixes where the new
// pseudoline meets the circle).

#include "kndraw/arrangement.hpp"

namespace kndraw {

namespace detail {

struct LeviEntry {
    bool portal = false;
    int arc = -1, seg = -1;  // crossing of `arc` inside its segment `seg`
    int gamma_seg = -1;      // portal: the gamma segment exited through
};

struct RegionDual {
    struct Edge {
        int f1, f2;
        int obstacle;
        LeviEntry entry_from_f1;  // entry when crossing f1 -> f2
    };
    std::vector<char> in;                    // face membership
    std::vector<Edge> edges;
    std::vector<std::vector<int>> incident;  // face -> edge ids, face-walk order
    int num_obstacles = 0;

    std::vector<int> color_without(const ArrangementStructure& st, int skip_obstacle) const {
        std::vector<int> col(st.map.F, -1);
        int label = 0;
        for (int f0 = 0; f0 < st.map.F; ++f0) {
            if (!in[f0] || col[f0] != -1) continue;
            std::vector<int> stack{f0};
            col[f0] = label;
            while (!stack.empty()) {
                int f = stack.back();
                stack.pop_back();
                for (int ei : incident[f]) {
                    const Edge& e = edges[ei];
                    if (e.obstacle == skip_obstacle) continue;
                    int g = e.f1 == f ? e.f2 : e.f1;
                    if (col[g] == -1) {
                        col[g] = label;
                        stack.push_back(g);
                    }
                }
            }
            ++label;
        }
        return col;
    }
};

/// Build the dual of one {A,B}-class region.  Obstacles: one per other arc
/// (its segments of this class) and one portal (all boundary-circle segments
/// whose inner face is in the region).
inline RegionDual build_region(const ArrangementStructure& st, const DiskArrangement& arr,
                               int A, int B, const std::vector<int>& cls, int want) {
    RegionDual rd;
    rd.in.assign(st.map.F, 0);
    for (int f = 0; f < st.map.F; ++f)
        if (f != st.outer_face && cls[f] == want) rd.in[f] = 1;

    std::vector<int> obstacle_of_arc(arr.m, -1);
    for (int c = 0; c < arr.m; ++c) {
        if (c == A || c == B) continue;
        obstacle_of_arc[c] = rd.num_obstacles++;
    }
    const int portal = rd.num_obstacles++;

    const int n_gamma = static_cast<int>(st.circle_chain.size());
    auto inner_face = [&](int gs) {
        Dart d = st.circle_chain[gs];
        int f1 = st.map.face_of[d];
        int f2 = st.map.face_of[st.map.twin[d]];
        return f1 == st.outer_face ? f2 : f1;
    };

    // arc segment edges
    for (int c = 0; c < arr.m; ++c) {
        if (c == A || c == B) continue;
        for (size_t k = 0; k < st.arc_chain[c].size(); ++k) {
            Dart d = st.arc_chain[c][k];
            int f1 = st.map.face_of[d];
            int f2 = st.map.face_of[st.map.twin[d]];
            if (!rd.in[f1] || !rd.in[f2]) continue;
            LeviEntry e;
            e.arc = c;
            e.seg = static_cast<int>(k);
            rd.edges.push_back({f1, f2, obstacle_of_arc[c], e});
        }
    }
    // portal edges (each antipodal pair once)
    for (int gs = 0; gs < n_gamma / 2; ++gs) {
        int anti = gs + n_gamma / 2;
        int f1 = inner_face(gs);
        int f2 = inner_face(anti);
        if (!rd.in[f1] || !rd.in[f2]) continue;
        LeviEntry e;
        e.portal = true;
        e.gamma_seg = gs;
        rd.edges.push_back({f1, f2, portal, e});
    }

    // incidence in deterministic order
    rd.incident.assign(st.map.F, {});
    for (size_t i = 0; i < rd.edges.size(); ++i) {
        rd.incident[rd.edges[i].f1].push_back(static_cast<int>(i));
        if (rd.edges[i].f2 != rd.edges[i].f1)
            rd.incident[rd.edges[i].f2].push_back(static_cast<int>(i));
    }
    return rd;
}

struct LeviPathResult {
    std::vector<LeviEntry> entries;
    int portals = 0;
};

inline LeviPathResult region_path(const ArrangementStructure& st, RegionDual& rd, int fa,
                                  int fb) {
    if (!rd.in[fa] || !rd.in[fb]) throw InternalError("levi region path endpoints outside");
    std::vector<std::vector<int>> colors(rd.num_obstacles);
    for (int ob = 0; ob < rd.num_obstacles; ++ob) colors[ob] = rd.color_without(st, ob);

    LeviPathResult res;
    int cur = fa;
    std::vector<char> used(rd.num_obstacles, 0);
    int guard = 0;
    while (cur != fb) {
        if (++guard > st.map.F + 5) throw InternalError("levi region path: runaway");
        int chosen = -1;
        for (int ei : rd.incident[cur]) {
            int ob = rd.edges[ei].obstacle;
            if (colors[ob][cur] == colors[ob][fb]) continue;
            chosen = ei;
            break;
        }
        if (chosen < 0) throw InternalError("levi region path: stuck");
        const auto& e = rd.edges[chosen];
        if (used[e.obstacle]) throw InternalError("levi region path: obstacle crossed twice");
        used[e.obstacle] = 1;
        LeviEntry entry = e.entry_from_f1;
        if (entry.portal && cur != e.f1) {
            // crossed the portal the other way: the exit gap is the antipode
            int n_gamma = static_cast<int>(st.circle_chain.size());
            entry.gamma_seg = (entry.gamma_seg + n_gamma / 2) % n_gamma;
        }
        res.entries.push_back(entry);
        if (entry.portal) ++res.portals;
        cur = e.f1 == cur ? e.f2 : e.f1;
    }
    return res;
}

/// Replace a face locator by a point on a bounding segment of its projective
/// face: lowest (arc, segment) whose arc differs from `forbid`.
inline ArrPoint replace_face_point(const ArrangementStructure& st, const DiskArrangement& arr,
                                   int face, int forbid) {
    if (face < 0 || face >= st.map.F || face == st.outer_face)
        throw ArrangementError(ArrangementError::InvalidLocator, "bad face locator");
    // merged projective face: closure across antipodal gamma segments
    const int n_gamma = static_cast<int>(st.circle_chain.size());
    auto inner_face = [&](int gs) {
        Dart d = st.circle_chain[gs];
        int f1 = st.map.face_of[d];
        int f2 = st.map.face_of[st.map.twin[d]];
        return f1 == st.outer_face ? f2 : f1;
    };
    std::vector<char> merged(st.map.F, 0);
    std::vector<int> stack{face};
    merged[face] = 1;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int gs = 0; gs < n_gamma; ++gs) {
            if (inner_face(gs) != f) continue;
            int g = inner_face((gs + n_gamma / 2) % n_gamma);
            if (!merged[g]) {
                merged[g] = 1;
                stack.push_back(g);
            }
        }
    }
    int best_arc = -1, best_seg = -1;
    for (int c = 0; c < arr.m; ++c) {
        if (c == forbid) continue;
        for (size_t k = 0; k < st.arc_chain[c].size(); ++k) {
            Dart d = st.arc_chain[c][k];
            if (merged[st.map.face_of[d]] || merged[st.map.face_of[st.map.twin[d]]]) {
                best_arc = c;
                best_seg = static_cast<int>(k);
                break;
            }
        }
        if (best_arc >= 0) break;
    }
    if (best_arc < 0)
        throw ArrangementError(ArrangementError::InvalidLocator,
                               "face has no replacement segment");
    return ArrPoint::on_segment(best_arc, best_seg);
}

}  // namespace detail

inline DiskArrangement levi_extend(const DiskArrangement& arr, ArrPoint a, ArrPoint b) {
    // trivial hosts
    if (arr.m == 0) {
        DiskArrangement out;
        out.m = 1;
        out.slots = {0, 0};
        out.events = {{}};
        out.pseudoline = {1};
        return out;
    }
    {
        ArrValidation v = validate_arrangement(arr, true);
        if (!v.ok)
            throw ArrangementError(ArrangementError::NotPseudolines,
                                   "host is not a pseudoline arrangement: " + v.message);
    }
    if (arr.m == 1) {
        DiskArrangement out;
        out.m = 2;
        out.slots = {0, 1, 0, 1};
        out.events = {{1}, {0}};
        out.pseudoline = {1, 1};
        return out;
    }

    ArrangementStructure st = build_structure(arr);

    // resolve locators to segment points on distinct arcs
    if (a.kind == ArrPoint::Segment && b.kind == ArrPoint::Segment && a.arc == b.arc)
        throw ArrangementError(ArrangementError::SameLine, "points on a common pseudoline");
    if (a.kind == ArrPoint::Face) a = detail::replace_face_point(st, arr, a.face,
                                                                 b.kind == ArrPoint::Segment ? b.arc : -1);
    if (b.kind == ArrPoint::Face) b = detail::replace_face_point(st, arr, b.face, a.arc);
    if (a.arc == b.arc)
        throw ArrangementError(ArrangementError::SameLine, "replacement hit a common line");
    const int A = a.arc, B = b.arc;
    if (a.seg < 0 || a.seg >= static_cast<int>(st.arc_chain[A].size()) || b.seg < 0 ||
        b.seg >= static_cast<int>(st.arc_chain[B].size()))
        throw ArrangementError(ArrangementError::InvalidLocator, "segment index out of range");

    // class of each interior face: XOR of the side colourings of A and B
    auto colA = detail::side_coloring(st, A);
    auto colB = detail::side_coloring(st, B);
    std::vector<int> cls(st.map.F, -1);
    for (int f = 0; f < st.map.F; ++f)
        if (f != st.outer_face) cls[f] = colA[f] ^ colB[f];

    Dart da = st.arc_chain[A][a.seg];
    int a1 = st.map.face_of[da], a2 = st.map.face_of[st.map.twin[da]];
    Dart db = st.arc_chain[B][b.seg];
    int b1 = st.map.face_of[db], b2 = st.map.face_of[st.map.twin[db]];
    if (cls[a1] == cls[a2] || cls[b1] == cls[b2])
        throw InternalError("little-arc flanks fell in one class");
    int want1 = cls[a1];
    int bp = (cls[b1] == want1) ? b1 : b2;   // b'
    int bpp = (bp == b1) ? b2 : b1;          // b''

    detail::RegionDual r1 = detail::build_region(st, arr, A, B, cls, want1);
    detail::RegionDual r2 = detail::build_region(st, arr, A, B, cls, 1 - want1);
    auto p1 = detail::region_path(st, r1, a1, bp);
    auto p2 = detail::region_path(st, r2, a2, bpp);
    if (p1.portals + p2.portals != 1)
        throw InternalError("new pseudoline must cross the boundary circle exactly once");

    // assemble the closed traversal:  xA, p1..., xB, reverse(p2)...
    std::vector<detail::LeviEntry> cyc;
    {
        detail::LeviEntry xa;
        xa.arc = A;
        xa.seg = a.seg;
        cyc.push_back(xa);
        for (auto& e : p1.entries) cyc.push_back(e);
        detail::LeviEntry xb;
        xb.arc = B;
        xb.seg = b.seg;
        cyc.push_back(xb);
        for (auto it = p2.entries.rbegin(); it != p2.entries.rend(); ++it) {
            detail::LeviEntry e = *it;
            // reversed traversal: a portal exit becomes the antipodal gap
            if (e.portal) e.gamma_seg = (e.gamma_seg + arr.m) % (2 * arr.m);
            cyc.push_back(e);
        }
    }
    // cut at the portal
    int cut = -1;
    for (size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i].portal) cut = static_cast<int>(i);
    std::vector<detail::LeviEntry> lin;
    for (size_t i = 1; i < cyc.size(); ++i) lin.push_back(cyc[(cut + i) % cyc.size()]);

    // slot gap positions of the two new endpoints
    int g_exit = cyc[cut].gamma_seg;            // exits through this gamma segment
    int g_entry = (g_exit + arr.m) % (2 * arr.m);  // re-enters antipodally
    // the linear traversal runs entry -> exit; normalize to lower-slot-first
    int p_lo = std::min(g_entry, g_exit), p_hi = std::max(g_entry, g_exit);
    bool reversed = (g_entry != p_lo);
    if (reversed) std::reverse(lin.begin(), lin.end());

    // build the new arrangement
    DiskArrangement out;
    out.m = arr.m + 1;
    const int nu = arr.m;  // id of the new arc
    out.slots.reserve(2 * out.m);
    for (int s = 0; s < 2 * arr.m; ++s) {
        out.slots.push_back(arr.slots[s]);
        if (s == p_lo || s == p_hi) out.slots.push_back(nu);
    }
    out.events = arr.events;
    out.events.resize(out.m);
    for (auto& e : lin) out.events[nu].push_back(e.arc);
    for (auto& e : lin)
        out.events[e.arc].insert(out.events[e.arc].begin() + e.seg, nu);
    out.pseudoline = arr.pseudoline;
    out.pseudoline.push_back(1);

    ArrValidation v = validate_arrangement(out, true);
    if (!v.ok) throw InternalError("levi result failed validation: " + v.message);
    return out;
}

}  // namespace kndraw
