#pragma once

// Mutable planar map used by the constructive routines: curves (open chains
// of darts) can be inserted through a sequence of existing segments, and
// existing segments can be subdivided.  Rotations are maintained exactly;
// faces are recomputed on refresh() and validated against Euler's formula.

#include "kndraw/planar_map.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace kndraw {

struct MutableMap {
    std::vector<Dart> twin, next, prev;
    std::vector<int> vertex_of;
    std::vector<int> curve_of;             // dart -> owning curve, or -1
    std::vector<char> core;                // dart -> part of the original map
    std::vector<Dart> dart_at;             // vertex -> one dart (-1 while isolated)
    std::vector<std::vector<Dart>> curves;  // curve -> forward chain of darts

    // valid after refresh():
    std::vector<int> face_of;
    std::vector<Dart> face_dart;
    int F = 0;
    bool fresh = false;

    int num_darts() const { return static_cast<int>(twin.size()); }
    int num_vertices() const { return static_cast<int>(dart_at.size()); }
    int head(Dart d) const { return vertex_of[twin[d]]; }
    int tail(Dart d) const { return vertex_of[d]; }

    int new_vertex() {
        dart_at.push_back(-1);
        return num_vertices() - 1;
    }

    int new_curve() {
        curves.emplace_back();
        return static_cast<int>(curves.size()) - 1;
    }

    /// Starting map: an existing PlanarMap whose segments belong to curves.
    static MutableMap from(const PlanarMap& m, const std::vector<std::vector<Dart>>& chains) {
        MutableMap mm;
        mm.twin = m.twin;
        mm.next = m.next;
        mm.prev = m.prev;
        mm.vertex_of = m.vertex_of;
        mm.dart_at.assign(m.V, -1);
        for (Dart d = m.num_darts() - 1; d >= 0; --d) mm.dart_at[m.vertex_of[d]] = d;
        mm.curve_of.assign(m.num_darts(), -1);
        mm.core.assign(m.num_darts(), 1);
        mm.curves = chains;
        for (size_t c = 0; c < chains.size(); ++c)
            for (Dart d : chains[c]) {
                mm.curve_of[d] = static_cast<int>(c);
                mm.curve_of[m.twin[d]] = static_cast<int>(c);
            }
        return mm;
    }

    void refresh() {
        const int nd = num_darts();
        std::vector<Dart> phi(nd);
        for (Dart d = 0; d < nd; ++d) phi[d] = prev[twin[d]];
        face_of.assign(nd, -1);
        face_dart.clear();
        for (Dart d = 0; d < nd; ++d) {
            if (face_of[d] >= 0) continue;
            int f = static_cast<int>(face_dart.size());
            face_dart.push_back(d);
            Dart e = d;
            while (face_of[e] < 0) {
                face_of[e] = f;
                e = phi[e];
            }
        }
        F = static_cast<int>(face_dart.size());
        int v_live = 0;
        for (Dart d : dart_at)
            if (d >= 0) ++v_live;
        if (v_live - nd / 2 + F != 2) throw InternalError("mutable map left the sphere");
        fresh = true;
    }

    Dart face_next(Dart d) const { return prev[twin[d]]; }

    std::vector<Dart> face_walk(int f) const {
        std::vector<Dart> w;
        Dart d0 = face_dart[f];
        Dart d = d0;
        do {
            w.push_back(d);
            d = face_next(d);
        } while (d != d0);
        return w;
    }

    std::vector<Dart> vertex_darts(int v) const {
        std::vector<Dart> ds;
        if (dart_at[v] < 0) return ds;
        Dart d0 = dart_at[v];
        Dart d = d0;
        do {
            ds.push_back(d);
            d = next[d];
        } while (d != d0);
        return ds;
    }

    int degree(int v) const { return static_cast<int>(vertex_darts(v).size()); }

    /// Insert new dart nd into the rotation at vertex v right after dart
    /// `after` (or as the only dart when the vertex is isolated).
    void splice_after(int v, Dart after, Dart nd) {
        vertex_of[nd] = v;
        if (dart_at[v] < 0) {
            dart_at[v] = nd;
            next[nd] = nd;
            prev[nd] = nd;
            return;
        }
        Dart nx = next[after];
        next[after] = nd;
        prev[nd] = after;
        next[nd] = nx;
        prev[nx] = nd;
    }

    Dart fresh_pair() {
        Dart d = num_darts();
        twin.push_back(d + 1);
        twin.push_back(d);
        next.push_back(-1);
        next.push_back(-1);
        prev.push_back(-1);
        prev.push_back(-1);
        vertex_of.push_back(-1);
        vertex_of.push_back(-1);
        curve_of.push_back(-1);
        curve_of.push_back(-1);
        core.push_back(0);
        core.push_back(0);
        return d;
    }

    /// Subdivide the segment of dart d with a new degree-2 vertex x.  Both
    /// original darts keep their tail vertices (d: tail->x, twin: head->x);
    /// two fresh darts leave x.  The owning curve's chain is patched.
    int split_dart(Dart d) {
        fresh = false;
        Dart dt = twin[d];
        int x = new_vertex();
        Dart e = fresh_pair();      // e: x -> head side
        Dart e2 = e + 1;            // e2: x -> tail side
        vertex_of[e] = x;
        vertex_of[e2] = x;
        // rewire twins: d <-> e2, dt <-> e
        twin[d] = e2;
        twin[e2] = d;
        twin[dt] = e;
        twin[e] = dt;
        // rotation at x: (e2 toward tail, e toward head)
        dart_at[x] = e2;
        next[e2] = e;
        prev[e] = e2;
        next[e] = e2;
        prev[e2] = e;
        int c = curve_of[d];
        curve_of[e] = c;
        curve_of[e2] = c;
        core[e] = core[d];
        core[e2] = core[d];
        if (c >= 0) {
            auto& ch = curves[c];
            for (size_t i = 0; i < ch.size(); ++i) {
                if (ch[i] == d) {
                    ch.insert(ch.begin() + i + 1, e);
                    break;
                }
                if (ch[i] == dt) {
                    ch.insert(ch.begin() + i + 1, e2);
                    break;
                }
            }
        }
        return x;
    }

    struct Anchor {
        enum Kind { Corner, Segment } kind = Corner;
        int v = -1;        // Corner: vertex
        Dart after = -1;   // Corner: insert after this dart (-1 = isolated vertex)
        Dart on = -1;      // Segment: dart to split; the curve approaches from
                           // the left (face_of side) of this dart

        static Anchor corner(int v, Dart after) { return {Corner, v, after, -1}; }
        static Anchor segment(Dart on) { return {Segment, -1, -1, on}; }
    };

    /// Route a new piece of curve c from one anchor to another, crossing the
    /// listed darts in order.  Each crossed dart must be passed so that the
    /// curve approaches from its left (face_of) side, and all crossed/anchor
    /// segments must be pairwise distinct.  Returns the forward darts of the
    /// new piece; the caller splices them into curves[c].
    std::vector<Dart> route(int c, const Anchor& from, const std::vector<Dart>& steps,
                            const Anchor& to) {
        fresh = false;
        std::vector<int> pts;
        std::vector<Dart> seg;  // forward darts

        auto anchor_vertex = [&](const Anchor& a) -> int {
            if (a.kind == Anchor::Corner) return a.v;
            return split_dart(a.on);
        };

        int p0 = anchor_vertex(from);
        pts.push_back(p0);
        for (Dart st : steps) pts.push_back(split_dart(st));
        int pl = anchor_vertex(to);
        pts.push_back(pl);

        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            Dart f = fresh_pair();
            vertex_of[f] = pts[i];
            vertex_of[f + 1] = pts[i + 1];
            curve_of[f] = c;
            curve_of[f + 1] = c;
            seg.push_back(f);
        }

        // attach at start
        if (from.kind == Anchor::Corner) {
            splice_after(pts.front(), from.after, seg.front());
        } else {
            attach_at_split(pts.front(), seg.front());
        }
        // attach at crossings
        for (size_t i = 0; i < steps.size(); ++i) {
            int x = pts[i + 1];
            Dart back = twin[seg[i]];     // x -> previous point
            Dart fwd = seg[i + 1];        // x -> next point
            attach_crossing(x, back, fwd);
        }
        // attach at end
        Dart last_back = twin[seg.back()];
        if (to.kind == Anchor::Corner) {
            splice_after(pts.back(), to.after, last_back);
        } else {
            attach_at_split(pts.back(), last_back);
        }
        return seg;
    }

   private:
    // x was created by split_dart: its rotation is (dt, e) where dt points to
    // the original tail side and e to the head side.  The curve approaches
    // from the left of the split dart; with the segment pointing east and the
    // left flank north, the single curve dart b gives ccw (e, b, dt).
    void attach_at_split(int x, Dart b) {
        Dart dt = dart_at[x];        // x -> tail side
        Dart e = next[dt];           // x -> head side
        vertex_of[b] = x;
        next[e] = b;
        prev[b] = e;
        next[b] = dt;
        prev[dt] = b;
        next[dt] = e;
        prev[e] = dt;
    }

    // Crossing at x (fresh split vertex): back dart cb points to where the
    // curve came from (the left flank of the crossed east-pointing segment),
    // cf to where it goes; ccw is (e, cb, dt, cf).
    void attach_crossing(int x, Dart cb, Dart cf) {
        Dart dt = dart_at[x];
        Dart e = next[dt];
        vertex_of[cb] = x;
        vertex_of[cf] = x;
        std::array<Dart, 4> cyc{e, cb, dt, cf};
        for (int i = 0; i < 4; ++i) {
            next[cyc[i]] = cyc[(i + 1) % 4];
            prev[cyc[(i + 1) % 4]] = cyc[i];
        }
    }
};

}  // namespace kndraw
