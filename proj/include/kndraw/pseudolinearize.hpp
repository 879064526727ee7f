#pragma once

// Constructive pseudolinearization of a face-convex drawing: every edge is
// extended to a pseudoline, one edge per pseudoline.  The construction works
// on a master mutable map holding the drawing, the boundary circle, and all
// arcs built so far.  Graph vertices act as crossing clusters: all curves
// through a vertex pairwise cross there, with branch slots kept pairwise
// antipodal in the rotation so the cluster expands to a small generic pencil
// at export time.
//
// Phases: frames for every non-boundary edge; alpha arcs (edge + two dual
// paths into the frame faces, steered by restriction intervals); beta arcs
// extending the boundary-cycle edges to antipodal circle points; completion
// of the alpha arcs through the outer face.  The structural conditions of
// the underlying proof are asserted at runtime.

#include "kndraw/arrangement.hpp"
#include "kndraw/convexity.hpp"
#include "kndraw/drawing.hpp"
#include "kndraw/mutable_map.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace kndraw {

struct NotFaceConvex : std::runtime_error {
    explicit NotFaceConvex(const std::string& m) : std::runtime_error(m) {}
};

// ── edge frames ─────────────────────────────────────────────────────

struct EdgeFrame {
    int e = -1, u = -1, v = -1;  // u < v
    SideSets sides;
    std::vector<int> cyc1, cyc2;   // hull cycles of the two side sets
    std::vector<int> p1, p2;       // boundary-avoiding paths (vertex lists)
    std::vector<int> ends_off_cf;  // A_e: ends of e not on C_F

    struct EndInfo {
        int a = -1;        // the end vertex
        int s1 = -1, s2 = -1;  // hull-cycle neighbours of a on the two sides
        int f_edge = -1;   // boundary edge of the frame face at a
        int u1 = -1, u2 = -1;  // ends of f_edge in side 1 / side 2
    };
    std::map<int, EndInfo> end;  // keyed by vertex in ends_off_cf
};

namespace pldetail {

inline std::vector<int> cf_cycle(const Drawing& d, int F) {
    std::vector<int> cyc;
    for (Dart dd : d.map.face_walk(F)) {
        int w = d.map.tail(dd);
        if (!d.is_graph_vertex(w)) throw NotFaceConvex("outer face touches a crossing");
        cyc.push_back(w);
    }
    std::set<int> uniq(cyc.begin(), cyc.end());
    if (uniq.size() != cyc.size()) throw NotFaceConvex("outer face walk repeats a vertex");
    return cyc;
}

/// The boundary-avoiding path of a hull cycle: the maximal run of edges that
/// are not boundary-cycle edges.  When the hull shares no edge with the
/// boundary cycle it meets it in exactly one vertex, and the path is the
/// whole cycle opened there.
inline std::vector<int> hull_free_path(const std::vector<int>& cyc,
                                       const std::set<std::pair<int, int>>& cf_edges,
                                       const std::set<int>& cf_verts) {
    int k = static_cast<int>(cyc.size());
    auto is_cf = [&](int i) {
        int a = cyc[i], b = cyc[(i + 1) % k];
        return cf_edges.count({std::min(a, b), std::max(a, b)}) > 0;
    };
    int ncf = 0;
    for (int i = 0; i < k; ++i)
        if (!is_cf(i)) ++ncf;
    if (ncf == 0) return {};
    if (ncf == k) {
        int at = -1, cnt = 0;
        for (int i = 0; i < k; ++i)
            if (cf_verts.count(cyc[i])) {
                at = i;
                ++cnt;
            }
        if (cnt != 1)
            throw InternalError("edge-disjoint hull cycle must meet the boundary once");
        std::vector<int> path;
        for (int i = 0; i <= k; ++i) path.push_back(cyc[(at + i) % k]);
        return path;
    }
    // find a boundary edge followed by a free edge: the run starts there
    int start = -1;
    for (int i = 0; i < k; ++i)
        if (is_cf(i) && !is_cf((i + 1) % k)) start = (i + 1) % k;
    if (start < 0) throw InternalError("no transition on hull cycle");
    std::vector<int> path{cyc[start]};
    int i = start;
    while (!is_cf(i)) {
        i = (i + 1) % k;
        path.push_back(cyc[i]);
        if (path.size() > cyc.size() + 1) throw InternalError("free path runaway");
    }
    // the run must account for all free edges
    if (static_cast<int>(path.size()) - 1 != ncf)
        throw InternalError("hull cycle has several free runs");
    return path;
}

}  // namespace pldetail

inline EdgeFrame edge_frame(const Drawing& d, int F, int e) {
    auto [u, v] = edge_pair(d.n, e);
    std::vector<int> cf = pldetail::cf_cycle(d, F);
    std::set<std::pair<int, int>> cf_edges;
    std::set<int> cf_verts(cf.begin(), cf.end());
    for (size_t i = 0; i < cf.size(); ++i) {
        int a = cf[i], b = cf[(i + 1) % cf.size()];
        cf_edges.insert({std::min(a, b), std::max(a, b)});
    }
    if (cf_edges.count({u, v})) throw DrawingError(DrawingError::BadChain, "boundary edge", {e});

    EdgeFrame fr;
    fr.e = e;
    fr.u = u;
    fr.v = v;
    fr.sides = side_sets(d, F, u, v);
    if (fr.sides.side1.size() < 3 || fr.sides.side2.size() < 3)
        throw InternalError("non-boundary edge with an empty side");
    fr.cyc1 = convex_hull(d, F, fr.sides.side1).cycle;
    fr.cyc2 = convex_hull(d, F, fr.sides.side2).cycle;
    std::set<int> cfv(cf.begin(), cf.end());
    fr.p1 = pldetail::hull_free_path(fr.cyc1, cf_edges, cfv);
    fr.p2 = pldetail::hull_free_path(fr.cyc2, cf_edges, cfv);

    auto neighbours = [&](const std::vector<int>& cyc, int a) {
        int k = static_cast<int>(cyc.size());
        for (int i = 0; i < k; ++i)
            if (cyc[i] == a) return std::pair{cyc[(i + k - 1) % k], cyc[(i + 1) % k]};
        throw InternalError("vertex not on its hull cycle");
    };
    for (int a : {u, v}) {
        if (cf_verts.count(a)) continue;
        fr.ends_off_cf.push_back(a);
        EdgeFrame::EndInfo info;
        info.a = a;
        int other = a == u ? v : u;
        auto [n1a, n1b] = neighbours(fr.cyc1, a);
        info.s1 = n1a == other ? n1b : n1a;
        auto [n2a, n2b] = neighbours(fr.cyc2, a);
        info.s2 = n2a == other ? n2b : n2a;
        // the P-path ends on a's side: walking p from either end, the end
        // nearer to a along the path
        auto side_end = [&](const std::vector<int>& p) {
            auto it = std::find(p.begin(), p.end(), a);
            if (it == p.end()) throw InternalError("end vertex not interior to its P path");
            auto ot = std::find(p.begin(), p.end(), other);
            if (ot == p.end()) throw InternalError("other end vertex not on P path");
            return it < ot ? p.front() : p.back();
        };
        info.u1 = side_end(fr.p1);
        info.u2 = side_end(fr.p2);
        info.f_edge = edge_index(d.n, std::min(info.u1, info.u2), std::max(info.u1, info.u2));
        if (!cf_edges.count({std::min(info.u1, info.u2), std::max(info.u1, info.u2)}))
            throw InternalError("frame face boundary edge is not a boundary-cycle edge");
        fr.end[a] = info;
    }
    return fr;
}

// ── restriction intervals ───────────────────────────────────────────

struct RestrictionIntervals {
    int e = -1, a = -1;
    int f_edge = -1;
    // map vertices of prior arc ends on f_edge, ordered from the side-1 end
    std::vector<int> marks;
    std::vector<int> r1_ends, r2_ends;  // marks whose restriction anchors at u1 / u2
    int rho = -1;                       // boundary mark of the relevant restriction union
    Dart eta_segment = -1;              // chain segment (dart) holding the chosen point
};

// ── the construction state ──────────────────────────────────────────

class Pseudolinearizer {
   public:
    Pseudolinearizer(const Drawing& d, int F) : d_(d), F_(F) {
        if (!is_face_convex_with(d, F)) throw NotFaceConvex("designated face is not a witness");
        cf_ = pldetail::cf_cycle(d, F);
        for (size_t i = 0; i < cf_.size(); ++i) {
            int a = cf_[i], b = cf_[(i + 1) % cf_.size()];
            cf_edge_set_.insert(edge_index(d.n, std::min(a, b), std::max(a, b)));
        }
        cf_vert_set_ = std::set<int>(cf_.begin(), cf_.end());
        for (int e = 0; e < d_.num_edges(); ++e)
            if (!cf_edge_set_.count(e)) frames_[e] = kndraw::edge_frame(d_, F_, e);
        plan_rotations();
        mm_ = MutableMap::from(d_.map, d_.chain);
        mm_.refresh();
    }

    const EdgeFrame& frame(int e) const { return frames_.at(e); }

    /// Is the (already built) arc of edge ej unavoidable for edge ei?
    bool classify_unavoidable(int ej, int ei) const;

    RestrictionIntervals restrictions(int ei, int a);

    void build_alpha(int ei);
    void build_betas();
    DiskArrangement complete_to_pseudolines();

    /// Full pipeline.  Arc ids in the result equal edge indices.
    DiskArrangement run() {
        for (int e = 0; e < d_.num_edges(); ++e)
            if (!cf_edge_set_.count(e)) build_alpha(e);
        build_betas();
        return complete_to_pseudolines();
    }

    const Drawing& drawing() const { return d_; }
    const std::vector<int>& boundary_cycle() const { return cf_; }

   private:
    Drawing d_;
    int F_;
    std::vector<int> cf_;
    std::set<int> cf_edge_set_;
    std::set<int> cf_vert_set_;
    std::map<int, EdgeFrame> frames_;
    MutableMap mm_;
    std::set<int> built_;     // edges whose alpha arc exists
    bool betas_built_ = false;

    // cluster plan: per graph vertex, the final ccw branch order
    struct Branch {
        int edge = -1;
        bool ext = false;
        bool operator==(const Branch& o) const { return edge == o.edge && ext == o.ext; }
    };
    std::vector<std::vector<Branch>> plan_;
    // ext branch darts, recorded at insertion: (vertex, edge) -> dart
    std::map<std::pair<int, int>, Dart> ext_dart_;

    // gamma bookkeeping
    int gamma_curve_ = -1;
    std::vector<int> slot_cycle_;       // slot vertices in circle order
    std::map<int, int> slot_mate_;      // vertex -> antipodal vertex
    std::map<int, int> slot_owner_;     // slot vertex -> edge id

    void plan_rotations();

    // --- rotation/cluster helpers -----------------------------------
    std::vector<int> edges_ccw_at(int w) const {
        std::vector<int> out;
        for (Dart dd : d_.map.vertex_darts(w)) {
            // dd is the first dart of some chain at w
            for (int e = 0; e < d_.num_edges(); ++e) {
                auto [x, y] = edge_pair(d_.n, e);
                if (x != w && y != w) continue;
                const auto& ch = d_.chain[e];
                if (ch.front() == dd || d_.map.twin[ch.back()] == dd) {
                    out.push_back(e);
                    break;
                }
            }
        }
        return out;
    }

    int plan_pos(int w, const Branch& b) const {
        const auto& pl = plan_[w];
        for (size_t i = 0; i < pl.size(); ++i)
            if (pl[i] == b) return static_cast<int>(i);
        throw InternalError("branch not in cluster plan");
    }

    /// The dart currently at w for a plan branch, or -1 if not yet present.
    Dart branch_dart(int w, const Branch& b) const {
        if (b.ext) {
            auto it = ext_dart_.find({w, b.edge});
            return it == ext_dart_.end() ? -1 : it->second;
        }
        for (Dart dd : mm_.vertex_darts(w))
            if (mm_.curve_of[dd] == b.edge) {
                auto it = ext_dart_.find({w, b.edge});
                if (it != ext_dart_.end() && it->second == dd) continue;
                return dd;
            }
        throw InternalError("edge branch missing at cluster");
    }

    /// Insertion predecessor for a new ext branch at w: the present branch
    /// with the greatest plan position cyclically below the new one.
    Dart insertion_after(int w, int edge) const {
        int p = plan_pos(w, {edge, true});
        const auto& pl = plan_[w];
        int k = static_cast<int>(pl.size());
        for (int step = 1; step < k; ++step) {
            const Branch& cand = pl[(p - step % k + k) % k];
            Dart dd = cand.ext ? (ext_dart_.count({w, cand.edge}) ? ext_dart_.at({w, cand.edge}) : -1)
                               : branch_dart(w, cand);
            if (dd >= 0) return dd;
        }
        throw InternalError("no present branch at cluster");
    }

    // --- region machinery --------------------------------------------
    struct Region {
        std::vector<char> in;  // face membership
    };

    Region flood_region(int seed_face, const std::vector<char>& wall_seg) const {
        Region r;
        r.in.assign(mm_.F, 0);
        std::vector<int> stack{seed_face};
        r.in[seed_face] = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (Dart dd : mm_.face_walk(f)) {
                if (wall_seg[std::min(dd, mm_.twin[dd])]) continue;
                int g = mm_.face_of[mm_.twin[dd]];
                if (!r.in[g]) {
                    r.in[g] = 1;
                    stack.push_back(g);
                }
            }
        }
        return r;
    }

    // wall flags are indexed by the lower dart of each pair
    std::vector<char> make_walls(const std::vector<std::pair<int, bool>>& curve_sel) const {
        // curve_sel: (curve id, core_only)
        std::vector<char> wall(mm_.num_darts(), 0);
        for (auto [c, core_only] : curve_sel) {
            for (Dart dd : mm_.curves[c]) {
                if (core_only && !mm_.core[dd]) continue;
                wall[std::min(dd, mm_.twin[dd])] = 1;
            }
        }
        return wall;
    }

    struct Component {
        int curve;
        std::vector<Dart> darts;  // forward darts of the run
    };

    std::vector<Component> region_components(const Region& reg,
                                             const std::set<int>& exclude_curves) const {
        // a vertex on the region boundary splits a run: in the open region,
        // a piece touching the boundary is two separate arcs
        auto interior_vertex = [&](int w) {
            for (Dart dd : mm_.vertex_darts(w))
                if (!reg.in[mm_.face_of[dd]]) return false;
            return true;
        };
        std::vector<Component> comps;
        for (size_t c = 0; c < mm_.curves.size(); ++c) {
            if (exclude_curves.count(static_cast<int>(c))) continue;
            const auto& ch = mm_.curves[c];
            Component cur;
            cur.curve = static_cast<int>(c);
            auto flush = [&]() {
                if (!cur.darts.empty()) {
                    comps.push_back(cur);
                    cur.darts.clear();
                }
            };
            for (Dart dd : ch) {
                bool inside = reg.in[mm_.face_of[dd]] && reg.in[mm_.face_of[mm_.twin[dd]]];
                if (!inside) {
                    flush();
                    continue;
                }
                if (!cur.darts.empty() && !interior_vertex(mm_.tail(dd))) flush();
                cur.darts.push_back(dd);
            }
            flush();
        }
        return comps;
    }

    /// 2-colour region faces with one component removed; colours usable for
    /// separator tests.
    std::vector<int> component_coloring(const Region& reg, const Component& comp) const {
        std::vector<char> blocked(mm_.num_darts(), 0);
        for (Dart dd : comp.darts) blocked[std::min(dd, mm_.twin[dd])] = 1;
        std::vector<int> col(mm_.F, -1);
        int label = 0;
        for (int f0 = 0; f0 < mm_.F; ++f0) {
            if (!reg.in[f0] || col[f0] != -1) continue;
            std::vector<int> stack{f0};
            col[f0] = label;
            while (!stack.empty()) {
                int f = stack.back();
                stack.pop_back();
                for (Dart dd : mm_.face_walk(f)) {
                    if (blocked[std::min(dd, mm_.twin[dd])]) continue;
                    int g = mm_.face_of[mm_.twin[dd]];
                    if (!reg.in[g] || col[g] != -1) continue;
                    col[g] = label;
                    stack.push_back(g);
                }
            }
            ++label;
        }
        return col;
    }

    /// Separator-greedy dual path inside `reg` from seed to target, crossing
    /// components of non-wall curves.  Returns the crossed darts in order
    /// (each oriented so its left face is the side the path comes from).
    std::vector<Dart> greedy_path(const Region& reg, int seed, int target,
                                  const std::vector<Component>& comps) const {
        std::vector<std::vector<int>> cols(comps.size());
        for (size_t i = 0; i < comps.size(); ++i) cols[i] = component_coloring(reg, comps[i]);
        if (getenv("KNDRAW_TRACE")) {
            fprintf(stderr, "[greedy] seed=%d target=%d comps:\n", seed, target);
            for (size_t i = 0; i < comps.size(); ++i) {
                fprintf(stderr, "  comp %zu curve %d darts", i, comps[i].curve);
                for (Dart dd : comps[i].darts)
                    fprintf(stderr, " %d->%d", mm_.tail(dd), mm_.head(dd));
                fprintf(stderr, " | col[seed]=%d col[target]=%d\n", cols[i][seed],
                        cols[i][target]);
            }
        }
        std::map<int, int> comp_of_seg;  // lower dart -> component index
        for (size_t i = 0; i < comps.size(); ++i)
            for (Dart dd : comps[i].darts) comp_of_seg[std::min(dd, mm_.twin[dd])] = static_cast<int>(i);

        std::vector<Dart> steps;
        std::set<int> used;
        int cur = seed;
        int guard = 0;
        while (cur != target) {
            if (++guard > mm_.F + 5) throw InternalError("alpha dual path: runaway");
            Dart chosen = -1;
            int chosen_comp = -1;
            for (Dart dd : mm_.face_walk(cur)) {
                auto it = comp_of_seg.find(std::min(dd, mm_.twin[dd]));
                if (it == comp_of_seg.end()) continue;
                int ci = it->second;
                if (cols[ci][cur] == -1 || cols[ci][target] == -1) continue;
                if (cols[ci][cur] == cols[ci][target]) continue;
                chosen = dd;
                chosen_comp = ci;
                break;
            }
            if (chosen < 0) throw InternalError("alpha dual path: stuck");
            if (used.count(chosen_comp)) {
                int labels = 0;
                for (int f = 0; f < mm_.F; ++f)
                    labels = std::max(labels, cols[chosen_comp][f] + 1);
                throw InternalError(
                    "alpha dual path: component reused (curve " +
                    std::to_string(comps[chosen_comp].curve) + ", " +
                    std::to_string(comps[chosen_comp].darts.size()) + " segs, " +
                    std::to_string(labels) + " colour labels)");
            }
            used.insert(chosen_comp);
            steps.push_back(chosen);
            cur = mm_.face_of[mm_.twin[chosen]];
        }
        return steps;
    }

    // --- crossing registry -------------------------------------------
    /// Interior (non-end) vertices of a curve's chain.
    std::vector<int> interior_vertices(int c) const {
        std::vector<int> out;
        const auto& ch = mm_.curves[c];
        for (size_t i = 0; i + 1 < ch.size(); ++i) out.push_back(mm_.head(ch[i]));
        return out;
    }

    /// Number of crossings between two curves: shared degree-4 vertices plus
    /// one for a shared cluster (graph vertex on both).
    int crossings_between(int c1, int c2) const;

    // alpha-phase helpers
    std::vector<Dart> f_edge_chain_marks(int f_edge, int u1) const;
    void extend_alpha_end(int ei, int a);

    // beta/completion helpers
    void bootstrap_gamma(int f1_edge, int v0, int v1);
    void extend_to_slot(int curve, int end_vertex, Dart after_dart, bool at_front,
                        const std::vector<char>& walls, const std::set<int>& wall_curves);
    std::pair<int, int> free_antipodal_gaps(const Region& r1, const Region& r2) const;
    int gap_of_segment(Dart gdart) const;
    Dart gamma_gap_dart(int gap) const;
    friend struct PseudolinearizerTestAccess;

   public:
    // exposed for verification in tests
    int curve_crossings(int c1, int c2) const { return crossings_between(c1, c2); }
    const MutableMap& master() const { return mm_; }
};

inline DiskArrangement pseudolinearize(const Drawing& d, int F) {
    Pseudolinearizer p(d, F);
    return p.run();
}

}  // namespace kndraw

#include "kndraw/pseudolinearize_impl.hpp"
