#pragma once

// Method bodies for the pseudolinearization pipeline.

#include "kndraw/pseudolinearize.hpp"

namespace kndraw {

// ── cluster rotation plans ──────────────────────────────────────────

inline void Pseudolinearizer::plan_rotations() {
    plan_.assign(d_.n, {});
    for (int w = 0; w < d_.n; ++w) {
        std::vector<int> G = edges_ccw_at(w);
        const int r = static_cast<int>(G.size());
        std::vector<Branch> rot;
        if (!cf_vert_set_.count(w)) {
            // interior vertex: each extension enters the gap between the two
            // hull-neighbour edges of its own frame, mirroring the rotation
            std::vector<int> corner(r, -1);
            for (int idx = 0; idx < r; ++idx) {
                const EdgeFrame& fr = frames_.at(G[idx]);
                const auto& info = fr.end.at(w);
                int e1 = edge_index(d_.n, std::min(w, info.s1), std::max(w, info.s1));
                int e2 = edge_index(d_.n, std::min(w, info.s2), std::max(w, info.s2));
                for (int i = 0; i < r; ++i) {
                    int x = G[i], y = G[(i + 1) % r];
                    if ((x == e1 && y == e2) || (x == e2 && y == e1)) corner[idx] = i;
                }
                if (corner[idx] < 0)
                    throw InternalError("extension corner edges not adjacent in rotation");
            }
            for (int c = 0; c < r; ++c) {
                rot.push_back({G[c], false});
                for (int step = 0; step < r; ++step) {
                    int idx = (c + 1 + step) % r;
                    if (corner[idx] == c) rot.push_back({G[idx], true});
                }
            }
        } else {
            // boundary vertex: all extensions go into the outer-face corner,
            // in the same order as their drawn branches
            Dart X = -1;
            for (Dart dd : d_.map.vertex_darts(w))
                if (d_.map.face_of[dd] == F_) X = dd;
            if (X < 0) throw InternalError("boundary vertex without outer corner");
            // linearize edges starting at next(X)
            std::vector<int> lin;
            Dart dd = d_.map.next[X];
            for (int i = 0; i < r; ++i, dd = d_.map.next[dd]) {
                // dart -> edge id
                int e = -1;
                for (int cand : G) {
                    auto [x, y] = edge_pair(d_.n, cand);
                    int other = x == w ? y : x;
                    const auto& ch = d_.chain[cand];
                    Dart at_w = (x == w) ? ch.front() : d_.map.twin[ch.back()];
                    if (at_w == dd) e = cand;
                    (void)other;
                }
                if (e < 0) throw InternalError("dart without an edge at boundary vertex");
                lin.push_back(e);
            }
            for (int e : lin) rot.push_back({e, false});
            for (int e : lin) rot.push_back({e, true});
        }
        // pairwise antipodal check
        if (static_cast<int>(rot.size()) != 2 * r)
            throw InternalError("cluster plan has wrong size");
        for (int e : G) {
            int pe = -1, px = -1;
            for (int i = 0; i < 2 * r; ++i) {
                if (rot[i].edge != e) continue;
                (rot[i].ext ? px : pe) = i;
            }
            if (pe < 0 || px < 0 || (px - pe + 2 * r) % (2 * r) != r)
                throw InternalError("cluster plan not antipodal; face-convexity violated?");
        }
        plan_[w] = std::move(rot);
    }
}

// ── crossing registry ───────────────────────────────────────────────

inline int Pseudolinearizer::crossings_between(int c1, int c2) const {
    std::set<int> v1, v2;
    for (Dart dd : mm_.curves[c1]) {
        v1.insert(mm_.tail(dd));
        v1.insert(mm_.head(dd));
    }
    for (Dart dd : mm_.curves[c2]) {
        v2.insert(mm_.tail(dd));
        v2.insert(mm_.head(dd));
    }
    int cnt = 0;
    for (int x : v1) {
        if (!v2.count(x)) continue;
        if (x < d_.n) {
            ++cnt;  // shared cluster: curves pairwise cross there
        } else if (mm_.degree(x) == 4) {
            ++cnt;
        }
    }
    return cnt;
}

// ── unavoidable classification ──────────────────────────────────────

inline bool Pseudolinearizer::classify_unavoidable(int ej, int ei) const {
    const EdgeFrame& fr = frames_.at(ei);
    auto [x, y] = edge_pair(d_.n, ej);
    if (x == fr.u || x == fr.v || y == fr.u || y == fr.v) return true;

    // crossing the drawn edge e_i itself forces both
    for (Dart dd : mm_.curves[ej]) {
        int h = mm_.head(dd);
        if (h >= d_.n && mm_.degree(h) == 4) {
            for (Dart other : mm_.vertex_darts(h))
                if (mm_.curve_of[other] == ei && mm_.core[other]) return true;
        }
    }

    auto path_edges = [&](const std::vector<int>& p) {
        std::set<int> es;
        for (size_t i = 0; i + 1 < p.size(); ++i)
            es.insert(edge_index(d_.n, std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])));
        return es;
    };
    auto count_hits = [&](const std::vector<int>& p) {
        std::set<int> pe = path_edges(p);
        int hits = 0;
        // drawn crossings with path edges
        std::set<int> counted;
        for (Dart dd : mm_.curves[ej]) {
            int h = mm_.head(dd);
            if (h < d_.n || mm_.degree(h) != 4 || counted.count(h)) continue;
            for (Dart other : mm_.vertex_darts(h)) {
                int c = mm_.curve_of[other];
                if (c >= 0 && c != ej && pe.count(c) && mm_.core[other]) {
                    ++hits;
                    counted.insert(h);
                    break;
                }
            }
        }
        // endpoint conventions: incident with a path end
        for (int w : {p.front(), p.back()})
            if ((x == w || y == w)) ++hits;
        // interior path vertices: does ej pass through and separate the path?
        for (size_t i = 1; i + 1 < p.size(); ++i) {
            int w = p[i];
            if (x != w && y != w) continue;
            // branch positions of ej and of the two path edges at w
            const auto& pl = plan_[w];
            int r = static_cast<int>(pl.size()) / 2;
            int pej = plan_pos(w, {ej, false});
            int q1 = plan_pos(w, {edge_index(d_.n, std::min(w, p[i - 1]), std::max(w, p[i - 1])), false});
            int q2 = plan_pos(w, {edge_index(d_.n, std::min(w, p[i + 1]), std::max(w, p[i + 1])), false});
            auto inside = [&](int q) { return (q - pej + 2 * r) % (2 * r) < r && q != pej; };
            if (inside(q1) != inside(q2)) ++hits;
        }
        return hits;
    };
    return count_hits(fr.p1) >= 1 && count_hits(fr.p2) >= 1;
}

// ── restrictions ────────────────────────────────────────────────────

inline std::vector<Dart> Pseudolinearizer::f_edge_chain_marks(int f_edge, int u1) const {
    const auto& ch = mm_.curves[f_edge];
    auto [a, b] = edge_pair(d_.n, f_edge);
    (void)b;
    if (a == u1) return ch;
    std::vector<Dart> rev;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) rev.push_back(mm_.twin[*it]);
    return rev;
}

inline RestrictionIntervals Pseudolinearizer::restrictions(int ei, int a) {
    mm_.refresh();
    const EdgeFrame& fr = frames_.at(ei);
    const auto& info = fr.end.at(a);
    RestrictionIntervals R;
    R.e = ei;
    R.a = a;
    R.f_edge = info.f_edge;

    // the frame region at this end, as used by the routing step
    Dart after = insertion_after(a, ei);
    int seed = mm_.face_of[after];
    std::vector<std::pair<int, bool>> sel;
    for (int e : cf_edge_set_) sel.push_back({e, true});
    auto add_cycle = [&](const std::vector<int>& cyc) {
        int k = static_cast<int>(cyc.size());
        for (int i = 0; i < k; ++i) {
            int p = cyc[i], q = cyc[(i + 1) % k];
            sel.push_back({edge_index(d_.n, std::min(p, q), std::max(p, q)), true});
        }
    };
    add_cycle(fr.cyc1);
    add_cycle(fr.cyc2);
    sel.push_back({ei, false});
    Region reg = flood_region(seed, make_walls(sel));

    std::vector<Dart> chain = f_edge_chain_marks(info.f_edge, info.u1);
    std::vector<int> marks;
    for (size_t i = 0; i + 1 < chain.size(); ++i) marks.push_back(mm_.head(chain[i]));
    R.marks = marks;

    auto p1e = [&]() {
        std::set<int> es;
        for (size_t i = 0; i + 1 < fr.p1.size(); ++i)
            es.insert(edge_index(d_.n, std::min(fr.p1[i], fr.p1[i + 1]),
                                 std::max(fr.p1[i], fr.p1[i + 1])));
        return es;
    }();
    auto p2e = [&]() {
        std::set<int> es;
        for (size_t i = 0; i + 1 < fr.p2.size(); ++i)
            es.insert(edge_index(d_.n, std::min(fr.p2[i], fr.p2[i + 1]),
                                 std::max(fr.p2[i], fr.p2[i + 1])));
        return es;
    }();

    int last1 = -1;
    int first2 = static_cast<int>(marks.size());
    for (size_t mi = 0; mi < marks.size(); ++mi) {
        int xv = marks[mi];
        if (mm_.degree(xv) != 3) throw InternalError("boundary-edge mark of unexpected degree");
        int c = -1;
        for (Dart dd : mm_.vertex_darts(xv))
            if (mm_.curve_of[dd] != info.f_edge) c = mm_.curve_of[dd];
        if (c < 0) throw InternalError("mark without an owning arc");
        if (!built_.count(c)) throw InternalError("mark owned by an unbuilt arc");
        if (!classify_unavoidable(c, ei)) continue;

        // walk the arc from this end until it first leaves the region; the
        // boundary element met there fixes the anchored side
        const auto& cch = mm_.curves[c];
        std::vector<Dart> oriented;
        if (mm_.tail(cch.front()) == xv) {
            oriented = cch;
        } else if (mm_.head(cch.back()) == xv) {
            for (auto it = cch.rbegin(); it != cch.rend(); ++it)
                oriented.push_back(mm_.twin[*it]);
        } else {
            throw InternalError("mark is not an end of its arc");
        }
        int side = 0;
        for (Dart od : oriented) {
            bool inside = reg.in[mm_.face_of[od]] && reg.in[mm_.face_of[mm_.twin[od]]];
            if (inside) continue;
            int w = mm_.tail(od);
            if (w == xv) throw InternalError("arc end segment already outside region");
            if (w < d_.n) {
                if (w == a) {
                    auto [cx, cy] = edge_pair(d_.n, c);
                    int other = cx == a ? cy : cx;
                    side = fr.sides.on_side2(other) ? 1 : 2;
                } else {
                    bool in1 = std::count(fr.p1.begin(), fr.p1.end(), w) > 0;
                    bool in2 = std::count(fr.p2.begin(), fr.p2.end(), w) > 0;
                    if (in1 == in2) throw InternalError("ambiguous region exit vertex");
                    side = in1 ? 1 : 2;
                }
            } else {
                if (mm_.degree(w) != 4) throw InternalError("region exit at loose end");
                int partner = -1;
                for (Dart pd : mm_.vertex_darts(w))
                    if (mm_.curve_of[pd] != c && mm_.core[pd]) partner = mm_.curve_of[pd];
                if (partner < 0) throw InternalError("region exit without a drawn wall");
                if (p1e.count(partner))
                    side = 1;
                else if (p2e.count(partner))
                    side = 2;
                else
                    throw InternalError("region exit through a non-path wall");
            }
            break;
        }
        if (side == 0) throw InternalError("unavoidable arc end never leaves the region");
        if (side == 1) {
            R.r1_ends.push_back(xv);
            last1 = std::max(last1, static_cast<int>(mi));
        } else {
            R.r2_ends.push_back(xv);
            first2 = std::min(first2, static_cast<int>(mi));
        }
    }
    if (last1 >= first2) throw InternalError("restriction intervals overlap");

    bool low_end = a == fr.u;
    if (low_end) {
        R.rho = last1 >= 0 ? marks[last1] : -1;
        R.eta_segment = chain[last1 + 1];
    } else {
        R.rho = first2 < static_cast<int>(marks.size()) ? marks[first2] : -1;
        R.eta_segment = chain[first2];
    }
    return R;
}

// ── alpha arcs ──────────────────────────────────────────────────────

inline void Pseudolinearizer::extend_alpha_end(int ei, int a) {
    mm_.refresh();
    const EdgeFrame& fr = frames_.at(ei);
    RestrictionIntervals R = restrictions(ei, a);

    Dart after = insertion_after(a, ei);
    int seed = mm_.face_of[after];

    std::vector<std::pair<int, bool>> sel;
    for (int e : cf_edge_set_) sel.push_back({e, true});
    auto add_cycle = [&](const std::vector<int>& cyc) {
        int k = static_cast<int>(cyc.size());
        for (int i = 0; i < k; ++i) {
            int p = cyc[i], q = cyc[(i + 1) % k];
            sel.push_back({edge_index(d_.n, std::min(p, q), std::max(p, q)), true});
        }
    };
    add_cycle(fr.cyc1);
    add_cycle(fr.cyc2);
    sel.push_back({ei, false});
    std::vector<char> walls = make_walls(sel);
    Region reg = flood_region(seed, walls);

    Dart eta = R.eta_segment;
    Dart ed = reg.in[mm_.face_of[eta]] ? eta : mm_.twin[eta];
    if (!reg.in[mm_.face_of[ed]]) throw InternalError("free point segment not on region");
    int target = mm_.face_of[ed];

    std::set<int> excl{ei};
    std::vector<Component> comps = region_components(reg, excl);
    std::vector<Dart> steps = greedy_path(reg, seed, target, comps);

    // condition (II): any drawn edge crossed must have a vertex on each side
    for (Dart sd : steps) {
        if (!mm_.core[sd]) continue;
        int c = mm_.curve_of[sd];
        auto [cx, cy] = edge_pair(d_.n, c);
        bool s1 = fr.sides.on_side1(cx) || fr.sides.on_side1(cy);
        bool s2 = fr.sides.on_side2(cx) || fr.sides.on_side2(cy);
        if (!s1 || !s2) throw InternalError("crossed edge lies on one side only");
    }

    auto segs = mm_.route(ei, MutableMap::Anchor::corner(a, after), steps,
                          MutableMap::Anchor::segment(ed));
    ext_dart_[{a, ei}] = segs.front();
    auto& ch = mm_.curves[ei];
    if (a == fr.u) {
        std::vector<Dart> nw;
        for (auto it = segs.rbegin(); it != segs.rend(); ++it) nw.push_back(mm_.twin[*it]);
        nw.insert(nw.end(), ch.begin(), ch.end());
        ch = std::move(nw);
    } else {
        ch.insert(ch.end(), segs.begin(), segs.end());
    }
}

inline void Pseudolinearizer::build_alpha(int ei) {
    if (cf_edge_set_.count(ei)) throw DrawingError(DrawingError::BadChain, "boundary edge");
    if (built_.count(ei)) throw InternalError("alpha already built");
    const EdgeFrame& fr = frames_.at(ei);
    for (int a : fr.ends_off_cf) extend_alpha_end(ei, a);
    mm_.refresh();
    built_.insert(ei);

    // structural verification against all previous arcs
    for (int ej : built_) {
        if (ej == ei) continue;
        int cnt = crossings_between(ei, ej);
        auto [x, y] = edge_pair(d_.n, ej);
        bool adjacent = x == fr.u || x == fr.v || y == fr.u || y == fr.v;
        bool unavoidable = classify_unavoidable(ej, ei);
        if (cnt > 1) throw InternalError("two arcs cross more than once");
        if ((adjacent || unavoidable) && cnt != 1)
            throw InternalError("unavoidable arc not crossed exactly once");
    }
    // useful fact: prior arcs cross each frame path at most twice
    for (int ej : built_) {
        if (ej == ei) continue;
        for (const auto& p : {fr.p1, fr.p2}) {
            int hits = 0;
            for (size_t i = 0; i + 1 < p.size(); ++i) {
                int pe = edge_index(d_.n, std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1]));
                if (pe == ej) continue;
                // count drawn crossings between ej and pe (each seen twice)
                for (Dart dd : mm_.curves[ej]) {
                    int h = mm_.head(dd);
                    if (h < d_.n || mm_.degree(h) != 4) continue;
                    for (Dart od : mm_.vertex_darts(h))
                        if (mm_.curve_of[od] == pe && mm_.core[od]) ++hits;
                }
            }
            if (hits > 2 * 2)  // each crossing seen from two darts of ej
                throw InternalError("arc crosses a frame path more than twice");
        }
    }
}

// ── beta arcs and gamma bookkeeping ─────────────────────────────────

inline int Pseudolinearizer::gap_of_segment(Dart gdart) const {
    const auto& g = mm_.curves[gamma_curve_];
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] == gdart || mm_.twin[g[i]] == gdart) return static_cast<int>(i);
    throw InternalError("dart is not a gamma segment");
}

inline Dart Pseudolinearizer::gamma_gap_dart(int gap) const {
    return mm_.curves[gamma_curve_][gap];
}

inline void Pseudolinearizer::bootstrap_gamma(int f1_edge, int v0, int v1) {
    mm_.refresh();
    // route the v0-extension of the first boundary arc into the outer face
    Dart after0 = insertion_after(v0, f1_edge);
    int S = mm_.new_vertex();
    auto segs0 = mm_.route(f1_edge, MutableMap::Anchor::corner(v0, after0), {},
                           MutableMap::Anchor::corner(S, -1));
    ext_dart_[{v0, f1_edge}] = segs0.front();

    // erect the boundary circle through S and a fresh antipodal slot S'
    int S2 = mm_.new_vertex();
    Dart a1 = mm_.fresh_pair();  // S -> S2, gamma forward
    Dart a2 = mm_.fresh_pair();  // S -> S2, gamma backward
    mm_.vertex_of[a1] = S;
    mm_.vertex_of[a1 + 1] = S2;
    mm_.vertex_of[a2] = S;
    mm_.vertex_of[a2 + 1] = S2;
    Dart arcb = mm_.twin[segs0.back()];  // dart at S toward the drawing
    // ccw at S: (a1, arc, a2); at S2: (a2', a1')
    mm_.next[a1] = arcb;
    mm_.prev[arcb] = a1;
    mm_.next[arcb] = a2;
    mm_.prev[a2] = arcb;
    mm_.next[a2] = a1;
    mm_.prev[a1] = a2;
    mm_.dart_at[S] = a1;
    mm_.next[a2 + 1] = a1 + 1;
    mm_.prev[a1 + 1] = a2 + 1;
    mm_.next[a1 + 1] = a2 + 1;
    mm_.prev[a2 + 1] = a1 + 1;
    mm_.dart_at[S2] = a2 + 1;
    gamma_curve_ = mm_.new_curve();
    mm_.curves[gamma_curve_] = {a1, mm_.twin[a2]};
    for (Dart dd : {a1, a1 + 1, a2, a2 + 1}) mm_.curve_of[dd] = gamma_curve_;
    slot_mate_[S] = S2;
    slot_mate_[S2] = S;
    slot_owner_[S] = f1_edge;
    slot_owner_[S2] = f1_edge;
    mm_.refresh();

    // v1-extension to the antipodal slot: target corner at S2 on the inner side
    Dart after1 = insertion_after(v1, f1_edge);
    // the inner corner at S2 is after the backward circle dart a2' (= a2+1)
    auto segs1 = mm_.route(f1_edge, MutableMap::Anchor::corner(v1, after1), {},
                           MutableMap::Anchor::corner(S2, a2 + 1));
    ext_dart_[{v1, f1_edge}] = segs1.front();

    // splice both extensions into the chain of f1 (oriented lex low -> high)
    auto [lo, hi] = edge_pair(d_.n, f1_edge);
    auto& ch = mm_.curves[f1_edge];
    auto attach = [&](int endv, const std::vector<Dart>& segs) {
        if (endv == lo) {
            std::vector<Dart> nw;
            for (auto it = segs.rbegin(); it != segs.rend(); ++it) nw.push_back(mm_.twin[*it]);
            nw.insert(nw.end(), ch.begin(), ch.end());
            ch = std::move(nw);
        } else {
            ch.insert(ch.end(), segs.begin(), segs.end());
        }
    };
    attach(v0, segs0);
    attach(v1, segs1);
    mm_.refresh();
}

inline void Pseudolinearizer::extend_to_slot(int curve, int end_vertex, Dart after_dart,
                                             bool at_front, const std::vector<char>& walls,
                                             const std::set<int>& wall_curves) {
    mm_.refresh();
    int seed = mm_.face_of[after_dart];
    Region reg = flood_region(seed, walls);
    // gap choice: first gamma gap whose inner face lies in this region
    Dart gap = -1;
    const auto& g = mm_.curves[gamma_curve_];
    for (Dart gd : g) {
        if (reg.in[mm_.face_of[gd]]) {
            gap = gd;
            break;
        }
    }
    if (gap < 0) throw InternalError("no gamma gap borders the region");
    std::set<int> excl(wall_curves);
    excl.insert(curve);
    excl.insert(gamma_curve_);
    std::vector<Component> comps = region_components(reg, excl);
    std::vector<Dart> steps = greedy_path(reg, seed, mm_.face_of[gap], comps);
    auto segs = mm_.route(curve, MutableMap::Anchor::corner(end_vertex, after_dart), steps,
                          MutableMap::Anchor::segment(gap));
    if (end_vertex < d_.n) ext_dart_[{end_vertex, curve}] = segs.front();
    int slot = mm_.head(segs.back());
    slot_owner_[slot] = curve;
    auto& ch = mm_.curves[curve];
    if (at_front) {
        std::vector<Dart> nw;
        for (auto it = segs.rbegin(); it != segs.rend(); ++it) nw.push_back(mm_.twin[*it]);
        nw.insert(nw.end(), ch.begin(), ch.end());
        ch = std::move(nw);
    } else {
        ch.insert(ch.end(), segs.begin(), segs.end());
    }
}

inline void Pseudolinearizer::build_betas() {
    if (betas_built_) throw InternalError("betas already built");
    const int k = static_cast<int>(cf_.size());
    auto cf_edge_at = [&](int i) {  // edge (v_{i-1}, v_i), 1-based like the proof
        int a = cf_[(i - 1 + k) % k], b = cf_[i % k];
        return edge_index(d_.n, std::min(a, b), std::max(a, b));
    };

    bootstrap_gamma(cf_edge_at(1), cf_[0], cf_[1]);

    for (int i = 2; i <= k; ++i) {
        int fi = cf_edge_at(i);
        int va = cf_[i - 1];  // shared with f_{i-1}
        int vb = cf_[i % k];
        std::set<int> wall_curves{fi, cf_edge_at(i - 1)};
        if (i == k) wall_curves.insert(cf_edge_at(1));
        // boundary-cycle cores and gamma are never crossable
        std::vector<std::pair<int, bool>> sel;
        for (int e : cf_edge_set_) sel.push_back({e, true});
        for (int c : wall_curves) sel.push_back({c, false});
        sel.push_back({gamma_curve_, false});

        mm_.refresh();
        Dart after_a = insertion_after(va, fi);
        bool a_front = va == mm_.tail(mm_.curves[fi].front());
        extend_to_slot(fi, va, after_a, a_front, make_walls(sel), wall_curves);

        // second end: the slot must pair antipodally with the one just made
        mm_.refresh();
        Dart after_b = insertion_after(vb, fi);
        int seed_b = mm_.face_of[after_b];
        std::vector<char> walls = make_walls(sel);
        Region reg = flood_region(seed_b, walls);
        // target: the antipodal gap of the slot just created
        int slot_a = -1;
        for (auto& [s, c] : slot_owner_)
            if (c == fi && !slot_mate_.count(s)) slot_a = s;
        if (slot_a < 0) throw InternalError("missing fresh slot");
        // gap of the mate: slots in circle order
        const auto& g = mm_.curves[gamma_curve_];
        int idx_a = -1;
        for (size_t t = 0; t < g.size(); ++t)
            if (mm_.tail(g[t]) == slot_a) idx_a = static_cast<int>(t);
        if (idx_a < 0) throw InternalError("slot not on the circle");
        int half = static_cast<int>(g.size()) / 2;
        Dart mate_gap = g[(idx_a + half) % g.size()];
        if (!reg.in[mm_.face_of[mate_gap]])
            throw InternalError("antipodal gap not reachable for the twin extension");
        std::set<int> excl(wall_curves);
        excl.insert(gamma_curve_);
        std::vector<Component> comps = region_components(reg, excl);
        std::vector<Dart> steps = greedy_path(reg, seed_b, mm_.face_of[mate_gap], comps);
        bool b_front = vb == mm_.tail(mm_.curves[fi].front());
        auto segs = mm_.route(fi, MutableMap::Anchor::corner(vb, after_b), steps,
                              MutableMap::Anchor::segment(mate_gap));
        ext_dart_[{vb, fi}] = segs.front();
        int slot_b = mm_.head(segs.back());
        slot_owner_[slot_b] = fi;
        slot_mate_[slot_a] = slot_b;
        slot_mate_[slot_b] = slot_a;
        auto& ch = mm_.curves[fi];
        if (b_front) {
            std::vector<Dart> nw;
            for (auto it = segs.rbegin(); it != segs.rend(); ++it) nw.push_back(mm_.twin[*it]);
            nw.insert(nw.end(), ch.begin(), ch.end());
            ch = std::move(nw);
        } else {
            ch.insert(ch.end(), segs.begin(), segs.end());
        }
        mm_.refresh();

        // every earlier boundary arc is crossed exactly once
        for (int j = 1; j < i; ++j) {
            int fj = cf_edge_at(j);
            int cnt = crossings_between(fi, fj);
            if (cnt != 1) throw InternalError("boundary arcs must pairwise cross once");
        }
    }
    betas_built_ = true;
}

// ── completion ──────────────────────────────────────────────────────

inline DiskArrangement Pseudolinearizer::complete_to_pseudolines() {
    if (!betas_built_) throw InternalError("build betas first");
    std::set<int> completed;  // alpha arcs extended to the circle

    auto f_curves = [&]() {
        std::set<int> s(cf_edge_set_);
        for (int c : completed) s.insert(c);
        return s;
    };

    for (int ei = 0; ei < d_.num_edges(); ++ei) {
        if (cf_edge_set_.count(ei)) continue;
        mm_.refresh();
        // Lambda: completed curves already crossing ei, plus the boundary
        // arcs met at the two chain ends
        std::set<int> lambda;
        for (int c : f_curves())
            if (crossings_between(ei, c) >= 1) lambda.insert(c);

        auto& ch = mm_.curves[ei];
        struct End {
            int vertex;
            bool cluster;
            Dart after;
        };
        std::vector<End> ends;
        for (int side = 0; side < 2; ++side) {
            int xv = side == 0 ? mm_.tail(ch.front()) : mm_.head(ch.back());
            End e;
            e.vertex = xv;
            if (xv < d_.n) {
                e.cluster = true;
                for (Dart dd : mm_.vertex_darts(xv)) {
                    int c = mm_.curve_of[dd];
                    if (c >= 0 && c < d_.num_edges() && (cf_edge_set_.count(c) || completed.count(c)))
                        lambda.insert(c);
                }
                e.after = -1;  // resolved later (insertion slot)
            } else {
                e.cluster = false;
                if (mm_.degree(xv) != 3) throw InternalError("arc end of unexpected degree");
                for (Dart dd : mm_.vertex_darts(xv)) {
                    int c = mm_.curve_of[dd];
                    if (c != ei) lambda.insert(c);
                }
                // branch goes on the outer side of the boundary edge: after
                // the boundary dart whose rotation successor is the other
                // boundary dart
                Dart t = -1;
                for (Dart dd : mm_.vertex_darts(xv))
                    if (mm_.curve_of[dd] != ei && mm_.curve_of[mm_.next[dd]] != ei) t = dd;
                if (t < 0) throw InternalError("no outer corner at arc end");
                e.after = t;
            }
            ends.push_back(e);
        }

        std::vector<std::pair<int, bool>> sel;
        for (int e : cf_edge_set_) sel.push_back({e, true});
        for (int c : lambda) sel.push_back({c, false});
        sel.push_back({ei, false});
        sel.push_back({gamma_curve_, false});
        std::set<int> wall_curves(lambda);
        wall_curves.insert(ei);

        // first end (the chain front)
        mm_.refresh();
        Dart after0 = ends[0].cluster ? insertion_after(ends[0].vertex, ei) : ends[0].after;
        extend_to_slot(ei, ends[0].vertex, after0, true, make_walls(sel), wall_curves);

        // second end to the antipodal gap
        mm_.refresh();
        Dart after1;
        if (ends[1].cluster) {
            after1 = insertion_after(ends[1].vertex, ei);
        } else {
            Dart t = -1;
            for (Dart dd : mm_.vertex_darts(ends[1].vertex))
                if (mm_.curve_of[dd] != ei && mm_.curve_of[mm_.next[dd]] != ei) t = dd;
            after1 = t;
        }
        int seed1 = mm_.face_of[after1];
        std::vector<char> walls = make_walls(sel);
        Region reg = flood_region(seed1, walls);
        int slot_a = -1;
        for (auto& [s, c] : slot_owner_)
            if (c == ei && !slot_mate_.count(s)) slot_a = s;
        if (slot_a < 0) throw InternalError("missing fresh slot for completion");
        const auto& g = mm_.curves[gamma_curve_];
        int idx_a = -1;
        for (size_t t = 0; t < g.size(); ++t)
            if (mm_.tail(g[t]) == slot_a) idx_a = static_cast<int>(t);
        int half = static_cast<int>(g.size()) / 2;
        Dart mate_gap = g[(idx_a + half) % g.size()];
        if (!reg.in[mm_.face_of[mate_gap]])
            throw InternalError("completion: antipodal gap unreachable");
        std::set<int> excl(wall_curves);
        excl.insert(gamma_curve_);
        std::vector<Component> comps = region_components(reg, excl);
        std::vector<Dart> steps = greedy_path(reg, seed1, mm_.face_of[mate_gap], comps);
        auto segs = mm_.route(ei, MutableMap::Anchor::corner(ends[1].vertex, after1), steps,
                              MutableMap::Anchor::segment(mate_gap));
        if (ends[1].cluster) ext_dart_[{ends[1].vertex, ei}] = segs.front();
        int slot_b = mm_.head(segs.back());
        slot_owner_[slot_b] = ei;
        slot_mate_[slot_a] = slot_b;
        slot_mate_[slot_b] = slot_a;
        // ends[1] is the chain back
        ch.insert(ch.end(), segs.begin(), segs.end());
        mm_.refresh();
        completed.insert(ei);

        // every completed curve and boundary arc now crosses ei exactly once
        for (int c : f_curves()) {
            if (c == ei) continue;
            if (crossings_between(ei, c) != 1)
                throw InternalError("completed arc pair without exactly one crossing");
        }
    }

    // ── export ──
    mm_.refresh();
    const int R = d_.num_edges();
    // slot order around the circle
    const auto& g = mm_.curves[gamma_curve_];
    std::vector<int> slot_seq;
    for (Dart gd : g) slot_seq.push_back(mm_.tail(gd));
    if (static_cast<int>(slot_seq.size()) != 2 * R)
        throw InternalError("wrong number of circle slots");
    for (int i = 0; i < 2 * R; ++i)
        if (slot_mate_.at(slot_seq[i]) != slot_seq[(i + R) % (2 * R)])
            throw InternalError("slot pairing is not antipodal");

    // verify cluster rotations match the plan
    for (int w = 0; w < d_.n; ++w) {
        const auto& pl = plan_[w];
        auto darts = mm_.vertex_darts(w);
        if (darts.size() != pl.size()) throw InternalError("cluster degree mismatch");
        std::vector<Branch> actual;
        for (Dart dd : darts) {
            int c = mm_.curve_of[dd];
            bool ext = ext_dart_.count({w, c}) && ext_dart_.at({w, c}) == dd;
            actual.push_back({c, ext});
        }
        // rotate to align
        int off = -1;
        for (size_t o = 0; o < actual.size(); ++o)
            if (actual[o] == pl[0]) off = static_cast<int>(o);
        if (off < 0) throw InternalError("cluster rotation misaligned");
        for (size_t i = 0; i < pl.size(); ++i)
            if (!(actual[(off + i) % actual.size()] == pl[i]))
                throw InternalError("cluster rotation does not match plan");
    }

    DiskArrangement out;
    out.m = R;
    out.pseudoline.assign(R, 1);
    out.events.assign(R, {});
    std::map<int, int> slot_index;
    for (int i = 0; i < 2 * R; ++i) slot_index[slot_seq[i]] = i;
    out.slots.assign(2 * R, -1);
    for (int i = 0; i < 2 * R; ++i) out.slots[i] = slot_owner_.at(slot_seq[i]);

    for (int c = 0; c < R; ++c) {
        const auto& ch = mm_.curves[c];
        std::vector<int> ev;
        for (size_t i = 0; i + 1 < ch.size(); ++i) {
            int xv = mm_.head(ch[i]);
            if (xv < d_.n) {
                // cluster: expand to the pencil order
                const auto& pl = plan_[xv];
                int r = static_cast<int>(pl.size()) / 2;
                Dart arrival_branch = mm_.twin[ch[i]];
                int p = -1;
                {
                    int cc = mm_.curve_of[arrival_branch];
                    bool ext = ext_dart_.count({xv, cc}) &&
                               ext_dart_.at({xv, cc}) == arrival_branch;
                    p = plan_pos(xv, {cc, ext});
                }
                if (p >= r) {
                    int line = 2 * r - p;
                    for (int j = r; j >= 1; --j) {
                        if (j == line) continue;
                        ev.push_back(pl[r - j].edge);
                    }
                } else {
                    int line = r - p;
                    for (int j = 1; j <= r; ++j) {
                        if (j == line) continue;
                        ev.push_back(pl[r - j].edge);
                    }
                }
            } else {
                if (mm_.degree(xv) != 4) throw InternalError("left-over loose end");
                int partner = -1;
                for (Dart od : mm_.vertex_darts(xv))
                    if (mm_.curve_of[od] != c) partner = mm_.curve_of[od];
                if (partner < 0 || partner == gamma_curve_)
                    throw InternalError("bad crossing partner at export");
                ev.push_back(partner);
            }
        }
        int s_front = slot_index.at(mm_.tail(ch.front()));
        int s_back = slot_index.at(mm_.head(ch.back()));
        if (s_front > s_back) std::reverse(ev.begin(), ev.end());
        out.events[c] = std::move(ev);
    }

    ArrValidation v = validate_arrangement(out, true);
    if (!v.ok) throw InternalError("pseudolinearization failed validation: " + v.message);
    return out;
}

}  // namespace kndraw
