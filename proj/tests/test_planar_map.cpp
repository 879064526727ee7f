#include <catch2/catch_amalgamated.hpp>

#include "kndraw/planar_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace kndraw;

namespace {

// A 3-cycle: vertices 0,1,2, darts 2k = k->k+1, 2k+1 = twin.
PlanarMap three_cycle() {
    std::vector<Dart> twin = {1, 0, 3, 2, 5, 4};
    // vertex 0: darts 0 (to 1), 5 (to 2); vertex 1: 2 (to 2), 1 (to 0); vertex 2: 4 (to 0), 3 (to 1)
    std::vector<int> vertex_of = {0, 1, 1, 2, 2, 0};
    // ccw rotations (triangle drawn with 0,1,2 counterclockwise)
    std::vector<Dart> next(6);
    next[0] = 5;
    next[5] = 0;
    next[2] = 1;
    next[1] = 2;
    next[4] = 3;
    next[3] = 4;
    return build_map(twin, next, vertex_of);
}

// Planar K4: outer triangle 0,1,2 ccw with 3 in the middle.
PlanarMap planar_k4() {
    // edges: 0-1 (darts 0,1), 0-2 (2,3), 0-3 (4,5), 1-2 (6,7), 1-3 (8,9), 2-3 (10,11)
    std::vector<Dart> twin = {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10};
    std::vector<int> vertex_of = {0, 1, 0, 2, 0, 3, 1, 2, 1, 3, 2, 3};
    // geometric model: 0=(0,0), 1=(4,0), 2=(2,4), 3=(2,1)
    // ccw rotations: at 0: (to1, to3, to2) ; at 1: (to2, to3, to0); at 2: (to0, to3, to1); at 3: (to0, to1, to2)? check angles
    // at 3=(2,1): to 0 = (-2,-1) angle ~207deg; to 1 = (2,-1) ~333deg; to 2 = (0,3) 90deg.
    // ccw order: (to2, to0, to1)
    auto set_cycle = [](std::vector<Dart>& nx, std::initializer_list<Dart> cyc) {
        std::vector<Dart> v(cyc);
        for (size_t i = 0; i < v.size(); ++i) nx[v[i]] = v[(i + 1) % v.size()];
    };
    std::vector<Dart> next(12);
    set_cycle(next, {0, 4, 2});   // at 0: to1 (0), to3 (4), to2 (2)
    set_cycle(next, {6, 8, 1});   // at 1: to2 (6), to3 (8), to0 (1)
    set_cycle(next, {3, 10, 7});  // at 2: to0 (3), to3 (10), to1 (7)
    set_cycle(next, {11, 5, 9});  // at 3: to2 (11), to0 (5), to1 (9)
    return build_map(twin, next, vertex_of);
}

// Crossing K4 planarized by hand: vertices 0..3 in convex position
// (0,0),(1,0),(1,1),(0,1) with diagonals 0-2 and 1-3 crossing at vertex 4.
PlanarMap crossing_k4_planarized() {
    // edges: 0-1 (0,1), 1-2 (2,3), 2-3 (4,5), 3-0 (6,7),
    // 0-4 (8,9), 4-2 (10,11), 1-4 (12,13), 4-3 (14,15)
    std::vector<Dart> twin = {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12, 15, 14};
    std::vector<int> vertex_of = {0, 1, 1, 2, 2, 3, 3, 0, 0, 4, 4, 2, 1, 4, 4, 3};
    auto set_cycle = [](std::vector<Dart>& nx, std::initializer_list<Dart> cyc) {
        std::vector<Dart> v(cyc);
        for (size_t i = 0; i < v.size(); ++i) nx[v[i]] = v[(i + 1) % v.size()];
    };
    std::vector<Dart> next(16);
    set_cycle(next, {0, 8, 7});          // at 0=(0,0): to1 (east), to4 (diag NE), to3 (north)
    set_cycle(next, {2, 12, 1});         // at 1=(1,0): to2 (north), to4 (NW), to0 (west)
    set_cycle(next, {4, 11, 3});         // at 2=(1,1): to3 (west), to4 (SW), to1 (south)
    set_cycle(next, {5, 6, 15});         // at 3=(0,1): to2 (east), to0 (south), to4 (SE)
    set_cycle(next, {10, 14, 9, 13});    // at 4=(.5,.5): to2 (NE), to3 (NW), to0 (SW), to1 (SE)
    return build_map(twin, next, vertex_of);
}

std::multiset<size_t> face_length_multiset(const PlanarMap& m) {
    std::multiset<size_t> ms;
    for (auto& w : faces(m)) ms.insert(w.size());
    return ms;
}

}  // namespace

TEST_CASE("3-cycle bounds two faces") {
    PlanarMap m = three_cycle();
    CHECK(m.V == 3);
    CHECK(m.E == 3);
    CHECK(m.F == 2);
    auto fs = faces(m);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].size() == 3);
    CHECK(fs[1].size() == 3);
}

TEST_CASE("planar K4 map") {
    PlanarMap m = planar_k4();
    CHECK(m.V == 4);
    CHECK(m.E == 6);
    CHECK(m.F == 4);
    for (auto& w : faces(m)) CHECK(w.size() == 3);
}

TEST_CASE("crossing K4 planarization") {
    PlanarMap m = crossing_k4_planarized();
    CHECK(m.V == 5);
    CHECK(m.E == 8);
    CHECK(m.F == 5);
    // exactly one face is bounded by the 4-cycle of graph vertices
    int quad_faces = 0;
    for (auto& w : faces(m)) {
        if (w.size() == 4) {
            bool all_graph = true;
            for (Dart d : w)
                if (m.vertex_of[d] == 4) all_graph = false;
            if (all_graph) ++quad_faces;
        }
    }
    CHECK(quad_faces == 1);
}

TEST_CASE("invalid maps are rejected") {
    SECTION("twin with fixed point") {
        std::vector<Dart> twin = {0, 1};
        std::vector<Dart> next = {1, 0};
        std::vector<int> vo = {0, 1};
        CHECK_THROWS_AS(build_map(twin, next, vo), MapError);
    }
    SECTION("non-sphere: two loops glued to make a torus-like defect") {
        // next not matching vertex_of orbits
        std::vector<Dart> twin = {1, 0, 3, 2};
        std::vector<Dart> next = {2, 3, 0, 1};
        std::vector<int> vo = {0, 1, 1, 0};
        CHECK_THROWS_AS(build_map(twin, next, vo), MapError);
    }
    SECTION("bridge rejected") {
        // single edge between two degree-1 vertices: one face on both sides
        std::vector<Dart> twin = {1, 0};
        std::vector<Dart> next = {0, 1};
        std::vector<int> vo = {0, 1};
        CHECK_THROWS_AS(build_map(twin, next, vo), MapError);
    }
}

TEST_CASE("handshake identities") {
    for (auto m : {three_cycle(), planar_k4(), crossing_k4_planarized()}) {
        size_t total_face_len = 0;
        for (auto& w : faces(m)) total_face_len += w.size();
        CHECK(total_face_len == size_t(2 * m.E));
        int total_deg = 0;
        for (int v = 0; v < m.V; ++v) total_deg += m.degree(v);
        CHECK(total_deg == 2 * m.E);
    }
}

TEST_CASE("faces stable under dart relabeling") {
    PlanarMap m = crossing_k4_planarized();
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> perm(m.num_darts());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Dart> twin(m.num_darts()), next(m.num_darts());
        std::vector<int> vo(m.num_darts());
        for (Dart d = 0; d < m.num_darts(); ++d) {
            twin[perm[d]] = perm[m.twin[d]];
            next[perm[d]] = perm[m.next[d]];
            vo[perm[d]] = m.vertex_of[d];
        }
        PlanarMap m2 = build_map(twin, next, vo);
        CHECK(face_length_multiset(m2) == face_length_multiset(m));
    }
}

TEST_CASE("dual graph") {
    SECTION("3-cycle dual: two nodes, 3 parallel edges") {
        auto dg = dual_graph(three_cycle());
        CHECK(dg.num_faces == 2);
        REQUIRE(dg.edges.size() == 3);
        for (auto& e : dg.edges) CHECK(e.f1 != e.f2);
    }
    SECTION("planar K4 dual is 3-regular on 4 nodes") {
        auto dg = dual_graph(planar_k4());
        CHECK(dg.num_faces == 4);
        CHECK(dg.edges.size() == 6);
        for (auto& inc : dg.incident) CHECK(inc.size() == 3);
    }
    SECTION("dual node degrees equal primal face lengths") {
        PlanarMap m = crossing_k4_planarized();
        auto dg = dual_graph(m);
        auto fs = faces(m);
        for (int f = 0; f < m.F; ++f) CHECK(dg.incident[f].size() == fs[f].size());
    }
    SECTION("dual edge endpoints both contain the segment's darts") {
        PlanarMap m = crossing_k4_planarized();
        auto dg = dual_graph(m);
        for (auto& e : dg.edges) {
            Dart d = m.seg_dart[e.segment];
            CHECK(((m.face_of[d] == e.f1 && m.face_of[m.twin[d]] == e.f2) ||
                   (m.face_of[d] == e.f2 && m.face_of[m.twin[d]] == e.f1)));
        }
    }
}

TEST_CASE("mirror reverses rotations but keeps face structure sizes") {
    PlanarMap m = crossing_k4_planarized();
    PlanarMap mm = mirror(m);
    CHECK(mm.V == m.V);
    CHECK(mm.F == m.F);
    CHECK(face_length_multiset(mm) == face_length_multiset(m));
}
