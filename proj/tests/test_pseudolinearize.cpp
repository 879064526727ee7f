#include <catch2/catch_amalgamated.hpp>

#include "kndraw/generators.hpp"
#include "kndraw/pseudolinearize.hpp"

using namespace kndraw;

namespace {

std::vector<ExactPoint> pts(std::initializer_list<std::pair<int, int>> xy) {
    std::vector<ExactPoint> v;
    for (auto [x, y] : xy) v.push_back({Int(x), Int(y)});
    return v;
}

int lowest_witness(const Drawing& d) {
    auto ws = face_convex_witnesses(d);
    REQUIRE(!ws.empty());
    return ws.front();
}

void check_result(const Drawing& d, const DiskArrangement& arr) {
    int R = d.num_edges();
    REQUIRE(arr.m == R);
    auto v = validate_arrangement(arr, true);
    INFO(v.message);
    REQUIRE(v.ok);
    // every pair crosses exactly once is implied by validation; drawing
    // crossings must be preserved as events between the matching arcs
    for (auto& [ef, xv] : d.crossing_of) {
        (void)xv;
        auto [e, f] = ef;
        CHECK(std::count(arr.events[e].begin(), arr.events[e].end(), f) == 1);
    }
    // the drawn part of each edge is a subchain: its crossing sequence along
    // the edge appears in the same relative order within the arc's events
    for (int e = 0; e < R; ++e) {
        std::vector<int> drawn;
        auto [u, vv] = edge_pair(d.n, e);
        for (Dart dd : d.chain[e]) {
            int h = d.map.head(dd);
            if (h >= d.n) {
                auto [e1, e2] = std::pair{d.edges_at_vertex[h][0], d.edges_at_vertex[h][1]};
                drawn.push_back(e1 == e ? e2 : e1);
            }
        }
        // find drawn as a subsequence of events[e] or its reverse
        auto subseq = [](const std::vector<int>& small, const std::vector<int>& big) {
            size_t i = 0;
            for (int x : big)
                if (i < small.size() && small[i] == x) ++i;
            return i == small.size();
        };
        std::vector<int> rev(drawn.rbegin(), drawn.rend());
        CHECK((subseq(drawn, arr.events[e]) || subseq(rev, arr.events[e])));
    }
}

}  // namespace

TEST_CASE("pseudolinearize K3") {
    Drawing d = from_points(pts({{0, 0}, {4, 0}, {2, 3}}));
    auto arr = pseudolinearize(d, *d.outer_face);
    check_result(d, arr);
    CHECK(arr.m == 3);
}

TEST_CASE("pseudolinearize planar K4") {
    Drawing d = from_points(pts({{0, 0}, {8, 0}, {4, 8}, {4, 3}}));
    auto arr = pseudolinearize(d, *d.outer_face);
    check_result(d, arr);
    CHECK(arr.m == 6);
}

TEST_CASE("pseudolinearize crossing K4") {
    Drawing d = from_points(pts({{0, 0}, {10, 1}, {9, 11}, {1, 10}}));
    auto arr = pseudolinearize(d, lowest_witness(d));
    check_result(d, arr);
    CHECK(arr.m == 6);
}

TEST_CASE("pseudolinearize convex K5") {
    Drawing d = gen_convex_position(5);
    auto arr = pseudolinearize(d, *d.outer_face);
    check_result(d, arr);
    CHECK(arr.m == 10);
}

TEST_CASE("pseudolinearize random rectilinear") {
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        for (int n : {5, 6, 7}) {
            Drawing d = gen_random_points(n, seed, 500);
            INFO("n=" << n << " seed=" << seed);
            auto arr = pseudolinearize(d, *d.outer_face);
            check_result(d, arr);
        }
    }
}

TEST_CASE("pseudolinearize tin-can K6 from both 3-cycle witnesses") {
    Drawing d = gen_tin_can(6);
    auto ws = face_convex_witnesses(d);
    int done = 0;
    for (int f : ws) {
        auto walk = d.map.face_walk(f);
        if (walk.size() != 3) continue;
        auto arr = pseudolinearize(d, f);
        check_result(d, arr);
        ++done;
    }
    CHECK(done >= 2);
}

TEST_CASE("pseudolinearize rejects non-witness faces") {
    Drawing d = from_points(pts({{0, 0}, {10, 1}, {9, 11}, {1, 10}}));
    auto ws = face_convex_witnesses(d);
    std::set<int> wset(ws.begin(), ws.end());
    for (int f = 0; f < d.map.F && f < 3; ++f) {
        if (wset.count(f)) continue;
        CHECK_THROWS_AS(pseudolinearize(d, f), NotFaceConvex);
    }
}

TEST_CASE("frames: A_e variants") {
    // convex K4: diagonal has both ends on the boundary cycle -> A empty
    Drawing d = gen_convex_position(4);
    int F = *d.outer_face;
    int diag = edge_index(4, 0, 2);
    EdgeFrame fr = edge_frame(d, F, diag);
    CHECK(fr.ends_off_cf.empty());
    // planar K4 with inner vertex: edge to the inner vertex has one free end
    Drawing d2 = from_points(pts({{0, 0}, {8, 0}, {4, 8}, {4, 3}}));
    EdgeFrame fr2 = edge_frame(d2, *d2.outer_face, edge_index(4, 0, 3));
    CHECK(fr2.ends_off_cf == std::vector<int>{3});
    CHECK(fr2.end.at(3).f_edge >= 0);
}
