#include <catch2/catch_amalgamated.hpp>

#include "kndraw/generators.hpp"

using namespace kndraw;

TEST_CASE("H(n) formula values") {
    CHECK(harary_hill(3) == 0);
    CHECK(harary_hill(4) == 0);
    CHECK(harary_hill(5) == 1);
    CHECK(harary_hill(6) == 3);
    CHECK(harary_hill(7) == 9);
    CHECK(harary_hill(8) == 18);
    CHECK(harary_hill(9) == 36);
    CHECK(harary_hill(10) == 60);
    CHECK(harary_hill(12) == 150);
}

TEST_CASE("convex position generator") {
    for (int n : {5, 6}) {
        Drawing d = gen_convex_position(n);
        CHECK(d.num_crossings() == n * (n - 1) * (n - 2) * (n - 3) / 24);
        CHECK(validate_good(d).ok());
        auto ws = face_convex_witnesses(d);
        CHECK(std::count(ws.begin(), ws.end(), *d.outer_face) == 1);
    }
}

TEST_CASE("random points generator: deterministic, valid, in range") {
    Drawing a = gen_random_points(5, 1, 1000);
    Drawing b = gen_random_points(5, 1, 1000);
    CHECK(a.map.next == b.map.next);
    CHECK(a.chain == b.chain);
    CHECK(a.num_crossings() >= 1);
    CHECK(a.num_crossings() <= 5);
    Drawing big = gen_random_points(20, 7, 0);  // bound raised to n^2
    CHECK(validate_good(big).ok());
}

TEST_CASE("tin can crossing numbers match H(n)") {
    for (int n = 3; n <= 12; ++n) {
        Drawing d = gen_tin_can(n);
        INFO("n = " << n);
        CHECK(Int(d.num_crossings()) == harary_hill(n));
        CHECK(validate_good(d).ok());
    }
}

TEST_CASE("tin can K6 has two 3-cycle witness faces") {
    Drawing d = gen_tin_can(6);
    auto ws = face_convex_witnesses(d);
    int tri_witnesses = 0;
    for (int f : ws) {
        auto w = d.map.face_walk(f);
        if (w.size() == 3) {
            bool all_graph = true;
            for (Dart dd : w)
                if (!d.is_graph_vertex(d.map.tail(dd))) all_graph = false;
            if (all_graph) ++tri_witnesses;
        }
    }
    CHECK(tri_witnesses >= 2);
}

TEST_CASE("exhaustive small corpora") {
    auto k3 = gen_exhaustive_small(3);
    CHECK(k3.size() == 1);
    auto k4 = gen_exhaustive_small(4);
    CHECK(k4.size() == 2);
    for (auto& d : k4) CHECK(validate_good(d).ok());
    auto k5 = gen_exhaustive_small(5);
    CHECK(k5.size() == 5);
    std::multiset<int> crossings;
    for (auto& d : k5) {
        CHECK(validate_good(d).ok());
        crossings.insert(d.num_crossings());
    }
    // classical catalogue: crossing numbers 1,3,3,5,5 across the five drawings
    CHECK(crossings == std::multiset<int>{1, 3, 3, 5, 5});
}
