#include <catch2/catch_amalgamated.hpp>

#include "kndraw/drawing.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace kndraw;

namespace {

std::vector<ExactPoint> pts(std::initializer_list<std::pair<int, int>> xy) {
    std::vector<ExactPoint> v;
    for (auto [x, y] : xy) v.push_back({Int(x), Int(y)});
    return v;
}

std::vector<ExactPoint> parabola(int n) {
    std::vector<ExactPoint> v;
    for (int i = 1; i <= n; ++i) v.push_back({Int(i), Int(i) * Int(i)});
    return v;
}

// Independent O(n^4) oracle: count crossing 4-subsets by orientation tests only.
int crossing_count_oracle(const std::vector<ExactPoint>& p) {
    int n = static_cast<int>(p.size());
    int cnt = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    if (segments_cross(p[a], p[b], p[c], p[d]) ||
                        segments_cross(p[a], p[c], p[b], p[d]) ||
                        segments_cross(p[a], p[d], p[b], p[c]))
                        ++cnt;
                }
    return cnt;
}

std::vector<ExactPoint> random_points(int n, unsigned seed, int bound) {
    std::mt19937_64 rng(seed);
    while (true) {
        std::set<std::pair<long long, long long>> used;
        std::vector<ExactPoint> p;
        while (static_cast<int>(p.size()) < n) {
            long long x = static_cast<long long>(rng() % (bound + 1));
            long long y = static_cast<long long>(rng() % (bound + 1));
            if (used.insert({x, y}).second) p.push_back({Int(x), Int(y)});
        }
        try {
            from_points(p);  // probe for degeneracy
            return p;
        } catch (const DrawingError&) {
            continue;
        }
    }
}

}  // namespace

TEST_CASE("from_points: K4 configurations") {
    SECTION("convex position -> one crossing") {
        Drawing d = from_points(pts({{0, 0}, {10, 1}, {9, 11}, {1, 10}}));
        CHECK(d.num_crossings() == 1);
        CHECK(d.map.V == 5);
        CHECK(d.map.E == 8);
        CHECK(d.map.F == 5);
        auto t = k4_type(d, {0, 1, 2, 3});
        CHECK(t.crossing);
        CHECK(t.pair == std::pair{edge_index(4, 0, 2), edge_index(4, 1, 3)});
    }
    SECTION("one point inside -> planar") {
        Drawing d = from_points(pts({{0, 0}, {8, 0}, {4, 8}, {4, 3}}));
        CHECK(d.num_crossings() == 0);
        CHECK_FALSE(k4_type(d, {0, 1, 2, 3}).crossing);
    }
}

TEST_CASE("from_points: degeneracies rejected") {
    CHECK_THROWS_AS(from_points(pts({{0, 0}, {1, 1}, {2, 2}, {0, 3}})), DrawingError);
    // three diagonals of a symmetric hexagon meet at the center
    CHECK_THROWS_AS(from_points(pts({{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {-1, -2}, {1, -2}})),
                    DrawingError);
    CHECK_THROWS_AS(from_points(pts({{0, 0}, {1, 0}})), DrawingError);
}

TEST_CASE("convex position: C(n,4) crossings") {
    for (int n : {4, 5, 6, 7}) {
        Drawing d = from_points(parabola(n));
        int expect = n * (n - 1) * (n - 2) * (n - 3) / 24;
        CHECK(d.num_crossings() == expect);
        CHECK(validate_good(d).ok());
    }
}

TEST_CASE("crossing count matches orientation oracle on random inputs") {
    for (unsigned seed = 1; seed <= 12; ++seed) {
        int n = 4 + static_cast<int>(seed % 6);
        auto p = random_points(n, seed, 400);
        Drawing d = from_points(p);
        CHECK(d.num_crossings() == crossing_count_oracle(p));
        CHECK(validate_good(d).ok());
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int e = c + 1; e < n; ++e) {
                        auto t = k4_type(d, {a, b, c, e});
                        bool any = segments_cross(p[a], p[b], p[c], p[e]) ||
                                   segments_cross(p[a], p[c], p[b], p[e]) ||
                                   segments_cross(p[a], p[e], p[b], p[c]);
                        CHECK(t.crossing == any);
                    }
    }
}

TEST_CASE("rotation system") {
    SECTION("K3: unique cyclic order") {
        Drawing d = from_points(pts({{0, 0}, {4, 0}, {2, 3}}));
        auto rot = rotation_system(d);
        REQUIRE(rot.size() == 3);
        for (auto& r : rot) CHECK(r.size() == 2);
    }
    SECTION("convex K4: angular order at vertex 0") {
        Drawing d = from_points(parabola(4));
        auto rot = rotation_system(d);
        std::vector<int> r = rot[0];
        auto it = std::find(r.begin(), r.end(), 1);
        REQUIRE(it != r.end());
        std::rotate(r.begin(), it, r.end());
        CHECK(r == std::vector<int>{1, 2, 3});
    }
    SECTION("mirroring the map reverses rotations") {
        Drawing d = from_points(parabola(5));
        auto rot = rotation_system(d);
        Drawing md = d;
        md.map = mirror(d.map);
        auto mrot = rotation_system(md);
        for (int v = 0; v < d.n; ++v) {
            std::vector<int> rev(mrot[v].rbegin(), mrot[v].rend());
            auto it = std::find(rev.begin(), rev.end(), rot[v][0]);
            REQUIRE(it != rev.end());
            std::rotate(rev.begin(), it, rev.end());
            CHECK(rev == rot[v]);
        }
    }
}

TEST_CASE("triangle sides") {
    SECTION("K3: both sides empty") {
        Drawing d = from_points(pts({{0, 0}, {4, 0}, {2, 3}}));
        auto [s0, s1] = triangle_sides(d, {0, 1, 2});
        CHECK(s0.contained.empty());
        CHECK(s1.contained.empty());
    }
    SECTION("planar K4, outer triangle") {
        Drawing d = from_points(pts({{0, 0}, {8, 0}, {4, 8}, {4, 3}}));
        auto [s0, s1] = triangle_sides(d, {0, 1, 2});
        bool inner_has_3 = (s0.contained == std::vector<int>{3} && s1.contained.empty()) ||
                           (s1.contained == std::vector<int>{3} && s0.contained.empty());
        CHECK(inner_has_3);
    }
    SECTION("crossing K4: fourth vertex on exactly one side of every triangle") {
        Drawing d = from_points(pts({{0, 0}, {10, 1}, {9, 11}, {1, 10}}));
        for (int skip = 0; skip < 4; ++skip) {
            std::array<int, 3> T{};
            int k = 0, fourth = -1;
            for (int v = 0; v < 4; ++v)
                (v == skip ? fourth : T[k++]) = v;
            auto [s0, s1] = triangle_sides(d, T);
            int on0 = static_cast<int>(std::count(s0.contained.begin(), s0.contained.end(), fourth));
            int on1 = static_cast<int>(std::count(s1.contained.begin(), s1.contained.end(), fourth));
            CHECK(on0 + on1 == 1);
        }
    }
}

TEST_CASE("edge_in_disc") {
    SECTION("planar K4: spokes inside outer triangle") {
        Drawing d = from_points(pts({{0, 0}, {8, 0}, {4, 8}, {4, 3}}));
        auto [s0, s1] = triangle_sides(d, {0, 1, 2});
        const TriangleDisc& inner = s0.contained.empty() ? s1 : s0;
        CHECK(edge_in_disc(d, 0, 3, inner));
        CHECK(edge_in_disc(d, 1, 3, inner));
        CHECK(edge_in_disc(d, 2, 3, inner));
        CHECK(edge_in_disc(d, 0, 1, inner));  // boundary edge
    }
    SECTION("crossing K4: crossed edge leaves the disc") {
        Drawing d = from_points(pts({{0, 0}, {10, 1}, {9, 11}, {1, 10}}));
        auto [s0, s1] = triangle_sides(d, {0, 1, 2});
        const TriangleDisc& with3 =
            std::count(s0.contained.begin(), s0.contained.end(), 3) ? s0 : s1;
        const TriangleDisc& without3 = (&with3 == &s0) ? s1 : s0;
        CHECK_FALSE(edge_in_disc(d, 1, 3, with3));
        CHECK_THROWS_AS(edge_in_disc(d, 1, 3, without3), DrawingError);
    }
}

TEST_CASE("make_drawing rejects tampered chains") {
    Drawing d = from_points(pts({{0, 0}, {10, 1}, {9, 11}, {1, 10}}));
    REQUIRE(validate_good(d).ok());
    auto chains = d.chain;
    std::swap(chains[edge_index(4, 0, 1)], chains[edge_index(4, 0, 2)]);
    CHECK_THROWS_AS(make_drawing(4, d.map, chains), DrawingError);
}

TEST_CASE("sphere ingestion: geodesic K4") {
    std::vector<Vec3> p = {{Int(10), Int(1), Int(2)},
                           {Int(-9), Int(8), Int(3)},
                           {Int(-7), Int(-8), Int(2)},
                           {Int(1), Int(2), Int(11)}};
    Drawing d = from_sphere_points(p);
    CHECK(d.n == 4);
    CHECK(validate_good(d).ok());
    CHECK((d.num_crossings() == 0 || d.num_crossings() == 1));
}

TEST_CASE("from_points is deterministic") {
    auto p = parabola(6);
    Drawing a = from_points(p), b = from_points(p);
    CHECK(a.map.next == b.map.next);
    CHECK(a.map.twin == b.map.twin);
    CHECK(a.chain == b.chain);
    CHECK(a.outer_face == b.outer_face);
}
