#pragma once

// Exact arithmetic kernel: arbitrary-precision integers, planar and spherical
// orientation predicates, and circular-order comparators.  Every predicate in
// the library goes through this header; nothing downstream touches floating
// point.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <algorithm>
#include <cstdint>
#include <vector>

namespace kndraw {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ── 2D ──────────────────────────────────────────────────────────────

struct Vec2 {
    Int x, y;

    Vec2() = default;
    Vec2(Int px, Int py) : x(std::move(px)), y(std::move(py)) {}

    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
};

using ExactPoint = Vec2;

inline Int cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Int dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

inline int sgn(const Int& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

/// Sign of the signed area of triangle (a,b,c): +1 ccw, -1 cw, 0 collinear.
inline int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return sgn(cross(b - a, c - a));
}

/// Do open segments ab and cd cross properly?  Assumes no three of the four
/// endpoints are collinear, so touching configurations cannot arise.
inline bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    return orient(a, b, c) != orient(a, b, d) && orient(c, d, a) != orient(c, d, b);
}

/// Parameter of the crossing point along a->b, as an exact rational in (0,1).
inline Rat cross_param(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    // t = cross(c-a, d-c) / cross(b-a, d-c)
    Int num = cross(c - a, d - c);
    Int den = cross(b - a, d - c);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(num, den);
}

/// Half-plane class for circular sorting: 0 for angle in [0,pi), 1 otherwise.
/// Zero vectors are not valid inputs.
inline int half_of(const Vec2& v) {
    if (v.y != 0) return v.y > 0 ? 0 : 1;
    return v.x > 0 ? 0 : 1;
}

/// Strict "a before b" in counterclockwise order starting from direction (1,0).
inline bool ccw_less(const Vec2& a, const Vec2& b) {
    int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    return sgn(cross(a, b)) > 0;
}

// ── 3D (sphere model; points are integer direction vectors) ────────

struct Vec3 {
    Int x, y, z;

    Vec3() = default;
    Vec3(Int px, Int py, Int pz) : x(std::move(px)), y(std::move(py)), z(std::move(pz)) {}

    Vec3 operator-() const { return {-x, -y, -z}; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
};

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Int dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Sign of det(a,b,c).  Positive when c is on the positive side of the
/// oriented great circle through a,b (as seen from outside the sphere).
inline int orient(const Vec3& a, const Vec3& b, const Vec3& c) {
    return sgn(dot(cross(a, b), c));
}

/// Is x strictly inside the minor arc from p to q?  Pre: x lies on the great
/// circle through p and q, and p,q are neither equal nor antipodal rays.
inline bool on_minor_arc(const Vec3& p, const Vec3& q, const Vec3& x) {
    Vec3 n = cross(p, q);
    return sgn(dot(cross(p, x), n)) > 0 && sgn(dot(cross(x, q), n)) > 0;
}

/// Do the open minor arcs pq and rs cross properly?  Pre: all four endpoint
/// rays distinct, no endpoint on the other arc's great circle.
inline bool arcs_cross(const Vec3& p, const Vec3& q, const Vec3& r, const Vec3& s) {
    if (orient(p, q, r) == orient(p, q, s)) return false;
    if (orient(r, s, p) == orient(r, s, q)) return false;
    // The two great circles meet at +/-(n1 x n2); the arcs cross iff one of
    // the two meets both minor arcs.
    Vec3 d = cross(cross(p, q), cross(r, s));
    if (d.is_zero()) return false;  // same great circle: caller treats as degenerate
    return (on_minor_arc(p, q, d) && on_minor_arc(r, s, d)) ||
           (on_minor_arc(p, q, -d) && on_minor_arc(r, s, -d));
}

/// The crossing ray of minor arcs pq and rs (must cross).
inline Vec3 arc_crossing_point(const Vec3& p, const Vec3& q, const Vec3& r, const Vec3& s) {
    Vec3 d = cross(cross(p, q), cross(r, s));
    if (on_minor_arc(p, q, d) && on_minor_arc(r, s, d)) return d;
    return -d;
}

/// "x strictly before y" walking the arc p->q.  Pre: x,y on the great circle
/// of p,q, both within the minor arc or at its ends.
inline bool arc_order_less(const Vec3& p, const Vec3& q, const Vec3& x, const Vec3& y) {
    Vec3 n = cross(p, q);
    return sgn(dot(cross(x, y), n)) > 0;
}

/// Tangent of the arc at interior point x, pointing from p toward q.
inline Vec3 arc_tangent_at(const Vec3& p, const Vec3& q, const Vec3& x) {
    return cross(cross(p, q), x);
}

/// Tangent at vertex p of the arc toward q (projection of q onto p's tangent plane).
inline Vec3 tangent_at_vertex(const Vec3& p, const Vec3& q) {
    Vec3 t{dot(p, p) * q.x - dot(p, q) * p.x,
           dot(p, p) * q.y - dot(p, q) * p.y,
           dot(p, p) * q.z - dot(p, q) * p.z};
    return t;
}

/// Circular comparator for tangent vectors at base point `at` (all
/// perpendicular to `at`), counterclockwise as seen from outside the sphere,
/// starting from reference direction `ref`.
inline bool ccw_less_around(const Vec3& at, const Vec3& ref, const Vec3& a, const Vec3& b) {
    auto half = [&](const Vec3& v) {
        int ds = sgn(dot(cross(at, ref), v));  // det(at, ref, v)
        if (ds != 0) return ds > 0 ? 0 : 1;
        // v is parallel or antiparallel to ref
        return sgn(dot(ref, v)) > 0 ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return sgn(dot(cross(at, a), b)) > 0;
}

}  // namespace kndraw
