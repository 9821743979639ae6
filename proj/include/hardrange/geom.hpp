#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "hardrange/rng.hpp"

namespace hardrange {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double squared_distance(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Point2& a, const Point2& b) {
    return std::sqrt(squared_distance(a, b));
}

struct Circle {
    Point2 center;
    double radius = 1.0;

    Circle(Point2 c, double r) : center(c), radius(r) {
        if (!(r > 0.0)) throw std::invalid_argument("Circle: radius must be > 0");
    }
};

// Closed region between two concentric circles of radii r and r + w.
struct Annulus {
    Point2 center;
    double r = 1.0;  // inner radius
    double w = 1.0;  // width

    Annulus(Point2 c, double inner_radius, double width)
        : center(c), r(inner_radius), w(width) {
        if (!(r > 0.0)) throw std::invalid_argument("Annulus: inner radius must be > 0");
        if (!(w > 0.0)) throw std::invalid_argument("Annulus: width must be > 0");
    }

    double outer() const { return r + w; }
    Circle inner_circle() const { return Circle(center, r); }
    Circle outer_circle() const { return Circle(center, r + w); }
};

struct Rect {
    Point2 lo;
    Point2 hi;

    Rect(Point2 min_corner, Point2 max_corner) : lo(min_corner), hi(max_corner) {
        if (!(lo.x <= hi.x && lo.y <= hi.y))
            throw std::invalid_argument("Rect: min corner must not exceed max corner");
    }

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const { return width() * height(); }

    bool contains(const Point2& p) const {
        return lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y;
    }
};

// Parameters of a pair of width-w annuli with inner radii r1 <= r2 - w and
// center distance d. g is the gap between the two inner circles along the
// center line.
struct AnnulusPairGeometry {
    double r1;
    double r2;
    double w;
    double d;
    double g;

    AnnulusPairGeometry(double inner1, double inner2, double width, double center_dist)
        : r1(inner1), r2(inner2), w(width), d(center_dist), g(std::max(r1 - r2 + d, 0.0)) {
        if (!(r1 > 0.0 && r2 > 0.0)) throw std::invalid_argument("AnnulusPairGeometry: radii must be > 0");
        if (!(w > 0.0)) throw std::invalid_argument("AnnulusPairGeometry: width must be > 0");
        if (!(r1 + w <= r2)) throw std::invalid_argument("AnnulusPairGeometry: requires r1 + w <= r2");
        if (!(w < r1)) throw std::invalid_argument("AnnulusPairGeometry: requires w < r1");
        if (!(d >= 0.0)) throw std::invalid_argument("AnnulusPairGeometry: requires d >= 0");
    }
};

/// Area of disk(c1) ∩ disk(c2) by the two-circular-segment closed form.
/// Total function: 0 for disjoint disks, area of the smaller disk when one
/// contains the other. acos arguments are clamped to absorb rounding near
/// tangency.
inline double lens_area(const Circle& c1, const Circle& c2) {
    // evaluate with the smaller radius first so the result is bit-identical
    // under argument swap
    const double d = distance(c1.center, c2.center);
    const double r1 = std::min(c1.radius, c2.radius);
    const double r2 = std::max(c1.radius, c2.radius);
    if (d >= r1 + r2) return 0.0;
    if (d <= std::abs(r1 - r2)) {
        const double rmin = std::min(r1, r2);
        return kPi * rmin * rmin;
    }
    const auto cl = [](double v) { return std::clamp(v, -1.0, 1.0); };
    const double part1 = r1 * r1 * std::acos(cl((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)));
    const double part2 = r2 * r2 * std::acos(cl((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)));
    const double s = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    return part1 + part2 - 0.5 * std::sqrt(std::max(s, 0.0));
}

inline double annulus_area(const Annulus& a) {
    const double ro = a.outer();
    return kPi * (ro * ro - a.r * a.r);
}

// Closed-set containment; squared comparisons, no square roots.
inline bool annulus_contains(const Annulus& a, const Point2& p) {
    const double d2 = squared_distance(a.center, p);
    const double ro = a.outer();
    return a.r * a.r <= d2 && d2 <= ro * ro;
}

/// Exact area of the intersection of two annuli via inclusion-exclusion over
/// the four disk pairs. Valid because each inner disk is contained in its
/// outer disk.
inline double annulus_intersection_area(const Annulus& a1, const Annulus& a2) {
    // canonical argument order keeps the sum bit-identical under swap
    const auto before = [](const Annulus& a, const Annulus& b) {
        if (a.r != b.r) return a.r < b.r;
        if (a.w != b.w) return a.w < b.w;
        if (a.center.x != b.center.x) return a.center.x < b.center.x;
        return a.center.y < b.center.y;
    };
    const Annulus& p = before(a2, a1) ? a2 : a1;
    const Annulus& q = before(a2, a1) ? a1 : a2;
    const double v = lens_area(p.outer_circle(), q.outer_circle()) -
                     lens_area(p.outer_circle(), q.inner_circle()) -
                     lens_area(p.inner_circle(), q.outer_circle()) +
                     lens_area(p.inner_circle(), q.inner_circle());
    return std::max(v, 0.0);
}

/// Bound expression w·n·sqrt(w² / ((g+w)·d)) with constant 1; callers fit or
/// apply their own constant. Requires w <= d < r2.
inline double ring_int_bound(const AnnulusPairGeometry& geom, double n) {
    if (geom.d < geom.w || geom.d >= geom.r2)
        throw std::domain_error("ring_int_bound: requires w <= d < r2");
    return geom.w * n * std::sqrt(geom.w * geom.w / ((geom.g + geom.w) * geom.d));
}

/// x-coordinates of the two intersection corners B and D in the canonical
/// frame (first center at the origin, second at (d, 0)): B is on
/// circle(O1, r1) ∩ circle(O2, r2+w), D on circle(O1, r1+w) ∩ circle(O2, r2).
/// Valid in the quadrilateral-region regime r2 - r1 + 2w < d < r2.
inline std::pair<double, double> radial_corner_gap(const AnnulusPairGeometry& geom) {
    const double r1 = geom.r1, r2 = geom.r2, w = geom.w, d = geom.d;
    if (!(r2 - r1 + 2.0 * w < d && d < r2))
        throw std::domain_error("radial_corner_gap: requires r2 - r1 + 2w < d < r2");
    const double x_b = (r1 * r1 - (r2 + w) * (r2 + w) + d * d) / (2.0 * d);
    const double x_d = ((r1 + w) * (r1 + w) - r2 * r2 + d * d) / (2.0 * d);
    return {x_b, x_d};
}

struct McArea {
    double estimate = 0.0;
    double std_err = 0.0;
};

// Uniform-sampling area estimate of {p in box : inside(p)}. Deterministic for
// a fixed seed.
inline McArea mc_area(const std::function<bool(const Point2&)>& inside, const Rect& box,
                      std::int64_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("mc_area: samples must be >= 1");
    Rng rng(seed);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const Point2 p{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
        if (inside(p)) ++hits;
    }
    const double box_area = box.area();
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    McArea out;
    out.estimate = box_area * frac;
    out.std_err = box_area * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return out;
}

// Monte Carlo estimate of area(a ∩ rect). Samples over rect clipped to the
// bounding box of the outer circle.
inline double annulus_area_in_rect(const Annulus& a, const Rect& rect, std::int64_t samples,
                                   std::uint64_t seed) {
    const double ro = a.outer();
    const double lox = std::max(rect.lo.x, a.center.x - ro);
    const double hix = std::min(rect.hi.x, a.center.x + ro);
    const double loy = std::max(rect.lo.y, a.center.y - ro);
    const double hiy = std::min(rect.hi.y, a.center.y + ro);
    if (!(lox < hix && loy < hiy)) return 0.0;
    const Rect box(Point2{lox, loy}, Point2{hix, hiy});
    return mc_area([&](const Point2& p) { return annulus_contains(a, p); }, box, samples, seed)
        .estimate;
}

}  // namespace hardrange
