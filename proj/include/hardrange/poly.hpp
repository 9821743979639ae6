#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hardrange/geom.hpp"

namespace hardrange {

// Univariate polynomial with dense coefficients a0..a_deg. Trailing zero
// coefficients are stripped so the leading coefficient is nonzero whenever
// the degree is positive; the zero polynomial is stored as {0}.
class UniPoly {
public:
    UniPoly() : coeffs_{0.0} {}

    explicit UniPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
        while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    }

    static UniPoly constant(double c) { return UniPoly(std::vector<double>{c}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<size_t>(i)]
                                                                : 0.0;
    }

    double eval(double x) const {
        double acc = 0.0;
        for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    UniPoly derivative() const {
        if (coeffs_.size() == 1) return UniPoly();
        std::vector<double> out(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i)
            out[i - 1] = coeffs_[i] * static_cast<double>(i);
        return UniPoly(std::move(out));
    }

    // Antiderivative with zero constant term.
    UniPoly antiderivative() const {
        std::vector<double> out(coeffs_.size() + 1, 0.0);
        for (size_t i = 0; i < coeffs_.size(); ++i)
            out[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
        return UniPoly(std::move(out));
    }

    // P(x + s), expanded by repeated synthetic division.
    UniPoly shifted(double s) const {
        std::vector<double> c = coeffs_;
        const size_t n = c.size();
        for (size_t i = 0; i + 1 < n; ++i)
            for (size_t j = n - 1; j > i; --j) c[j - 1] += s * c[j];
        return UniPoly(std::move(c));
    }

    UniPoly operator-(const UniPoly& other) const {
        std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
        for (size_t i = 0; i < out.size(); ++i) out[i] = coeff(static_cast<int>(i)) - other.coeff(static_cast<int>(i));
        return UniPoly(std::move(out));
    }

    UniPoly plus_constant(double c) const {
        std::vector<double> out = coeffs_;
        out[0] += c;
        return UniPoly(std::move(out));
    }

private:
    std::vector<double> coeffs_;
};

struct Interval {
    double lo;
    double hi;

    Interval(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi)) throw std::invalid_argument("Interval: requires lo <= hi");
    }

    double length() const { return hi - lo; }
};

// The planar region {(x, y) : P(x) <= y <= P(x) + w}.
struct PolySlab {
    UniPoly base;
    double width;

    PolySlab(UniPoly b, double w) : base(std::move(b)), width(w) {
        if (!(width > 0.0)) throw std::invalid_argument("PolySlab: width must be > 0");
    }
};

inline constexpr double kRootTol = 1e-10;

namespace detail {

inline double bisect_root(const UniPoly& p, double lo, double hi, double flo, double tol) {
    // invariant: sign change between lo and hi
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p.eval(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// All real roots of P inside iv, each located to absolute precision tol and
// deduplicated within tol. Bisection on the monotone pieces delimited by the
// roots of the derivative (computed recursively).
inline std::vector<double> real_roots_in(const UniPoly& p, const Interval& iv, double tol = kRootTol) {
    if (!(tol > 0.0)) throw std::invalid_argument("real_roots_in: tol must be > 0");
    if (p.is_zero()) throw std::invalid_argument("real_roots_in: polynomial is identically zero");
    if (p.degree() == 0) return {};

    std::vector<double> breaks;
    breaks.push_back(iv.lo);
    if (p.degree() >= 2) {
        for (double c : real_roots_in(p.derivative(), iv, tol)) breaks.push_back(c);
    }
    breaks.push_back(iv.hi);
    std::sort(breaks.begin(), breaks.end());

    std::vector<double> roots;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        if (!(lo < hi)) continue;
        const double flo = p.eval(lo);
        const double fhi = p.eval(hi);
        if (flo == 0.0) roots.push_back(lo);
        if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0))
            roots.push_back(detail::bisect_root(p, lo, hi, flo, tol));
    }
    if (p.eval(iv.hi) == 0.0) roots.push_back(iv.hi);

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (out.empty() || r - out.back() > tol) out.push_back(r);
    }
    return out;
}

inline bool slab_contains(const PolySlab& s, const Point2& p) {
    const double base = s.base.eval(p.x);
    return base <= p.y && p.y <= base + s.width;
}

// Area of a slab over a <= x <= b: (b - a) * w.
inline double slab_area_on_interval(const PolySlab& s, double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("slab_area_on_interval: requires a <= b");
    return (b - a) * s.width;
}

// (delta+1)^3 * (w/d)^(1/delta): the longest interval on which a degree-delta
// polynomial with |leading coefficient| >= d can stay within [-w, w].
inline double poly_int_bound(int delta, double w, double d) {
    if (delta < 1) throw std::invalid_argument("poly_int_bound: requires delta >= 1");
    if (!(w > 0.0 && d > 0.0)) throw std::invalid_argument("poly_int_bound: requires w, d > 0");
    const double dp1 = static_cast<double>(delta) + 1.0;
    return dp1 * dp1 * dp1 * std::pow(w / d, 1.0 / static_cast<double>(delta));
}

// Length of the longest sub-interval of the domain on which |P(x)| <= w. The
// domain is cut at the roots of P - w and P + w and maximal runs where the
// condition holds are measured.
inline double max_bounded_interval_length(const UniPoly& p, double w, const Interval& domain,
                                          double tol = kRootTol) {
    if (!(w > 0.0)) throw std::invalid_argument("max_bounded_interval_length: requires w > 0");
    if (p.degree() < 1)
        throw std::invalid_argument("max_bounded_interval_length: constant polynomial");

    std::vector<double> breaks;
    breaks.push_back(domain.lo);
    for (double r : real_roots_in(p.plus_constant(-w), domain, tol)) breaks.push_back(r);
    for (double r : real_roots_in(p.plus_constant(w), domain, tol)) breaks.push_back(r);
    breaks.push_back(domain.hi);
    std::sort(breaks.begin(), breaks.end());

    double best = 0.0;
    double run = 0.0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        if (!(lo < hi)) continue;
        const double mid = 0.5 * (lo + hi);
        if (std::abs(p.eval(mid)) <= w) {
            run += hi - lo;
            best = std::max(best, run);
        } else {
            run = 0.0;
        }
    }
    return best;
}

namespace detail {

inline void append_roots(std::vector<double>& cuts, const UniPoly& p, const Interval& domain,
                         double tol) {
    if (p.degree() < 1) return;  // constant: no cuts
    for (double r : real_roots_in(p, domain, tol)) cuts.push_back(r);
}

inline double definite_integral(const UniPoly& p, double a, double b) {
    const UniPoly anti = p.antiderivative();
    return anti.eval(b) - anti.eval(a);
}

}  // namespace detail

// Exact integral over the domain of max(0, min(P1+w1, P2+w2) - max(P1, P2)):
// the domain is cut at the roots of the branch-switch polynomials and the
// piecewise-polynomial height is integrated analytically on each piece. Only
// piece endpoints carry root-finding error.
inline double slab_intersection_area(const PolySlab& s1, const PolySlab& s2,
                                     const Interval& domain) {
    const double w1 = s1.width;
    const double w2 = s2.width;
    const UniPoly diff = s1.base - s2.base;  // R = P1 - P2

    if (diff.degree() == 0) {
        // parallel (or identical) bases: overlap height is constant
        const double c = diff.coeff(0);
        const double h = std::min(c + w1, w2) - std::max(c, 0.0);
        return h > 0.0 ? h * domain.length() : 0.0;
    }

    const double scale = std::max({1.0, std::abs(domain.lo), std::abs(domain.hi)});
    const double tol = 1e-12 * scale;

    std::vector<double> cuts;
    cuts.push_back(domain.lo);
    detail::append_roots(cuts, diff.plus_constant(w1), domain, tol);   // P1 + w1 = P2
    detail::append_roots(cuts, diff.plus_constant(-w2), domain, tol);  // P1 = P2 + w2
    detail::append_roots(cuts, diff, domain, tol);                     // max switch
    detail::append_roots(cuts, diff.plus_constant(w1 - w2), domain, tol);  // min switch
    cuts.push_back(domain.hi);
    std::sort(cuts.begin(), cuts.end());

    const UniPoly top1 = s1.base.plus_constant(w1);
    const UniPoly top2 = s2.base.plus_constant(w2);

    double area = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (!(a < b)) continue;
        const double mid = 0.5 * (a + b);
        const double lo1 = s1.base.eval(mid);
        const double lo2 = s2.base.eval(mid);
        const double height = std::min(lo1 + w1, lo2 + w2) - std::max(lo1, lo2);
        if (height <= 0.0) continue;
        const UniPoly& top = (lo1 + w1 <= lo2 + w2) ? top1 : top2;
        const UniPoly& bot = (lo1 >= lo2) ? s1.base : s2.base;
        area += detail::definite_integral(top - bot, a, b);
    }
    return std::max(area, 0.0);
}

// Upper bound on |x| for all real roots of P (Cauchy bound).
inline double cauchy_root_bound(const UniPoly& p) {
    if (p.degree() < 1) return 0.0;
    const double lead = std::abs(p.coeffs().back());
    double m = 0.0;
    for (size_t i = 0; i + 1 < p.coeffs().size(); ++i)
        m = std::max(m, std::abs(p.coeffs()[i]));
    return 1.0 + m / lead;
}

}  // namespace hardrange
