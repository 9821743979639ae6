#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardrange/geom.hpp"
#include "hardrange/poly.hpp"
#include "hardrange/rng.hpp"

namespace hardrange {

// Invalid generator parameters (empty index range, width out of regime, ...).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// sqrt(log n) in the configured base (default 2).
inline double sqrt_log(double n, double log_base = 2.0) {
    if (!(n > 1.0)) throw std::invalid_argument("sqrt_log: requires n > 1");
    if (!(log_base > 1.0)) throw std::invalid_argument("sqrt_log: requires base > 1");
    return std::sqrt(std::log(n) / std::log(log_base));
}

inline constexpr double kRadialSpan = 2.045361017187261;  // sqrt(122) - 9

// Echo of every constant a generator used, with a provenance id for each
// value that came from a named formula.
struct ParamEcho {
    std::string kind;
    std::map<std::string, double> values;
    std::map<std::string, std::string> provenance;

    void set(const std::string& key, double value, const std::string& formula = "") {
        values[key] = value;
        if (!formula.empty()) provenance[key] = formula;
    }
};

struct SlabProvenance {
    std::vector<std::int64_t> j;
    std::int64_t k = 0;
};

struct SlabFamily {
    std::vector<PolySlab> slabs;
    std::vector<SlabProvenance> provenance;
    Rect square{Point2{0, 0}, Point2{1, 1}};  // the enclosing square S
    double width = 0.0;
    std::int64_t instance_n = 0;
    std::int64_t coverage = 0;  // stabbing closed-form t; 0 for reporting families
    ParamEcho echo;
};

struct AnnulusProvenance {
    std::int32_t gi = 0;  // grid column
    std::int32_t gj = 0;  // grid row
    std::int32_t ring = 0;
};

struct AnnulusFamily {
    std::vector<Annulus> annuli;
    std::vector<AnnulusProvenance> provenance;
    Rect query_square{Point2{0, 0}, Point2{1, 1}};  // S2: points / query probes live here
    double width = 0.0;
    double cell_side = 0.0;  // T
    std::int64_t grid_side = 0;  // grid points per axis = grid_side + 1
    std::int64_t instance_n = 0;
    std::int64_t coverage = 0;
    ParamEcho echo;
};

struct PointSet {
    std::vector<Point2> points;
    std::uint64_t seed = 0;
    Rect square{Point2{0, 0}, Point2{1, 1}};
};

inline PointSet sample_points(std::int64_t n, const Rect& square, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_points: requires n >= 1");
    PointSet out;
    out.seed = seed;
    out.square = square;
    out.points.reserve(static_cast<size_t>(n));
    Rng rng(seed);
    for (std::int64_t i = 0; i < n; ++i)
        out.points.push_back(
            Point2{rng.uniform(square.lo.x, square.hi.x), rng.uniform(square.lo.y, square.hi.y)});
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial slab reporting family over S = [0,n]^2.
//
// Base polynomials P(x) = sum_i j_i d_i x^i / n^i + k w with
//   j_i in [floor(n/(2 d_i)), floor(n/d_i)],
//   k   in [floor(n/(4w)),   floor(n/(2w))].
// Defaults: w = 16*delta*qn, d_i = c * delta^(3i) * w^(i+1) * 2^(i*sqrt(log n)).
// ---------------------------------------------------------------------------

struct SlabReportParams {
    std::int64_t n = 0;
    int delta = 2;
    double qn = 1.0;
    double c = 1.0;
    double log_base = 2.0;
    std::optional<double> w_override;
    std::vector<double> d_override;  // empty -> formula defaults

    double width() const { return w_override ? *w_override : 16.0 * delta * qn; }

    std::vector<double> d_values() const {
        if (!d_override.empty()) {
            if (static_cast<int>(d_override.size()) != delta)
                throw config_error("slab-report: expected one d override per degree 1..delta");
            return d_override;
        }
        const double w = width();
        const double sl = sqrt_log(static_cast<double>(n), log_base);
        std::vector<double> d(static_cast<size_t>(delta));
        for (int i = 1; i <= delta; ++i)
            d[static_cast<size_t>(i - 1)] = c * std::pow(static_cast<double>(delta), 3.0 * i) *
                                            std::pow(w, i + 1.0) * std::pow(2.0, i * sl);
        return d;
    }
};

namespace detail {

struct IndexRange {
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t size() const { return hi - lo + 1; }
};

// odometer over per-level index ranges, low index fastest
inline bool advance(std::vector<std::int64_t>& j, const std::vector<IndexRange>& ranges) {
    for (size_t i = 0; i < j.size(); ++i) {
        if (j[i] < ranges[i].hi) {
            ++j[i];
            for (size_t l = 0; l < i; ++l) j[l] = ranges[l].lo;
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline SlabFamily gen_slab_report(const SlabReportParams& p) {
    if (p.n < 8) throw config_error("slab-report: n too small");
    if (p.delta < 1) throw config_error("slab-report: delta must be >= 1");
    if (!(p.qn > 0.0)) throw config_error("slab-report: qn must be > 0");
    const double n = static_cast<double>(p.n);
    const double w = p.width();
    if (!(w > 0.0)) throw config_error("slab-report: w must be > 0");
    if (!(w < n / 6.0)) throw config_error("slab-report: containment requires w < n/6");
    const std::vector<double> d = p.d_values();

    std::vector<detail::IndexRange> jr(static_cast<size_t>(p.delta));
    for (int i = 1; i <= p.delta; ++i) {
        const double di = d[static_cast<size_t>(i - 1)];
        if (!(di > 0.0)) throw config_error("slab-report: d_" + std::to_string(i) + " must be > 0");
        const auto lo = static_cast<std::int64_t>(std::floor(n / (2.0 * di)));
        const auto hi = static_cast<std::int64_t>(std::floor(n / di));
        if (hi < 1)
            throw config_error("slab-report: index range for d_" + std::to_string(i) +
                               " is empty (d_" + std::to_string(i) + " = " + std::to_string(di) +
                               " too large for n = " + std::to_string(p.n) + ")");
        jr[static_cast<size_t>(i - 1)] = {lo, hi};
    }
    const detail::IndexRange kr{static_cast<std::int64_t>(std::floor(n / (4.0 * w))),
                                static_cast<std::int64_t>(std::floor(n / (2.0 * w)))};

    std::int64_t expected = kr.size();
    for (const auto& r : jr) expected *= r.size();

    SlabFamily fam;
    fam.square = Rect(Point2{0, 0}, Point2{n, n});
    fam.width = w;
    fam.instance_n = p.n;
    fam.slabs.reserve(static_cast<size_t>(expected));
    fam.provenance.reserve(static_cast<size_t>(expected));

    std::vector<std::int64_t> j(static_cast<size_t>(p.delta));
    for (size_t i = 0; i < j.size(); ++i) j[i] = jr[i].lo;
    bool more = true;
    while (more) {
        for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
            std::vector<double> coeffs(static_cast<size_t>(p.delta) + 1, 0.0);
            coeffs[0] = static_cast<double>(k) * w;
            for (int i = 1; i <= p.delta; ++i)
                coeffs[static_cast<size_t>(i)] = static_cast<double>(j[static_cast<size_t>(i - 1)]) *
                                                 d[static_cast<size_t>(i - 1)] / std::pow(n, i);
            fam.slabs.emplace_back(UniPoly(coeffs), w);
            fam.provenance.push_back(SlabProvenance{j, k});
        }
        more = detail::advance(j, jr);
    }
    if (static_cast<std::int64_t>(fam.slabs.size()) != expected)
        throw std::logic_error("slab-report: family size disagrees with index-range product");

    // Containment: the coefficient-wise maximal polynomial at x = n/4 must
    // leave room for the width inside S.
    std::vector<double> maxc(static_cast<size_t>(p.delta) + 1, 0.0);
    maxc[0] = static_cast<double>(kr.hi) * w;
    for (int i = 1; i <= p.delta; ++i)
        maxc[static_cast<size_t>(i)] =
            static_cast<double>(jr[static_cast<size_t>(i - 1)].hi) * d[static_cast<size_t>(i - 1)] /
            std::pow(n, i);
    const double peak = UniPoly(maxc).eval(n / 4.0);
    if (!(peak + w <= n))
        throw config_error("slab-report: maximal slab leaves S on [0, n/4] (top " +
                           std::to_string(peak + w) + " > n)");

    fam.echo.kind = "slab-report";
    fam.echo.set("n", static_cast<double>(p.n));
    fam.echo.set("delta", p.delta);
    fam.echo.set("qn", p.qn);
    fam.echo.set("c", p.c);
    fam.echo.set("log_base", p.log_base);
    fam.echo.set("w", w, p.w_override ? "override" : "thm3.4:w");
    for (int i = 1; i <= p.delta; ++i)
        fam.echo.set("d_" + std::to_string(i), d[static_cast<size_t>(i - 1)],
                     p.d_override.empty() ? "thm3.4:d_i" : "override");
    fam.echo.set("k_lo", static_cast<double>(kr.lo));
    fam.echo.set("k_hi", static_cast<double>(kr.hi));
    fam.echo.set("family_size", static_cast<double>(fam.slabs.size()));
    fam.echo.set("max_poly_at_quarter", peak, "thm3.4:Pu");
    return fam;
}

// ---------------------------------------------------------------------------
// Polynomial slab stabbing family over S = [0,1]^2.
//
// Base polynomials P(x) = sum_i j_i d_i x^i + k w with
//   j_i in [floor(1/(2 d_i)), floor(1/d_i)], k in [-ceil(delta/w), ceil(delta/w)].
// Every point of S is covered exactly t = prod_i(range size) times.
// Defaults: w = c2 * qn / n, d_i = c1 * (qn^(-2/(delta(delta+1))) w^(-2/(delta+1)))^i * w,
// with c2 tuned by one-dimensional search so the family size lands near n.
// ---------------------------------------------------------------------------

struct SlabStabParams {
    std::int64_t n = 0;
    int delta = 2;
    double qn = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double size_slack = 0.25;  // accepted |size - n| / n after tuning
    bool tune = true;
    std::optional<double> w_override;
    std::vector<double> d_override;
};

namespace detail {

struct SlabStabLayout {
    double w = 0.0;
    std::vector<double> d;
    std::vector<IndexRange> jr;
    std::int64_t k_abs = 0;
    std::int64_t coverage = 0;
    std::int64_t size = 0;
};

inline std::optional<SlabStabLayout> slab_stab_layout(const SlabStabParams& p, double c2_eff) {
    SlabStabLayout out;
    out.w = p.w_override ? *p.w_override : c2_eff * p.qn / static_cast<double>(p.n);
    if (!(out.w > 0.0) || out.w > 1.0) return std::nullopt;
    const double rho = std::pow(p.qn, -2.0 / (p.delta * (p.delta + 1.0))) *
                       std::pow(out.w, -2.0 / (p.delta + 1.0));
    out.d.resize(static_cast<size_t>(p.delta));
    for (int i = 1; i <= p.delta; ++i) {
        double di;
        if (!p.d_override.empty()) {
            di = p.d_override[static_cast<size_t>(i - 1)];
        } else {
            di = p.c1 * std::pow(rho, i) * out.w;
        }
        if (!(di > 0.0) || di > 1.0) return std::nullopt;
        out.d[static_cast<size_t>(i - 1)] = di;
    }
    out.jr.resize(static_cast<size_t>(p.delta));
    out.coverage = 1;
    for (int i = 1; i <= p.delta; ++i) {
        const double di = out.d[static_cast<size_t>(i - 1)];
        const auto lo = static_cast<std::int64_t>(std::floor(1.0 / (2.0 * di)));
        const auto hi = static_cast<std::int64_t>(std::floor(1.0 / di));
        if (hi < 1) return std::nullopt;
        out.jr[static_cast<size_t>(i - 1)] = {lo, hi};
        out.coverage *= hi - lo + 1;
    }
    out.k_abs = static_cast<std::int64_t>(std::ceil(p.delta / out.w));
    out.size = out.coverage * (2 * out.k_abs + 1);
    return out;
}

}  // namespace detail

inline SlabFamily gen_slab_stab(const SlabStabParams& p) {
    if (p.n < 2) throw config_error("slab-stab: n too small");
    if (p.delta < 1) throw config_error("slab-stab: delta must be >= 1");
    if (!(p.qn > 0.0)) throw config_error("slab-stab: qn must be > 0");
    if (!p.d_override.empty() && static_cast<int>(p.d_override.size()) != p.delta)
        throw config_error("slab-stab: expected one d override per degree 1..delta");

    double c2_eff = p.c2;
    auto layout = detail::slab_stab_layout(p, c2_eff);
    const bool overridden = p.w_override.has_value() || !p.d_override.empty();
    if (p.tune && !overridden) {
        // one-dimensional multiplicative search for the family size closest to n
        double best_gap = layout ? std::abs(static_cast<double>(layout->size - p.n))
                                 : std::numeric_limits<double>::infinity();
        const int steps = 1200;
        for (int s = 0; s <= steps; ++s) {
            const double cand = p.c2 * std::exp(std::log(64.0) * (2.0 * s / steps - 1.0));
            const auto l = detail::slab_stab_layout(p, cand);
            if (!l) continue;
            const double gap = std::abs(static_cast<double>(l->size - p.n));
            if (gap < best_gap - 0.5) {
                best_gap = gap;
                c2_eff = cand;
                layout = l;
            }
        }
    }
    if (!layout)
        throw config_error("slab-stab: no feasible layout (d_i or w out of (0, 1])");
    if (std::abs(static_cast<double>(layout->size - p.n)) >
        p.size_slack * static_cast<double>(p.n))
        throw config_error("slab-stab: achievable family size " + std::to_string(layout->size) +
                           " misses n = " + std::to_string(p.n) + " beyond the configured slack");

    SlabFamily fam;
    fam.square = Rect(Point2{0, 0}, Point2{1, 1});
    fam.width = layout->w;
    fam.instance_n = p.n;
    fam.coverage = layout->coverage;
    fam.slabs.reserve(static_cast<size_t>(layout->size));

    std::vector<std::int64_t> j(static_cast<size_t>(p.delta));
    for (size_t i = 0; i < j.size(); ++i) j[i] = layout->jr[i].lo;
    bool more = true;
    while (more) {
        for (std::int64_t k = -layout->k_abs; k <= layout->k_abs; ++k) {
            std::vector<double> coeffs(static_cast<size_t>(p.delta) + 1, 0.0);
            coeffs[0] = static_cast<double>(k) * layout->w;
            for (int i = 1; i <= p.delta; ++i)
                coeffs[static_cast<size_t>(i)] =
                    static_cast<double>(j[static_cast<size_t>(i - 1)]) *
                    layout->d[static_cast<size_t>(i - 1)];
            fam.slabs.emplace_back(UniPoly(coeffs), layout->w);
            fam.provenance.push_back(SlabProvenance{j, k});
        }
        more = detail::advance(j, layout->jr);
    }
    if (static_cast<std::int64_t>(fam.slabs.size()) != layout->size)
        throw std::logic_error("slab-stab: family size disagrees with index-range product");

    fam.echo.kind = "slab-stab";
    fam.echo.set("n", static_cast<double>(p.n));
    fam.echo.set("delta", p.delta);
    fam.echo.set("qn", p.qn);
    fam.echo.set("c1", p.c1);
    fam.echo.set("c2", p.c2);
    fam.echo.set("c2_eff", c2_eff);
    fam.echo.set("w", layout->w, p.w_override ? "override" : "thm3.5:w");
    for (int i = 1; i <= p.delta; ++i)
        fam.echo.set("d_" + std::to_string(i), layout->d[static_cast<size_t>(i - 1)],
                     p.d_override.empty() ? "thm3.5:d_i" : "override");
    fam.echo.set("k_abs", static_cast<double>(layout->k_abs));
    fam.echo.set("coverage_t", static_cast<double>(layout->coverage), "thm3.5:t");
    fam.echo.set("family_size", static_cast<double>(layout->size));
    return fam;
}

// ---------------------------------------------------------------------------
// Annulus reporting family. S2 = [0,n]^2 holds the points; centers sit on a
// grid of cell side T over S1 = [11n, 12n] x [0, n]. Per grid point O the
// first circle passes through the far corner of S2's right edge and radii
// grow by w while the next circle would still not contain the near corner of
// the left edge. Defaults: w = c' * qn, T = w^2 * 2^(2 sqrt(log n)).
// ---------------------------------------------------------------------------

struct AnnulusReportParams {
    std::int64_t n = 0;
    double qn = 1.0;
    double c_prime = 1.0;
    double log_base = 2.0;
    std::optional<double> w_override;
    std::optional<double> t_override;

    double width() const { return w_override ? *w_override : c_prime * qn; }

    double cell_side() const {
        if (t_override) return *t_override;
        const double w = width();
        const double sl = sqrt_log(static_cast<double>(n), log_base);
        return w * w * std::pow(2.0, 2.0 * sl);
    }
};

inline AnnulusFamily gen_annulus_report(const AnnulusReportParams& p) {
    if (p.n < 2) throw config_error("annulus-report: n too small");
    const double n = static_cast<double>(p.n);
    const double w = p.width();
    const double cell = p.cell_side();
    if (!(w > 0.0)) throw config_error("annulus-report: w must be > 0");
    if (!(w < cell)) throw config_error("annulus-report: requires w < T");
    const auto grid = static_cast<std::int64_t>(std::floor(n / cell + 1e-9));
    if (grid < 1) throw config_error("annulus-report: T exceeds n, grid is empty");

    AnnulusFamily fam;
    fam.query_square = Rect(Point2{0, 0}, Point2{n, n});
    fam.width = w;
    fam.cell_side = cell;
    fam.grid_side = grid;
    fam.instance_n = p.n;

    const std::array<Point2, 4> corners{Point2{0, 0}, Point2{n, 0}, Point2{0, n}, Point2{n, n}};

    for (std::int64_t gj = 0; gj <= grid; ++gj) {
        for (std::int64_t gi = 0; gi <= grid; ++gi) {
            const Point2 o{11.0 * n + static_cast<double>(gi) * cell,
                           static_cast<double>(gj) * cell};
            std::array<Point2, 4> sorted = corners;
            std::sort(sorted.begin(), sorted.end(), [&](const Point2& a, const Point2& b) {
                const double da = squared_distance(o, a);
                const double db = squared_distance(o, b);
                if (da != db) return da < db;
                if (a.x != b.x) return a.x < b.x;
                return a.y < b.y;
            });
            const double first = distance(o, sorted[1]);   // through C2
            const double stop = distance(o, sorted[2]);    // never contain C3
            std::int32_t ring = 0;
            for (double r = first; r + w < stop; r += w, ++ring) {
                fam.annuli.emplace_back(o, r, w);
                fam.provenance.push_back(
                    AnnulusProvenance{static_cast<std::int32_t>(gi),
                                      static_cast<std::int32_t>(gj), ring});
            }
        }
    }

    const double formula_count = n * n * n / (cell * cell * w);
    fam.echo.kind = "annulus-report";
    fam.echo.set("n", n);
    fam.echo.set("qn", p.qn);
    fam.echo.set("c_prime", p.c_prime);
    fam.echo.set("log_base", p.log_base);
    fam.echo.set("w", w, p.w_override ? "override" : "sec4:w");
    fam.echo.set("T", cell, p.t_override ? "override" : "sec4:T");
    fam.echo.set("grid_cells", static_cast<double>(grid));
    fam.echo.set("family_size", static_cast<double>(fam.annuli.size()));
    fam.echo.set("count_formula", formula_count, "sec4:count");
    fam.echo.set("count_formula_ratio", static_cast<double>(fam.annuli.size()) / formula_count);
    return fam;
}

// ---------------------------------------------------------------------------
// Annulus stabbing family. S1 = [0,1]^2 carries the center grid of cell side
// T; query points live in S2 = [-11,-10] x [0,1]. Per grid point the first
// circle is tangent to S2's right side (r0 = horizontal distance) and radii
// grow by w until they reach r0 + (sqrt(122) - 9), so each grid point's rings
// cover S2 exactly once. Defaults: T = 1/(2 sqrt(qn) - 1), w = 4(sqrt(122)-9) qn/n.
// ---------------------------------------------------------------------------

struct AnnulusStabParams {
    std::int64_t n = 0;
    double qn = 1.0;
    std::optional<double> w_override;
    std::optional<double> t_override;

    double cell_side() const {
        if (t_override) return *t_override;
        const double root = 2.0 * std::sqrt(qn) - 1.0;
        if (!(root > 0.0)) throw config_error("annulus-stab: requires qn > 1/4");
        return 1.0 / root;
    }

    double width() const {
        return w_override ? *w_override : 4.0 * kRadialSpan * qn / static_cast<double>(n);
    }
};

inline AnnulusFamily gen_annulus_stab(const AnnulusStabParams& p) {
    if (p.n < 2) throw config_error("annulus-stab: n too small");
    const double cell = p.cell_side();
    const double w = p.width();
    if (!(w > 0.0)) throw config_error("annulus-stab: w must be > 0");
    if (!(w <= cell))
        throw config_error("annulus-stab: w <= T fails; qn too large for this n");
    const auto grid = static_cast<std::int64_t>(std::ceil(1.0 / cell - 1e-12));
    const auto rings = static_cast<std::int64_t>(std::ceil(kRadialSpan / w - 1e-12));

    AnnulusFamily fam;
    fam.query_square = Rect(Point2{-11, 0}, Point2{-10, 1});
    fam.width = w;
    fam.cell_side = cell;
    fam.grid_side = grid;
    fam.instance_n = p.n;
    fam.coverage = (grid + 1) * (grid + 1);
    fam.annuli.reserve(static_cast<size_t>(fam.coverage * rings));

    for (std::int64_t gj = 0; gj <= grid; ++gj) {
        for (std::int64_t gi = 0; gi <= grid; ++gi) {
            const Point2 o{std::min(static_cast<double>(gi) * cell, 1.0),
                           std::min(static_cast<double>(gj) * cell, 1.0)};
            const double r0 = o.x + 10.0;  // tangent to the right side of S2
            for (std::int32_t ring = 0; ring < rings; ++ring) {
                fam.annuli.emplace_back(o, r0 + ring * w, w);
                fam.provenance.push_back(AnnulusProvenance{static_cast<std::int32_t>(gi),
                                                           static_cast<std::int32_t>(gj), ring});
            }
        }
    }

    fam.echo.kind = "annulus-stab";
    fam.echo.set("n", static_cast<double>(p.n));
    fam.echo.set("qn", p.qn);
    fam.echo.set("T", cell, p.t_override ? "override" : "thm4.4:T");
    fam.echo.set("w", w, p.w_override ? "override" : "thm4.4:w");
    fam.echo.set("radial_span", kRadialSpan, "thm4.4:span");
    fam.echo.set("grid_cells", static_cast<double>(grid));
    fam.echo.set("rings_per_center", static_cast<double>(rings));
    fam.echo.set("coverage_t", static_cast<double>(fam.coverage), "thm4.4:t");
    fam.echo.set("family_size", static_cast<double>(fam.annuli.size()), "thm4.4:count");
    return fam;
}

}  // namespace hardrange
