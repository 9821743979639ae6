#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hardrange/constructions.hpp"
#include "hardrange/geom.hpp"
#include "hardrange/parallel.hpp"
#include "hardrange/poly.hpp"
#include "hardrange/rng.hpp"

namespace hardrange {

// Slack parameters for the framework bound expressions. The hidden constants
// in the 2^O(c) / 2^O(alpha) terms are replaced by the explicit exponent
// beta.
struct BoundParams {
    double alpha = 2.0;
    double c = 2.0;
    double beta = 1.0;

    BoundParams() = default;
    BoundParams(double a, double cap, double b) : alpha(a), c(cap), beta(b) {
        if (!(alpha >= 2.0)) throw std::invalid_argument("BoundParams: alpha must be >= 2");
        if (!(c >= 2.0)) throw std::invalid_argument("BoundParams: c must be >= 2");
        if (!(beta > 0.0)) throw std::invalid_argument("BoundParams: beta must be > 0");
    }
};

inline bool range_contains(const PolySlab& s, const Point2& p) { return slab_contains(s, p); }
inline bool range_contains(const Annulus& a, const Point2& p) { return annulus_contains(a, p); }

// the square the instance's points / query probes live in
inline const Rect& family_square(const SlabFamily& fam) { return fam.square; }
inline const Rect& family_square(const AnnulusFamily& fam) { return fam.query_square; }

// Ground-truth query oracle: indices of the points inside the range.
template <class Range>
std::vector<std::int32_t> brute_force_report(const PointSet& points, const Range& range) {
    std::vector<std::int32_t> out;
    for (size_t i = 0; i < points.points.size(); ++i)
        if (range_contains(range, points.points[i])) out.push_back(static_cast<std::int32_t>(i));
    return out;
}

namespace detail {

template <class Range>
std::vector<std::vector<std::int32_t>> all_outputs(const PointSet& points,
                                                   const std::vector<Range>& ranges,
                                                   unsigned threads) {
    std::vector<std::vector<std::int32_t>> outputs(ranges.size());
    parallel_reduce<int>(
        ranges.size(), threads, 64, 0,
        [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) outputs[i] = brute_force_report(points, ranges[i]);
            return 0;
        },
        [](int, int) { return 0; });
    return outputs;
}

inline std::int64_t sorted_intersection_count(const std::vector<std::int32_t>& a,
                                              const std::vector<std::int32_t>& b) {
    std::int64_t count = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

inline std::vector<std::int32_t> sorted_intersection(const std::vector<std::int32_t>& a,
                                                     const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { out.push_back(a[i]); ++i; ++j; }
    }
    return out;
}

// exact pairwise range intersection areas
inline double pair_area(const SlabFamily& fam, size_t i, size_t j) {
    return slab_intersection_area(fam.slabs[i], fam.slabs[j],
                                  Interval(fam.square.lo.x, fam.square.hi.x));
}

inline double pair_area(const AnnulusFamily& fam, size_t i, size_t j) {
    return annulus_intersection_area(fam.annuli[i], fam.annuli[j]);
}

// distinct index sample without replacement
inline std::vector<std::int32_t> sample_distinct(Rng& rng, std::int64_t universe, int count) {
    std::vector<std::int32_t> out;
    out.reserve(static_cast<size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        const auto cand = static_cast<std::int32_t>(rng.index(static_cast<std::uint64_t>(universe)));
        if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
    }
    return out;
}

}  // namespace detail

struct ChazelleReport {
    std::int64_t m = 0;
    double qn = 0.0;
    std::int64_t min_output = 0;
    std::int64_t cond1_violations = 0;
    std::vector<std::int64_t> violating_queries;  // first few indices
    std::int64_t max_pair_intersection = 0;
    std::int64_t sampled_alpha_max = 0;
    std::int64_t pairs_checked = 0;
    std::int64_t tuples_checked = 0;
    BoundParams params;
    double implied_bound = 0.0;

    bool conditions_hold() const {
        return cond1_violations == 0 &&
               static_cast<double>(max_pair_intersection) <= params.c &&
               static_cast<double>(sampled_alpha_max) <= params.c;
    }
};

// Checks the reporting framework's preconditions on a concrete instance:
// every output at least qn points, pairwise output intersections exhaustively,
// deeper alpha-tuples by seeded sampling. The implied bound is
// m*qn / (alpha * 2^(beta*c)) for the supplied params.
template <class Range>
ChazelleReport verify_chazelle_ranges(const PointSet& points, const std::vector<Range>& ranges,
                                      double qn, const BoundParams& bp, int tuple_samples,
                                      std::uint64_t seed, unsigned threads = 1) {
    if (tuple_samples < 0) throw std::invalid_argument("verify_chazelle: tuple_samples >= 0");
    const auto outputs = detail::all_outputs(points, ranges, threads);

    ChazelleReport rep;
    rep.m = static_cast<std::int64_t>(ranges.size());
    rep.qn = qn;
    rep.params = bp;

    rep.min_output = std::numeric_limits<std::int64_t>::max();
    for (size_t i = 0; i < outputs.size(); ++i) {
        const auto size = static_cast<std::int64_t>(outputs[i].size());
        rep.min_output = std::min(rep.min_output, size);
        if (static_cast<double>(size) < qn) {
            ++rep.cond1_violations;
            if (rep.violating_queries.size() < 64)
                rep.violating_queries.push_back(static_cast<std::int64_t>(i));
        }
    }
    if (outputs.empty()) rep.min_output = 0;

    // exhaustive pairwise intersection sizes
    const size_t m = outputs.size();
    struct PairMax {
        std::int64_t best = 0;
        std::int64_t pairs = 0;
    };
    const PairMax pm = parallel_reduce<PairMax>(
        m, threads, 16, PairMax{},
        [&](std::size_t b, std::size_t e) {
            PairMax local;
            for (std::size_t i = b; i < e; ++i) {
                if (outputs[i].empty()) { local.pairs += static_cast<std::int64_t>(m - i - 1); continue; }
                for (std::size_t j = i + 1; j < m; ++j) {
                    local.best = std::max(local.best,
                                          detail::sorted_intersection_count(outputs[i], outputs[j]));
                    ++local.pairs;
                }
            }
            return local;
        },
        [](PairMax a, PairMax b) {
            return PairMax{std::max(a.best, b.best), a.pairs + b.pairs};
        });
    rep.max_pair_intersection = pm.best;
    rep.pairs_checked = pm.pairs;

    // sampled alpha-tuples for alpha > 2
    rep.sampled_alpha_max = 0;
    const int alpha = static_cast<int>(bp.alpha);
    if (alpha > 2 && tuple_samples > 0 && static_cast<std::int64_t>(m) >= alpha) {
        Rng rng(seed);
        for (int s = 0; s < tuple_samples; ++s) {
            const auto pick = detail::sample_distinct(rng, static_cast<std::int64_t>(m), alpha);
            std::vector<std::int32_t> acc = outputs[static_cast<size_t>(pick[0])];
            for (int t = 1; t < alpha && !acc.empty(); ++t)
                acc = detail::sorted_intersection(acc, outputs[static_cast<size_t>(pick[t])]);
            rep.sampled_alpha_max =
                std::max(rep.sampled_alpha_max, static_cast<std::int64_t>(acc.size()));
            ++rep.tuples_checked;
        }
    }

    rep.implied_bound = static_cast<double>(rep.m) * qn /
                        (bp.alpha * std::pow(2.0, bp.beta * bp.c));
    return rep;
}

inline ChazelleReport verify_chazelle(const PointSet& points, const SlabFamily& fam, double qn,
                                      const BoundParams& bp, int tuple_samples, std::uint64_t seed,
                                      unsigned threads = 1) {
    return verify_chazelle_ranges(points, fam.slabs, qn, bp, tuple_samples, seed, threads);
}

inline ChazelleReport verify_chazelle(const PointSet& points, const AnnulusFamily& fam, double qn,
                                      const BoundParams& bp, int tuple_samples, std::uint64_t seed,
                                      unsigned threads = 1) {
    return verify_chazelle_ranges(points, fam.annuli, qn, bp, tuple_samples, seed, threads);
}

struct AfshaniReport {
    std::int64_t ranges = 0;
    std::int64_t min_coverage = 0;     // t-hat
    double max_pair_area = 0.0;        // v-hat
    std::int64_t probes = 0;
    std::int64_t pairs_checked = 0;
    BoundParams params;
    double implied_bound = 0.0;
};

namespace detail {

template <class Family, class Ranges>
AfshaniReport verify_afshani_impl(const Family& fam, const Ranges& ranges, int grid_density,
                                  const BoundParams& bp, std::uint64_t seed, unsigned threads) {
    if (grid_density < 10) throw std::invalid_argument("verify_afshani: probe grid at least 10x10");
    constexpr double kMargin = 1e-9;
    const Rect& sq = family_square(fam);

    std::vector<Point2> probes;
    probes.reserve(static_cast<size_t>(grid_density) * grid_density + 1000);
    for (int i = 0; i < grid_density; ++i) {
        const double fx = (grid_density == 1) ? 0.5 : static_cast<double>(i) / (grid_density - 1);
        const double x = sq.lo.x + kMargin + (sq.width() - 2 * kMargin) * fx;
        for (int j = 0; j < grid_density; ++j) {
            const double fy = (grid_density == 1) ? 0.5 : static_cast<double>(j) / (grid_density - 1);
            probes.push_back(Point2{x, sq.lo.y + kMargin + (sq.height() - 2 * kMargin) * fy});
        }
    }
    Rng rng(seed);
    for (int i = 0; i < 1000; ++i)
        probes.push_back(Point2{rng.uniform(sq.lo.x + kMargin, sq.hi.x - kMargin),
                                rng.uniform(sq.lo.y + kMargin, sq.hi.y - kMargin)});

    AfshaniReport rep;
    rep.ranges = static_cast<std::int64_t>(ranges.size());
    rep.params = bp;
    rep.probes = static_cast<std::int64_t>(probes.size());

    rep.min_coverage = parallel_reduce<std::int64_t>(
        probes.size(), threads, 256, std::numeric_limits<std::int64_t>::max(),
        [&](std::size_t b, std::size_t e) {
            std::int64_t local = std::numeric_limits<std::int64_t>::max();
            for (std::size_t p = b; p < e; ++p) {
                std::int64_t cover = 0;
                for (const auto& r : ranges)
                    if (range_contains(r, probes[p])) ++cover;
                local = std::min(local, cover);
            }
            return local;
        },
        [](std::int64_t a, std::int64_t b) { return std::min(a, b); });

    struct PairMax {
        double best = 0.0;
        std::int64_t pairs = 0;
    };
    const size_t m = ranges.size();
    const PairMax pm = parallel_reduce<PairMax>(
        m, threads, 8, PairMax{},
        [&](std::size_t b, std::size_t e) {
            PairMax local;
            for (std::size_t i = b; i < e; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    local.best = std::max(local.best, pair_area(fam, i, j));
                    ++local.pairs;
                }
            return local;
        },
        [](PairMax a, PairMax b) {
            return PairMax{std::max(a.best, b.best), a.pairs + b.pairs};
        });
    rep.max_pair_area = pm.best;
    rep.pairs_checked = pm.pairs;

    rep.implied_bound =
        rep.max_pair_area > 0.0
            ? static_cast<double>(rep.min_coverage) /
                  (rep.max_pair_area * std::pow(2.0, bp.beta * bp.alpha))
            : 0.0;
    return rep;
}

}  // namespace detail

// Measures the stabbing framework's quantities on a concrete instance:
// minimum coverage over a probe grid plus 10^3 seeded random points, and the
// exact maximum pairwise intersection area. The implied bound is
// t / (v * 2^(beta*alpha)).
inline AfshaniReport verify_afshani(const SlabFamily& fam, int grid_density, const BoundParams& bp,
                                    std::uint64_t seed, unsigned threads = 1) {
    return detail::verify_afshani_impl(fam, fam.slabs, grid_density, bp, seed, threads);
}

inline AfshaniReport verify_afshani(const AnnulusFamily& fam, int grid_density,
                                    const BoundParams& bp, std::uint64_t seed,
                                    unsigned threads = 1) {
    return detail::verify_afshani_impl(fam, fam.annuli, grid_density, bp, seed, threads);
}

struct DerandReport {
    std::string experiment;
    int trials = 0;
    int failures = 0;
    double failure_rate = 0.0;
    double threshold = 0.0;
    bool precondition_ok = true;
    std::int64_t offending_range = -1;
    std::map<std::string, double> details;
};

struct DerandIntConfig {
    double k_exponent = 2.0;  // the union-bound exponent; threshold is 3k sqrt(log n)
    int trials = 20;
    std::uint64_t seed = 1;
    double area_constant = 1.0;  // hypothesis cap: area_constant * n / 2^sqrt(log n)
    double log_base = 2.0;
    int tuple_size = 2;       // pairs are always exhaustive; >2 adds sampled tuples
    int tuple_samples = 0;
    unsigned threads = 1;
};

namespace detail {

template <class Family, class Ranges>
DerandReport derand_int_impl(const Family& fam, const Ranges& ranges, const DerandIntConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("derand-int: trials >= 1");
    const double n = static_cast<double>(fam.instance_n);
    const double sl = sqrt_log(n, cfg.log_base);
    const double threshold = 3.0 * cfg.k_exponent * sl;
    const double area_cap = cfg.area_constant * n / std::pow(2.0, sl);

    // exhaustive pair regions with positive exact intersection area
    const size_t m = ranges.size();
    struct Regions {
        std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
        double max_area = 0.0;
    };
    const Regions regions = parallel_reduce<Regions>(
        m, cfg.threads, 8, Regions{},
        [&](std::size_t b, std::size_t e) {
            Regions local;
            for (std::size_t i = b; i < e; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    const double area = pair_area(fam, i, j);
                    if (area > 0.0) {
                        local.pairs.emplace_back(static_cast<std::int32_t>(i),
                                                 static_cast<std::int32_t>(j));
                        local.max_area = std::max(local.max_area, area);
                    }
                }
            return local;
        },
        [](Regions a, Regions b) {
            a.pairs.insert(a.pairs.end(), b.pairs.begin(), b.pairs.end());
            a.max_area = std::max(a.max_area, b.max_area);
            return a;
        });

    DerandReport rep;
    rep.experiment = "derand-int";
    rep.trials = cfg.trials;
    rep.threshold = threshold;
    rep.precondition_ok = regions.max_area <= area_cap;
    rep.details["max_region_area"] = regions.max_area;
    rep.details["area_cap"] = area_cap;
    rep.details["regions_checked"] = static_cast<double>(regions.pairs.size());
    rep.details["k_exponent"] = cfg.k_exponent;

    Rng tuple_rng(mix_seed(cfg.seed, 0xa5a5));
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const PointSet pts = sample_points(fam.instance_n, family_square(fam),
                                           mix_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
        const auto outputs = all_outputs(pts, ranges, cfg.threads);
        bool bad = false;
        for (const auto& [i, j] : regions.pairs) {
            const auto count = sorted_intersection_count(outputs[static_cast<size_t>(i)],
                                                         outputs[static_cast<size_t>(j)]);
            if (static_cast<double>(count) >= threshold) {
                bad = true;
                break;
            }
        }
        if (!bad && cfg.tuple_size > 2 && cfg.tuple_samples > 0 &&
            static_cast<int>(m) >= cfg.tuple_size) {
            for (int s = 0; s < cfg.tuple_samples && !bad; ++s) {
                const auto pick =
                    sample_distinct(tuple_rng, static_cast<std::int64_t>(m), cfg.tuple_size);
                std::vector<std::int32_t> acc = outputs[static_cast<size_t>(pick[0])];
                for (int t = 1; t < cfg.tuple_size && !acc.empty(); ++t)
                    acc = sorted_intersection(acc, outputs[static_cast<size_t>(pick[t])]);
                if (static_cast<double>(acc.size()) >= threshold) bad = true;
            }
        }
        if (bad) ++rep.failures;
    }
    rep.failure_rate = static_cast<double>(rep.failures) / cfg.trials;
    return rep;
}

}  // namespace detail

// Per trial, resample the point set and test whether any checked intersection
// region holds at least 3k*sqrt(log n) points.
inline DerandReport derand_int_experiment(const SlabFamily& fam, const DerandIntConfig& cfg) {
    return detail::derand_int_impl(fam, fam.slabs, cfg);
}

inline DerandReport derand_int_experiment(const AnnulusFamily& fam, const DerandIntConfig& cfg) {
    return detail::derand_int_impl(fam, fam.annuli, cfg);
}

struct DerandRingConfig {
    double c = 8.0;       // hypothesis constant; requires range areas >= c * n * t
    double t = 1.0;       // per-range point target
    int trials = 20;
    std::uint64_t seed = 1;
    std::int64_t area_samples = 20000;  // per-range Monte Carlo samples
    unsigned threads = 1;
};

namespace detail {

inline double range_area_in_square(const SlabFamily& fam, size_t i, std::int64_t samples,
                                   std::uint64_t seed) {
    return mc_area([&](const Point2& p) { return slab_contains(fam.slabs[i], p); }, fam.square,
                   samples, seed)
        .estimate;
}

inline double range_area_in_square(const AnnulusFamily& fam, size_t i, std::int64_t samples,
                                   std::uint64_t seed) {
    return annulus_area_in_rect(fam.annuli[i], fam.query_square, samples, seed);
}

template <class Family, class Ranges>
DerandReport derand_ring_impl(const Family& fam, const Ranges& ranges,
                              const DerandRingConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("derand-ring: trials >= 1");
    const double n = static_cast<double>(fam.instance_n);
    const double required = cfg.c * n * cfg.t;

    DerandReport rep;
    rep.experiment = "derand-ring";
    rep.trials = cfg.trials;
    rep.threshold = cfg.t;
    rep.details["required_area"] = required;
    rep.details["c"] = cfg.c;

    struct AreaScan {
        double min_area = std::numeric_limits<double>::max();
        std::int64_t offender = -1;
    };
    const AreaScan scan = parallel_reduce<AreaScan>(
        ranges.size(), cfg.threads, 32, AreaScan{},
        [&](std::size_t b, std::size_t e) {
            AreaScan local;
            for (std::size_t i = b; i < e; ++i) {
                const double area = range_area_in_square(fam, i, cfg.area_samples,
                                                         mix_seed(cfg.seed, 0xbeef00 + i));
                if (area < local.min_area) {
                    local.min_area = area;
                    if (area < required) local.offender = static_cast<std::int64_t>(i);
                }
            }
            return local;
        },
        [](AreaScan a, AreaScan b) {
            if (b.min_area < a.min_area) return b;
            return a;
        });
    rep.details["min_range_area"] = ranges.empty() ? 0.0 : scan.min_area;
    rep.precondition_ok = ranges.empty() || scan.min_area >= required;
    if (!rep.precondition_ok) rep.offending_range = scan.offender;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const PointSet pts = sample_points(fam.instance_n, family_square(fam),
                                           mix_seed(cfg.seed, 0x517 + static_cast<std::uint64_t>(trial)));
        bool bad = false;
        for (size_t i = 0; i < ranges.size() && !bad; ++i) {
            std::int64_t count = 0;
            const auto needed = static_cast<std::int64_t>(std::ceil(cfg.t));
            for (const auto& p : pts.points) {
                if (range_contains(ranges[i], p)) {
                    if (++count >= needed) break;
                }
            }
            if (static_cast<double>(count) < cfg.t) bad = true;
        }
        if (bad) ++rep.failures;
    }
    rep.failure_rate = static_cast<double>(rep.failures) / cfg.trials;
    return rep;
}

}  // namespace detail

// Per trial, resample the point set; a trial fails when some range holds
// fewer than t points. The area hypothesis (every range at least c*n*t in
// the square) is measured and reported, not thrown.
inline DerandReport derand_ring_experiment(const SlabFamily& fam, const DerandRingConfig& cfg) {
    return detail::derand_ring_impl(fam, fam.slabs, cfg);
}

inline DerandReport derand_ring_experiment(const AnnulusFamily& fam, const DerandRingConfig& cfg) {
    return detail::derand_ring_impl(fam, fam.annuli, cfg);
}

struct Lemma42Report {
    int ell = 0;
    int subsets = 0;
    double worst_min_pair_area = 0.0;  // max over subsets of min pairwise area
    double worst_uniform = 0.0;
    double worst_adversarial = 0.0;
    double bound = 0.0;  // n * w * sqrt(1/T)
    double ratio = 0.0;
};

// Samples ell-subsets of a reporting family (uniform, and adversarial
// subsets of mutually-near grid points sharing a stab point) and reports the
// worst minimum pairwise intersection area against n*w*sqrt(1/T).
inline Lemma42Report lemma42_experiment(const AnnulusFamily& fam, int ell, int subset_samples,
                                        std::uint64_t seed, double c_ell = 4.0,
                                        unsigned threads = 1) {
    if (fam.cell_side <= 0.0)
        throw std::invalid_argument("lemma42_experiment: family lacks a grid cell side");
    const double n = static_cast<double>(fam.instance_n);
    const double w = fam.width;
    const double cell = fam.cell_side;
    int ell_eff = ell;
    if (ell_eff <= 0)
        ell_eff = static_cast<int>(std::ceil(c_ell * w * w / std::sqrt(cell)));
    if (ell_eff < 2) throw std::invalid_argument("lemma42_experiment: ell must be >= 2");
    const auto m = static_cast<std::int64_t>(fam.annuli.size());
    if (m < ell_eff) throw std::invalid_argument("lemma42_experiment: family smaller than ell");

    // grid point -> indices of its rings (ring order)
    std::map<std::pair<std::int32_t, std::int32_t>, std::vector<std::int32_t>> by_center;
    for (size_t i = 0; i < fam.provenance.size(); ++i) {
        const auto& pv = fam.provenance[i];
        by_center[{pv.gi, pv.gj}].push_back(static_cast<std::int32_t>(i));
    }
    std::vector<std::pair<Point2, const std::vector<std::int32_t>*>> centers;
    centers.reserve(by_center.size());
    for (auto& [key, idx] : by_center) {
        centers.push_back({fam.annuli[static_cast<size_t>(idx.front())].center, &idx});
    }

    Lemma42Report rep;
    rep.ell = ell_eff;
    rep.bound = n * w * std::sqrt(1.0 / cell);

    Rng rng(seed);
    const Rect& sq = family_square(fam);
    std::vector<std::int32_t> subset;
    std::vector<size_t> order(centers.size());

    for (int s = 0; s < subset_samples; ++s) {
        subset.clear();
        if (s % 2 == 0) {
            // uniform ell-subset of the whole family
            subset = detail::sample_distinct(rng, m, ell_eff);
        } else {
            // adversarial: nearest grid points to a random anchor, each
            // contributing its ring through a shared random stab point
            const Point2 stab{rng.uniform(sq.lo.x, sq.hi.x), rng.uniform(sq.lo.y, sq.hi.y)};
            const size_t anchor = static_cast<size_t>(rng.index(centers.size()));
            for (size_t i = 0; i < centers.size(); ++i) order[i] = i;
            const Point2 apt = centers[anchor].first;
            std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                const double da = squared_distance(centers[a].first, apt);
                const double db = squared_distance(centers[b].first, apt);
                if (da != db) return da < db;
                return a < b;
            });
            for (size_t oi = 0; oi < order.size() && static_cast<int>(subset.size()) < ell_eff;
                 ++oi) {
                const auto& [cpt, rings] = centers[order[oi]];
                const double dist = distance(cpt, stab);
                const double first = fam.annuli[static_cast<size_t>(rings->front())].r;
                const auto ring = static_cast<std::int64_t>(std::floor((dist - first) / w));
                if (ring >= 0 && ring < static_cast<std::int64_t>(rings->size()))
                    subset.push_back((*rings)[static_cast<size_t>(ring)]);
            }
            // top up from the whole family if the stab point ran out of rings
            while (static_cast<int>(subset.size()) < ell_eff) {
                const auto cand = static_cast<std::int32_t>(rng.index(static_cast<std::uint64_t>(m)));
                if (std::find(subset.begin(), subset.end(), cand) == subset.end())
                    subset.push_back(cand);
            }
        }

        const double min_pair = parallel_reduce<double>(
            subset.size(), threads, 4, std::numeric_limits<double>::max(),
            [&](std::size_t b, std::size_t e) {
                double local = std::numeric_limits<double>::max();
                for (std::size_t i = b; i < e; ++i)
                    for (std::size_t j = i + 1; j < subset.size(); ++j)
                        local = std::min(local, annulus_intersection_area(
                                                    fam.annuli[static_cast<size_t>(subset[i])],
                                                    fam.annuli[static_cast<size_t>(subset[j])]));
                return local;
            },
            [](double a, double b) { return std::min(a, b); });

        rep.worst_min_pair_area = std::max(rep.worst_min_pair_area, min_pair);
        if (s % 2 == 0) rep.worst_uniform = std::max(rep.worst_uniform, min_pair);
        else rep.worst_adversarial = std::max(rep.worst_adversarial, min_pair);
        ++rep.subsets;
    }
    rep.ratio = rep.bound > 0.0 ? rep.worst_min_pair_area / rep.bound : 0.0;
    return rep;
}

struct ImpliedBoundParams {
    double n = 0.0;
    double qn = 1.0;
    int delta = 2;
    double constant = 1.0;
    double beta = 0.0;  // slack exponent on the 2^(...sqrt(log n)) factors
    double log_base = 2.0;
};

struct ImpliedBound {
    double value = 0.0;
    std::string formula;
};

// Closed-form space lower bound expressions for the four instance kinds, with
// the constant and the sub-polynomial slack made explicit.
inline ImpliedBound implied_bounds(const std::string& kind, const ImpliedBoundParams& p) {
    if (!(p.n > 1.0) || !(p.qn > 0.0))
        throw std::invalid_argument("implied_bounds: requires n > 1 and qn > 0");
    ImpliedBound out;
    if (kind == "slab-report") {
        if (p.delta < 1) throw std::invalid_argument("implied_bounds: delta >= 1");
        const double slack =
            std::pow(2.0, p.beta * 3.0 * (p.delta + 1.0) * sqrt_log(p.n, p.log_base));
        out.value = p.constant * std::pow(p.n, p.delta + 1.0) /
                    (std::pow(p.qn, (p.delta + 3.0) * p.delta / 2.0) * slack);
        out.formula = "thm3.4:S";
    } else if (kind == "slab-stab") {
        if (p.delta < 1) throw std::invalid_argument("implied_bounds: delta >= 1");
        out.value = p.constant * std::pow(p.n, 1.0 + 2.0 / (p.delta + 1.0)) /
                    std::pow(p.qn, 2.0 / p.delta);
        out.formula = "thm3.5:S";
    } else if (kind == "annulus-report") {
        const double slack = std::pow(2.0, p.beta * 9.0 * sqrt_log(p.n, p.log_base));
        out.value = p.constant * std::pow(p.n, 3.0) / (std::pow(p.qn, 5.0) * slack);
        out.formula = "thm4.3:S";
    } else if (kind == "annulus-stab") {
        out.value = p.constant * std::pow(p.n, 1.5) / std::pow(p.qn, 0.75);
        out.formula = "thm4.4:S";
    } else {
        throw std::invalid_argument("implied_bounds: unknown kind '" + kind + "'");
    }
    return out;
}

}  // namespace hardrange
