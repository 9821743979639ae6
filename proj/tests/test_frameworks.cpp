#include <gtest/gtest.h>

#include <cmath>

#include "hardrange/constructions.hpp"
#include "hardrange/frameworks.hpp"
#include "hardrange/rng.hpp"

using namespace hardrange;

namespace {

SlabFamily example_report_family() {
    SlabReportParams p;
    p.n = 1000;
    p.delta = 2;
    p.qn = 10.0;
    p.w_override = 50.0;
    p.d_override = {100.0, 200.0};
    return gen_slab_report(p);  // 144 slabs
}

AnnulusFamily small_ring_family() {
    AnnulusReportParams p;
    p.n = 256;
    p.qn = 8.0;
    p.w_override = 8.0;
    p.t_override = 64.0;
    return gen_annulus_report(p);
}

}  // namespace

TEST(BruteForce, EmptyAndFull) {
    PointSet pts;
    pts.square = Rect(Point2{0, 0}, Point2{1, 1});
    const Annulus ring(Point2{0, 0}, 1.0, 1.0);
    EXPECT_TRUE(brute_force_report(pts, ring).empty());

    pts.points = {Point2{1.2, 0}, Point2{0, 1.7}, Point2{1.0, 1.0}};
    const auto all = brute_force_report(pts, ring);
    EXPECT_EQ(all, (std::vector<std::int32_t>{0, 1, 2}));
}

TEST(BruteForce, EqualsPredicateFilter) {
    const PointSet pts = sample_points(2000, Rect(Point2{-2, -2}, Point2{2, 2}), 5);
    const PolySlab slab(UniPoly(std::vector<double>{0.1, -0.5, 0.7}), 0.8);
    const auto got = brute_force_report(pts, slab);
    std::vector<std::int32_t> want;
    for (size_t i = 0; i < pts.points.size(); ++i)
        if (slab_contains(slab, pts.points[i])) want.push_back(static_cast<std::int32_t>(i));
    EXPECT_EQ(got, want);
}

TEST(Chazelle, ImpliedBoundFormula) {
    const SlabFamily fam = example_report_family();
    const PointSet pts = sample_points(1000, fam.square, 11);
    const BoundParams bp(2.0, 5.0, 1.0);
    const ChazelleReport rep = verify_chazelle(pts, fam, 10.0, bp, 0, 1);
    EXPECT_EQ(rep.m, 144);
    EXPECT_DOUBLE_EQ(rep.implied_bound, 144.0 * 10.0 / (2.0 * 32.0));  // 22.5
}

TEST(Chazelle, ViolationsAreListed) {
    const SlabFamily fam = example_report_family();
    // points piled into one corner: most queries under-filled
    PointSet pts;
    pts.square = fam.square;
    for (int i = 0; i < 50; ++i) pts.points.push_back(Point2{1.0, 1.0});
    const ChazelleReport rep = verify_chazelle(pts, fam, 10.0, BoundParams(2, 5, 1), 0, 1);
    EXPECT_GE(rep.cond1_violations, 1);
    EXPECT_FALSE(rep.violating_queries.empty());
    EXPECT_FALSE(rep.conditions_hold());
    EXPECT_EQ(rep.min_output, 0);
}

TEST(Chazelle, MaxPairMatchesNaiveRecount) {
    const SlabFamily fam = example_report_family();
    const PointSet pts = sample_points(4000, fam.square, 99);
    const ChazelleReport rep = verify_chazelle(pts, fam, 1.0, BoundParams(2, 50, 1), 0, 1);

    std::int64_t naive = 0;
    std::vector<std::vector<std::int32_t>> outputs;
    for (const auto& s : fam.slabs) outputs.push_back(brute_force_report(pts, s));
    for (size_t a = 0; a < outputs.size(); ++a)
        for (size_t b = a + 1; b < outputs.size(); ++b) {
            std::int64_t count = 0;
            for (const auto ia : outputs[a])
                for (const auto ib : outputs[b])
                    if (ia == ib) ++count;
            naive = std::max(naive, count);
        }
    EXPECT_EQ(rep.max_pair_intersection, naive);
}

TEST(Chazelle, ThreadCountDoesNotChangeReport) {
    const SlabFamily fam = example_report_family();
    const PointSet pts = sample_points(3000, fam.square, 313);
    const BoundParams bp(3.0, 9.0, 1.0);
    const ChazelleReport a = verify_chazelle(pts, fam, 5.0, bp, 64, 42, 1);
    const ChazelleReport b = verify_chazelle(pts, fam, 5.0, bp, 64, 42, 7);
    EXPECT_EQ(a.min_output, b.min_output);
    EXPECT_EQ(a.cond1_violations, b.cond1_violations);
    EXPECT_EQ(a.max_pair_intersection, b.max_pair_intersection);
    EXPECT_EQ(a.sampled_alpha_max, b.sampled_alpha_max);
    EXPECT_EQ(a.pairs_checked, b.pairs_checked);
}

TEST(Chazelle, DisjointQuerySubsetsMergeToOnePassExtrema) {
    const SlabFamily fam = example_report_family();
    const PointSet pts = sample_points(2000, fam.square, 8);

    SlabFamily half1 = fam, half2 = fam;
    half1.slabs.assign(fam.slabs.begin(), fam.slabs.begin() + 72);
    half2.slabs.assign(fam.slabs.begin() + 72, fam.slabs.end());
    const ChazelleReport whole = verify_chazelle(pts, fam, 10.0, BoundParams(2, 5, 1), 0, 1);
    const ChazelleReport a = verify_chazelle(pts, half1, 10.0, BoundParams(2, 5, 1), 0, 1);
    const ChazelleReport b = verify_chazelle(pts, half2, 10.0, BoundParams(2, 5, 1), 0, 1);
    EXPECT_EQ(whole.min_output, std::min(a.min_output, b.min_output));
    EXPECT_EQ(whole.cond1_violations, a.cond1_violations + b.cond1_violations);
}

TEST(Afshani, BoundFormulaExample) {
    EXPECT_DOUBLE_EQ(100.0 / (0.01 * std::pow(2.0, 0.0)), 1e4);
}

TEST(Afshani, StabbingCoverageIsExact) {
    AnnulusStabParams p;
    p.n = 400;
    p.qn = 4.0;
    const AnnulusFamily fam = gen_annulus_stab(p);
    EXPECT_EQ(fam.annuli.size(), 400u);
    EXPECT_EQ(fam.coverage, 16);
    const AfshaniReport rep = verify_afshani(fam, 16, BoundParams(2, 2, 1), 3, 2);
    EXPECT_EQ(rep.min_coverage, 16);
    EXPECT_GT(rep.max_pair_area, 0.0);
    EXPECT_DOUBLE_EQ(rep.implied_bound,
                     16.0 / (rep.max_pair_area * std::pow(2.0, 1.0 * 2.0)));
}

TEST(Afshani, SlabStabPairAreaUnderLeadingCoefficientCap) {
    SlabStabParams p;
    p.n = 600;
    p.delta = 2;
    p.qn = 30.0;
    const SlabFamily fam = gen_slab_stab(p);
    const AfshaniReport rep = verify_afshani(fam, 24, BoundParams(2, 2, 1), 17, 0);
    EXPECT_EQ(rep.min_coverage, fam.coverage);

    // v-hat <= max_i (i+1)^4 w (w/d_i)^(1/i): per-run length bound times the
    // run count times the width
    double cap = 0.0;
    for (int i = 1; i <= p.delta; ++i) {
        const double di = fam.echo.values.at("d_" + std::to_string(i));
        cap = std::max(cap, (i + 1.0) * fam.width * poly_int_bound(i, fam.width, di));
    }
    EXPECT_LE(rep.max_pair_area, cap);
}

TEST(Derand, ThresholdZeroAlwaysFails) {
    const SlabFamily fam = example_report_family();
    DerandIntConfig cfg;
    cfg.k_exponent = 0.0;  // threshold 0: any region with >= 0 points fails
    cfg.trials = 5;
    cfg.seed = 4;
    const DerandReport rep = derand_int_experiment(fam, cfg);
    EXPECT_GT(rep.details.at("regions_checked"), 0.0);
    EXPECT_EQ(rep.failures, 5);
    EXPECT_EQ(rep.failure_rate, 1.0);
}

TEST(Derand, NoRegionsNoFailures) {
    // family of vertical translates only: every pairwise intersection is empty
    SlabFamily fam;
    fam.square = Rect(Point2{0, 0}, Point2{100, 100});
    fam.width = 2.0;
    fam.instance_n = 100;
    for (int k = 0; k < 10; ++k) {
        fam.slabs.emplace_back(UniPoly(std::vector<double>{k * 4.0, 1.0}), 2.0);
        fam.provenance.push_back(SlabProvenance{{1}, k});
    }
    DerandIntConfig cfg;
    cfg.k_exponent = 1.0;
    cfg.trials = 6;
    const DerandReport rep = derand_int_experiment(fam, cfg);
    EXPECT_EQ(rep.details.at("regions_checked"), 0.0);
    EXPECT_EQ(rep.failure_rate, 0.0);
}

TEST(Derand, RateMonotoneInThreshold) {
    const SlabFamily fam = example_report_family();
    DerandIntConfig cfg;
    cfg.trials = 8;
    cfg.seed = 12;
    double prev = 2.0;
    for (const double k : {0.0, 0.35, 50.0}) {
        cfg.k_exponent = k;
        const DerandReport rep = derand_int_experiment(fam, cfg);
        EXPECT_LE(rep.failure_rate, prev);
        prev = rep.failure_rate;
    }
}

TEST(Derand, RingTrivialThresholds) {
    // one slab covering the whole square
    SlabFamily fam;
    fam.square = Rect(Point2{0, 0}, Point2{50, 50});
    fam.width = 50.0;
    fam.instance_n = 200;
    fam.slabs.emplace_back(UniPoly::constant(0.0), 50.0);
    fam.provenance.push_back(SlabProvenance{{}, 0});

    DerandRingConfig cfg;
    cfg.c = 8.0;
    cfg.t = 0.0;
    cfg.trials = 4;
    const DerandReport zero = derand_ring_experiment(fam, cfg);
    EXPECT_EQ(zero.failure_rate, 0.0);

    cfg.t = 200.0;  // the full square holds all n points
    cfg.c = 0.0001;
    const DerandReport full = derand_ring_experiment(fam, cfg);
    EXPECT_TRUE(full.precondition_ok);
    EXPECT_EQ(full.failure_rate, 0.0);

    cfg.t = 201.0;  // impossible
    const DerandReport impossible = derand_ring_experiment(fam, cfg);
    EXPECT_EQ(impossible.failure_rate, 1.0);
}

TEST(Derand, RingPreconditionReported) {
    AnnulusStabParams p;
    p.n = 400;
    p.qn = 4.0;
    const AnnulusFamily fam = gen_annulus_stab(p);
    DerandRingConfig cfg;
    cfg.c = 8.0;
    cfg.t = 50.0;  // area requirement far above the thin rings
    cfg.trials = 1;
    cfg.area_samples = 4000;
    const DerandReport rep = derand_ring_experiment(fam, cfg);
    EXPECT_FALSE(rep.precondition_ok);
    EXPECT_GE(rep.offending_range, 0);
}

TEST(Derand, DeterministicPerSeed) {
    const SlabFamily fam = example_report_family();
    DerandIntConfig cfg;
    cfg.k_exponent = 0.3;
    cfg.trials = 6;
    cfg.seed = 777;
    const DerandReport a = derand_int_experiment(fam, cfg);
    const DerandReport b = derand_int_experiment(fam, cfg);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.details.at("max_region_area"), b.details.at("max_region_area"));
}

TEST(Lemma42, PairSubsetsDegenerateToMaxPairArea) {
    const AnnulusFamily fam = small_ring_family();
    const Lemma42Report rep = lemma42_experiment(fam, 2, 60, 21);
    EXPECT_EQ(rep.ell, 2);
    EXPECT_GT(rep.subsets, 0);
    // with ell = 2 the min over the subset is the pair's own area
    EXPECT_GT(rep.worst_min_pair_area, 0.0);
    EXPECT_GE(rep.worst_min_pair_area, rep.worst_uniform);
    EXPECT_GE(rep.worst_min_pair_area, rep.worst_adversarial);
}

TEST(Lemma42, SameCenterRingsDoNotIntersect) {
    const AnnulusFamily fam = small_ring_family();
    // any two rings of the same family (same grid point) have zero area
    for (size_t i = 1; i < fam.annuli.size(); ++i) {
        if (fam.provenance[i].gi == fam.provenance[i - 1].gi &&
            fam.provenance[i].gj == fam.provenance[i - 1].gj) {
            EXPECT_EQ(annulus_intersection_area(fam.annuli[i], fam.annuli[i - 1]), 0.0);
        }
    }
}

TEST(Lemma42, DefaultSubsetSize) {
    const AnnulusFamily fam = small_ring_family();
    const Lemma42Report rep = lemma42_experiment(fam, 0, 10, 3, 4.0);
    EXPECT_EQ(rep.ell, static_cast<int>(std::ceil(4.0 * fam.width * fam.width /
                                                  std::sqrt(fam.cell_side))));
    EXPECT_DOUBLE_EQ(rep.bound, static_cast<double>(fam.instance_n) * fam.width /
                                    std::sqrt(fam.cell_side));
}

TEST(ImpliedBounds, ClosedForms) {
    ImpliedBoundParams p;
    p.n = 1e6;
    p.qn = 1e4;
    EXPECT_DOUBLE_EQ(implied_bounds("annulus-stab", p).value, 1e6);  // n^1.5 / qn^0.75
    p.delta = 2;
    EXPECT_DOUBLE_EQ(implied_bounds("slab-stab", p).value,
                     std::pow(1e6, 1.0 + 2.0 / 3.0) / 1e4);
    ImpliedBoundParams fast;
    fast.n = 1e5;
    fast.qn = 1.0;
    fast.delta = 2;
    fast.beta = 0.0;
    EXPECT_DOUBLE_EQ(implied_bounds("slab-report", fast).value, 1e15);  // n^3 at Q = 1
    EXPECT_EQ(implied_bounds("annulus-report", fast).formula, "thm4.3:S");
    EXPECT_THROW(implied_bounds("bogus", p), std::invalid_argument);
}

TEST(ImpliedBounds, SlackReducesReportingBounds) {
    ImpliedBoundParams p;
    p.n = 1e6;
    p.qn = 10.0;
    p.delta = 2;
    p.beta = 1.0;
    ImpliedBoundParams flat = p;
    flat.beta = 0.0;
    EXPECT_LT(implied_bounds("slab-report", p).value, implied_bounds("slab-report", flat).value);
    EXPECT_LT(implied_bounds("annulus-report", p).value,
              implied_bounds("annulus-report", flat).value);
}
