#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hardrange/constructions.hpp"
#include "hardrange/frameworks.hpp"
#include "hardrange/rng.hpp"

using namespace hardrange;

TEST(SlabReport, WidthFormula) {
    SlabReportParams p;
    p.n = 16384;
    p.delta = 2;
    p.qn = 14.0;
    EXPECT_EQ(p.width(), 16.0 * 2 * 14.0);
}

TEST(SlabReport, ExampleFamilySize) {
    SlabReportParams p;
    p.n = 1000;
    p.delta = 2;
    p.qn = 1.0;
    p.w_override = 50.0;
    p.d_override = {100.0, 200.0};
    const SlabFamily fam = gen_slab_report(p);
    // j1 in [5,10], j2 in [2,5], k in [5,10]
    EXPECT_EQ(fam.slabs.size(), 6u * 4u * 6u);
    EXPECT_EQ(fam.echo.values.at("family_size"), 144.0);
    EXPECT_EQ(fam.width, 50.0);

    // each slab restricted to [0, n/4] has area (n/4) w and stays inside S
    for (size_t i = 0; i < fam.slabs.size(); i += 17) {
        EXPECT_EQ(slab_area_on_interval(fam.slabs[i], 0.0, 250.0), 250.0 * 50.0);
        for (int s = 0; s <= 10; ++s) {
            const double x = 250.0 * s / 10.0;
            const double top = fam.slabs[i].base.eval(x) + fam.width;
            EXPECT_GE(fam.slabs[i].base.eval(x), 0.0);
            EXPECT_LE(top, 1000.0);
        }
    }
}

TEST(SlabReport, VerticalTranslatesDoNotOverlap) {
    SlabReportParams p;
    p.n = 1000;
    p.delta = 2;
    p.qn = 1.0;
    p.w_override = 50.0;
    p.d_override = {100.0, 200.0};
    const SlabFamily fam = gen_slab_report(p);
    const Interval domain(0.0, 1000.0);
    int checked = 0;
    for (size_t a = 0; a < fam.slabs.size() && checked < 40; ++a) {
        for (size_t b = a + 1; b < fam.slabs.size() && checked < 40; ++b) {
            if (fam.provenance[a].j != fam.provenance[b].j) continue;
            EXPECT_EQ(slab_intersection_area(fam.slabs[a], fam.slabs[b], domain), 0.0);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(SlabReport, ConfigErrors) {
    SlabReportParams p;
    p.n = 1000;
    p.delta = 2;
    p.qn = 1.0;  // default d_i formula is astronomically large at this scale
    EXPECT_THROW(
        {
            try {
                gen_slab_report(p);
            } catch (const config_error& e) {
                EXPECT_NE(std::string(e.what()).find("d_1"), std::string::npos);
                throw;
            }
        },
        config_error);

    SlabReportParams q;
    q.n = 1000;
    q.delta = 2;
    q.qn = 14.0;  // w = 448 >= n/6
    q.d_override = {100.0, 200.0};
    EXPECT_THROW(gen_slab_report(q), config_error);
}

TEST(SlabReport, OverrideCountMustMatchDegree) {
    SlabReportParams p;
    p.n = 1000;
    p.delta = 2;
    p.qn = 1.0;
    p.w_override = 50.0;
    p.d_override = {100.0};  // one scale for two degrees
    EXPECT_THROW(gen_slab_report(p), config_error);
}

TEST(SlabReport, DeterministicGeneration) {
    SlabReportParams p;
    p.n = 1000;
    p.delta = 2;
    p.qn = 1.0;
    p.w_override = 50.0;
    p.d_override = {100.0, 200.0};
    const SlabFamily a = gen_slab_report(p);
    const SlabFamily b = gen_slab_report(p);
    ASSERT_EQ(a.slabs.size(), b.slabs.size());
    for (size_t i = 0; i < a.slabs.size(); ++i) {
        EXPECT_EQ(a.slabs[i].base.coeffs(), b.slabs[i].base.coeffs());
        EXPECT_EQ(a.provenance[i].j, b.provenance[i].j);
        EXPECT_EQ(a.provenance[i].k, b.provenance[i].k);
    }
}

TEST(SlabStab, DegreeOneExampleCoverage) {
    SlabStabParams p;
    p.n = 63;
    p.delta = 1;
    p.qn = 1.0;
    p.d_override = {0.25};
    p.w_override = 0.1;
    const SlabFamily fam = gen_slab_stab(p);
    // j1 in [2, 4] -> t = 3; k in [-10, 10] -> 63 slabs
    EXPECT_EQ(fam.coverage, 3);
    EXPECT_EQ(fam.slabs.size(), 63u);

    Rng rng(2);
    for (int probe = 0; probe < 2000; ++probe) {
        const Point2 pt{rng.uniform(1e-9, 1.0 - 1e-9), rng.uniform(1e-9, 1.0 - 1e-9)};
        int covered = 0;
        for (const auto& s : fam.slabs)
            if (slab_contains(s, pt)) ++covered;
        ASSERT_EQ(covered, 3) << "probe (" << pt.x << ", " << pt.y << ")";
    }

    // a point far above every slab's vertical span is stabbed by nothing
    int covered = 0;
    for (const auto& s : fam.slabs)
        if (slab_contains(s, Point2{0.5, 100.0})) ++covered;
    EXPECT_EQ(covered, 0);
}

TEST(SlabStab, TunedSizeNearTarget) {
    SlabStabParams p;
    p.n = 10000;
    p.delta = 2;
    p.qn = 100.0;
    const SlabFamily fam = gen_slab_stab(p);
    const double achieved = fam.echo.values.at("family_size");
    EXPECT_NEAR(achieved, 10000.0, 0.25 * 10000.0);
    EXPECT_EQ(static_cast<double>(fam.slabs.size()), achieved);
    // coverage equals the closed-form index-range product
    std::set<std::vector<std::int64_t>> tuples;
    for (const auto& pv : fam.provenance) tuples.insert(pv.j);
    EXPECT_EQ(static_cast<std::int64_t>(tuples.size()), fam.coverage);
    EXPECT_GT(fam.echo.values.at("c2_eff"), 0.0);
}

TEST(SlabStab, InfeasibleWithoutTuning) {
    SlabStabParams p;
    p.n = 10000;
    p.delta = 2;
    p.qn = 100.0;
    p.tune = false;
    p.size_slack = 1e-6;
    EXPECT_THROW(gen_slab_stab(p), config_error);
}

TEST(AnnulusReport, CountsAndCornerRules) {
    AnnulusReportParams p;
    p.n = 512;
    p.qn = 8.0;
    p.w_override = 8.0;
    p.t_override = 64.0;
    const AnnulusFamily fam = gen_annulus_report(p);
    EXPECT_EQ(fam.grid_side, 8);
    EXPECT_GT(fam.annuli.size(), 0u);

    const double n = 512.0;
    const std::array<Point2, 4> corners{Point2{0, 0}, Point2{n, 0}, Point2{0, n}, Point2{n, n}};
    std::map<std::pair<int, int>, int> per_point;
    for (size_t i = 0; i < fam.annuli.size(); ++i) {
        const auto& a = fam.annuli[i];
        std::array<double, 4> dist;
        for (int c = 0; c < 4; ++c) dist[static_cast<size_t>(c)] = distance(a.center, corners[static_cast<size_t>(c)]);
        std::sort(dist.begin(), dist.end());
        // inner circle through or beyond the second-nearest corner
        EXPECT_GE(a.r, dist[1] - 1e-9);
        // outer circle strictly does not reach the third-nearest corner
        EXPECT_LT(a.outer(), dist[2]);
        per_point[{fam.provenance[i].gi, fam.provenance[i].gj}]++;
    }
    EXPECT_EQ(per_point.size(), 81u);  // (8+1)^2 grid points
    for (const auto& [key, count] : per_point) {
        const Point2 o{11.0 * n + key.first * 64.0, key.second * 64.0};
        std::array<double, 4> dist;
        for (int c = 0; c < 4; ++c) dist[static_cast<size_t>(c)] = distance(o, corners[static_cast<size_t>(c)]);
        std::sort(dist.begin(), dist.end());
        const double span = dist[2] - dist[1];
        EXPECT_GE(count, static_cast<int>(std::floor(span / 8.0)) - 1);
        EXPECT_LE(count, static_cast<int>(std::ceil(span / 8.0)));
    }

    // enumerated count against n^3/(T^2 w), ratio recorded
    const double ratio = fam.echo.values.at("count_formula_ratio");
    EXPECT_GT(ratio, 0.2);
    EXPECT_LT(ratio, 5.0);
}

TEST(AnnulusReport, ConsecutiveRadiiDifferByWidth) {
    AnnulusReportParams p;
    p.n = 256;
    p.qn = 4.0;
    p.w_override = 16.0;
    p.t_override = 128.0;
    const AnnulusFamily fam = gen_annulus_report(p);
    for (size_t i = 1; i < fam.annuli.size(); ++i) {
        const auto& prev = fam.provenance[i - 1];
        const auto& cur = fam.provenance[i];
        if (prev.gi == cur.gi && prev.gj == cur.gj) {
            EXPECT_EQ(cur.ring, prev.ring + 1);
            EXPECT_DOUBLE_EQ(fam.annuli[i].r, fam.annuli[i - 1].r + fam.width);
        }
    }
}

TEST(AnnulusReport, WidthMustStayBelowCell) {
    AnnulusReportParams p;
    p.n = 512;
    p.qn = 8.0;
    p.w_override = 64.0;
    p.t_override = 64.0;
    EXPECT_THROW(gen_annulus_report(p), config_error);
}

TEST(AnnulusStab, ExactFamilyAndTangency) {
    AnnulusStabParams p;
    p.n = 10000;
    p.qn = 25.0;
    const AnnulusFamily fam = gen_annulus_stab(p);
    EXPECT_EQ(fam.annuli.size(), 10000u);
    EXPECT_EQ(fam.coverage, 100);  // (1/T + 1)^2 with 1/T = 9
    EXPECT_EQ(fam.grid_side, 9);

    const double w = fam.width;
    std::map<std::pair<int, int>, std::pair<double, int>> first_and_count;
    for (size_t i = 0; i < fam.annuli.size(); ++i) {
        const auto& a = fam.annuli[i];
        const auto key = std::make_pair(fam.provenance[i].gi, fam.provenance[i].gj);
        auto& slot = first_and_count[key];
        if (fam.provenance[i].ring == 0) {
            slot.first = a.r;
            // first circle tangent to the right side of S2 (x = -10)
            EXPECT_DOUBLE_EQ(a.r, a.center.x + 10.0);
        }
        slot.second++;
    }
    for (const auto& [key, slot] : first_and_count) {
        // radial span per grid point at least sqrt(122) - 9
        EXPECT_GE(slot.second * w, kRadialSpan - 1e-12);
    }
}

TEST(AnnulusStab, CoverageExactAtRandomProbes) {
    AnnulusStabParams p;
    p.n = 2500;
    p.qn = 25.0;
    const AnnulusFamily fam = gen_annulus_stab(p);
    EXPECT_EQ(fam.annuli.size(), 2500u);
    Rng rng(77);
    for (int probe = 0; probe < 200; ++probe) {
        const Point2 pt{rng.uniform(-11.0 + 1e-9, -10.0 - 1e-9), rng.uniform(1e-9, 1.0 - 1e-9)};
        std::int64_t covered = 0;
        for (const auto& a : fam.annuli)
            if (annulus_contains(a, pt)) ++covered;
        ASSERT_EQ(covered, fam.coverage);
    }
}

TEST(AnnulusStab, RegimeError) {
    AnnulusStabParams p;
    p.n = 100;
    p.qn = 25.0;  // w = 4(sqrt(122)-9)*25/100 > T = 1/9
    EXPECT_THROW(gen_annulus_stab(p), config_error);
}

TEST(SlabReport, PairwisePieceExtentUnderLeadingCoefficientBound) {
    SlabReportParams p;
    p.n = 4096;
    p.delta = 2;
    p.qn = 2.0;  // w = 64
    p.d_override = {512.0, 1024.0};
    const SlabFamily fam = gen_slab_report(p);
    const Interval domain(0.0, 4096.0);

    Rng rng(64128);
    int checked = 0;
    while (checked < 200) {
        const size_t a = rng.index(fam.slabs.size());
        const size_t b = rng.index(fam.slabs.size());
        if (a == b) continue;
        int top = 0;
        for (int idx = p.delta; idx >= 1; --idx) {
            if (fam.provenance[a].j[static_cast<size_t>(idx - 1)] !=
                fam.provenance[b].j[static_cast<size_t>(idx - 1)]) {
                top = idx;
                break;
            }
        }
        if (top == 0) continue;
        // every connected intersection piece projects into a run of
        // |P1 - P2| <= w, so the longest run caps the piece extent
        const UniPoly diff = fam.slabs[a].base - fam.slabs[b].base;
        const double longest = max_bounded_interval_length(diff, fam.width, domain);
        const double cap =
            poly_int_bound(top, fam.width, fam.echo.values.at("d_" + std::to_string(top)) /
                                               std::pow(4096.0, top));
        EXPECT_LE(longest, cap * (1.0 + 1e-9));
        ++checked;
    }
}

TEST(SlabReport, DefaultScalesKeepPairAreasSubLinear) {
    // With d_i = c delta^(3i) w^(i+1) 2^(i sqrt(log n)) and c at least
    // max_i ((i+1)^4 / delta^3)^i, the pairwise-area cap
    // (i+1)^4 n w (w/d_i)^(1/i) stays below n / 2^sqrt(log n).
    for (int delta = 2; delta <= 4; ++delta) {
        double c_star = 0.0;
        for (int i = 1; i <= delta; ++i)
            c_star = std::max(c_star,
                              std::pow(std::pow(i + 1.0, 4.0) / std::pow(delta, 3.0),
                                       static_cast<double>(i)));
        for (const double n : {1e6, 1e9, 1e12}) {
            const double w = 16.0 * delta;  // qn = 1
            const double sl = sqrt_log(n);
            for (int i = 1; i <= delta; ++i) {
                const double di = c_star * std::pow(static_cast<double>(delta), 3.0 * i) *
                                  std::pow(w, i + 1.0) * std::pow(2.0, i * sl);
                const double cap =
                    std::pow(i + 1.0, 4.0) * n * w * std::pow(w / di, 1.0 / i);
                EXPECT_LE(cap, n / std::pow(2.0, sl) * (1.0 + 1e-12))
                    << "delta=" << delta << " i=" << i << " n=" << n;
            }
        }
    }
}

TEST(AnnulusReport, InSquareAreaAboveFittedConstant) {
    AnnulusReportParams p;
    p.n = 512;
    p.qn = 8.0;
    p.w_override = 8.0;
    p.t_override = 64.0;
    const AnnulusFamily fam = gen_annulus_report(p);
    const double scale = fam.width * static_cast<double>(fam.instance_n);

    const auto min_ratio = [&](std::uint64_t seed) {
        double worst = std::numeric_limits<double>::max();
        for (size_t i = 0; i < fam.annuli.size(); i += 37) {
            const double est = annulus_area_in_rect(fam.annuli[i], fam.query_square, 40000,
                                                    mix_seed(seed, i));
            worst = std::min(worst, est / scale);
        }
        return worst;
    };
    const double fitted = min_ratio(1);
    EXPECT_GT(fitted, 0.0);
    // every sampled annulus keeps at least half the fitted fraction of w*n
    // inside the square on a fresh seed
    EXPECT_GE(min_ratio(2), 0.5 * fitted);
}

TEST(SamplePoints, BasicsAndDeterminism) {
    const Rect square(Point2{2, 3}, Point2{4, 5});
    const PointSet one = sample_points(1, square, 9);
    ASSERT_EQ(one.points.size(), 1u);
    EXPECT_TRUE(square.contains(one.points[0]));

    const PointSet a = sample_points(500, square, 123);
    const PointSet b = sample_points(500, square, 123);
    for (size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].x, b.points[i].x);
        EXPECT_EQ(a.points[i].y, b.points[i].y);
    }
    EXPECT_THROW(sample_points(0, square, 1), std::invalid_argument);
}

TEST(SamplePoints, ChiSquareUniformity) {
    const Rect square(Point2{0, 0}, Point2{1, 1});
    const PointSet ps = sample_points(100000, square, 20250810);
    std::array<std::array<int, 10>, 10> bins{};
    for (const auto& p : ps.points) {
        const int bx = std::min(9, static_cast<int>(p.x * 10.0));
        const int by = std::min(9, static_cast<int>(p.y * 10.0));
        bins[static_cast<size_t>(bx)][static_cast<size_t>(by)]++;
    }
    const double expected = 1000.0;
    double chi2 = 0.0;
    for (const auto& row : bins)
        for (const int obs : row) {
            const double diff = obs - expected;
            chi2 += diff * diff / expected;
        }
    // chi-square critical value, 99 dof, significance 0.001
    EXPECT_LT(chi2, 148.2304);
}
