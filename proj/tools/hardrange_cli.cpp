// hardrange: generate hard range-searching instances, verify the lower-bound
// framework preconditions on them, run the seeded experiments, and evaluate
// the implied space bounds. All outputs are deterministic for fixed flags.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardrange/constructions.hpp"
#include "hardrange/frameworks.hpp"
#include "hardrange/geom.hpp"
#include "hardrange/io.hpp"
#include "hardrange/poly.hpp"

using nlohmann::json;
using namespace hardrange;

namespace {

std::int64_t as_count(double v, const std::string& name) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 9.007199254740992e15)
        throw config_error(name + " must be a positive integer");
    return static_cast<std::int64_t>(v);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HARDRANGE_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw config_error("HARDRANGE_SEED is not an integer");
        }
    }
    return 0;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void print_echo(const ParamEcho& echo) {
    for (const auto& [key, value] : echo.values) {
        std::cout << "  " << key << " = " << value;
        const auto it = echo.provenance.find(key);
        if (it != echo.provenance.end()) std::cout << "  [" << it->second << "]";
        std::cout << "\n";
    }
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string kind;
    double n = 0;
    double qn = 1.0;
    int delta = 2;
    double c = 1.0, c1 = 1.0, c2 = 1.0, c_prime = 1.0;
    double log_base = 2.0;
    double size_slack = 0.25;
    bool no_tune = false;
    double w = 0.0;
    double cell = 0.0;
    std::vector<double> d;
    std::int64_t points = -1;
    std::uint64_t seed = 0;
    std::string out;
    bool has_w = false, has_cell = false;
};

int run_gen(const GenArgs& a) {
    Instance inst;
    inst.kind = a.kind;
    inst.seed = a.seed;
    const std::int64_t n = as_count(a.n, "--n");

    if (a.kind == "slab-report") {
        SlabReportParams p;
        p.n = n;
        p.delta = a.delta;
        p.qn = a.qn;
        p.c = a.c;
        p.log_base = a.log_base;
        if (a.has_w) p.w_override = a.w;
        p.d_override = a.d;
        inst.slabs = gen_slab_report(p);
    } else if (a.kind == "slab-stab") {
        SlabStabParams p;
        p.n = n;
        p.delta = a.delta;
        p.qn = a.qn;
        p.c1 = a.c1;
        p.c2 = a.c2;
        p.size_slack = a.size_slack;
        p.tune = !a.no_tune;
        if (a.has_w) p.w_override = a.w;
        p.d_override = a.d;
        inst.slabs = gen_slab_stab(p);
    } else if (a.kind == "annulus-report") {
        AnnulusReportParams p;
        p.n = n;
        p.qn = a.qn;
        p.c_prime = a.c_prime;
        p.log_base = a.log_base;
        if (a.has_w) p.w_override = a.w;
        if (a.has_cell) p.t_override = a.cell;
        inst.annuli = gen_annulus_report(p);
    } else if (a.kind == "annulus-stab") {
        AnnulusStabParams p;
        p.n = n;
        p.qn = a.qn;
        if (a.has_w) p.w_override = a.w;
        if (a.has_cell) p.t_override = a.cell;
        inst.annuli = gen_annulus_stab(p);
    } else {
        throw config_error("unknown instance kind '" + a.kind + "'");
    }

    const bool reporting = a.kind == "slab-report" || a.kind == "annulus-report";
    std::int64_t want_points = a.points;
    if (want_points < 0) want_points = reporting ? n : 0;
    if (want_points > 0) {
        const Rect square = inst.slabs ? inst.slabs->square : inst.annuli->query_square;
        inst.points = sample_points(want_points, square, a.seed);
    }

    write_instance(a.out, inst);
    std::cout << "gen " << a.kind << ": family size " << inst.family_size();
    if (inst.points) std::cout << ", points " << inst.points->points.size();
    std::cout << " -> " << a.out << "\n";
    print_echo(inst.echo());
    return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string framework;
    std::string inst;
    double qn = -1.0;  // <0: take the instance's qn
    double alpha = 2.0;
    double cap = 2.0;
    double beta = 1.0;
    int tuples = 0;
    int grid = 128;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string report;
    bool timings = false;
};

json closed_form_bound_entry(const Instance& inst, double qn) {
    ImpliedBoundParams p;
    p.n = static_cast<double>(inst.is_slab() ? inst.slabs->instance_n : inst.annuli->instance_n);
    p.qn = qn;
    const auto& vals = inst.echo().values;
    if (const auto it = vals.find("delta"); it != vals.end())
        p.delta = static_cast<int>(it->second);
    p.beta = 0.0;
    const ImpliedBound b = implied_bounds(inst.kind, p);
    return json{{"formula", b.formula}, {"value", b.value}, {"beta", 0.0}, {"constant", 1.0}};
}

int run_verify(const VerifyArgs& a) {
    Timer timer;
    const std::string bytes = read_text_file(a.inst);
    const Instance inst = instance_from_json(json::parse(bytes));
    double qn = a.qn;
    if (qn < 0.0) {
        const auto it = inst.echo().values.find("qn");
        qn = it != inst.echo().values.end() ? it->second : 1.0;
    }
    const BoundParams bp(a.alpha, a.cap, a.beta);

    json params{{"framework", a.framework}, {"inst", a.inst},   {"qn", qn},
                {"alpha", a.alpha},         {"cap", a.cap},     {"beta", a.beta},
                {"tuples", a.tuples},       {"grid", a.grid},   {"seed", a.seed}};

    json payload;
    json implied = json::array();
    bool ok = false;
    if (a.framework == "chazelle") {
        if (!inst.points) throw io_error("chazelle verification needs an instance with points");
        ChazelleReport rep;
        if (inst.is_slab())
            rep = verify_chazelle(*inst.points, *inst.slabs, qn, bp, a.tuples, a.seed, a.threads);
        else
            rep = verify_chazelle(*inst.points, *inst.annuli, qn, bp, a.tuples, a.seed, a.threads);
        payload = report_to_json(rep);
        implied.push_back(json{{"formula", "thm2.1:S"},
                               {"value", rep.implied_bound},
                               {"beta", bp.beta},
                               {"constant", 1.0}});
        implied.push_back(closed_form_bound_entry(inst, qn));
        ok = rep.conditions_hold();
        std::cout << "chazelle: m=" << rep.m << " min_output=" << rep.min_output
                  << " cond1_violations=" << rep.cond1_violations
                  << " max_pair=" << rep.max_pair_intersection
                  << " alpha_max=" << rep.sampled_alpha_max
                  << " implied_bound=" << rep.implied_bound << "\n";
    } else if (a.framework == "afshani") {
        AfshaniReport rep;
        if (inst.is_slab())
            rep = verify_afshani(*inst.slabs, a.grid, bp, a.seed, a.threads);
        else
            rep = verify_afshani(*inst.annuli, a.grid, bp, a.seed, a.threads);
        payload = report_to_json(rep);
        implied.push_back(json{{"formula", "thm2.2:S"},
                               {"value", rep.implied_bound},
                               {"beta", bp.beta},
                               {"constant", 1.0}});
        implied.push_back(closed_form_bound_entry(inst, qn));
        ok = static_cast<double>(rep.min_coverage) >= qn;
        std::cout << "afshani: ranges=" << rep.ranges << " min_coverage=" << rep.min_coverage
                  << " max_pair_area=" << rep.max_pair_area
                  << " implied_bound=" << rep.implied_bound << "\n";
    } else {
        throw config_error("unknown framework '" + a.framework + "' (chazelle|afshani)");
    }

    json file = make_report_file(a.framework, bytes, std::move(payload), std::move(params),
                                 std::move(implied));
    if (a.timings) file["timings"] = json{{"total_ms", timer.elapsed_ms()}};
    write_text_file(a.report, dump_json(file));
    std::cout << (ok ? "conditions hold" : "conditions violated") << "; report -> " << a.report
              << " (" << timer.elapsed_ms() << " ms)\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
    std::string name;
    std::string inst;
    int trials = 20;
    double k = 2.0;
    double area_constant = 1.0;
    double c = 8.0;
    double t = 1.0;
    std::int64_t mc_samples = 20000;
    int ell = 0;
    int subsets = 1000;
    double c_ell = 4.0;
    double log_base = 2.0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string report;
    bool timings = false;
};

int run_experiment(const ExperimentArgs& a) {
    Timer timer;
    const std::string bytes = read_text_file(a.inst);
    const Instance inst = instance_from_json(json::parse(bytes));

    json params{{"experiment", a.name},   {"inst", a.inst},       {"trials", a.trials},
                {"k", a.k},               {"c", a.c},             {"t", a.t},
                {"area_constant", a.area_constant},               {"mc_samples", a.mc_samples},
                {"ell", a.ell},           {"subsets", a.subsets}, {"c_ell", a.c_ell},
                {"log_base", a.log_base}, {"seed", a.seed}};

    json payload;
    bool ok = true;
    if (a.name == "derand-int") {
        DerandIntConfig cfg;
        cfg.k_exponent = a.k;
        cfg.trials = a.trials;
        cfg.seed = a.seed;
        cfg.area_constant = a.area_constant;
        cfg.log_base = a.log_base;
        cfg.threads = a.threads;
        const DerandReport rep = inst.is_slab() ? derand_int_experiment(*inst.slabs, cfg)
                                                : derand_int_experiment(*inst.annuli, cfg);
        payload = report_to_json(rep);
        ok = rep.precondition_ok && rep.failure_rate < 0.5;
    } else if (a.name == "derand-ring") {
        DerandRingConfig cfg;
        cfg.c = a.c;
        cfg.t = a.t;
        cfg.trials = a.trials;
        cfg.seed = a.seed;
        cfg.area_samples = a.mc_samples;
        cfg.threads = a.threads;
        const DerandReport rep = inst.is_slab() ? derand_ring_experiment(*inst.slabs, cfg)
                                                : derand_ring_experiment(*inst.annuli, cfg);
        payload = report_to_json(rep);
        ok = rep.precondition_ok && rep.failure_rate < 0.5;
    } else if (a.name == "lemma42") {
        if (inst.is_slab()) throw config_error("lemma42 runs on annulus reporting instances");
        const Lemma42Report rep =
            lemma42_experiment(*inst.annuli, a.ell, a.subsets, a.seed, a.c_ell, a.threads);
        payload = report_to_json(rep);
        ok = true;
    } else {
        throw config_error("unknown experiment '" + a.name + "' (derand-int|derand-ring|lemma42)");
    }

    std::cout << dump_json(payload);
    if (!a.report.empty()) {
        json file = make_report_file(a.name, bytes, std::move(payload), std::move(params));
        if (a.timings) file["timings"] = json{{"total_ms", timer.elapsed_ms()}};
        write_text_file(a.report, dump_json(file));
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct AreaArgs {
    std::string shape;
    double r = 1.0, r1 = 1.0, r2 = 1.0, w = 1.0, w1 = 1.0, w2 = 1.0, d = 0.0, n = 0.0;
    double a = 0.0, b = 1.0;
    std::vector<double> p1, p2;
    bool mc = false;
    double samples = 1e6;
    std::uint64_t seed = 0;
};

int run_area(const AreaArgs& a) {
    json rec{{"shape", a.shape}};
    if (a.shape == "lens") {
        const Circle c1(Point2{0, 0}, a.r1);
        const Circle c2(Point2{a.d, 0}, a.r2);
        rec["value"] = lens_area(c1, c2);
        if (a.mc) {
            const double lox = std::max(-a.r1, a.d - a.r2), hix = std::min(a.r1, a.d + a.r2);
            const double loy = std::max(-a.r1, -a.r2), hiy = std::min(a.r1, a.r2);
            if (lox < hix && loy < hiy) {
                const McArea est = mc_area(
                    [&](const Point2& p) {
                        return squared_distance(p, c1.center) <= a.r1 * a.r1 &&
                               squared_distance(p, c2.center) <= a.r2 * a.r2;
                    },
                    Rect(Point2{lox, loy}, Point2{hix, hiy}),
                    as_count(a.samples, "--samples"), a.seed);
                rec["mc"] = json{{"estimate", est.estimate}, {"std_err", est.std_err}};
            } else {
                rec["mc"] = json{{"estimate", 0.0}, {"std_err", 0.0}};
            }
        }
    } else if (a.shape == "annulus") {
        rec["value"] = annulus_area(Annulus(Point2{0, 0}, a.r, a.w));
    } else if (a.shape == "annulus-int") {
        const Annulus a1(Point2{0, 0}, a.r1, a.w);
        const Annulus a2(Point2{a.d, 0}, a.r2, a.w);
        rec["value"] = annulus_intersection_area(a1, a2);
        if (a.mc) {
            const double ro1 = a1.outer(), ro2 = a2.outer();
            const double lox = std::max(-ro1, a.d - ro2), hix = std::min(ro1, a.d + ro2);
            const double loy = std::max(-ro1, -ro2), hiy = std::min(ro1, ro2);
            if (lox < hix && loy < hiy) {
                const McArea est = mc_area(
                    [&](const Point2& p) {
                        return annulus_contains(a1, p) && annulus_contains(a2, p);
                    },
                    Rect(Point2{lox, loy}, Point2{hix, hiy}),
                    as_count(a.samples, "--samples"), a.seed);
                rec["mc"] = json{{"estimate", est.estimate}, {"std_err", est.std_err}};
            } else {
                rec["mc"] = json{{"estimate", 0.0}, {"std_err", 0.0}};
            }
        }
    } else if (a.shape == "slab-int") {
        if (a.p1.empty() || a.p2.empty())
            throw config_error("slab-int needs --p1 and --p2 coefficient lists");
        const PolySlab s1(UniPoly(a.p1), a.w1);
        const PolySlab s2(UniPoly(a.p2), a.w2);
        rec["value"] = slab_intersection_area(s1, s2, Interval(a.a, a.b));
        if (a.mc) {
            double ylo = 1e300, yhi = -1e300;
            for (int i = 0; i <= 256; ++i) {
                const double x = a.a + (a.b - a.a) * i / 256.0;
                ylo = std::min({ylo, s1.base.eval(x), s2.base.eval(x)});
                yhi = std::max({yhi, s1.base.eval(x) + a.w1, s2.base.eval(x) + a.w2});
            }
            const McArea est = mc_area(
                [&](const Point2& p) { return slab_contains(s1, p) && slab_contains(s2, p); },
                Rect(Point2{a.a, ylo}, Point2{a.b, yhi}), as_count(a.samples, "--samples"),
                a.seed);
            rec["mc"] = json{{"estimate", est.estimate}, {"std_err", est.std_err}};
        }
    } else if (a.shape == "ring-bound") {
        if (!(a.n > 0)) throw config_error("ring-bound needs --n");
        const AnnulusPairGeometry geom(a.r1, a.r2, a.w, a.d);
        rec["value"] = json{{"value", ring_int_bound(geom, a.n)}, {"formula", "lem4.1:bound"}};
        rec["g"] = geom.g;
    } else if (a.shape == "corner-gap") {
        const AnnulusPairGeometry geom(a.r1, a.r2, a.w, a.d);
        const auto [xb, xd] = radial_corner_gap(geom);
        rec["x_b"] = xb;
        rec["x_d"] = xd;
        rec["gap"] = json{{"value", xd - xb}, {"formula", "eq:bt"}};
    } else {
        throw config_error("unknown shape '" + a.shape +
                           "' (lens|annulus|annulus-int|slab-int|ring-bound|corner-gap)");
    }
    std::cout << dump_json(rec);
    return 0;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
    std::string kind;
    double n = 0.0;
    double qn = 1.0;
    int delta = 2;
    double constant = 1.0;
    double beta = 0.0;
    double log_base = 2.0;
};

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string mode;
    double r1 = 100.0, r2 = 120.0, w = 5.0, n = 0.0;
    std::string kind;
    double qn_lo = 1.0, qn_hi = 100.0;
    int delta = 2;
    double constant = 1.0, beta = 0.0, log_base = 2.0;
    int steps = 64;
    std::string out;
};

std::string csv_num(double v) { return nlohmann::json(v).dump(); }

int run_sweep(const SweepArgs& a) {
    if (a.steps < 1) throw config_error("--steps must be >= 1");
    std::ostringstream csv;
    if (a.mode == "ring-ratio") {
        if (!(a.n > 0)) throw config_error("ring-ratio sweep needs --n");
        csv << "d,g,exact_area,bound,ratio\n";
        for (int step = 0; step < a.steps; ++step) {
            const double d = a.w + (a.r2 - a.w) * (step + 0.5) / a.steps;
            const AnnulusPairGeometry geom(a.r1, a.r2, a.w, d);
            const double bound = ring_int_bound(geom, a.n);
            const double exact = annulus_intersection_area(Annulus(Point2{0, 0}, a.r1, a.w),
                                                           Annulus(Point2{d, 0}, a.r2, a.w));
            csv << csv_num(d) << "," << csv_num(geom.g) << "," << csv_num(exact) << ","
                << csv_num(bound) << "," << csv_num(bound > 0.0 ? exact / bound : 0.0) << "\n";
        }
    } else if (a.mode == "bound") {
        if (a.kind.empty() || !(a.n > 0)) throw config_error("bound sweep needs --kind and --n");
        csv << "qn,value\n";
        for (int step = 0; step < a.steps; ++step) {
            const double f = a.steps == 1 ? 0.0 : static_cast<double>(step) / (a.steps - 1);
            const double qn = a.qn_lo * std::pow(a.qn_hi / a.qn_lo, f);
            ImpliedBoundParams p;
            p.n = a.n;
            p.qn = qn;
            p.delta = a.delta;
            p.constant = a.constant;
            p.beta = a.beta;
            p.log_base = a.log_base;
            csv << csv_num(qn) << "," << csv_num(implied_bounds(a.kind, p).value) << "\n";
        }
    } else {
        throw config_error("unknown sweep '" + a.mode + "' (ring-ratio|bound)");
    }
    if (a.out.empty()) std::cout << csv.str();
    else write_text_file(a.out, csv.str());
    return 0;
}

int run_bound(const BoundArgs& a) {
    ImpliedBoundParams p;
    p.n = a.n;
    p.qn = a.qn;
    p.delta = a.delta;
    p.constant = a.constant;
    p.beta = a.beta;
    p.log_base = a.log_base;
    const ImpliedBound b = implied_bounds(a.kind, p);
    json rec{{"kind", a.kind},         {"value", b.value},   {"formula", b.formula},
             {"n", a.n},               {"qn", a.qn},         {"delta", a.delta},
             {"constant", a.constant}, {"beta", a.beta},     {"log_base", a.log_base}};
    std::cout << dump_json(rec);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hard-instance workbench for planar range reporting/stabbing lower bounds"};
    app.require_subcommand(1);

    std::uint64_t env_seed = 0;
    try {
        env_seed = default_seed();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    GenArgs gen;
    gen.seed = env_seed;
    auto* g = app.add_subcommand("gen", "generate an instance file");
    g->add_option("kind", gen.kind, "slab-report|slab-stab|annulus-report|annulus-stab")
        ->required();
    g->add_option("--n", gen.n, "instance size")->required();
    g->add_option("--qn", gen.qn, "target query time Q(n)");
    g->add_option("--delta", gen.delta, "polynomial degree");
    g->add_option("--c", gen.c, "scale constant (slab-report d_i)");
    g->add_option("--c1", gen.c1, "slab-stab d_i constant");
    g->add_option("--c2", gen.c2, "slab-stab width constant");
    g->add_option("--cprime", gen.c_prime, "annulus-report width constant");
    g->add_option("--log-base", gen.log_base, "base of log in 2^sqrt(log n) terms");
    g->add_option("--size-slack", gen.size_slack, "slab-stab relative size tolerance");
    g->add_flag("--no-tune", gen.no_tune, "disable slab-stab c2 tuning");
    auto* gw = g->add_option("--w", gen.w, "width override");
    auto* gcell = g->add_option("--cell", gen.cell, "grid cell side override (T)");
    g->add_option("--d", gen.d, "per-degree scale overrides d_1..d_delta")->delimiter(',');
    g->add_option("--points", gen.points, "sampled point count (-1: n for reporting kinds)");
    g->add_option("--seed", gen.seed, "RNG seed (default: HARDRANGE_SEED or 0)");
    g->add_option("--out", gen.out, "output instance file")->required();

    VerifyArgs ver;
    ver.seed = env_seed;
    auto* v = app.add_subcommand("verify", "verify framework preconditions on an instance");
    v->add_option("framework", ver.framework, "chazelle|afshani")->required();
    v->add_option("--inst", ver.inst, "instance file")->required();
    v->add_option("--qn", ver.qn, "target Q(n) (default: instance qn)");
    v->add_option("--alpha", ver.alpha, "tuple size for condition (ii)");
    v->add_option("--cap", ver.cap, "intersection-size cap c");
    v->add_option("--beta", ver.beta, "slack exponent for 2^O(.) terms");
    v->add_option("--tuples", ver.tuples, "sampled alpha-tuples (alpha > 2)");
    v->add_option("--grid", ver.grid, "coverage probe grid density");
    v->add_option("--seed", ver.seed, "RNG seed");
    v->add_option("--threads", ver.threads, "worker threads (0 = all cores)");
    v->add_option("--report", ver.report, "output report file")->required();
    v->add_flag("--timings", ver.timings, "include wall-clock timings in the report file");

    ExperimentArgs exp;
    exp.seed = env_seed;
    auto* x = app.add_subcommand("experiment", "run a seeded experiment on an instance");
    x->add_option("name", exp.name, "derand-int|derand-ring|lemma42")->required();
    x->add_option("--inst", exp.inst, "instance file")->required();
    x->add_option("--trials", exp.trials, "trial count");
    x->add_option("--k", exp.k, "exponent k in the 3k sqrt(log n) threshold");
    x->add_option("--area-constant", exp.area_constant, "hypothesis area constant (derand-int)");
    x->add_option("--c", exp.c, "hypothesis constant c (derand-ring)");
    x->add_option("--t", exp.t, "per-range point target t (derand-ring)");
    x->add_option("--mc-samples", exp.mc_samples, "per-range area samples (derand-ring)");
    x->add_option("--ell", exp.ell, "subset size (lemma42; 0 = ceil(c_ell w^2/sqrt(T)))");
    x->add_option("--subsets", exp.subsets, "sampled subsets (lemma42)");
    x->add_option("--c-ell", exp.c_ell, "subset-size constant (lemma42)");
    x->add_option("--log-base", exp.log_base, "base of log");
    x->add_option("--seed", exp.seed, "RNG seed");
    x->add_option("--threads", exp.threads, "worker threads (0 = all cores)");
    x->add_option("--report", exp.report, "optional output report file");
    x->add_flag("--timings", exp.timings, "include wall-clock timings in the report file");

    AreaArgs area;
    area.seed = env_seed;
    auto* ar = app.add_subcommand("area", "evaluate an exact area or bound expression");
    ar->add_option("shape", area.shape, "lens|annulus|annulus-int|slab-int|ring-bound|corner-gap")
        ->required();
    ar->add_option("--r", area.r, "annulus inner radius");
    ar->add_option("--r1", area.r1, "first radius");
    ar->add_option("--r2", area.r2, "second radius");
    ar->add_option("--w", area.w, "width");
    ar->add_option("--w1", area.w1, "first slab width");
    ar->add_option("--w2", area.w2, "second slab width");
    ar->add_option("--d", area.d, "center distance");
    ar->add_option("--n", area.n, "scale n (ring-bound)");
    ar->add_option("--a", area.a, "domain start (slab-int)");
    ar->add_option("--b", area.b, "domain end (slab-int)");
    ar->add_option("--p1", area.p1, "slab 1 coefficients a0,a1,...")->delimiter(',');
    ar->add_option("--p2", area.p2, "slab 2 coefficients a0,a1,...")->delimiter(',');
    ar->add_flag("--mc", area.mc, "add a Monte Carlo cross-check");
    ar->add_option("--samples", area.samples, "Monte Carlo samples");
    ar->add_option("--seed", area.seed, "RNG seed");

    SweepArgs sweep;
    auto* sw = app.add_subcommand("sweep", "tabulate a sweep as CSV");
    sw->add_option("mode", sweep.mode, "ring-ratio|bound")->required();
    sw->add_option("--r1", sweep.r1, "first inner radius");
    sw->add_option("--r2", sweep.r2, "second inner radius");
    sw->add_option("--w", sweep.w, "annulus width");
    sw->add_option("--n", sweep.n, "scale / instance size");
    sw->add_option("--kind", sweep.kind, "bound kind (bound sweep)");
    sw->add_option("--qn-lo", sweep.qn_lo, "sweep start for Q(n)");
    sw->add_option("--qn-hi", sweep.qn_hi, "sweep end for Q(n)");
    sw->add_option("--delta", sweep.delta, "polynomial degree");
    sw->add_option("--constant", sweep.constant, "explicit leading constant");
    sw->add_option("--beta", sweep.beta, "slack exponent");
    sw->add_option("--log-base", sweep.log_base, "base of log");
    sw->add_option("--steps", sweep.steps, "sweep steps");
    sw->add_option("--out", sweep.out, "CSV output file (default stdout)");

    BoundArgs bound;
    auto* b = app.add_subcommand("bound", "evaluate a closed-form space lower bound");
    b->add_option("--kind", bound.kind, "slab-report|slab-stab|annulus-report|annulus-stab")
        ->required();
    b->add_option("--n", bound.n, "instance size")->required();
    b->add_option("--qn", bound.qn, "query time Q(n)")->required();
    b->add_option("--delta", bound.delta, "polynomial degree");
    b->add_option("--constant", bound.constant, "explicit leading constant");
    b->add_option("--beta", bound.beta, "slack exponent on 2^(...sqrt(log n)) factors");
    b->add_option("--log-base", bound.log_base, "base of log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    gen.has_w = gw->count() > 0;
    gen.has_cell = gcell->count() > 0;

    try {
        if (app.got_subcommand(g)) return run_gen(gen);
        if (app.got_subcommand(v)) return run_verify(ver);
        if (app.got_subcommand(x)) return run_experiment(exp);
        if (app.got_subcommand(ar)) return run_area(area);
        if (app.got_subcommand(sw)) return run_sweep(sweep);
        if (app.got_subcommand(b)) return run_bound(bound);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
