#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hardrange/constructions.hpp"
#include "hardrange/frameworks.hpp"

namespace hardrange {

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr const char* kInstanceSchema = "hardrange-instance/1";
inline constexpr const char* kReportSchema = "hardrange-report/1";

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string digest_hex(std::string_view bytes) {
    static const char* hexd = "0123456789abcdef";
    const std::uint64_t h = fnv1a64(bytes);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(hexd[(h >> shift) & 0xF]);
    return out;
}

// A generated instance: one range family plus (for reporting) a point set.
struct Instance {
    std::string kind;
    std::optional<SlabFamily> slabs;
    std::optional<AnnulusFamily> annuli;
    std::optional<PointSet> points;
    std::uint64_t seed = 0;

    bool is_slab() const { return slabs.has_value(); }
    std::int64_t family_size() const {
        if (slabs) return static_cast<std::int64_t>(slabs->slabs.size());
        if (annuli) return static_cast<std::int64_t>(annuli->annuli.size());
        return 0;
    }
    const ParamEcho& echo() const {
        if (slabs) return slabs->echo;
        if (annuli) return annuli->echo;
        throw io_error("instance holds no family");
    }
};

namespace detail {

inline nlohmann::json rect_to_json(const Rect& r) {
    return nlohmann::json::array({r.lo.x, r.lo.y, r.hi.x, r.hi.y});
}

inline Rect rect_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4) throw io_error("malformed rect");
    return Rect(Point2{j[0].get<double>(), j[1].get<double>()},
                Point2{j[2].get<double>(), j[3].get<double>()});
}

inline nlohmann::json echo_to_json(const ParamEcho& e) {
    nlohmann::json j;
    j["kind"] = e.kind;
    j["values"] = e.values;
    j["provenance"] = e.provenance;
    return j;
}

inline ParamEcho echo_from_json(const nlohmann::json& j) {
    ParamEcho e;
    e.kind = j.at("kind").get<std::string>();
    e.values = j.at("values").get<std::map<std::string, double>>();
    e.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
    return e;
}

}  // namespace detail

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j;
    j["schema"] = kInstanceSchema;
    j["kind"] = inst.kind;
    j["seed"] = inst.seed;
    if (inst.slabs) {
        const SlabFamily& f = *inst.slabs;
        nlohmann::json ranges;
        ranges["type"] = "slabs";
        ranges["width"] = f.width;
        ranges["square"] = detail::rect_to_json(f.square);
        ranges["instance_n"] = f.instance_n;
        ranges["coverage"] = f.coverage;
        nlohmann::json slabs = nlohmann::json::array();
        for (size_t i = 0; i < f.slabs.size(); ++i) {
            nlohmann::json s;
            s["coeffs"] = f.slabs[i].base.coeffs();
            s["j"] = f.provenance[i].j;
            s["k"] = f.provenance[i].k;
            slabs.push_back(std::move(s));
        }
        ranges["slabs"] = std::move(slabs);
        j["params"] = detail::echo_to_json(f.echo);
        j["ranges"] = std::move(ranges);
    } else if (inst.annuli) {
        const AnnulusFamily& f = *inst.annuli;
        nlohmann::json ranges;
        ranges["type"] = "annuli";
        ranges["width"] = f.width;
        ranges["square"] = detail::rect_to_json(f.query_square);
        ranges["cell_side"] = f.cell_side;
        ranges["grid_side"] = f.grid_side;
        ranges["instance_n"] = f.instance_n;
        ranges["coverage"] = f.coverage;
        nlohmann::json annuli = nlohmann::json::array();
        for (size_t i = 0; i < f.annuli.size(); ++i) {
            nlohmann::json a;
            a["c"] = nlohmann::json::array({f.annuli[i].center.x, f.annuli[i].center.y});
            a["r"] = f.annuli[i].r;
            a["grid"] = nlohmann::json::array(
                {f.provenance[i].gi, f.provenance[i].gj, f.provenance[i].ring});
            annuli.push_back(std::move(a));
        }
        ranges["annuli"] = std::move(annuli);
        j["params"] = detail::echo_to_json(f.echo);
        j["ranges"] = std::move(ranges);
    } else {
        throw io_error("instance holds no family");
    }
    if (inst.points) {
        nlohmann::json pts;
        pts["seed"] = inst.points->seed;
        pts["square"] = detail::rect_to_json(inst.points->square);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : inst.points->points) arr.push_back(nlohmann::json::array({p.x, p.y}));
        pts["pts"] = std::move(arr);
        j["points"] = std::move(pts);
    }
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema").get<std::string>() != kInstanceSchema)
            throw io_error("unsupported instance schema");
        Instance inst;
        inst.kind = j.at("kind").get<std::string>();
        inst.seed = j.at("seed").get<std::uint64_t>();
        const auto& ranges = j.at("ranges");
        const std::string type = ranges.at("type").get<std::string>();
        const double width = ranges.at("width").get<double>();
        if (type == "slabs") {
            SlabFamily f;
            f.width = width;
            f.square = detail::rect_from_json(ranges.at("square"));
            f.instance_n = ranges.at("instance_n").get<std::int64_t>();
            f.coverage = ranges.at("coverage").get<std::int64_t>();
            f.echo = detail::echo_from_json(j.at("params"));
            for (const auto& s : ranges.at("slabs")) {
                f.slabs.emplace_back(UniPoly(s.at("coeffs").get<std::vector<double>>()), width);
                SlabProvenance pv;
                pv.j = s.at("j").get<std::vector<std::int64_t>>();
                pv.k = s.at("k").get<std::int64_t>();
                f.provenance.push_back(std::move(pv));
            }
            inst.slabs = std::move(f);
        } else if (type == "annuli") {
            AnnulusFamily f;
            f.width = width;
            f.query_square = detail::rect_from_json(ranges.at("square"));
            f.cell_side = ranges.at("cell_side").get<double>();
            f.grid_side = ranges.at("grid_side").get<std::int64_t>();
            f.instance_n = ranges.at("instance_n").get<std::int64_t>();
            f.coverage = ranges.at("coverage").get<std::int64_t>();
            f.echo = detail::echo_from_json(j.at("params"));
            for (const auto& a : ranges.at("annuli")) {
                const auto& c = a.at("c");
                f.annuli.emplace_back(Point2{c[0].get<double>(), c[1].get<double>()},
                                      a.at("r").get<double>(), width);
                const auto& g = a.at("grid");
                f.provenance.push_back(AnnulusProvenance{g[0].get<std::int32_t>(),
                                                         g[1].get<std::int32_t>(),
                                                         g[2].get<std::int32_t>()});
            }
            inst.annuli = std::move(f);
        } else {
            throw io_error("unknown range type '" + type + "'");
        }
        if (j.contains("points")) {
            const auto& pj = j.at("points");
            PointSet ps;
            ps.seed = pj.at("seed").get<std::uint64_t>();
            ps.square = detail::rect_from_json(pj.at("square"));
            for (const auto& p : pj.at("pts")) {
                const Point2 pt{p[0].get<double>(), p[1].get<double>()};
                if (!ps.square.contains(pt))
                    throw io_error("point set violates its enclosing square");
                ps.points.push_back(pt);
            }
            inst.points = std::move(ps);
        }
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed instance file: ") + e.what());
    }
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw io_error("write failed for '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_instance(const std::string& path, const Instance& inst) {
    write_text_file(path, dump_json(instance_to_json(inst)));
}

inline Instance read_instance(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("cannot parse '") + path + "': " + e.what());
    }
    return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// report payload serialization
// ---------------------------------------------------------------------------

inline nlohmann::json bound_params_to_json(const BoundParams& bp) {
    return nlohmann::json{{"alpha", bp.alpha}, {"c", bp.c}, {"beta", bp.beta}};
}

inline nlohmann::json report_to_json(const ChazelleReport& r) {
    nlohmann::json j;
    j["m"] = r.m;
    j["qn"] = r.qn;
    j["min_output"] = r.min_output;
    j["cond1_violations"] = r.cond1_violations;
    j["violating_queries"] = r.violating_queries;
    j["max_pair_intersection"] = r.max_pair_intersection;
    j["sampled_alpha_max"] = r.sampled_alpha_max;
    j["pairs_checked"] = r.pairs_checked;
    j["tuples_checked"] = r.tuples_checked;
    j["params"] = bound_params_to_json(r.params);
    j["implied_bound"] = nlohmann::json{{"value", r.implied_bound}, {"formula", "thm2.1:S"}};
    return j;
}

inline nlohmann::json report_to_json(const AfshaniReport& r) {
    nlohmann::json j;
    j["ranges"] = r.ranges;
    j["min_coverage"] = r.min_coverage;
    j["max_pair_area"] = r.max_pair_area;
    j["probes"] = r.probes;
    j["pairs_checked"] = r.pairs_checked;
    j["params"] = bound_params_to_json(r.params);
    j["implied_bound"] = nlohmann::json{{"value", r.implied_bound}, {"formula", "thm2.2:S"}};
    return j;
}

inline nlohmann::json report_to_json(const DerandReport& r) {
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["failure_rate"] = r.failure_rate;
    j["threshold"] = nlohmann::json{
        {"value", r.threshold},
        {"formula", r.experiment == "derand-int" ? "lem2.3:threshold" : "lem2.4:t"}};
    j["precondition_ok"] = r.precondition_ok;
    j["offending_range"] = r.offending_range;
    j["details"] = r.details;
    return j;
}

inline nlohmann::json report_to_json(const Lemma42Report& r) {
    nlohmann::json j;
    j["ell"] = nlohmann::json{{"value", r.ell}, {"formula", "lem4.2:ell"}};
    j["subsets"] = r.subsets;
    j["worst_min_pair_area"] = r.worst_min_pair_area;
    j["worst_uniform"] = r.worst_uniform;
    j["worst_adversarial"] = r.worst_adversarial;
    j["bound"] = nlohmann::json{{"value", r.bound}, {"formula", "lem4.2:bound"}};
    j["ratio"] = r.ratio;
    return j;
}

// Wraps a report payload with the schema header and the digest of the
// instance file bytes it was computed from.
inline nlohmann::json make_report_file(const std::string& report_kind,
                                       const std::string& instance_bytes,
                                       nlohmann::json payload, nlohmann::json params,
                                       nlohmann::json implied = nlohmann::json::array()) {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["kind"] = report_kind;
    j["instance_digest"] = digest_hex(instance_bytes);
    j["params"] = std::move(params);
    j["report"] = std::move(payload);
    j["implied_bounds"] = std::move(implied);
    return j;
}

}  // namespace hardrange
