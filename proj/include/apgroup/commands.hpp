#pragma once

// Report-producing entry points behind the command-line tool. Every report is
// a JSON object {"manifest", "inputs", "result"}; the manifest records the
// command, a digest of the inputs, the full option set and the seed, so a
// report can be re-verified on its own.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "apgroup/decompose.hpp"
#include "apgroup/errors.hpp"
#include "apgroup/families.hpp"
#include "apgroup/group_set.hpp"
#include "apgroup/growth.hpp"
#include "apgroup/jordan.hpp"
#include "apgroup/json_io.hpp"
#include "apgroup/nilpotency.hpp"

namespace apgroup::commands {

using io::json;

struct RunOptions {
    EngineConfig engine;
    std::uint64_t seed = 0;
    std::size_t max_power = 0;  // 0: command default (stats 3, intersect 4)
    std::string hom = "pi";
    std::string subgroup = "corner";
    std::size_t radius = 1;
    std::string labeler = "is-diagonal";
};

inline json options_to_json(const RunOptions& o) {
    json c = io::to_json(o.engine);
    c["max_power"] = o.max_power;
    c["hom"] = o.hom;
    c["subgroup"] = o.subgroup;
    c["radius"] = o.radius;
    c["labeler"] = o.labeler;
    return c;
}

inline RunOptions options_from_json(const json& config, std::uint64_t seed) {
    RunOptions o;
    o.engine = io::engine_config_from_json(config);
    o.seed = seed;
    o.max_power = config.at("max_power").get<std::size_t>();
    o.hom = config.at("hom").get<std::string>();
    o.subgroup = config.at("subgroup").get<std::string>();
    o.radius = config.at("radius").get<std::size_t>();
    o.labeler = config.at("labeler").get<std::string>();
    return o;
}

inline json manifest(const std::string& command, const json& inputs, const RunOptions& o) {
    return json{{"command", command},
                {"input_digest", io::digest(inputs)},
                {"config", options_to_json(o)},
                {"seed", o.seed}};
}

inline const std::vector<std::string>& run_commands() {
    static const std::vector<std::string> names{"stats",  "certify", "control", "cover",  "fibers",
                                                "homtripling", "intersect", "sumproduct", "nilstep", "ball",
                                                "reduce", "decompose", "assemble", "jordan"};
    return names;
}

/// Input slots each command reads.
inline std::vector<std::string> input_slots(const std::string& command) {
    if (command == "control" || command == "cover") return {"A", "B"};
    if (command == "sumproduct") return {"U", "V", "W"};
    if (command == "nilstep" || command == "ball") return {"generators"};
    if (command == "jordan") return {"g"};
    for (const auto& c : run_commands()) {
        if (c == command) return {"A"};
    }
    throw PreconditionError("unknown command '" + command + "'");
}

namespace detail {

inline GroupSet set_input(const json& inputs, const char* key) {
    if (!inputs.contains(key)) throw ParseError(std::string("missing input '") + key + "'");
    return io::set_from_json(inputs.at(key));
}

inline std::size_t nil_cutoff(const RunOptions& o, std::size_t n) {
    return o.engine.nil_cutoff == 0 ? n : o.engine.nil_cutoff;
}

}  // namespace detail

/// Runs one command on canonicalised inputs and returns the full report.
inline json run(const std::string& command, const json& inputs, const RunOptions& o) {
    const GrowthCap cap = o.engine.cap;
    json result;
    if (command == "stats") {
        const GroupSet a = detail::set_input(inputs, "A");
        result = io::to_json(growth_stats(a, o.max_power == 0 ? 3 : o.max_power, cap));
    } else if (command == "certify") {
        result = io::to_json(certify_approximate_group(detail::set_input(inputs, "A"), cap));
    } else if (command == "control") {
        result = io::to_json(certify_control(detail::set_input(inputs, "A"), detail::set_input(inputs, "B"), cap));
    } else if (command == "cover") {
        result = io::to_json(ruzsa_cover(detail::set_input(inputs, "A"), detail::set_input(inputs, "B"), cap));
    } else if (command == "fibers") {
        result = io::to_json(fiber_stats(detail::set_input(inputs, "A"), Homomorphism::by_name(o.hom), cap));
    } else if (command == "homtripling") {
        result = io::to_json(hom_tripling_report(detail::set_input(inputs, "A"), Homomorphism::by_name(o.hom), cap));
    } else if (command == "intersect") {
        result = io::to_json(intersection_growth(detail::set_input(inputs, "A"), SubgroupPredicate::by_name(o.subgroup),
                                                 o.max_power == 0 ? 4 : o.max_power, cap));
    } else if (command == "sumproduct") {
        for (const char* k : {"U", "V", "W"}) {
            if (!inputs.contains(k)) throw ParseError(std::string("missing input '") + k + "'");
        }
        result = io::to_json(solymosi_statistic(io::scalars_from_json(inputs.at("U")), io::scalars_from_json(inputs.at("V")),
                                                io::scalars_from_json(inputs.at("W"))));
    } else if (command == "nilstep") {
        const GroupSet g = detail::set_input(inputs, "generators");
        result = io::to_json(nilpotency_step(g, detail::nil_cutoff(o, g.dim()), o.engine.chain_budget));
    } else if (command == "ball") {
        const GroupSet ball = group_ball(detail::set_input(inputs, "generators"), o.radius, cap);
        result = json{{"radius", o.radius}, {"size", ball.size()}, {"ball", io::set_to_json(ball)}};
    } else if (command == "reduce") {
        result = io::to_json(finite_index_reduce(detail::set_input(inputs, "A"), CosetLabeler::by_name(o.labeler), cap));
    } else if (command == "decompose") {
        result = io::to_json(decompose(detail::set_input(inputs, "A"), o.engine));
    } else if (command == "assemble") {
        const GroupSet a = detail::set_input(inputs, "A");
        const DecompositionReport rep = decompose(a, o.engine);
        const AssemblyReport as = assemble_control(a, rep, cap, o.engine.chain_budget);
        result = json{{"decomposition", io::to_json(rep)}, {"assembly", io::to_json(as)}};
    } else if (command == "jordan") {
        if (!inputs.contains("g")) throw ParseError("missing input 'g'");
        const Matrix g = io::matrix_from_json(inputs.at("g"));
        const JordanPair jp = jordan_split(g);
        result = io::to_json(jp, check_jordan(g, jp));
    } else {
        throw PreconditionError("unknown command '" + command + "'");
    }
    return json{{"manifest", manifest(command, inputs, o)}, {"inputs", inputs}, {"result", std::move(result)}};
}

/// Re-encodes inputs canonically (sets sorted and deduplicated), so the digest
/// depends only on their mathematical content.
inline json canonical_inputs(const std::string& command, const json& raw) {
    json out = json::object();
    for (const auto& slot : input_slots(command)) {
        if (!raw.contains(slot)) throw ParseError("missing input '" + slot + "'");
        if (command == "sumproduct") {
            out[slot] = io::scalars_to_json(make_scalar_set(io::scalars_from_json(raw.at(slot))));
        } else if (command == "jordan") {
            out[slot] = io::matrix_to_json(io::matrix_from_json(raw.at(slot)));
        } else {
            out[slot] = io::set_to_json(io::set_from_json(raw.at(slot)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generators

struct GenParams {
    std::size_t radius = 1;
    std::size_t n = 3;
    std::string base = "2";
    std::size_t length = 3;
    std::size_t order = 4;
    std::size_t size = 10;
    std::vector<std::size_t> lengths;
    std::vector<Matrix> generators;
    std::vector<GaussianRational> pool;  // empty: default pool
};

inline const std::vector<std::string>& families_list() {
    static const std::vector<std::string> names{"heisenberg-ball", "unitriangular-ball", "diag-progression",
                                                "corner-progression", "dihedral", "torsion-diag",
                                                "ordered-progression", "random-upper-triangular"};
    return names;
}

inline GroupSet generate(const std::string& family, const GenParams& p, std::uint64_t seed, GrowthCap cap = {}) {
    if (family == "heisenberg-ball") return families::heisenberg_ball(p.radius, cap);
    if (family == "unitriangular-ball") return families::unitriangular_ball(p.n, p.radius, cap);
    if (family == "diag-progression") return families::diag_progression(parse_scalar_literal(p.base), p.length);
    if (family == "corner-progression") return families::corner_progression(p.length, p.n);
    if (family == "dihedral") return families::dihedral(p.length);
    if (family == "torsion-diag") return families::torsion_diag(p.order);
    if (family == "ordered-progression") return ordered_progression(p.generators, p.lengths, cap);
    if (family == "random-upper-triangular") {
        return families::random_upper_triangular(p.n, p.size, seed,
                                                 p.pool.empty() ? families::default_entry_pool() : p.pool);
    }
    throw PreconditionError("unknown family '" + family + "'");
}

}  // namespace apgroup::commands
