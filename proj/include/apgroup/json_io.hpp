#pragma once

// JSON wire formats. Scalars travel as decimal strings so nothing is ever
// rounded:
//   GaussianRational  ["re_num", "re_den", "im_num", "im_den"]
//   Rational field    {"num": "...", "den": "..."}
//   Matrix            {"n": 3, "rows": [[q, q, q], ...]}
//   GroupSet          {"n": 3, "elements": [Matrix, ...]}   (duplicates tolerated)
// Objects use sorted keys, so dumps are byte-stable.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apgroup/decompose.hpp"
#include "apgroup/errors.hpp"
#include "apgroup/gaussian.hpp"
#include "apgroup/group_set.hpp"
#include "apgroup/growth.hpp"
#include "apgroup/jordan.hpp"
#include "apgroup/matrix.hpp"
#include "apgroup/nilpotency.hpp"
#include "apgroup/rational.hpp"

namespace apgroup::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars, matrices, sets

inline json rational_to_json(const Rational& q) {
    return json{{"num", q.numerator_string()}, {"den", q.denominator_string()}};
}

namespace detail {

inline std::string integer_text(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    throw ParseError(std::string("expected an integer or integer string for ") + what);
}

}  // namespace detail

inline Rational rational_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw ParseError("rational must be {num, den}");
    return Rational::from_strings(detail::integer_text(j.at("num"), "num"), detail::integer_text(j.at("den"), "den"));
}

inline json scalar_to_json(const GaussianRational& v) {
    return json::array({v.re().numerator_string(), v.re().denominator_string(), v.im().numerator_string(),
                        v.im().denominator_string()});
}

/// Accepts the quadruple form or a literal string such as "1/2-3i".
inline GaussianRational scalar_from_json(const json& j) {
    if (j.is_string()) return parse_scalar_literal(j.get<std::string>());
    if (j.is_number_integer()) return GaussianRational(j.get<std::int64_t>());
    if (!j.is_array() || j.size() != 4) throw ParseError("scalar must be a 4-element array of integer strings");
    return gq_canonicalize(detail::integer_text(j[0], "re_num"), detail::integer_text(j[1], "re_den"),
                           detail::integer_text(j[2], "im_num"), detail::integer_text(j[3], "im_den"));
}

inline json scalars_to_json(const std::vector<GaussianRational>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(scalar_to_json(v));
    return a;
}

inline std::vector<GaussianRational> scalars_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("scalar set must be an array");
    std::vector<GaussianRational> out;
    for (const auto& e : j) out.push_back(scalar_from_json(e));
    return out;
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.dim()}, {"rows", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows")) throw ParseError("matrix must be {n, rows}");
    if (!j.at("n").is_number_unsigned()) throw ParseError("matrix n must be a positive integer");
    const auto n = j.at("n").get<std::size_t>();
    const json& rows = j.at("rows");
    if (n == 0 || !rows.is_array() || rows.size() != n) throw ParseError("matrix rows do not match n");
    std::vector<std::vector<GaussianRational>> grid;
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != n) throw ParseError("matrix rows do not match n");
        grid.push_back(scalars_from_json(r));
    }
    try {
        return Matrix::from_rows(grid);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid matrix: ") + e.what());
    }
}

inline json matrices_to_json(const std::vector<Matrix>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(matrix_to_json(m));
    return a;
}

inline std::vector<Matrix> matrices_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of matrices");
    std::vector<Matrix> out;
    for (const auto& e : j) out.push_back(matrix_from_json(e));
    return out;
}

inline json set_to_json(const GroupSet& s) {
    return json{{"n", s.dim()}, {"elements", matrices_to_json(s.elements())}};
}

inline GroupSet set_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("elements")) throw ParseError("set must be {n, elements}");
    if (!j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() == 0) {
        throw ParseError("set n must be a positive integer");
    }
    const auto n = j.at("n").get<std::size_t>();
    auto elems = matrices_from_json(j.at("elements"));
    for (const auto& m : elems) {
        if (m.dim() != n) throw ParseError("set element has the wrong dimension");
    }
    return GroupSet(n, std::move(elems));
}

inline json sizes_to_json(const std::vector<std::size_t>& v) { return json(v); }

// ---------------------------------------------------------------------------
// Files and digests

inline json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_text(text, path);
}

/// FNV-1a 64 of the compact canonical dump, as 16 hex digits.
inline std::string digest(const json& j) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Digest of a set's canonical encoding (sorted, deduplicated).
inline std::string set_digest(const GroupSet& s) { return digest(set_to_json(s)); }

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const GrowthReport& r) {
    return json{{"sizes", r.sizes}, {"doubling", rational_to_json(r.doubling)}, {"tripling", rational_to_json(r.tripling)}};
}

inline json to_json(const ApproximateGroupCertificate& c) {
    return json{{"K_witness", c.k_witness},
                {"X", set_to_json(c.x)},
                {"square_size", c.square_size},
                {"checks",
                 {{"symmetric", c.symmetric},
                  {"has_identity", c.has_identity},
                  {"x_in_square", c.x_in_square},
                  {"x_symmetric", c.x_symmetric},
                  {"square_covered", c.square_covered}}}};
}

inline json to_json(const ControlCertificate& c) {
    return json{{"K_witness", rational_to_json(c.k_witness)},
                {"X", set_to_json(c.x)},
                {"a_size", c.a_size},
                {"b_size", c.b_size},
                {"size_check", c.size_check}};
}

inline ControlCertificate control_from_json(const json& j) {
    ControlCertificate c;
    c.k_witness = rational_from_json(j.at("K_witness"));
    c.x = set_from_json(j.at("X"));
    c.a_size = j.at("a_size").get<std::size_t>();
    c.b_size = j.at("b_size").get<std::size_t>();
    c.size_check = j.at("size_check").get<bool>();
    return c;
}

inline json to_json(const RuzsaCover& r) {
    return json{{"X1", set_to_json(r.x1)},
                {"X2", set_to_json(r.x2)},
                {"a_size", r.a_size},
                {"b_size", r.b_size},
                {"ba_size", r.ba_size},
                {"ab_size", r.ab_size},
                {"b2_size", r.b2_size},
                {"K", rational_to_json(r.k)},
                {"b2_hypothesis", r.b2_hypothesis},
                {"left_contained", r.left_contained},
                {"right_contained", r.right_contained},
                {"left_bound", r.left_bound},
                {"right_bound", r.right_bound}};
}

inline json to_json(const FiberReport& r) {
    return json{{"hom", r.hom},
                {"set_size", r.set_size},
                {"square_size", r.square_size},
                {"fiber_count", r.fiber_count},
                {"max_fiber", r.max_fiber},
                {"min_fiber", r.min_fiber},
                {"fiber_sizes", r.fiber_sizes},
                {"ratio", rational_to_json(r.ratio)},
                {"K", rational_to_json(r.k)},
                {"inequality_holds", r.inequality_holds},
                {"count_bound_holds", r.count_bound_holds}};
}

inline json to_json(const HomTriplingReport& r) {
    return json{{"hom", r.hom},
                {"set_size", r.set_size},
                {"cube_size", r.cube_size},
                {"image_size", r.image_size},
                {"image_cube_size", r.image_cube_size},
                {"tripling", rational_to_json(r.tripling)},
                {"image_tripling", rational_to_json(r.image_tripling)},
                {"identity_holds", r.identity_holds},
                {"log_ratio", r.log_ratio}};
}

inline json to_json(const IntersectionGrowthReport& r) {
    json ratios = json::array();
    for (const auto& q : r.ratios) ratios.push_back(rational_to_json(q));
    return json{{"subgroup", r.subgroup},
                {"max_power", r.max_power},
                {"power_sizes", r.power_sizes},
                {"intersection_sizes", r.intersection_sizes},
                {"ratios", std::move(ratios)},
                {"monotone", r.monotone}};
}

inline json to_json(const SolymosiStatistic& s) {
    return json{{"u_size", s.u_size},
                {"v_size", s.v_size},
                {"w_size", s.w_size},
                {"sum_size", s.sum_size},
                {"product_size", s.product_size},
                {"lhs", std::to_string(s.lhs)},
                {"squared_ratio", rational_to_json(s.squared_ratio)}};
}

inline json to_json(const NilpotencyVerdict& v) {
    json j{{"within_cutoff", v.within_cutoff},
           {"cutoff", v.cutoff},
           {"depth_checked", v.depth_checked},
           {"nonvanishing_chain", matrices_to_json(v.nonvanishing_chain)},
           {"witness", matrices_to_json(v.witness)},
           {"chains_evaluated", v.chains_evaluated}};
    j["step"] = v.within_cutoff ? json(v.step) : json("exceeds_cutoff");
    return j;
}

inline NilpotencyVerdict verdict_from_json(const json& j) {
    NilpotencyVerdict v;
    v.within_cutoff = j.at("within_cutoff").get<bool>();
    v.step = v.within_cutoff ? j.at("step").get<std::size_t>() : 0;
    v.cutoff = j.at("cutoff").get<std::size_t>();
    v.depth_checked = j.at("depth_checked").get<std::size_t>();
    v.nonvanishing_chain = matrices_from_json(j.at("nonvanishing_chain"));
    v.witness = matrices_from_json(j.at("witness"));
    v.chains_evaluated = j.at("chains_evaluated").get<std::size_t>();
    return v;
}

inline json to_json(const FiniteIndexReport& r) {
    json classes = json::array();
    for (const auto& [label, size] : r.classes) classes.push_back(json{{"label", label}, {"size", size}});
    return json{{"labeler", r.labeler},
                {"identity_label", r.identity_label},
                {"classes", std::move(classes)},
                {"chosen_label", r.chosen_label},
                {"A_prime", set_to_json(r.a_prime)},
                {"B_size", r.b.size()},
                {"S_size", r.s.size()},
                {"S_digest", set_digest(r.s)},
                {"S_in_subgroup", r.s_in_subgroup},
                {"class_fraction", rational_to_json(r.class_fraction)},
                {"certificate", to_json(r.certificate)}};
}

inline json to_json(const LevelTrace& t) {
    return json{{"path", t.path},
                {"dim", t.dim},
                {"input_size", t.input_size},
                {"branch", t.branch},
                {"pi_subset_size", t.pi_subset_size},
                {"a1_size", t.a1_size},
                {"pi_prime_subset_size", t.pi_prime_subset_size},
                {"a2_size", t.a2_size},
                {"a1_fraction", rational_to_json(t.a1_fraction)},
                {"a2_fraction", rational_to_json(t.a2_fraction)},
                {"pi_image_retained", t.pi_image_retained},
                {"ratio_classes", t.ratio_classes},
                {"tripling", rational_to_json(t.tripling)},
                {"gamma", rational_to_json(t.gamma)},
                {"chosen_ratio", scalar_to_json(t.chosen_ratio)},
                {"a3_size", t.a3_size},
                {"degenerate", t.degenerate},
                {"c_size", t.c_size},
                {"translate_count", t.translate_count},
                {"r_sum", t.r_sum},
                {"r_max", t.r_max},
                {"r_identity", t.r_identity},
                {"r_bound", t.r_bound},
                {"output_size", t.output_size}};
}

inline json to_json(const CornerEvidence& e) {
    return json{{"power", e.power},
                {"b_size", e.b_size},
                {"lambdas", scalars_to_json(e.lambdas)},
                {"ratios", scalars_to_json(e.ratios)},
                {"statistic", to_json(e.statistic)}};
}

inline json to_json(const DecompositionReport& r) {
    json trace = json::array();
    for (const auto& t : r.trace) trace.push_back(to_json(t));
    json j{{"dim", r.dim},
           {"input_size", r.input_size},
           {"A_prime", set_to_json(r.a_prime)},
           {"coset_rep", matrix_to_json(r.coset_rep)},
           {"locator", matrix_to_json(r.locator)},
           {"C", set_to_json(r.c)},
           {"density", rational_to_json(r.density)},
           {"step_verdict", to_json(r.step_verdict)},
           {"step_flag", r.step_flag},
           {"branch_trace", std::move(trace)}};
    j["corner_evidence"] = r.corner ? to_json(*r.corner) : json(nullptr);
    return j;
}

inline json to_json(const AssemblyReport& a) {
    return json{{"S", set_to_json(a.s)},
                {"B_out_size", a.b_out.size()},
                {"B_out_digest", set_digest(a.b_out)},
                {"square_size", a.square_size},
                {"approximate_group", to_json(a.approximate)},
                {"control", to_json(a.control)},
                {"S_verdict", to_json(a.s_verdict)},
                {"step_agrees", a.step_agrees}};
}

inline json to_json(const JordanPair& jp, const JordanCheck& c) {
    return json{{"semisimple", matrix_to_json(jp.semisimple)},
                {"unipotent", matrix_to_json(jp.unipotent)},
                {"checks",
                 {{"reassembles", c.reassembles},
                  {"commute", c.commute},
                  {"unipotent", c.unipotent},
                  {"squarefree", c.squarefree}}}};
}

inline json to_json(const EngineConfig& c) {
    return json{{"gamma", rational_to_json(c.gamma)},
                {"nil_cutoff", c.nil_cutoff},
                {"cap", c.cap.max_elements},
                {"verify_corner", c.verify_corner},
                {"corner_power", c.corner_power},
                {"corner_cap", c.corner_cap.max_elements},
                {"chain_budget", c.chain_budget}};
}

inline EngineConfig engine_config_from_json(const json& j) {
    EngineConfig c;
    c.gamma = rational_from_json(j.at("gamma"));
    c.nil_cutoff = j.at("nil_cutoff").get<std::size_t>();
    c.cap.max_elements = j.at("cap").get<std::size_t>();
    c.verify_corner = j.at("verify_corner").get<bool>();
    c.corner_power = j.at("corner_power").get<std::size_t>();
    c.corner_cap.max_elements = j.at("corner_cap").get<std::size_t>();
    c.chain_budget = j.at("chain_budget").get<std::size_t>();
    return c;
}

/// Pretty, sorted-key dump with a trailing newline.
inline std::string render(const json& j) { return j.dump(2) + "\n"; }

}  // namespace apgroup::io
