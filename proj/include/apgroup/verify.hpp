#pragma once

// Standalone re-checking of reports produced by commands::run. Certificates
// are checked by their defining containments, witnesses by re-evaluating the
// stored commutator chains, and plain statistics by recomputation. The first
// failing check is returned as a message; nothing means the report passed.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apgroup/commands.hpp"
#include "apgroup/decompose.hpp"
#include "apgroup/errors.hpp"
#include "apgroup/growth.hpp"
#include "apgroup/jordan.hpp"
#include "apgroup/json_io.hpp"
#include "apgroup/nilpotency.hpp"

namespace apgroup::verify {

using io::json;
using Failure = std::optional<std::string>;

namespace detail {

inline bool all_in(const std::vector<Matrix>& chain, const GroupSet& gens) {
    for (const auto& m : chain) {
        if (!gens.contains(m)) return false;
    }
    return true;
}

inline Failure same(const json& stored, const json& recomputed, const std::string& what) {
    if (stored == recomputed) return std::nullopt;
    return what + " does not match recomputation";
}

}  // namespace detail

/// Checks a nilpotency verdict against the generators it was computed from.
inline Failure check_verdict(const GroupSet& gens, const json& stored, std::size_t cutoff, std::size_t budget) {
    const NilpotencyVerdict v = io::verdict_from_json(stored);
    if (v.cutoff != cutoff) return "verdict cutoff does not match the configuration";
    if (!v.within_cutoff) {
        if (v.witness.size() != cutoff + 1) return "witness chain has the wrong length";
        if (!detail::all_in(v.witness, gens)) return "witness chain uses a non-generator";
        if (nested_commutator(v.witness).is_identity()) return "commutator re-check: witness chain evaluates to the identity";
        return std::nullopt;
    }
    if (v.step == 0 || v.step > cutoff) return "verdict step is out of range";
    if (!detail::all_in(v.nonvanishing_chain, gens)) return "nonvanishing chain uses a non-generator";
    if (v.nonvanishing_chain.empty()) {
        for (const auto& g : gens) {
            if (!g.is_identity()) return "commutator re-check: empty chain but a generator is not the identity";
        }
        if (v.step != 1) return "commutator re-check: trivial generators have step 1";
        return std::nullopt;
    }
    if (v.nonvanishing_chain.size() != v.step) return "commutator re-check: nonvanishing chain length differs from step";
    const Matrix value = v.step == 1 ? v.nonvanishing_chain.front() : nested_commutator(v.nonvanishing_chain);
    if (value.is_identity()) return "commutator re-check: stored chain of length step evaluates to the identity";
    // Every (step+1)-fold chain must vanish.
    const NilpotencyVerdict again = nilpotency_step(gens, v.step, budget);
    if (!again.within_cutoff || again.step != v.step) {
        return "commutator re-check: some (step+1)-fold commutator is not the identity";
    }
    return std::nullopt;
}

inline Failure check_approximate(const GroupSet& a, const GroupSet& square, const json& cert) {
    const GroupSet x = io::set_from_json(cert.at("X"));
    if (!a.is_symmetric()) return "approximate group: set is not symmetric";
    if (!a.contains_identity()) return "approximate group: set lacks the identity";
    if (auto f = verify_approximate_group(a, square, x)) return "approximate group: " + *f;
    if (cert.at("K_witness").get<std::size_t>() != x.size()) return "approximate group: K_witness differs from |X|";
    if (cert.at("square_size").get<std::size_t>() != square.size()) return "approximate group: |A^2| differs";
    return std::nullopt;
}

inline Failure check_control(const GroupSet& a, const GroupSet& b, const json& cert) {
    const ControlCertificate c = io::control_from_json(cert);
    if (auto f = verify_control(a, b, c)) return "control: " + *f;
    if (c.a_size != a.size() || c.b_size != b.size()) return "control: recorded set sizes differ";
    return std::nullopt;
}

inline Failure check_cover(const GroupSet& a, const GroupSet& b, const json& r, GrowthCap cap) {
    const GroupSet x1 = io::set_from_json(r.at("X1"));
    const GroupSet x2 = io::set_from_json(r.at("X2"));
    if (!x1.is_subset_of(a) || !x2.is_subset_of(a)) return "cover: translates are not taken from A";
    auto disjoint = [&](const GroupSet& xs, bool left) {
        SetBuilder seen(a.dim(), cap, "verify(cover)");
        for (const auto& x : xs) {
            for (const auto& y : b) {
                if (!seen.insert(left ? y * x : x * y)) return false;
            }
        }
        return true;
    };
    if (!disjoint(x1, true)) return "cover: translates B*x for x in X1 overlap";
    if (!disjoint(x2, false)) return "cover: translates x*B for x in X2 overlap";
    const GroupSet b2 = product_set(b, b, cap, "verify(B^2)");
    for (const auto& m : a) {
        bool left = false, right = false;
        for (const auto& x : x1) left = left || b2.contains(m * x.inverse());
        for (const auto& x : x2) right = right || b2.contains(x.inverse() * m);
        if (!left) return "cover: element " + m.to_string() + " is not in B^2*X1";
        if (!right) return "cover: element " + m.to_string() + " is not in X2*B^2";
    }
    const std::size_t ba = product_set(b, a, cap, "verify(B*A)").size();
    const std::size_t ab = product_set(a, b, cap, "verify(A*B)").size();
    if (r.at("ba_size").get<std::size_t>() != ba || r.at("ab_size").get<std::size_t>() != ab) {
        return "cover: recorded product sizes differ";
    }
    if (x1.size() * b.size() > ba) return "cover: |X1| exceeds |B*A|/|B|";
    if (x2.size() * b.size() > ab) return "cover: |X2| exceeds |A*B|/|B|";
    return std::nullopt;
}

inline Failure check_decomposition(const GroupSet& a, const json& r, const EngineConfig& cfg) {
    const GroupSet a_prime = io::set_from_json(r.at("A_prime"));
    const Matrix rep = io::matrix_from_json(r.at("coset_rep"));
    const Matrix locator = io::matrix_from_json(r.at("locator"));
    const GroupSet c = io::set_from_json(r.at("C"));
    if (a_prime.empty()) return "decomposition: A' is empty";
    if (!a_prime.is_subset_of(a)) return "decomposition: A' is not a subset of A";
    if (!a_prime.contains(rep)) return "decomposition: coset representative is not in A'";
    if (a.dim() >= 2) {
        const Matrix probe = corner_make(GaussianRational(1), a.dim());
        for (const auto& m : c) {
            if (!m.is_upper_triangular() || !diag_ratio(m).is_one()) return "decomposition: C has an element of ratio != 1";
            if (m * probe != probe * m) return "decomposition: C does not commute with the corner subgroup";
        }
    }
    std::vector<Matrix> hit;
    for (const auto& m : c) {
        const Matrix p = locator * m;
        if (a.contains(p)) hit.push_back(p);
    }
    if (GroupSet(a.dim(), hit) != a_prime) return "decomposition: A' differs from A intersected with locator*C";
    if (io::rational_from_json(r.at("density")) != size_ratio(a.size(), a_prime.size())) {
        return "decomposition: density differs from |A|/|A'|";
    }
    // Bookkeeping: Σ r(x) = |A||C| and the stored maximum.
    const GroupSet translates = product_set(a, inverse_set(c), cfg.cap, "verify(A*C^-1)");
    std::size_t sum = 0, best = 0;
    for (const auto& x : translates) {
        std::size_t cnt = 0;
        for (const auto& m : c) cnt += a.contains(x * m) ? 1 : 0;
        sum += cnt;
        best = std::max(best, cnt);
    }
    if (sum != a.size() * c.size()) return "decomposition: sum of r(x) differs from |A||C|";
    if (best != a_prime.size()) return "decomposition: A' is not a maximal intersection";
    const json& top = r.at("branch_trace").back();
    if (top.at("r_sum").get<std::size_t>() != sum || top.at("r_max").get<std::size_t>() != best) {
        return "decomposition: recorded r(x) bookkeeping differs";
    }
    const std::size_t cutoff = cfg.nil_cutoff == 0 ? a.dim() : cfg.nil_cutoff;
    const GroupSet shifted = left_translate(rep.inverse(), a_prime);
    if (auto f = check_verdict(shifted, r.at("step_verdict"), cutoff, cfg.chain_budget)) return "decomposition: " + *f;
    if (r.at("step_flag").get<std::string>() != step_flag(io::verdict_from_json(r.at("step_verdict")), a.dim())) {
        return "decomposition: step flag is inconsistent with the verdict";
    }
    if (!r.at("corner_evidence").is_null()) {
        const json& ev = r.at("corner_evidence");
        const auto lambdas = io::scalars_from_json(ev.at("lambdas"));
        const auto ratios = io::scalars_from_json(ev.at("ratios"));
        if (io::to_json(solymosi_statistic(lambdas, lambdas, ratios)) != ev.at("statistic")) {
            return "decomposition: corner evidence statistic does not match its sets";
        }
    }
    return std::nullopt;
}

inline Failure check_assembly(const GroupSet& a, const json& decomposition, const json& r, const EngineConfig& cfg) {
    const GroupSet a_prime = io::set_from_json(decomposition.at("A_prime"));
    const GroupSet s = product_set(inverse_set(a_prime), a_prime, cfg.cap, "verify(S)");
    if (io::set_to_json(s) != r.at("S")) return "assembly: S differs from A'^-1 A'";
    auto [sixth, twelfth] = sixth_and_twelfth_powers(s, cfg.cap);
    if (r.at("B_out_size").get<std::size_t>() != sixth.size() ||
        r.at("B_out_digest").get<std::string>() != io::set_digest(sixth)) {
        return "assembly: B_out differs from S^6";
    }
    if (auto f = check_approximate(sixth, twelfth, r.at("approximate_group"))) return "assembly: " + *f;
    if (auto f = check_control(a, sixth, r.at("control"))) return "assembly: " + *f;
    const NilpotencyVerdict dv = io::verdict_from_json(decomposition.at("step_verdict"));
    if (auto f = check_verdict(s, r.at("S_verdict"), dv.cutoff, cfg.chain_budget)) return "assembly: S " + *f;
    const NilpotencyVerdict sv = io::verdict_from_json(r.at("S_verdict"));
    const bool agrees = sv.within_cutoff == dv.within_cutoff && (!sv.within_cutoff || sv.step == dv.step);
    if (r.at("step_agrees").get<bool>() != agrees) return "assembly: step agreement flag is wrong";
    return std::nullopt;
}

inline Failure check_reduce(const GroupSet& a, const json& r, const commands::RunOptions& o) {
    const CosetLabeler lab = CosetLabeler::by_name(o.labeler);
    const GroupSet a_prime = io::set_from_json(r.at("A_prime"));
    const std::string chosen = r.at("chosen_label").get<std::string>();
    if (!a_prime.is_subset_of(a)) return "reduce: A' is not a subset of A";
    std::size_t largest = 0, chosen_count = 0;
    std::map<std::string, std::size_t> counts;
    for (const auto& m : a) ++counts[lab.label(m)];
    for (const auto& [l, k] : counts) largest = std::max(largest, k);
    for (const auto& m : a) chosen_count += lab.label(m) == chosen ? 1 : 0;
    for (const auto& m : a_prime) {
        if (lab.label(m) != chosen) return "reduce: A' mixes labels";
    }
    if (a_prime.size() != chosen_count) return "reduce: A' is not the whole chosen class";
    if (a_prime.size() != largest) return "reduce: chosen class is not of maximal size";
    if (io::rational_from_json(r.at("class_fraction")) != size_ratio(a_prime.size(), a.size())) {
        return "reduce: class fraction is wrong";
    }
    const GroupSet b = product_set(inverse_set(a_prime), a_prime, o.engine.cap, "verify(B)");
    const GroupSet s = pm_power_set(b, 6, o.engine.cap);
    if (r.at("S_digest").get<std::string>() != io::set_digest(s) || r.at("S_size").get<std::size_t>() != s.size()) {
        return "reduce: S differs from B^(+-6)";
    }
    const std::string id_label = lab.label(Matrix::identity(a.dim()));
    bool inside = true;
    for (const auto& m : s) inside = inside && lab.label(m) == id_label;
    if (r.at("S_in_subgroup").get<bool>() != inside) return "reduce: subgroup flag is wrong";
    return check_control(a, s, r.at("certificate"));
}

/// Verifies a full report {"manifest", "inputs", "result"}.
inline Failure verify_report(const json& report) {
    try {
        for (const char* key : {"manifest", "inputs", "result"}) {
            if (!report.contains(key)) return std::string("report is missing '") + key + "'";
        }
        const json& man = report.at("manifest");
        const json& inputs = report.at("inputs");
        const json& r = report.at("result");
        const std::string command = man.at("command").get<std::string>();
        if (man.at("input_digest").get<std::string>() != io::digest(inputs)) return "input digest does not match the inputs";
        const commands::RunOptions o = commands::options_from_json(man.at("config"), man.at("seed").get<std::uint64_t>());
        const GrowthCap cap = o.engine.cap;
        auto set = [&](const char* k) { return io::set_from_json(inputs.at(k)); };

        if (command == "certify") {
            const GroupSet a = set("A");
            if (!a.is_symmetric() || !a.contains_identity()) return "certify: input is not symmetric with identity";
            return check_approximate(a, product_set(a, a, cap, "verify(A^2)"), r);
        }
        if (command == "control") return check_control(set("A"), set("B"), r);
        if (command == "cover") return check_cover(set("A"), set("B"), r, cap);
        if (command == "nilstep") {
            const GroupSet g = set("generators");
            return check_verdict(g, r, o.engine.nil_cutoff == 0 ? g.dim() : o.engine.nil_cutoff, o.engine.chain_budget);
        }
        if (command == "decompose") return check_decomposition(set("A"), r, o.engine);
        if (command == "assemble") {
            const GroupSet a = set("A");
            if (auto f = check_decomposition(a, r.at("decomposition"), o.engine)) return f;
            return check_assembly(a, r.at("decomposition"), r.at("assembly"), o.engine);
        }
        if (command == "reduce") return check_reduce(set("A"), r, o);
        if (command == "jordan") {
            const Matrix g = io::matrix_from_json(inputs.at("g"));
            const JordanPair jp{io::matrix_from_json(r.at("semisimple")), io::matrix_from_json(r.at("unipotent"))};
            const JordanCheck c = check_jordan(g, jp);
            if (!c.ok()) return "jordan: " + c.failure;
            return detail::same(r, io::to_json(jp, c), "jordan checks");
        }
        // Statistics: recompute and compare.
        const json fresh = commands::run(command, inputs, o);
        return detail::same(r, fresh.at("result"), command + " result");
    } catch (const json::exception& e) {
        return std::string("malformed report: ") + e.what();
    } catch (const ParseError& e) {
        return std::string("malformed report: ") + e.what();
    } catch (const PreconditionError& e) {
        return std::string("report violates a precondition: ") + e.what();
    }
}

}  // namespace apgroup::verify
