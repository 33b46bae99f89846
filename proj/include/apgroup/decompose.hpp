#pragma once

// Decomposition of finite subsets of the upper-triangular group.
//
// decompose() recurses through the two corner projections, pulls each
// recursive answer back along its fibres, partitions what is left by the
// ratio x₁₁/x_nn, and then looks for the left translate x·C of a commuting
// difference set C that meets A the most. The result A′ = A ∩ x·C comes with
// a nilpotency verdict for the group generated by x⁻¹·A′ and a per-level
// trace of every choice made. assemble_control() then builds S = A′⁻¹A′,
// B = S⁶ and certifies B both as an approximate group and as controlling A.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "apgroup/errors.hpp"
#include "apgroup/group_set.hpp"
#include "apgroup/growth.hpp"
#include "apgroup/matrix.hpp"
#include "apgroup/nilpotency.hpp"
#include "apgroup/rational.hpp"

namespace apgroup {

/// Partition by diag_ratio, classes in canonical ratio order.
inline std::map<GaussianRational, GroupSet> ratio_partition(const GroupSet& a) {
    std::map<GaussianRational, std::vector<Matrix>> buckets;
    for (const auto& m : a) buckets[diag_ratio(m)].push_back(m);
    std::map<GaussianRational, GroupSet> out;
    for (auto& [r, members] : buckets) out.emplace(r, GroupSet(a.dim(), std::move(members)));
    return out;
}

/// 3·2^{n-1} - 2.
inline std::size_t default_corner_power(std::size_t n) {
    if (n == 0 || n > 40) throw PreconditionError("corner power is defined for 1 <= n <= 40");
    return 3 * (std::size_t{1} << (n - 1)) - 2;
}

/// {λ : m_λ ∈ B^N}, in canonical order.
inline std::vector<GaussianRational> corner_intersection(const GroupSet& b, std::size_t power, GrowthCap cap = {}) {
    if (b.empty()) throw PreconditionError("corner_intersection needs a nonempty set");
    if (b.dim() < 2) throw PreconditionError("corner_intersection needs dimension at least 2");
    if (power == 0) throw PreconditionError("corner power must be at least 1");
    for (const auto& m : b) detail::require_upper(m, "corner_intersection");
    const GroupSet p = power_set(b, power, cap);
    std::vector<GaussianRational> out;
    for (const auto& m : p) {
        if (auto lambda = corner_extract(m)) out.push_back(*lambda);
    }
    return make_scalar_set(std::move(out));
}

struct EngineConfig {
    Rational gamma{4};
    std::size_t nil_cutoff = 0;  // 0 means "use the dimension"
    GrowthCap cap{};
    bool verify_corner = false;
    std::size_t corner_power = 0;  // 0 means default_corner_power(n)
    GrowthCap corner_cap{};
    std::size_t chain_budget = kDefaultChainBudget;
};

struct LevelTrace {
    std::string path;  // "" at the top, then 'p' for π and 'q' for π′ per level
    std::size_t dim = 0;
    std::size_t input_size = 0;
    std::string branch;  // "base", "ratio-bounded" or "ratio-rich"
    std::size_t pi_subset_size = 0;
    std::size_t a1_size = 0;
    std::size_t pi_prime_subset_size = 0;
    std::size_t a2_size = 0;
    Rational a1_fraction{1};
    Rational a2_fraction{1};
    /// Whether π(A₂) still equals the subset chosen for π(A).
    bool pi_image_retained = true;
    std::size_t ratio_classes = 0;
    Rational tripling{1};
    Rational gamma{4};
    GaussianRational chosen_ratio{1};
    std::size_t a3_size = 0;
    bool degenerate = false;
    std::size_t c_size = 0;
    std::size_t translate_count = 0;  // |A·C⁻¹|
    std::size_t r_sum = 0;
    std::size_t r_max = 0;
    bool r_identity = true;  // Σ r(x) = |A|·|C|
    bool r_bound = true;     // max r ≥ |A||C| / |A·C⁻¹|
    std::size_t output_size = 0;
};

struct CornerEvidence {
    std::size_t power = 0;
    std::size_t b_size = 0;
    std::vector<GaussianRational> lambdas;  // S
    std::vector<GaussianRational> ratios;   // T
    SolymosiStatistic statistic;
};

struct DecompositionReport {
    std::size_t dim = 0;
    std::size_t input_size = 0;
    GroupSet a_prime;
    Matrix coset_rep;
    Matrix locator;  // the maximiser x with A′ = A ∩ x·C at the top level
    GroupSet c;      // top-level commuting set
    Rational density{1};  // |A|/|A′|
    NilpotencyVerdict step_verdict;
    std::string step_flag;
    std::vector<LevelTrace> trace;
    std::optional<CornerEvidence> corner;
};

namespace detail {

/// R > T^γ with T = tripling and γ = p/q, decided exactly as R^q·den^p > num^p.
inline bool ratio_count_exceeds(std::size_t classes, const Rational& tripling, const Rational& gamma) {
    const mpq_class t = tripling.to_mpq();
    const mpq_class g = gamma.to_mpq();
    if (g <= 0) throw PreconditionError("gamma must be positive");
    if (!g.get_num().fits_ulong_p() || !g.get_den().fits_ulong_p()) throw PreconditionError("gamma is too large");
    const unsigned long p = g.get_num().get_ui(), q = g.get_den().get_ui();
    mpz_class lhs, rhs, tmp;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(classes), q);
    mpz_pow_ui(tmp.get_mpz_t(), t.get_den().get_mpz_t(), p);
    lhs *= tmp;
    mpz_pow_ui(rhs.get_mpz_t(), t.get_num().get_mpz_t(), p);
    return lhs > rhs;
}

struct LevelResult {
    GroupSet a_prime;
    Matrix locator;
    GroupSet c;
};

/// Members of `a` whose image under f lies in `keep`.
template <class F>
GroupSet pull_back(const GroupSet& a, const GroupSet& keep, F f) {
    std::vector<Matrix> out;
    for (const auto& m : a) {
        if (keep.contains(f(m))) out.push_back(m);
    }
    return GroupSet(a.dim(), std::move(out));
}

inline LevelResult decompose_level(const GroupSet& a, const EngineConfig& cfg, const std::string& path,
                                   std::vector<LevelTrace>& trace) {
    const std::size_t n = a.dim();
    LevelTrace t;
    t.path = path;
    t.dim = n;
    t.input_size = a.size();
    t.gamma = cfg.gamma;
    if (n == 1) {
        t.branch = "base";
        t.a1_size = t.a2_size = t.a3_size = t.output_size = a.size();
        trace.push_back(t);
        return {a, a[0], GroupSet::identity(1)};
    }

    const GroupSet pi_image = set_image(a, n - 1, [](const Matrix& m) { return pi_project(m); });
    const GroupSet pi_subset = decompose_level(pi_image, cfg, path + "p", trace).a_prime;
    const GroupSet a1 = pull_back(a, pi_subset, [](const Matrix& m) { return pi_project(m); });

    const GroupSet q_image = set_image(a1, n - 1, [](const Matrix& m) { return pi_prime_project(m); });
    const GroupSet q_subset = decompose_level(q_image, cfg, path + "q", trace).a_prime;
    const GroupSet a2 = pull_back(a1, q_subset, [](const Matrix& m) { return pi_prime_project(m); });

    t.pi_subset_size = pi_subset.size();
    t.a1_size = a1.size();
    t.pi_prime_subset_size = q_subset.size();
    t.a2_size = a2.size();
    t.a1_fraction = size_ratio(a1.size(), a.size());
    t.a2_fraction = size_ratio(a2.size(), a1.size());
    t.pi_image_retained = set_image(a2, n - 1, [](const Matrix& m) { return pi_project(m); }) == pi_subset;

    const auto classes = ratio_partition(a2);
    t.ratio_classes = classes.size();
    t.tripling = tripling_constant(a, cfg.cap);
    t.branch = ratio_count_exceeds(t.ratio_classes, t.tripling, cfg.gamma) ? "ratio-rich" : "ratio-bounded";

    const GroupSet* a3 = nullptr;
    for (const auto& [ratio, members] : classes) {
        if (a3 == nullptr || members.size() > a3->size()) {
            a3 = &members;
            t.chosen_ratio = ratio;
        }
    }
    t.a3_size = a3->size();

    GroupSet c(n);
    if (a3->size() > 1) {
        c = product_set(*a3, inverse_set(*a3), cfg.cap, "decompose(C)");
    } else {
        t.degenerate = true;
        c = intersect_subgroup(product_set(a2, inverse_set(a2), cfg.cap, "decompose(C)"),
                               [](const Matrix& m) { return diag_ratio(m).is_one(); });
    }
    t.c_size = c.size();

    const GroupSet c_inv = inverse_set(c);
    const GroupSet translates = product_set(a, c_inv, cfg.cap, "decompose(A*C^-1)");
    t.translate_count = translates.size();
    const Matrix* best = nullptr;
    Matrix scratch;
    for (const auto& x : translates) {
        std::size_t r = 0;
        for (const auto& m : c) {
            Matrix::multiply_into(scratch, x, m);
            if (a.contains(scratch)) ++r;
        }
        t.r_sum += r;
        if (r > t.r_max) {
            t.r_max = r;
            best = &x;
        }
    }
    t.r_identity = t.r_sum == a.size() * c.size();
    t.r_bound = t.r_max * t.translate_count >= a.size() * c.size();

    std::vector<Matrix> kept;
    for (const auto& m : c) {
        Matrix::multiply_into(scratch, *best, m);
        if (a.contains(scratch)) kept.push_back(scratch);
    }
    LevelResult res{GroupSet(n, std::move(kept)), *best, c};
    t.output_size = res.a_prime.size();
    trace.push_back(std::move(t));
    return res;
}

}  // namespace detail

/// Ratios x₁₁/x_nn occurring in a set, in canonical order.
inline std::vector<GaussianRational> ratio_set(const GroupSet& a) {
    std::vector<GaussianRational> out;
    for (const auto& [r, members] : ratio_partition(a)) out.push_back(r);
    return out;
}

/// The corner probe: S from B^N ∩ H with B = A₂·A₂⁻¹, T the ratios in B^N,
/// and the sum-product statistic on (S, S, T).
inline CornerEvidence corner_evidence(const GroupSet& b, std::size_t power, GrowthCap cap) {
    CornerEvidence ev;
    ev.power = power;
    ev.b_size = b.size();
    const GroupSet p = power_set(b, power, cap);
    for (const auto& m : p) {
        if (auto lambda = corner_extract(m)) ev.lambdas.push_back(*lambda);
    }
    ev.lambdas = make_scalar_set(std::move(ev.lambdas));
    ev.ratios = ratio_set(p);
    ev.statistic = solymosi_statistic(ev.lambdas, ev.lambdas, ev.ratios);
    return ev;
}

inline DecompositionReport decompose(const GroupSet& a, const EngineConfig& cfg = {}) {
    if (a.empty()) throw PreconditionError("decompose needs a nonempty set");
    for (const auto& m : a) detail::require_upper(m, "decompose");
    if (cfg.gamma <= Rational(0)) throw PreconditionError("gamma must be positive");
    const std::size_t n = a.dim();

    DecompositionReport r;
    r.dim = n;
    r.input_size = a.size();
    auto top = detail::decompose_level(a, cfg, "", r.trace);
    r.a_prime = std::move(top.a_prime);
    r.locator = std::move(top.locator);
    r.c = std::move(top.c);
    r.coset_rep = r.a_prime[0];
    r.density = size_ratio(a.size(), r.a_prime.size());

    const std::size_t cutoff = cfg.nil_cutoff == 0 ? n : cfg.nil_cutoff;
    const GroupSet shifted = left_translate(r.coset_rep.inverse(), r.a_prime);
    r.step_verdict = nilpotency_step(shifted, cutoff, cfg.chain_budget);
    r.step_flag = step_flag(r.step_verdict, n);

    if (cfg.verify_corner && n >= 2) {
        // Recompute A₂ at the top level: the last trace entry belongs to it.
        const GroupSet pi_subset = [&] {
            std::vector<LevelTrace> scratch;
            const GroupSet img = set_image(a, n - 1, [](const Matrix& m) { return pi_project(m); });
            return detail::decompose_level(img, cfg, "p", scratch).a_prime;
        }();
        const GroupSet a1 = detail::pull_back(a, pi_subset, [](const Matrix& m) { return pi_project(m); });
        const GroupSet q_subset = [&] {
            std::vector<LevelTrace> scratch;
            const GroupSet img = set_image(a1, n - 1, [](const Matrix& m) { return pi_prime_project(m); });
            return detail::decompose_level(img, cfg, "q", scratch).a_prime;
        }();
        const GroupSet a2 = detail::pull_back(a1, q_subset, [](const Matrix& m) { return pi_prime_project(m); });
        const GroupSet b = product_set(a2, inverse_set(a2), cfg.cap, "corner_evidence(B)");
        const std::size_t power = cfg.corner_power == 0 ? default_corner_power(n) : cfg.corner_power;
        r.corner = corner_evidence(b, power, cfg.corner_cap);
    }
    return r;
}

struct AssemblyReport {
    GroupSet s;      // A′⁻¹A′
    GroupSet b_out;  // S⁶
    std::size_t square_size = 0;  // |S¹²|
    ApproximateGroupCertificate approximate;
    ControlCertificate control;
    NilpotencyVerdict s_verdict;
    bool step_agrees = false;
};

/// S⁶ and S¹² in one layered pass (S contains the identity).
inline std::pair<GroupSet, GroupSet> sixth_and_twelfth_powers(const GroupSet& s, GrowthCap cap) {
    if (!s.contains_identity()) throw PreconditionError("S must contain the identity");
    GroupSet sixth(s.dim());
    GroupSet twelfth = detail::layered_powers(s, 12, cap, [&](std::size_t k, const SetBuilder& b) {
                           if (k == 6) sixth = b.snapshot();
                       }).build();
    return {std::move(sixth), std::move(twelfth)};
}

inline AssemblyReport assemble_control(const GroupSet& a, const DecompositionReport& report, GrowthCap cap = {},
                                       std::size_t chain_budget = kDefaultChainBudget) {
    if (!report.a_prime.is_subset_of(a)) throw PreconditionError("report does not belong to this set");
    AssemblyReport out;
    out.s = product_set(inverse_set(report.a_prime), report.a_prime, cap, "assemble_control(S)");
    {
        auto [sixth, twelfth] = sixth_and_twelfth_powers(out.s, cap);
        out.b_out = std::move(sixth);
        out.square_size = twelfth.size();
        out.approximate = certify_approximate_group_with_square(out.b_out, twelfth);
    }
    out.control = certify_control(a, out.b_out, cap);
    out.s_verdict = nilpotency_step(out.s, report.step_verdict.cutoff, chain_budget);
    out.step_agrees = out.s_verdict.within_cutoff == report.step_verdict.within_cutoff &&
                      (!out.s_verdict.within_cutoff || out.s_verdict.step == report.step_verdict.step);
    return out;
}

}  // namespace apgroup
