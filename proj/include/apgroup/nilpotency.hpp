#pragma once

// Nested commutators, nilpotency-step certification from generators, word
// balls and ordered progressions.
//
// A finitely generated group is s-step nilpotent as soon as every (s+1)-fold
// nested commutator [x_{i1},[x_{i2},[...,[x_{is},x_{i(s+1)}]...]]] of its
// generators is the identity. nilpotency_step checks this level by level. The
// value of a nested commutator depends only on its outer generator and the
// value of its tail, so each level is stored as the set of distinct non-identity
// tail values, each tagged with the lexicographically least chain producing it.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "apgroup/errors.hpp"
#include "apgroup/group_set.hpp"
#include "apgroup/matrix.hpp"

namespace apgroup {

inline constexpr std::size_t kDefaultChainBudget = 10'000'000;

/// Right-nested [b₁,[b₂,[...,[b_{k-1},b_k]...]]].
inline Matrix nested_commutator(const std::vector<Matrix>& chain) {
    if (chain.size() < 2) throw PreconditionError("nested commutator needs at least two elements");
    const std::size_t n = chain.front().dim();
    for (const auto& m : chain) {
        if (m.dim() != n) throw PreconditionError("dimension mismatch in nested commutator");
    }
    Matrix acc = chain.back();
    for (std::size_t k = chain.size() - 1; k-- > 0;) acc = commutator(chain[k], acc);
    return acc;
}

struct NilpotencyVerdict {
    bool within_cutoff = false;
    /// Least s with all (s+1)-fold commutators trivial; meaningful when within_cutoff.
    std::size_t step = 0;
    std::size_t cutoff = 0;
    /// Longest commutator length examined.
    std::size_t depth_checked = 0;
    /// A non-identity s-fold nested commutator chain (a single non-identity
    /// generator when s = 1); empty when every generator is the identity.
    std::vector<Matrix> nonvanishing_chain;
    /// A non-identity (cutoff+1)-fold chain when !within_cutoff.
    std::vector<Matrix> witness;
    std::size_t chains_evaluated = 0;
};

namespace detail {

struct CommutatorLevel {
    std::vector<Matrix> values;                  // distinct, non-identity
    std::vector<std::vector<std::uint32_t>> chains;  // lex-least generator-index chain per value
};

}  // namespace detail

inline NilpotencyVerdict nilpotency_step(const GroupSet& generators, std::size_t cutoff,
                                         std::size_t chain_budget = kDefaultChainBudget) {
    if (generators.empty()) throw PreconditionError("nilpotency_step needs at least one generator");
    if (cutoff == 0) throw PreconditionError("nilpotency cutoff must be at least 1");

    const auto& gens = generators.elements();
    std::vector<std::uint32_t> active;  // non-identity generators
    for (std::uint32_t i = 0; i < gens.size(); ++i) {
        if (!gens[i].is_identity()) active.push_back(i);
    }

    auto to_matrices = [&](const std::vector<std::uint32_t>& chain) {
        std::vector<Matrix> out;
        out.reserve(chain.size());
        for (auto i : chain) out.push_back(gens[i]);
        return out;
    };

    NilpotencyVerdict v;
    v.cutoff = cutoff;

    detail::CommutatorLevel level;
    for (auto i : active) {
        level.values.push_back(gens[i]);
        level.chains.push_back({i});
    }
    v.depth_checked = 1;
    if (level.values.empty()) {
        v.within_cutoff = true;
        v.step = 1;
        return v;
    }

    for (std::size_t depth = 2; depth <= cutoff + 1; ++depth) {
        const std::size_t work = active.size() * level.values.size();
        if (v.chains_evaluated + work > chain_budget) throw CapExceeded("nilpotency_step", chain_budget);
        v.chains_evaluated += work;

        detail::CommutatorLevel next;
        detail::SlotIndex seen;
        seen.rebuild(next.values);
        // Outer index ascending, tails in lex order: first hit per value is lex-least.
        for (auto i : active) {
            const Matrix& g = gens[i];
            const Matrix g_inv = g.inverse();
            for (std::size_t t = 0; t < level.values.size(); ++t) {
                const Matrix& tail = level.values[t];
                Matrix c = g * tail * g_inv * tail.inverse();
                if (c.is_identity() || seen.find(next.values, c)) continue;
                std::vector<std::uint32_t> chain;
                chain.reserve(depth);
                chain.push_back(i);
                chain.insert(chain.end(), level.chains[t].begin(), level.chains[t].end());
                next.values.push_back(std::move(c));
                next.chains.push_back(std::move(chain));
                seen.push(next.values);
            }
        }
        v.depth_checked = depth;
        if (next.values.empty()) {
            v.within_cutoff = true;
            v.step = depth - 1;
            v.nonvanishing_chain = to_matrices(level.chains.front());
            return v;
        }
        level = std::move(next);
    }
    v.within_cutoff = false;
    v.witness = to_matrices(level.chains.front());
    return v;
}

/// How a measured step compares with the dimension n: "le_n_minus_1",
/// "eq_n", "gt_n" or "exceeds_cutoff".
inline std::string step_flag(const NilpotencyVerdict& v, std::size_t n) {
    if (!v.within_cutoff) return "exceeds_cutoff";
    if (v.step + 1 <= n) return "le_n_minus_1";
    if (v.step == n) return "eq_n";
    return "gt_n";
}

/// All products of at most `radius` generators or inverses, plus id.
inline GroupSet group_ball(const GroupSet& generators, std::size_t radius, GrowthCap cap = {}) {
    const std::size_t n = generators.dim();
    const GroupSet steps = set_union(generators, inverse_set(generators));
    SetBuilder ball(n, cap, "group_ball");
    ball.insert(Matrix::identity(n));
    std::vector<Matrix> frontier{Matrix::identity(n)};
    Matrix scratch;
    for (std::size_t r = 1; r <= radius && !frontier.empty(); ++r) {
        std::vector<Matrix> next;
        for (const auto& w : frontier) {
            for (const auto& s : steps) {
                Matrix::multiply_into(scratch, w, s);
                if (ball.insert(scratch)) next.push_back(scratch);
            }
        }
        frontier = std::move(next);
    }
    return std::move(ball).build();
}

/// {x₁^{l₁} ··· x_k^{l_k} : |l_i| ≤ L_i}.
inline GroupSet ordered_progression(const std::vector<Matrix>& generators, const std::vector<std::size_t>& lengths,
                                    GrowthCap cap = {}) {
    if (generators.empty() || generators.size() != lengths.size()) {
        throw PreconditionError("ordered_progression needs equally many generators and lengths (at least one)");
    }
    const std::size_t n = generators.front().dim();
    GroupSet acc = GroupSet::identity(n);
    for (std::size_t k = 0; k < generators.size(); ++k) {
        if (generators[k].dim() != n) throw PreconditionError("dimension mismatch in ordered_progression");
        std::vector<Matrix> powers{Matrix::identity(n)};
        Matrix up = Matrix::identity(n), down = Matrix::identity(n);
        const Matrix inv = generators[k].inverse();
        for (std::size_t l = 1; l <= lengths[k]; ++l) {
            up = up * generators[k];
            down = down * inv;
            powers.push_back(up);
            powers.push_back(down);
        }
        acc = product_set(acc, GroupSet(n, std::move(powers)), cap, "ordered_progression");
    }
    return acc;
}

}  // namespace apgroup
