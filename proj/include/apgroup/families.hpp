#pragma once

// Deterministic test families. Random families draw from std::mt19937_64 with
// plain modular reduction so that outputs agree across standard libraries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "apgroup/errors.hpp"
#include "apgroup/group_set.hpp"
#include "apgroup/matrix.hpp"
#include "apgroup/nilpotency.hpp"

namespace apgroup::families {

/// x = id+E₁₂, y = id+E₂₃, z = [x,y] = id+E₁₃ in dimension 3.
inline std::vector<Matrix> heisenberg_generators() {
    const Matrix x = Matrix::elementary(3, 0, 1, GaussianRational(1));
    const Matrix y = Matrix::elementary(3, 1, 2, GaussianRational(1));
    return {x, y, commutator(x, y)};
}

/// Word ball of the given radius in {x, y, z}.
inline GroupSet heisenberg_ball(std::size_t radius, GrowthCap cap = {}) {
    return group_ball(GroupSet(3, heisenberg_generators()), radius, cap);
}

/// id + E_{i,i+1}, i = 1..n-1.
inline std::vector<Matrix> unitriangular_generators(std::size_t n) {
    if (n < 2) throw PreconditionError("unitriangular generators need n >= 2");
    std::vector<Matrix> g;
    for (std::size_t i = 0; i + 1 < n; ++i) g.push_back(Matrix::elementary(n, i, i + 1, GaussianRational(1)));
    return g;
}

inline GroupSet unitriangular_ball(std::size_t n, std::size_t radius, GrowthCap cap = {}) {
    return group_ball(GroupSet(n, unitriangular_generators(n)), radius, cap);
}

/// {diag(base^k, 1) : |k| ≤ length}.
inline GroupSet diag_progression(const GaussianRational& base, std::size_t length) {
    if (base.is_zero()) throw PreconditionError("diag-progression base must be nonzero");
    const Matrix d = Matrix::diagonal({base, GaussianRational(1)});
    return ordered_progression({d}, {length});
}

/// {m_λ : λ integer, |λ| ≤ length} in dimension n.
inline GroupSet corner_progression(std::size_t length, std::size_t n) {
    std::vector<Matrix> out;
    const auto l = static_cast<std::int64_t>(length);
    for (std::int64_t k = -l; k <= l; ++k) out.push_back(corner_make(GaussianRational(k), n));
    return GroupSet(n, std::move(out));
}

/// d = diag(2, 1/2), s = [[0,1],[1,0]]: {d^k} ∪ {s·d^k}, |k| ≤ length.
inline GroupSet dihedral(std::size_t length) {
    const Matrix d = Matrix::diagonal({GaussianRational(2), GaussianRational(Rational(1, 2))});
    const Matrix s = Matrix::from_rows({{GaussianRational(0), GaussianRational(1)},
                                        {GaussianRational(1), GaussianRational(0)}});
    const GroupSet rot = ordered_progression({d}, {length});
    std::vector<Matrix> all(rot.begin(), rot.end());
    for (const auto& m : rot) all.push_back(s * m);
    return GroupSet(2, std::move(all));
}

/// Scalar roots of unity in dimension 2: {id}, {±id} or {±id, ±i·id}.
inline GroupSet torsion_diag(std::size_t order) {
    std::vector<Matrix> out{Matrix::identity(2)};
    if (order == 1) return GroupSet(2, out);
    if (order != 2 && order != 4) throw PreconditionError("torsion-diag order must be 1, 2 or 4");
    out.push_back(Matrix::scalar(2, GaussianRational(-1)));
    if (order == 4) {
        out.push_back(Matrix::scalar(2, GaussianRational::i()));
        out.push_back(Matrix::scalar(2, -GaussianRational::i()));
    }
    return GroupSet(2, std::move(out));
}

/// {0, ±1, ±2, ±1/2, ±i}.
inline std::vector<GaussianRational> default_entry_pool() {
    const GaussianRational half(Rational(1, 2));
    return {GaussianRational(0), GaussianRational(1),  GaussianRational(-1), GaussianRational(2),
            GaussianRational(-2), half,                -half,                GaussianRational::i(),
            -GaussianRational::i()};
}

/// One random upper-triangular matrix with entries from the pool (nonzero on
/// the diagonal).
inline Matrix random_upper_triangular_matrix(std::size_t n, const std::vector<GaussianRational>& pool,
                                             std::mt19937_64& rng) {
    std::vector<GaussianRational> nonzero;
    for (const auto& v : pool) {
        if (!v.is_zero()) nonzero.push_back(v);
    }
    if (nonzero.empty()) throw PreconditionError("entry pool has no nonzero value for the diagonal");
    std::vector<GaussianRational> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = nonzero[rng() % nonzero.size()];
        for (std::size_t j = i + 1; j < n; ++j) e[i * n + j] = pool[rng() % pool.size()];
    }
    return Matrix::from_entries(n, std::move(e));
}

/// `size` distinct random upper-triangular matrices (fewer only if the pool
/// cannot supply them within a generous number of draws).
inline GroupSet random_upper_triangular(std::size_t n, std::size_t size, std::uint64_t seed,
                                        const std::vector<GaussianRational>& pool = default_entry_pool()) {
    if (n == 0) throw PreconditionError("matrix dimension must be positive");
    if (pool.empty()) throw PreconditionError("entry pool is empty");
    std::mt19937_64 rng(seed);
    SetBuilder b(n, GrowthCap{size + 1}, "random-upper-triangular");
    for (std::size_t draws = 0; b.size() < size && draws < 100 * size + 100; ++draws) {
        b.insert(random_upper_triangular_matrix(n, pool, rng));
    }
    return std::move(b).build();
}

}  // namespace apgroup::families
