#pragma once

// Multiplicative Jordan decomposition g = s·u of an upper-triangular matrix.
//
// The eigenvalues are the diagonal entries, so they already lie in Q(i). The
// semisimple part is p(g) for the polynomial p with p ≡ λ (mod (x-λ)^m) for
// every eigenvalue λ of multiplicity m (Chinese remainder interpolation); the
// unipotent part is s⁻¹·g. No eigenvectors or root finding are involved.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "apgroup/matrix.hpp"
#include "apgroup/polynomial.hpp"

namespace apgroup {

struct JordanPair {
    Matrix semisimple;
    Matrix unipotent;
};

/// Distinct diagonal entries with multiplicities, in canonical order.
inline std::vector<std::pair<GaussianRational, std::size_t>> diagonal_spectrum(const Matrix& g) {
    std::map<GaussianRational, std::size_t> counts;
    for (std::size_t i = 0; i < g.dim(); ++i) ++counts[g(i, i)];
    return {counts.begin(), counts.end()};
}

/// The interpolating polynomial p with s = p(g).
inline Polynomial jordan_semisimple_polynomial(const Matrix& g) {
    detail::require_upper(g, "jordan_split");
    const auto spectrum = diagonal_spectrum(g);
    if (spectrum.size() == 1) return Polynomial::constant(spectrum.front().first);

    std::vector<Polynomial> moduli;
    for (const auto& [lambda, mult] : spectrum) {
        Polynomial q = Polynomial::constant(GaussianRational(1));
        for (std::size_t k = 0; k < mult; ++k) q = q * Polynomial::linear(lambda);
        moduli.push_back(std::move(q));
    }
    Polynomial modulus = Polynomial::constant(GaussianRational(1));
    for (const auto& q : moduli) modulus = modulus * q;

    Polynomial p;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const Polynomial cofactor = Polynomial::divmod(modulus, moduli[i]).first;
        const Polynomial idempotent = cofactor * Polynomial::inverse_mod(cofactor, moduli[i]);
        p = p + idempotent * Polynomial::constant(spectrum[i].first);
    }
    return Polynomial::divmod(p, modulus).second;
}

inline JordanPair jordan_split(const Matrix& g) {
    const Polynomial p = jordan_semisimple_polynomial(g);
    Matrix s = p.evaluate(g);
    Matrix u = s.inverse() * g;
    return {std::move(s), std::move(u)};
}

/// Monic minimal polynomial, found as the first linear dependency among
/// id, m, m², ... (exact elimination over Q(i)).
inline Polynomial minimal_polynomial(const Matrix& m) {
    const std::size_t n = m.dim();
    const std::size_t len = n * n;
    struct Row {
        std::vector<GaussianRational> v;
        std::size_t pivot;
        Polynomial combo;  // v = combo(m)
    };
    std::vector<Row> basis;
    Matrix power = Matrix::identity(n);
    Polynomial x_pow = Polynomial::constant(GaussianRational(1));
    const Polynomial x({GaussianRational(0), GaussianRational(1)});
    for (std::size_t k = 0; k <= len; ++k) {
        std::vector<GaussianRational> v(power.entries().begin(), power.entries().end());
        Polynomial combo = x_pow;
        for (const auto& row : basis) {
            if (v[row.pivot].is_zero()) continue;
            const GaussianRational f = v[row.pivot];
            for (std::size_t t = 0; t < len; ++t) {
                if (!row.v[t].is_zero()) v[t] -= f * row.v[t];
            }
            combo = combo - row.combo * Polynomial::constant(f);
        }
        std::size_t pivot = 0;
        while (pivot < len && v[pivot].is_zero()) ++pivot;
        if (pivot == len) return combo.monic();
        const GaussianRational inv = v[pivot].inverse();
        for (auto& e : v) e *= inv;
        combo = combo * Polynomial::constant(inv);
        // Keep the basis reduced at the new pivot.
        for (auto& row : basis) {
            if (row.v[pivot].is_zero()) continue;
            const GaussianRational f = row.v[pivot];
            for (std::size_t t = 0; t < len; ++t) {
                if (!v[t].is_zero()) row.v[t] -= f * v[t];
            }
            row.combo = row.combo - combo * Polynomial::constant(f);
        }
        basis.push_back({std::move(v), pivot, std::move(combo)});
        power = power * m;
        x_pow = x_pow * x;
    }
    throw PreconditionError("minimal polynomial search exceeded n² + 1 powers");
}

struct JordanCheck {
    bool reassembles = false;   // g = s·u
    bool commute = false;       // s·u = u·s
    bool unipotent = false;     // (u - id)^n = 0
    bool squarefree = false;    // gcd(minpoly(s), minpoly(s)') is constant
    std::string failure;        // first failing property, empty on success

    bool ok() const noexcept { return reassembles && commute && unipotent && squarefree; }
};

inline JordanCheck check_jordan(const Matrix& g, const JordanPair& jp) {
    JordanCheck c;
    const std::size_t n = g.dim();
    c.reassembles = jp.semisimple * jp.unipotent == g;
    c.commute = jp.semisimple * jp.unipotent == jp.unipotent * jp.semisimple;

    std::vector<GaussianRational> nil(jp.unipotent.entries().begin(), jp.unipotent.entries().end());
    for (std::size_t i = 0; i < n; ++i) nil[i * n + i] -= GaussianRational(1);
    // (u - id)^n
    std::vector<GaussianRational> acc = nil;
    for (std::size_t p = 1; p < n; ++p) {
        std::vector<GaussianRational> next(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                GaussianRational s;
                for (std::size_t t = 0; t < n; ++t) {
                    if (acc[i * n + t].is_zero() || nil[t * n + j].is_zero()) continue;
                    s += acc[i * n + t] * nil[t * n + j];
                }
                next[i * n + j] = std::move(s);
            }
        }
        acc = std::move(next);
    }
    c.unipotent = true;
    for (const auto& e : acc) c.unipotent = c.unipotent && e.is_zero();

    const Polynomial mp = minimal_polynomial(jp.semisimple);
    c.squarefree = Polynomial::gcd(mp, mp.derivative()).degree() == 0;

    if (!c.reassembles) {
        c.failure = "g != s*u";
    } else if (!c.commute) {
        c.failure = "s*u != u*s";
    } else if (!c.unipotent) {
        c.failure = "(u - id)^n != 0";
    } else if (!c.squarefree) {
        c.failure = "minimal polynomial of s is not squarefree";
    }
    return c;
}

}  // namespace apgroup
