#pragma once

// Exact invertible n×n matrices over the Gaussian rationals, plus the
// structural maps on the upper-triangular group: the two corner projections,
// the corner subgroup of matrices id + λ·E_{1n}, and the diagonal ratio.

#include <climits>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apgroup/errors.hpp"
#include "apgroup/gaussian.hpp"

namespace apgroup {

class Matrix {
public:
    /// 1×1 identity; exists so Matrix is a regular value type.
    Matrix() : n_(1), e_(1, GaussianRational(1)) { rehash(); }

    static Matrix identity(std::size_t n) {
        if (n == 0) throw PreconditionError("matrix dimension must be positive");
        std::vector<GaussianRational> e(n * n);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = GaussianRational(1);
        return Matrix(n, std::move(e));
    }

    /// Validated construction: square, positive dimension, nonzero determinant.
    static Matrix from_entries(std::size_t n, std::vector<GaussianRational> entries) {
        if (n == 0) throw PreconditionError("matrix dimension must be positive");
        if (entries.size() != n * n) throw PreconditionError("matrix entry count does not match dimension");
        Matrix m(n, std::move(entries));
        if (m.determinant().is_zero()) throw PreconditionError("matrix is singular");
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<GaussianRational>>& rows) {
        const std::size_t n = rows.size();
        std::vector<GaussianRational> e;
        e.reserve(n * n);
        for (const auto& r : rows) {
            if (r.size() != n) throw PreconditionError("matrix rows must form a square grid");
            e.insert(e.end(), r.begin(), r.end());
        }
        return from_entries(n, std::move(e));
    }

    static Matrix diagonal(const std::vector<GaussianRational>& d) {
        const std::size_t n = d.size();
        if (n == 0) throw PreconditionError("matrix dimension must be positive");
        std::vector<GaussianRational> e(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i].is_zero()) throw PreconditionError("matrix is singular");
            e[i * n + i] = d[i];
        }
        return Matrix(n, std::move(e));
    }

    static Matrix scalar(std::size_t n, const GaussianRational& v) {
        return diagonal(std::vector<GaussianRational>(n, v));
    }

    /// id + v·E_{ij} (0-based), i ≠ j.
    static Matrix elementary(std::size_t n, std::size_t i, std::size_t j, const GaussianRational& v) {
        if (i == j || i >= n || j >= n) throw PreconditionError("elementary matrix needs distinct in-range indices");
        Matrix m = identity(n);
        m.e_[i * n + j] = v;
        m.rehash();
        return m;
    }

    /// Caller guarantees the result is invertible (e.g. it is a product of
    /// invertible matrices). Used on hot paths.
    static Matrix unchecked(std::size_t n, std::vector<GaussianRational> entries) {
        return Matrix(n, std::move(entries));
    }

    std::size_t dim() const noexcept { return n_; }
    const GaussianRational& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    std::span<const GaussianRational> entries() const noexcept { return e_; }
    std::uint64_t hash() const noexcept { return hash_; }

    bool is_identity() const noexcept {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                const auto& v = e_[i * n_ + j];
                if (i == j ? !v.is_one() : !v.is_zero()) return false;
            }
        }
        return true;
    }
    bool is_upper_triangular() const noexcept {
        for (std::size_t i = 1; i < n_; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (!e_[i * n_ + j].is_zero()) return false;
            }
        }
        return true;
    }
    bool is_diagonal() const noexcept {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (i != j && !e_[i * n_ + j].is_zero()) return false;
            }
        }
        return true;
    }
    bool is_unitriangular() const noexcept {
        if (!is_upper_triangular()) return false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!e_[i * n_ + i].is_one()) return false;
        }
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.hash_ == b.hash_ && a.n_ == b.n_ && a.e_ == b.e_;
    }
    /// Canonical total order: dimension, then entries in row-major order.
    friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        for (std::size_t k = 0; k < a.e_.size(); ++k) {
            if (auto c = a.e_[k] <=> b.e_[k]; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

    /// out = a·b, reusing out's storage. Dimensions must already agree.
    static void multiply_into(Matrix& out, const Matrix& a, const Matrix& b) {
        const std::size_t n = a.n_;
        out.n_ = n;
        out.e_.resize(n * n);
        if (a.small_int_ && b.small_int_ && multiply_small(out, a, b)) return;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                GaussianRational acc;
                for (std::size_t k = 0; k < n; ++k) {
                    const auto& x = a.e_[i * n + k];
                    if (x.is_zero()) continue;
                    const auto& y = b.e_[k * n + j];
                    if (y.is_zero()) continue;
                    if (acc.is_zero()) {
                        acc = x * y;
                    } else {
                        acc += x * y;
                    }
                }
                out.e_[i * n + j] = std::move(acc);
            }
        }
        out.rehash();
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) throw PreconditionError("dimension mismatch in matrix product");
        Matrix out;
        multiply_into(out, a, b);
        return out;
    }

    Matrix inverse() const {
        if (is_upper_triangular()) return upper_inverse();
        return general_inverse();
    }

    GaussianRational determinant() const {
        if (is_upper_triangular()) {
            GaussianRational d(1);
            for (std::size_t i = 0; i < n_; ++i) d *= e_[i * n_ + i];
            return d;
        }
        std::vector<GaussianRational> w(e_);
        GaussianRational det(1);
        for (std::size_t c = 0; c < n_; ++c) {
            std::size_t p = c;
            while (p < n_ && w[p * n_ + c].is_zero()) ++p;
            if (p == n_) return GaussianRational();
            if (p != c) {
                for (std::size_t k = 0; k < n_; ++k) std::swap(w[p * n_ + k], w[c * n_ + k]);
                det = -det;
            }
            det *= w[c * n_ + c];
            const GaussianRational inv = w[c * n_ + c].inverse();
            for (std::size_t r = c + 1; r < n_; ++r) {
                if (w[r * n_ + c].is_zero()) continue;
                const GaussianRational f = w[r * n_ + c] * inv;
                for (std::size_t k = c; k < n_; ++k) w[r * n_ + k] -= f * w[c * n_ + k];
            }
        }
        return det;
    }

    /// Copy with a different (i, j) entry; unchecked for invertibility.
    Matrix with_entry(std::size_t i, std::size_t j, GaussianRational v) const {
        Matrix m = *this;
        m.e_[i * n_ + j] = std::move(v);
        m.rehash();
        return m;
    }

    /// One-line display form, e.g. "[[1,2],[0,1]]".
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) s += ",";
                s += e_[i * n_ + j].to_string();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t n_;
    std::vector<GaussianRational> e_;
    std::uint64_t hash_ = 0;
    bool small_int_ = false;  // every entry a real integer of magnitude < 2^31

    static constexpr std::int64_t kSmallBound = std::int64_t{1} << 31;

    Matrix(std::size_t n, std::vector<GaussianRational> e) : n_(n), e_(std::move(e)) { rehash(); }

    void rehash() noexcept {
        std::uint64_t h = detail::mix64(n_);
        bool small = true;
        for (const auto& v : e_) {
            h = detail::mix64(h ^ v.hash());
            std::int64_t x = 0;
            small = small && v.small_integer(x) && x < kSmallBound && x > -kSmallBound;
        }
        hash_ = h;
        small_int_ = small;
    }

    // Integer product; returns false when an entry leaves int64, and the caller
    // falls back to exact scalar arithmetic.
    static bool multiply_small(Matrix& out, const Matrix& a, const Matrix& b) {
        const std::size_t n = a.n_;
        std::int64_t av[64], bv[64];
        if (n > 8) return false;
        for (std::size_t k = 0; k < n * n; ++k) {
            a.e_[k].small_integer(av[k]);
            b.e_[k].small_integer(bv[k]);
        }
        std::int64_t res[64];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                __int128 acc = 0;
                for (std::size_t k = 0; k < n; ++k) acc += static_cast<__int128>(av[i * n + k]) * bv[k * n + j];
                if (acc > INT64_MAX || acc <= INT64_MIN) return false;
                res[i * n + j] = static_cast<std::int64_t>(acc);
            }
        }
        for (std::size_t k = 0; k < n * n; ++k) out.e_[k] = GaussianRational(res[k]);
        out.rehash();
        return true;
    }

    Matrix upper_inverse() const {
        const std::size_t n = n_;
        std::vector<GaussianRational> inv(n * n);
        std::vector<GaussianRational> dinv(n);
        for (std::size_t i = 0; i < n; ++i) dinv[i] = e_[i * n + i].inverse();
        // Column by column back substitution of U·X = I.
        for (std::size_t j = 0; j < n; ++j) {
            inv[j * n + j] = dinv[j];
            for (std::size_t i = j; i-- > 0;) {
                GaussianRational acc;
                for (std::size_t k = i + 1; k <= j; ++k) {
                    const auto& u = e_[i * n + k];
                    if (u.is_zero() || inv[k * n + j].is_zero()) continue;
                    acc += u * inv[k * n + j];
                }
                if (!acc.is_zero()) inv[i * n + j] = -(acc * dinv[i]);
            }
        }
        return Matrix(n, std::move(inv));
    }

    Matrix general_inverse() const {
        const std::size_t n = n_;
        std::vector<GaussianRational> w(e_);
        std::vector<GaussianRational> inv(n * n);
        for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = GaussianRational(1);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && w[p * n + c].is_zero()) ++p;
            if (p == n) throw PreconditionError("matrix is singular");
            if (p != c) {
                for (std::size_t k = 0; k < n; ++k) {
                    std::swap(w[p * n + k], w[c * n + k]);
                    std::swap(inv[p * n + k], inv[c * n + k]);
                }
            }
            const GaussianRational pinv = w[c * n + c].inverse();
            for (std::size_t k = 0; k < n; ++k) {
                w[c * n + k] *= pinv;
                inv[c * n + k] *= pinv;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || w[r * n + c].is_zero()) continue;
                const GaussianRational f = w[r * n + c];
                for (std::size_t k = 0; k < n; ++k) {
                    w[r * n + k] -= f * w[c * n + k];
                    inv[r * n + k] -= f * inv[c * n + k];
                }
            }
        }
        return Matrix(n, std::move(inv));
    }
};

struct MatrixHash {
    std::size_t operator()(const Matrix& m) const noexcept { return static_cast<std::size_t>(m.hash()); }
};

inline Matrix mat_mul(const Matrix& g, const Matrix& h) { return g * h; }
inline Matrix mat_inv(const Matrix& g) { return g.inverse(); }

/// [g, h] = g·h·g⁻¹·h⁻¹.
inline Matrix commutator(const Matrix& g, const Matrix& h) {
    if (g.dim() != h.dim()) throw PreconditionError("dimension mismatch in commutator");
    return g * h * g.inverse() * h.inverse();
}

namespace detail {

inline void require_upper(const Matrix& g, const char* op) {
    if (!g.is_upper_triangular()) {
        throw PreconditionError(std::string(op) + " requires an upper-triangular matrix");
    }
}

inline Matrix submatrix(const Matrix& g, std::size_t offset) {
    const std::size_t m = g.dim() - 1;
    std::vector<GaussianRational> e;
    e.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) e.push_back(g(i + offset, j + offset));
    }
    return Matrix::unchecked(m, std::move(e));
}

}  // namespace detail

/// Deletes the last row and column.
inline Matrix pi_project(const Matrix& g) {
    detail::require_upper(g, "pi");
    if (g.dim() < 2) throw PreconditionError("pi needs dimension at least 2");
    return detail::submatrix(g, 0);
}

/// Deletes the first row and column.
inline Matrix pi_prime_project(const Matrix& g) {
    detail::require_upper(g, "pi'");
    if (g.dim() < 2) throw PreconditionError("pi' needs dimension at least 2");
    return detail::submatrix(g, 1);
}

/// m_λ = id + λ·E_{1n}.
inline Matrix corner_make(const GaussianRational& lambda, std::size_t n) {
    if (n < 2) throw PreconditionError("corner subgroup needs dimension at least 2");
    return Matrix::identity(n).with_entry(0, n - 1, lambda);
}

/// λ when g = m_λ, nothing otherwise.
inline std::optional<GaussianRational> corner_extract(const Matrix& g) {
    const std::size_t n = g.dim();
    if (n < 2) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const auto& v = g(i, j);
            if (i == j ? !v.is_one() : !v.is_zero()) return std::nullopt;
        }
    }
    return g(0, n - 1);
}

inline bool is_corner(const Matrix& g) { return corner_extract(g).has_value(); }

/// x₁₁ / x_nn.
inline GaussianRational diag_ratio(const Matrix& g) {
    detail::require_upper(g, "diag_ratio");
    return g(0, 0) / g(g.dim() - 1, g.dim() - 1);
}

}  // namespace apgroup
