#pragma once

// Dense univariate polynomials over the Gaussian rationals. Only what the
// Jordan split and its checks need: ring operations, division with remainder,
// gcd, extended gcd, derivative and evaluation at a matrix.

#include <utility>
#include <vector>

#include "apgroup/gaussian.hpp"
#include "apgroup/matrix.hpp"

namespace apgroup {

class Polynomial {
public:
    Polynomial() = default;
    /// Coefficients in increasing degree.
    explicit Polynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const GaussianRational& v) { return Polynomial({v}); }
    /// x - root.
    static Polynomial linear(const GaussianRational& root) { return Polynomial({-root, GaussianRational(1)}); }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<GaussianRational>& coeffs() const noexcept { return c_; }
    GaussianRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussianRational(); }
    const GaussianRational& lead() const { return c_.back(); }

    Polynomial monic() const {
        if (is_zero()) return *this;
        const GaussianRational inv = lead().inverse();
        std::vector<GaussianRational> out;
        out.reserve(c_.size());
        for (const auto& v : c_) out.push_back(v * inv);
        return Polynomial(std::move(out));
    }

    Polynomial derivative() const {
        std::vector<GaussianRational> out;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            out.push_back(c_[k] * GaussianRational(static_cast<std::int64_t>(k)));
        }
        return Polynomial(std::move(out));
    }

    GaussianRational evaluate(const GaussianRational& x) const {
        GaussianRational acc;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    /// Horner evaluation at a square matrix.
    Matrix evaluate(const Matrix& g) const {
        const std::size_t n = g.dim();
        std::vector<GaussianRational> acc(n * n);
        for (std::size_t k = c_.size(); k-- > 0;) {
            std::vector<GaussianRational> next(n * n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    GaussianRational s;
                    for (std::size_t t = 0; t < n; ++t) {
                        if (acc[i * n + t].is_zero() || g(t, j).is_zero()) continue;
                        s += acc[i * n + t] * g(t, j);
                    }
                    next[i * n + j] = std::move(s);
                }
                next[i * n + i] += c_[k];
            }
            acc = std::move(next);
        }
        return Matrix::unchecked(n, std::move(acc));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<GaussianRational> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
        return Polynomial(std::move(out));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<GaussianRational> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) - b.coeff(k);
        return Polynomial(std::move(out));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(out));
    }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// (quotient, remainder); divisor must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw PreconditionError("polynomial division by zero");
        std::vector<GaussianRational> rem = a.c_;
        if (a.degree() < b.degree()) return {Polynomial(), a};
        std::vector<GaussianRational> quot(a.c_.size() - b.c_.size() + 1);
        const GaussianRational inv = b.lead().inverse();
        for (std::size_t k = quot.size(); k-- > 0;) {
            const GaussianRational f = rem[k + b.c_.size() - 1] * inv;
            quot[k] = f;
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    /// Monic gcd (zero when both are zero).
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// s with s·a ≡ 1 (mod m); a and m must be coprime.
    static Polynomial inverse_mod(const Polynomial& a, const Polynomial& m) {
        Polynomial r0 = m, r1 = divmod(a, m).second;
        Polynomial s0, s1 = constant(GaussianRational(1));
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Polynomial s = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r0.degree() != 0) throw PreconditionError("polynomials are not coprime");
        const GaussianRational inv = r0.lead().inverse();
        return divmod(s0 * constant(inv), m).second;
    }

private:
    std::vector<GaussianRational> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

}  // namespace apgroup
