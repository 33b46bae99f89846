#pragma once

// Gaussian rationals a + b·i with a, b in Q. This is the scalar field for every
// matrix in the library; it is closed under the field operations, so products,
// inverses, commutators and diagonal ratios of inputs stay exact.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "apgroup/rational.hpp"

namespace apgroup {

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(std::int64_t re) : re_(re) {}         // NOLINT(google-explicit-constructor)
    GaussianRational(int re) : re_(re) {}                  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const noexcept { return re_.is_one() && im_.is_zero(); }
    bool is_real() const noexcept { return im_.is_zero(); }
    bool small_integer(std::int64_t& out) const noexcept { return im_.is_zero() && re_.small_integer(out); }

    GaussianRational conj() const { return {re_, -im_}; }
    /// a² + b².
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        if (is_zero()) throw PreconditionError("invalid scalar inverse: division by zero");
        if (im_.is_zero()) return GaussianRational(re_.inverse());
        Rational nrm = norm();
        return {re_ / nrm, -im_ / nrm};
    }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero() && b.im_.is_zero()) return GaussianRational(a.re_ + b.re_);
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero() && b.im_.is_zero()) return GaussianRational(a.re_ - b.re_);
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero()) {
            if (b.im_.is_zero()) return GaussianRational(a.re_ * b.re_);
            return {a.re_ * b.re_, a.re_ * b.im_};
        }
        if (b.im_.is_zero()) return {a.re_ * b.re_, a.im_ * b.re_};
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }
    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

    /// Canonical total order: by real part, then imaginary part.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
        if (auto c = a.re_ <=> b.re_; c != 0) return c;
        return a.im_ <=> b.im_;
    }

    std::uint64_t hash() const noexcept {
        return detail::mix64(re_.hash() * 0x100000001b3ULL ^ im_.hash());
    }

    /// Human-readable form: "3", "1/2", "2i", "1/2-3/4i".
    std::string to_string() const {
        if (im_.is_zero()) return re_.to_string();
        std::string im_str;
        if (im_ == Rational(1)) {
            im_str = "i";
        } else if (im_ == Rational(-1)) {
            im_str = "-i";
        } else {
            im_str = im_.to_string() + "i";
        }
        if (re_.is_zero()) return im_str;
        if (im_str.front() != '-') im_str = "+" + im_str;
        return re_.to_string() + im_str;
    }

private:
    Rational re_;
    Rational im_;
};

/// Builds a canonical Gaussian rational from the raw quadruple
/// (re_num/re_den) + (im_num/im_den)·i. Throws ParseError on a zero denominator.
inline GaussianRational gq_canonicalize(std::string_view re_num, std::string_view re_den,
                                        std::string_view im_num, std::string_view im_den) {
    return {Rational::from_strings(re_num, re_den), Rational::from_strings(im_num, im_den)};
}

inline GaussianRational gq_canonicalize(std::int64_t re_num, std::int64_t re_den,
                                        std::int64_t im_num, std::int64_t im_den) {
    if (re_den == 0 || im_den == 0) throw ParseError("gaussian rational with zero denominator");
    return {Rational(re_num, re_den), Rational(im_num, im_den)};
}

enum class ScalarOp { add, sub, mul, div };

inline GaussianRational gq_arith(const GaussianRational& a, const GaussianRational& b, ScalarOp op) {
    switch (op) {
        case ScalarOp::add: return a + b;
        case ScalarOp::sub: return a - b;
        case ScalarOp::mul: return a * b;
        case ScalarOp::div: return a / b;
    }
    throw PreconditionError("unknown scalar operation");
}

/// Parses a scalar literal such as "3", "-1/2", "i", "-2i" or "1/2+3/4i".
/// The imaginary part is always written as a rational followed by 'i'.
inline GaussianRational parse_scalar_literal(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ') s.push_back(c);
    }
    if (s.empty()) throw ParseError("empty scalar literal");
    auto parse_rational = [](std::string_view t) -> Rational {
        if (t.empty() || t == "+") return Rational(1);
        if (t == "-") return Rational(-1);
        auto slash = t.find('/');
        if (slash == std::string_view::npos) return Rational::from_strings(t, "1");
        return Rational::from_strings(t.substr(0, slash), t.substr(slash + 1));
    };
    if (s.back() != 'i') return GaussianRational(parse_rational(s));
    s.pop_back();
    // Split at the last sign that is not the leading character.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {Rational(0), parse_rational(s)};
    return {parse_rational(std::string_view(s).substr(0, split)),
            parse_rational(std::string_view(s).substr(split))};
}

}  // namespace apgroup
