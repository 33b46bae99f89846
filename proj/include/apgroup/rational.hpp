#pragma once

// Exact rationals with a machine-word fast path.
//
// Values whose reduced numerator and denominator both fit in a signed 64-bit
// word are stored inline; anything larger lives in a heap-allocated GMP mpq.
// The representation is canonical: a value is "big" iff it does not fit, so
// structural equality and hashing agree with numeric equality.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "apgroup/errors.hpp"

namespace apgroup {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) noexcept {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        }
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::uint64_t abs_u64(std::int64_t v) noexcept {
    return v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v)
                 : static_cast<std::uint64_t>(v);
}

inline mpz_class mpz_from_i128(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), hi.get_mpz_t(), 64);
    r += mpz_class(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    if (neg) r = -r;
    return r;
}

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

inline bool fits_small(__int128 v) noexcept { return v <= kSmallMax && v >= -kSmallMax; }

inline bool fits_small(const mpz_class& z) noexcept {
    return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z != std::numeric_limits<long>::min();
}

}  // namespace detail

class Rational {
public:
    Rational() noexcept : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(0), den_(1) {  // NOLINT(google-explicit-constructor)
        if (v == std::numeric_limits<std::int64_t>::min()) {
            assign_big(mpq_class(mpz_class(static_cast<long>(v))));
        } else {
            num_ = v;
        }
    }
    Rational(int v) : Rational(static_cast<std::int64_t>(v)) {}  // NOLINT(google-explicit-constructor)

    /// num/den, reduced. Throws PreconditionError when den == 0.
    Rational(std::int64_t num, std::int64_t den) : num_(0), den_(1) {
        if (den == 0) throw PreconditionError("rational with zero denominator");
        set_from_i128(num, den);
    }

    explicit Rational(const mpq_class& q) : num_(0), den_(1) {
        mpq_class c(q);
        c.canonicalize();
        assign_from_mpq(std::move(c));
    }

    /// Parses decimal numerator/denominator strings; accepts non-canonical input.
    static Rational from_strings(std::string_view num, std::string_view den) {
        mpz_class n, d;
        if (!parse_int(num, n) || !parse_int(den, d)) {
            throw ParseError("malformed integer in rational: '" + std::string(num) + "/" +
                             std::string(den) + "'");
        }
        if (d == 0) throw ParseError("rational with zero denominator");
        mpq_class q(n, d);
        q.canonicalize();
        Rational r;
        r.assign_from_mpq(std::move(q));
        return r;
    }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.is_big()) big_ = new mpq_class(*o.big_);
    }
    Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_) {
        o.den_ = 1;
        o.num_ = 0;
    }
    Rational& operator=(const Rational& o) {
        if (this == &o) return *this;
        if (o.is_big()) {
            if (is_big()) {
                *big_ = *o.big_;
            } else {
                big_ = new mpq_class(*o.big_);
                den_ = 0;
            }
        } else {
            release();
            num_ = o.num_;
            den_ = o.den_;
        }
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this == &o) return *this;
        release();
        num_ = o.num_;
        den_ = o.den_;
        o.den_ = 1;
        o.num_ = 0;
        return *this;
    }
    ~Rational() { release(); }

    bool is_big() const noexcept { return den_ == 0; }
    bool is_zero() const noexcept { return !is_big() && num_ == 0; }
    bool is_one() const noexcept { return !is_big() && num_ == 1 && den_ == 1; }
    /// Writes the value when it is an integer held in the small representation.
    bool small_integer(std::int64_t& out) const noexcept {
        if (is_big() || den_ != 1) return false;
        out = num_;
        return true;
    }
    bool is_integer() const noexcept {
        return is_big() ? big_->get_den() == 1 : den_ == 1;
    }
    int sign() const noexcept {
        if (is_big()) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }

    mpq_class to_mpq() const {
        if (is_big()) return *big_;
        return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    }
    mpz_class numerator() const {
        return is_big() ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
    }
    mpz_class denominator() const {
        return is_big() ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
    }
    std::string numerator_string() const { return numerator().get_str(); }
    std::string denominator_string() const { return denominator().get_str(); }

    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const {
        std::string s = numerator_string();
        if (!is_integer()) s += "/" + denominator_string();
        return s;
    }

    std::uint64_t hash() const noexcept {
        if (!is_big()) {
            return detail::mix64(static_cast<std::uint64_t>(num_) ^
                                 detail::mix64(static_cast<std::uint64_t>(den_)));
        }
        std::uint64_t h = 0x51ed270b27a5f3c1ULL;
        auto fold = [&h](mpz_srcptr z) {
            const std::size_t limbs = mpz_size(z);
            h = detail::mix64(h ^ static_cast<std::uint64_t>(limbs) ^
                              (mpz_sgn(z) < 0 ? 0x8000000000000000ULL : 0));
            for (std::size_t i = 0; i < limbs; ++i) {
                h = detail::mix64(h ^ static_cast<std::uint64_t>(mpz_getlimbn(z, i)));
            }
        };
        fold(mpq_numref(big_->get_mpq_t()));
        fold(mpq_denref(big_->get_mpq_t()));
        return h;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.is_big() && !b.is_big()) {
            if (a.den_ == 1 && b.den_ == 1) {
                return from_i128(static_cast<__int128>(a.num_) + b.num_, 1);
            }
            __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
            __int128 d = static_cast<__int128>(a.den_) * b.den_;
            return from_i128(n, d);
        }
        return Rational(a.to_mpq() + b.to_mpq());
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (!a.is_big() && !b.is_big()) {
            if (a.den_ == 1 && b.den_ == 1) {
                return from_i128(static_cast<__int128>(a.num_) - b.num_, 1);
            }
            __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
            __int128 d = static_cast<__int128>(a.den_) * b.den_;
            return from_i128(n, d);
        }
        return Rational(a.to_mpq() - b.to_mpq());
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.is_big() && !b.is_big()) {
            if (a.num_ == 0 || b.num_ == 0) return Rational();
            if (a.den_ == 1 && b.den_ == 1) {
                return from_i128(static_cast<__int128>(a.num_) * b.num_, 1);
            }
            // Cross-cancel so the product is already reduced.
            const std::uint64_t g1 = detail::gcd_u64(detail::abs_u64(a.num_), static_cast<std::uint64_t>(b.den_));
            const std::uint64_t g2 = detail::gcd_u64(detail::abs_u64(b.num_), static_cast<std::uint64_t>(a.den_));
            const auto s1 = static_cast<std::int64_t>(g1);
            const auto s2 = static_cast<std::int64_t>(g2);
            __int128 n = static_cast<__int128>(a.num_ / s1) * (b.num_ / s2);
            __int128 d = static_cast<__int128>(a.den_ / s2) * (b.den_ / s1);
            Rational r;
            r.store_reduced(n, d);
            return r;
        }
        return Rational(a.to_mpq() * b.to_mpq());
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw PreconditionError("invalid scalar inverse: division by zero");
        return a * b.inverse();
    }
    Rational operator-() const {
        if (!is_big()) {
            Rational r;
            r.num_ = -num_;
            r.den_ = den_;
            return r;
        }
        return Rational(-to_mpq());
    }
    Rational inverse() const {
        if (is_zero()) throw PreconditionError("invalid scalar inverse: division by zero");
        if (!is_big()) {
            Rational r;
            r.num_ = num_ < 0 ? -den_ : den_;
            r.den_ = num_ < 0 ? -num_ : num_;
            return r;
        }
        return Rational(1 / to_mpq());
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (a.is_big() != b.is_big()) return false;
        if (!a.is_big()) return a.num_ == b.num_ && a.den_ == b.den_;
        return *a.big_ == *b.big_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.is_big() && !b.is_big()) {
            __int128 l = static_cast<__int128>(a.num_) * b.den_;
            __int128 r = static_cast<__int128>(b.num_) * a.den_;
            return l <=> r;
        }
        const int c = cmp(a.to_mpq(), b.to_mpq());
        return c <=> 0;
    }

private:
    union {
        std::int64_t num_;
        mpq_class* big_;
    };
    std::int64_t den_;  // 0 marks the big representation

    static bool parse_int(std::string_view s, mpz_class& out) {
        std::string t(s);
        if (!t.empty() && t.front() == '+') t.erase(0, 1);
        if (t.empty()) return false;
        std::size_t i = (t.front() == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') return false;
        }
        return out.set_str(t, 10) == 0;
    }

    void release() noexcept {
        if (is_big()) {
            delete big_;
            den_ = 1;
            num_ = 0;
        }
    }

    void assign_big(mpq_class q) {
        release();
        big_ = new mpq_class(std::move(q));
        den_ = 0;
    }

    // q must be canonical.
    void assign_from_mpq(mpq_class q) {
        if (detail::fits_small(q.get_num()) && detail::fits_small(q.get_den())) {
            release();
            num_ = q.get_num().get_si();
            den_ = q.get_den().get_si();
        } else {
            assign_big(std::move(q));
        }
    }

    // n/d with d != 0, not necessarily reduced.
    void set_from_i128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            release();
            num_ = 0;
            den_ = 1;
            return;
        }
        unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(n)
                                     : static_cast<unsigned __int128>(n);
        unsigned __int128 g = detail::gcd_u128(un, static_cast<unsigned __int128>(d));
        if (g != 1) {
            n /= static_cast<__int128>(g);
            d /= static_cast<__int128>(g);
        }
        store_reduced(n, d);
    }

    // n/d already reduced, d > 0.
    void store_reduced(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (detail::fits_small(n) && detail::fits_small(d)) {
            release();
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
        } else {
            mpq_class q(detail::mpz_from_i128(n), detail::mpz_from_i128(d));
            assign_big(std::move(q));
        }
    }

    static Rational from_i128(__int128 n, __int128 d) {
        Rational r;
        if (d == 1) {
            r.store_reduced(n, 1);
        } else {
            r.set_from_i128(n, d);
        }
        return r;
    }
};

}  // namespace apgroup
