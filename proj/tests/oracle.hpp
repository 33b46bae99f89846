#pragma once

// Brute-force reference implementations for tests. Matrices are plain grids
// of (re, im) mpq pairs, sets are std::set of printed keys, and products are
// enumerated naively. Nothing here reuses library arithmetic; library values
// only enter through to_oracle().

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "apgroup/group_set.hpp"
#include "apgroup/matrix.hpp"

namespace oracle {

struct C {
    mpq_class re, im;
};

inline C add(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
inline C sub(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
inline C mul(const C& a, const C& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline C inv(const C& a) {
    mpq_class d = a.re * a.re + a.im * a.im;
    return {a.re / d, -a.im / d};
}
inline bool is_zero(const C& a) { return a.re == 0 && a.im == 0; }

struct M {
    std::size_t n = 0;
    std::vector<C> e;
    C& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
    const C& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
};

inline M identity(std::size_t n) {
    M m{n, std::vector<C>(n * n, C{0, 0})};
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = C{1, 0};
    return m;
}

inline M mul(const M& a, const M& b) {
    M r{a.n, std::vector<C>(a.n * a.n, C{0, 0})};
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            for (std::size_t k = 0; k < a.n; ++k) r.at(i, j) = add(r.at(i, j), mul(a.at(i, k), b.at(k, j)));
    return r;
}

/// Gauss-Jordan with partial pivoting on nonzero entries.
inline M inverse(const M& a) {
    const std::size_t n = a.n;
    M w = a, r = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (is_zero(w.at(p, c))) ++p;
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(w.at(p, k), w.at(c, k));
            std::swap(r.at(p, k), r.at(c, k));
        }
        const C f = inv(w.at(c, c));
        for (std::size_t k = 0; k < n; ++k) {
            w.at(c, k) = mul(w.at(c, k), f);
            r.at(c, k) = mul(r.at(c, k), f);
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == c) continue;
            const C g = w.at(row, c);
            for (std::size_t k = 0; k < n; ++k) {
                w.at(row, k) = sub(w.at(row, k), mul(g, w.at(c, k)));
                r.at(row, k) = sub(r.at(row, k), mul(g, r.at(c, k)));
            }
        }
    }
    return r;
}

inline std::string key(const M& m) {
    std::string s = std::to_string(m.n) + ":";
    for (const auto& v : m.e) s += v.re.get_str() + "," + v.im.get_str() + ";";
    return s;
}

inline M to_oracle(const apgroup::Matrix& m) {
    M r{m.dim(), {}};
    for (const auto& v : m.entries()) r.e.push_back(C{v.re().to_mpq(), v.im().to_mpq()});
    return r;
}

using Set = std::vector<M>;  // distinct by key

inline Set to_oracle(const apgroup::GroupSet& s) {
    Set out;
    for (const auto& m : s) out.push_back(to_oracle(m));
    return out;
}

inline std::set<std::string> keys(const Set& s) {
    std::set<std::string> k;
    for (const auto& m : s) k.insert(key(m));
    return k;
}

inline std::set<std::string> keys(const apgroup::GroupSet& s) { return keys(to_oracle(s)); }

inline Set dedup(const Set& s) {
    Set out;
    std::set<std::string> seen;
    for (const auto& m : s) {
        if (seen.insert(key(m)).second) out.push_back(m);
    }
    return out;
}

inline Set product(const Set& a, const Set& b) {
    Set out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(mul(x, y));
    return dedup(out);
}

inline Set power(const Set& a, std::size_t m) {
    Set p = a;
    for (std::size_t k = 2; k <= m; ++k) p = product(p, a);
    return p;
}

inline Set inverses(const Set& a) {
    Set out;
    for (const auto& m : a) out.push_back(inverse(m));
    return dedup(out);
}

/// Every word of length ≤ radius in the generators and their inverses.
inline Set word_ball(const Set& gens, std::size_t radius) {
    Set letters = gens;
    for (const auto& g : gens) letters.push_back(inverse(g));
    Set words{identity(gens.front().n)};
    Set all = words;
    for (std::size_t r = 1; r <= radius; ++r) {
        Set next;
        for (const auto& w : words)
            for (const auto& l : letters) next.push_back(mul(w, l));
        for (const auto& w : next) all.push_back(w);
        words = dedup(next);  // values of all words of length exactly r
    }
    return dedup(all);
}

inline bool contains(const Set& s, const M& m) {
    const std::string k = key(m);
    for (const auto& x : s) {
        if (key(x) == k) return true;
    }
    return false;
}

/// Smallest |X| over symmetric X ⊆ A² with A² ⊆ X·A, searching sizes ≤ limit.
/// Returns 0 when no such X exists within the limit.
inline std::size_t min_approximate_k(const Set& a, std::size_t limit) {
    const Set sq = power(a, 2);
    const std::set<std::string> sq_keys = keys(sq);
    // Symmetric building blocks {y, y⁻¹}.
    std::vector<Set> blocks;
    std::set<std::string> used;
    for (const auto& y : sq) {
        if (used.count(key(y))) continue;
        const M yi = inverse(y);
        Set b{y};
        used.insert(key(y));
        if (key(yi) != key(y)) {
            b.push_back(yi);
            used.insert(key(yi));
        }
        blocks.push_back(b);
    }
    std::size_t best = 0;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t size) {
        if (size > 0) {
            Set x;
            for (auto i : pick) x.insert(x.end(), blocks[i].begin(), blocks[i].end());
            const auto xa = keys(product(x, a));
            bool covers = true;
            for (const auto& k : sq_keys) covers = covers && xa.count(k) > 0;
            if (covers) {
                if (best == 0 || size < best) best = size;
                return;
            }
        }
        for (std::size_t i = start; i < blocks.size(); ++i) {
            const std::size_t s = size + blocks[i].size();
            if (s > limit || (best != 0 && s >= best)) continue;
            pick.push_back(i);
            rec(i + 1, s);
            pick.pop_back();
        }
    };
    rec(0, 0);
    return best;
}

struct Shift {
    std::size_t best = 0;   // max over x of |A ∩ x·C|
    std::size_t total = 0;  // sum over x of |A ∩ x·C|
};

/// Exhaustive scan of x ∈ A·C⁻¹ for the largest intersection |A ∩ x·C|.
inline Shift best_shift(const Set& a, const Set& c) {
    const auto a_keys = keys(a);
    Shift s;
    for (const auto& x : product(a, inverses(c))) {
        std::size_t hits = 0;
        for (const auto& m : c) hits += a_keys.count(key(mul(x, m)));
        s.best = std::max(s.best, hits);
        s.total += hits;
    }
    return s;
}

/// Exact scalar sumset and product-set sizes.
inline std::size_t sumset_size(const std::vector<C>& u, const std::vector<C>& v) {
    std::set<std::string> s;
    for (const auto& a : u)
        for (const auto& b : v) {
            C c = add(a, b);
            s.insert(c.re.get_str() + "," + c.im.get_str());
        }
    return s.size();
}

inline std::size_t productset_size(const std::vector<C>& u, const std::vector<C>& v) {
    std::set<std::string> s;
    for (const auto& a : u)
        for (const auto& b : v) {
            C c = mul(a, b);
            s.insert(c.re.get_str() + "," + c.im.get_str());
        }
    return s.size();
}

}  // namespace oracle
