#pragma once

// Growth statistics and covering certificates for finite matrix sets.
//
// Certificates are built greedily in canonical order and then re-verified
// exactly; K witnesses are therefore upper bounds on the optimal constants,
// never claimed optimal. Constants that the underlying inequalities leave
// unspecified are reported, not asserted.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apgroup/errors.hpp"
#include "apgroup/group_set.hpp"
#include "apgroup/matrix.hpp"
#include "apgroup/rational.hpp"

namespace apgroup {

inline Rational size_ratio(std::size_t num, std::size_t den) {
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

// ---------------------------------------------------------------------------
// Growth statistics

struct GrowthReport {
    /// sizes[k-1] = |A^k| for k = 1..max_power.
    std::vector<std::size_t> sizes;
    Rational doubling;  // |A²|/|A|
    Rational tripling;  // |A³|/|A|
};

inline GrowthReport growth_stats(const GroupSet& a, std::size_t max_power, GrowthCap cap = {}) {
    if (a.empty()) throw PreconditionError("growth_stats needs a nonempty set");
    if (max_power == 0) throw PreconditionError("max_power must be at least 1");
    const auto chain = power_chain(a, std::max<std::size_t>(max_power, 3), cap);
    GrowthReport r;
    for (std::size_t k = 0; k < max_power; ++k) r.sizes.push_back(chain[k].size());
    r.doubling = size_ratio(chain[1].size(), a.size());
    r.tripling = size_ratio(chain[2].size(), a.size());
    return r;
}

inline Rational tripling_constant(const GroupSet& a, GrowthCap cap = {}) {
    return size_ratio(power_set(a, 3, cap).size(), a.size());
}

// ---------------------------------------------------------------------------
// Approximate groups

struct ApproximateGroupCertificate {
    std::size_t k_witness = 0;  // |X|
    GroupSet x;
    std::size_t square_size = 0;
    bool symmetric = false;
    bool has_identity = false;
    bool x_in_square = false;
    bool x_symmetric = false;
    bool square_covered = false;

    bool valid() const noexcept {
        return symmetric && has_identity && x_in_square && x_symmetric && square_covered;
    }
};

/// Checks A² ⊆ X·A, X ⊆ A² and X = X⁻¹ given A² explicitly. Returns the first
/// failure, or nothing when all hold.
inline std::optional<std::string> verify_approximate_group(const GroupSet& a, const GroupSet& square,
                                                           const GroupSet& x) {
    // Mark X·A inside A²; |X|·|A| products instead of |A²|·|X|.
    std::vector<char> covered(square.size(), 0);
    Matrix scratch;
    for (const auto& y : x) {
        for (const auto& m : a) {
            Matrix::multiply_into(scratch, y, m);
            if (auto idx = square.index_of(scratch)) covered[*idx] = 1;
        }
    }
    for (std::size_t i = 0; i < square.size(); ++i) {
        if (!covered[i]) return "A^2 element " + square[i].to_string() + " is not covered by X*A";
    }
    for (const auto& y : x) {
        if (!square.contains(y)) return "X element " + y.to_string() + " is not in A^2";
        if (!x.contains(y.inverse())) return "X is not symmetric at " + y.to_string();
    }
    return std::nullopt;
}

/// Greedy cover of A² by translates y·A, with `square` = A·A supplied by the
/// caller (useful when A is a power of a smaller set and its square is cheaper
/// to build as a longer power).
inline ApproximateGroupCertificate certify_approximate_group_with_square(const GroupSet& a, const GroupSet& square) {
    ApproximateGroupCertificate c;
    c.symmetric = a.is_symmetric();
    c.has_identity = a.contains_identity();
    if (!c.symmetric) throw PreconditionError("certify_approximate_group: set is not symmetric");
    if (!c.has_identity) throw PreconditionError("certify_approximate_group: set does not contain the identity");
    c.square_size = square.size();

    std::vector<char> covered(square.size(), 0);
    std::size_t remaining = square.size();
    std::vector<Matrix> chosen;
    Matrix scratch;
    auto cover_by = [&](const Matrix& y) {
        for (const auto& m : a) {
            Matrix::multiply_into(scratch, y, m);
            if (auto idx = square.index_of(scratch); idx && !covered[*idx]) {
                covered[*idx] = 1;
                --remaining;
            }
        }
    };
    const Matrix id = Matrix::identity(a.dim());
    chosen.push_back(id);
    cover_by(id);
    for (std::size_t i = 0; i < square.size() && remaining > 0; ++i) {
        if (covered[i]) continue;
        const Matrix& y = square[i];
        const Matrix y_inv = y.inverse();
        chosen.push_back(y);
        cover_by(y);
        if (y_inv != y) {
            chosen.push_back(y_inv);
            cover_by(y_inv);
        }
    }
    c.x = GroupSet(a.dim(), std::move(chosen));
    c.k_witness = c.x.size();

    c.x_in_square = c.x.is_subset_of(square);
    c.x_symmetric = c.x.is_symmetric();
    c.square_covered = !verify_approximate_group(a, square, c.x).has_value();
    return c;
}

/// Greedy K-approximate-group certificate: X ⊆ A², X symmetric, A² ⊆ X·A.
inline ApproximateGroupCertificate certify_approximate_group(const GroupSet& a, GrowthCap cap = {}) {
    if (!a.is_symmetric()) throw PreconditionError("certify_approximate_group: set is not symmetric");
    if (!a.contains_identity()) throw PreconditionError("certify_approximate_group: set does not contain the identity");
    const GroupSet square = product_set(a, a, cap, "certify_approximate_group(A^2)");
    return certify_approximate_group_with_square(a, square);
}

// ---------------------------------------------------------------------------
// Control

struct ControlCertificate {
    Rational k_witness{1};  // max(|X|, |B|/|A|, 1)
    GroupSet x;
    std::size_t a_size = 0;
    std::size_t b_size = 0;
    bool size_check = false;  // |B| ≤ K·|A|
};

/// Checks |X| ≤ K, |B| ≤ K·|A| and A ⊆ (X·B) ∩ (B·X).
inline std::optional<std::string> verify_control(const GroupSet& a, const GroupSet& b, const ControlCertificate& c) {
    if (a.dim() != b.dim() || c.x.dim() != a.dim()) return "dimension mismatch in control certificate";
    if (Rational(static_cast<std::int64_t>(c.x.size())) > c.k_witness) return "|X| exceeds K";
    if (Rational(static_cast<std::int64_t>(b.size())) > c.k_witness * Rational(static_cast<std::int64_t>(a.size()))) {
        return "|B| exceeds K*|A|";
    }
    std::vector<Matrix> x_inv;
    for (const auto& y : c.x) x_inv.push_back(y.inverse());
    Matrix scratch;
    for (const auto& m : a) {
        bool left = false, right = false;
        for (const auto& xi : x_inv) {
            if (!left) {
                Matrix::multiply_into(scratch, xi, m);
                left = b.contains(scratch);
            }
            if (!right) {
                Matrix::multiply_into(scratch, m, xi);
                right = b.contains(scratch);
            }
            if (left && right) break;
        }
        if (!left) return "element " + m.to_string() + " is not in X*B";
        if (!right) return "element " + m.to_string() + " is not in B*X";
    }
    return std::nullopt;
}

namespace detail {

inline Rational control_constant(std::size_t x_size, std::size_t a_size, std::size_t b_size) {
    Rational k(static_cast<std::int64_t>(std::max<std::size_t>(x_size, 1)));
    if (a_size > 0) {
        Rational ratio = size_ratio(b_size, a_size);
        if (ratio > k) k = ratio;
    }
    return k;
}

// One side of the control cover. left=true covers A by X·B (x⁻¹a ∈ B),
// otherwise by B·X (a·x⁻¹ ∈ B). Extends `x` in place.
inline void greedy_translate_cover(const GroupSet& a, const GroupSet& b, const GroupSet& b_inv, bool left,
                                   std::vector<Matrix>& x, GrowthCap cap) {
    Matrix scratch;
    auto covers = [&](const Matrix& t_inv, const Matrix& m) {
        if (left) {
            Matrix::multiply_into(scratch, t_inv, m);
        } else {
            Matrix::multiply_into(scratch, m, t_inv);
        }
        return b.contains(scratch);
    };
    std::vector<char> covered(a.size(), 0);
    std::size_t remaining = a.size();
    for (const auto& t : x) {
        const Matrix t_inv = t.inverse();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!covered[i] && covers(t_inv, a[i])) {
                covered[i] = 1;
                --remaining;
            }
        }
    }
    const Matrix id = Matrix::identity(a.dim());
    for (std::size_t i = 0; i < a.size() && remaining > 0; ++i) {
        if (covered[i]) continue;
        // Translates that reach a[i]: a·b⁻¹ on the left, b⁻¹·a on the right.
        SetBuilder cands(a.dim(), cap, "certify_control(candidates)");
        for (const auto& bi : b_inv) cands.insert(left ? a[i] * bi : bi * a[i]);
        const GroupSet candidates = std::move(cands).build();

        std::vector<const Matrix*> order;
        if (candidates.contains(id)) order.push_back(&id);
        for (const auto& t : candidates) {
            if (!t.is_identity()) order.push_back(&t);
        }
        const Matrix* best = nullptr;
        std::size_t best_gain = 0;
        for (const Matrix* t : order) {
            const Matrix t_inv = t->inverse();
            std::size_t gain = 0;
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (!covered[j] && covers(t_inv, a[j])) ++gain;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = t;
                if (gain == remaining) break;
            }
        }
        const Matrix chosen = *best;
        const Matrix chosen_inv = chosen.inverse();
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (!covered[j] && covers(chosen_inv, a[j])) {
                covered[j] = 1;
                --remaining;
            }
        }
        x.push_back(chosen);
    }
}

}  // namespace detail

/// Greedy certificate that B controls A: cover A by left translates X·B, then
/// extend X until A ⊆ B·X as well. Translates are taken from A·B⁻¹ and B⁻¹·A,
/// the identity is preferred on ties, then canonical order.
inline ControlCertificate certify_control(const GroupSet& a, const GroupSet& b, GrowthCap cap = {}) {
    detail::require_same_dim(a, b, "certify_control");
    if (b.empty()) throw PreconditionError("certify_control needs a nonempty controlling set");
    const GroupSet b_inv = inverse_set(b);
    std::vector<Matrix> x;
    detail::greedy_translate_cover(a, b, b_inv, true, x, cap);
    detail::greedy_translate_cover(a, b, b_inv, false, x, cap);

    ControlCertificate c;
    c.x = GroupSet(a.dim(), std::move(x));
    c.a_size = a.size();
    c.b_size = b.size();
    c.k_witness = detail::control_constant(c.x.size(), a.size(), b.size());
    c.size_check = Rational(static_cast<std::int64_t>(b.size())) <=
                   c.k_witness * Rational(static_cast<std::int64_t>(a.size()));
    if (auto failure = verify_control(a, b, c)) throw Error("certify_control produced an invalid certificate: " + *failure);
    return c;
}

/// From "B controls A via X₁" and "C controls B via X₂", C controls A via
/// X₁X₂ ∪ X₂X₁ (so |X| ≤ 2|X₁||X₂|).
inline ControlCertificate compose_control(const GroupSet& a, const GroupSet& c_set, const ControlCertificate& ab,
                                          const ControlCertificate& bc, GrowthCap cap = {}) {
    GroupSet x = set_union(product_set(ab.x, bc.x, cap, "compose_control"),
                           product_set(bc.x, ab.x, cap, "compose_control"));
    ControlCertificate c;
    c.a_size = a.size();
    c.b_size = c_set.size();
    c.k_witness = detail::control_constant(x.size(), a.size(), c_set.size());
    c.x = std::move(x);
    c.size_check = Rational(static_cast<std::int64_t>(c_set.size())) <=
                   c.k_witness * Rational(static_cast<std::int64_t>(a.size()));
    return c;
}

// ---------------------------------------------------------------------------
// Ruzsa covering

struct RuzsaCover {
    GroupSet x1;  // A ⊆ B²·X1, translates B·x disjoint
    GroupSet x2;  // A ⊆ X2·B², translates x·B disjoint
    std::size_t a_size = 0;
    std::size_t b_size = 0;
    std::size_t ba_size = 0;
    std::size_t ab_size = 0;
    std::size_t b2_size = 0;
    Rational k;                  // max(|A·B|, |B·A|)/|B|
    bool b2_hypothesis = false;  // |B²| ≤ K·|A|, recorded only
    bool left_contained = false;
    bool right_contained = false;
    bool left_bound = false;   // |X1|·|B| ≤ |B·A|
    bool right_bound = false;  // |X2|·|B| ≤ |A·B|
};

inline RuzsaCover ruzsa_cover(const GroupSet& a, const GroupSet& b, GrowthCap cap = {}) {
    detail::require_same_dim(a, b, "ruzsa_cover");
    if (a.empty() || b.empty()) throw PreconditionError("ruzsa_cover needs nonempty sets");
    if (!b.is_symmetric()) throw PreconditionError("ruzsa_cover: B is not symmetric");

    auto pick = [&](bool left) {
        SetBuilder used(a.dim(), cap, "ruzsa_cover(translates)");
        std::vector<Matrix> chosen;
        Matrix scratch;
        for (const auto& x : a) {
            bool disjoint = true;
            for (const auto& y : b) {
                if (left) {
                    Matrix::multiply_into(scratch, y, x);
                } else {
                    Matrix::multiply_into(scratch, x, y);
                }
                if (used.contains(scratch)) {
                    disjoint = false;
                    break;
                }
            }
            if (!disjoint) continue;
            for (const auto& y : b) used.insert(left ? y * x : x * y);
            chosen.push_back(x);
        }
        return GroupSet(a.dim(), std::move(chosen));
    };

    RuzsaCover r;
    r.x1 = pick(true);
    r.x2 = pick(false);
    r.a_size = a.size();
    r.b_size = b.size();
    r.ba_size = product_set(b, a, cap, "ruzsa_cover(B*A)").size();
    r.ab_size = product_set(a, b, cap, "ruzsa_cover(A*B)").size();
    const GroupSet b2 = product_set(b, b, cap, "ruzsa_cover(B^2)");
    r.b2_size = b2.size();
    r.k = size_ratio(std::max(r.ab_size, r.ba_size), r.b_size);
    r.b2_hypothesis = Rational(static_cast<std::int64_t>(r.b2_size)) <= r.k * Rational(static_cast<std::int64_t>(r.a_size));
    r.left_bound = r.x1.size() * r.b_size <= r.ba_size;
    r.right_bound = r.x2.size() * r.b_size <= r.ab_size;

    auto contained = [&](const GroupSet& xs, bool left) {
        std::vector<Matrix> inv;
        for (const auto& x : xs) inv.push_back(x.inverse());
        Matrix scratch;
        for (const auto& m : a) {
            bool hit = false;
            for (const auto& xi : inv) {
                if (left) {
                    Matrix::multiply_into(scratch, m, xi);  // m ∈ B²·x
                } else {
                    Matrix::multiply_into(scratch, xi, m);  // m ∈ x·B²
                }
                if (b2.contains(scratch)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) return false;
        }
        return true;
    };
    r.left_contained = contained(r.x1, true);
    r.right_contained = contained(r.x2, false);
    return r;
}

// ---------------------------------------------------------------------------
// Homomorphisms, fibres and tripling of images

struct Homomorphism {
    std::string name;
    std::function<std::size_t(std::size_t)> out_dim;
    std::function<Matrix(const Matrix&)> apply;

    static Homomorphism pi() {
        return {"pi", [](std::size_t n) { return n - 1; }, [](const Matrix& g) { return pi_project(g); }};
    }
    static Homomorphism pi_prime() {
        return {"pi_prime", [](std::size_t n) { return n - 1; }, [](const Matrix& g) { return pi_prime_project(g); }};
    }
    /// Upper-triangular g ↦ its diagonal part.
    static Homomorphism diagonal_part() {
        return {"diagonal",
                [](std::size_t n) { return n; },
                [](const Matrix& g) {
                    detail::require_upper(g, "diagonal_part");
                    std::vector<GaussianRational> d;
                    for (std::size_t i = 0; i < g.dim(); ++i) d.push_back(g(i, i));
                    return Matrix::diagonal(d);
                }};
    }
    static Homomorphism by_name(const std::string& name) {
        if (name == "pi") return pi();
        if (name == "pi_prime" || name == "pi-prime") return pi_prime();
        if (name == "diagonal") return diagonal_part();
        throw PreconditionError("unknown homomorphism '" + name + "'");
    }

    GroupSet image(const GroupSet& a) const {
        return set_image(a, out_dim(a.dim()), apply);
    }
};

struct FiberReport {
    std::string hom;
    std::size_t set_size = 0;
    std::size_t square_size = 0;
    std::size_t fiber_count = 0;  // |π(A)|
    std::size_t max_fiber = 0;
    std::size_t min_fiber = 0;
    std::vector<std::size_t> fiber_sizes;  // in canonical order of π(A)
    Rational ratio;                        // max/min
    Rational k;                            // |A²|/|A|
    bool inequality_holds = false;         // max ≤ K·min
    bool count_bound_holds = false;        // max·|π(A)| ≤ |A²|
};

/// Groups A into fibres A_x = π⁻¹(x) ∩ A.
inline std::map<Matrix, std::vector<Matrix>> fibers(const GroupSet& a, const Homomorphism& hom) {
    std::map<Matrix, std::vector<Matrix>> out;
    for (const auto& m : a) out[hom.apply(m)].push_back(m);
    return out;
}

inline FiberReport fiber_stats(const GroupSet& a, const Homomorphism& hom, GrowthCap cap = {}) {
    if (a.empty()) throw PreconditionError("fiber_stats needs a nonempty set");
    if (a.dim() < 2 && hom.name != "diagonal") throw PreconditionError("fiber_stats: projection needs dimension at least 2");
    FiberReport r;
    r.hom = hom.name;
    const auto groups = fibers(a, hom);
    r.set_size = a.size();
    r.fiber_count = groups.size();
    r.min_fiber = a.size();
    for (const auto& [img, members] : groups) {
        r.fiber_sizes.push_back(members.size());
        r.max_fiber = std::max(r.max_fiber, members.size());
        r.min_fiber = std::min(r.min_fiber, members.size());
    }
    r.square_size = product_set(a, a, cap, "fiber_stats(A^2)").size();
    r.ratio = size_ratio(r.max_fiber, r.min_fiber);
    r.k = size_ratio(r.square_size, r.set_size);
    // max ≤ (|A²|/|A|)·min  ⇔  max·|A| ≤ |A²|·min
    r.inequality_holds = r.max_fiber * r.set_size <= r.square_size * r.min_fiber;
    // A_x·S ⊆ A² for a transversal S of the fibres, and |A_x·S| = |A_x||S|.
    r.count_bound_holds = r.max_fiber * r.fiber_count <= r.square_size;
    return r;
}

struct HomTriplingReport {
    std::string hom;
    std::size_t set_size = 0;
    std::size_t cube_size = 0;
    std::size_t image_size = 0;
    std::size_t image_cube_size = 0;
    Rational tripling;
    Rational image_tripling;
    bool identity_holds = false;  // π(A³) = π(A)³
    /// log(image tripling)/log(tripling) to six decimals; empty when tripling is 1.
    std::string log_ratio;
};

inline HomTriplingReport hom_tripling_report(const GroupSet& a, const Homomorphism& hom, GrowthCap cap = {}) {
    if (a.empty()) throw PreconditionError("hom_tripling_report needs a nonempty set");
    HomTriplingReport r;
    r.hom = hom.name;
    const GroupSet cube = power_set(a, 3, cap);
    const GroupSet image = hom.image(a);
    const GroupSet image_cube = power_set(image, 3, cap);
    r.set_size = a.size();
    r.cube_size = cube.size();
    r.image_size = image.size();
    r.image_cube_size = image_cube.size();
    r.tripling = size_ratio(r.cube_size, r.set_size);
    r.image_tripling = size_ratio(r.image_cube_size, r.image_size);
    r.identity_holds = hom.image(cube) == image_cube;
    if (r.cube_size != r.set_size) {
        const double t = static_cast<double>(r.cube_size) / static_cast<double>(r.set_size);
        const double ti = static_cast<double>(r.image_cube_size) / static_cast<double>(r.image_size);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", std::log(ti) / std::log(t));
        r.log_ratio = buf;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Intersections with subgroups

struct IntersectionGrowthReport {
    std::string subgroup;
    std::size_t max_power = 0;
    std::vector<std::size_t> power_sizes;         // |A^k|, k = 2..max_power
    std::vector<std::size_t> intersection_sizes;  // |A^k ∩ H|, k = 2..max_power
    std::vector<Rational> ratios;                 // |A^k ∩ H| / |A² ∩ H|
    bool monotone = false;
};

inline IntersectionGrowthReport intersection_growth(const GroupSet& a, const SubgroupPredicate& h,
                                                    std::size_t max_power, GrowthCap cap = {}) {
    if (!a.is_symmetric() || !a.contains_identity()) {
        throw PreconditionError("intersection_growth needs a symmetric set containing the identity");
    }
    if (max_power < 2) throw PreconditionError("intersection_growth needs max_power >= 2");
    IntersectionGrowthReport r;
    r.subgroup = h.name;
    r.max_power = max_power;
    const auto chain = power_chain(a, max_power, cap);
    for (std::size_t k = 2; k <= max_power; ++k) {
        r.power_sizes.push_back(chain[k - 1].size());
        r.intersection_sizes.push_back(intersect_subgroup(chain[k - 1], h.member).size());
    }
    r.monotone = std::is_sorted(r.intersection_sizes.begin(), r.intersection_sizes.end());
    for (auto s : r.intersection_sizes) r.ratios.push_back(size_ratio(s, r.intersection_sizes.front()));
    return r;
}

// ---------------------------------------------------------------------------
// Sum-product statistic on scalar sets

using ScalarSet = std::vector<GaussianRational>;

inline ScalarSet make_scalar_set(ScalarSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline ScalarSet sumset(const ScalarSet& u, const ScalarSet& v) {
    ScalarSet out;
    out.reserve(u.size() * v.size());
    for (const auto& x : u) {
        for (const auto& y : v) out.push_back(x + y);
    }
    return make_scalar_set(std::move(out));
}

inline ScalarSet productset(const ScalarSet& u, const ScalarSet& v) {
    ScalarSet out;
    out.reserve(u.size() * v.size());
    for (const auto& x : u) {
        for (const auto& y : v) out.push_back(x * y);
    }
    return make_scalar_set(std::move(out));
}

struct SolymosiStatistic {
    std::size_t u_size = 0, v_size = 0, w_size = 0;
    std::size_t sum_size = 0;      // |U+V|
    std::size_t product_size = 0;  // |U·W|
    std::uint64_t lhs = 0;         // |U+V|·|UW|
    /// (|U+V|·|UW|)² / (|U|³·|V|·|W|), the square of the ratio against
    /// |U|^{3/2}|V|^{1/2}|W|^{1/2}.
    Rational squared_ratio;
};

inline SolymosiStatistic solymosi_statistic(const ScalarSet& u_in, const ScalarSet& v_in, const ScalarSet& w_in) {
    if (u_in.empty() || v_in.empty() || w_in.empty()) throw PreconditionError("solymosi_statistic needs nonempty sets");
    const ScalarSet u = make_scalar_set(u_in), v = make_scalar_set(v_in), w = make_scalar_set(w_in);
    SolymosiStatistic s;
    s.u_size = u.size();
    s.v_size = v.size();
    s.w_size = w.size();
    s.sum_size = sumset(u, v).size();
    s.product_size = productset(u, w).size();
    s.lhs = static_cast<std::uint64_t>(s.sum_size) * s.product_size;
    const mpz_class lhs(static_cast<unsigned long>(s.lhs));
    const mpz_class us(static_cast<unsigned long>(s.u_size));
    const mpz_class den = us * us * us * static_cast<unsigned long>(s.v_size) * static_cast<unsigned long>(s.w_size);
    s.squared_ratio = Rational(mpq_class(lhs * lhs, den));
    return s;
}

// ---------------------------------------------------------------------------
// Passing to a finite-index subgroup

/// Labels left cosets xH of some subgroup H; label(id) names H itself.
struct CosetLabeler {
    std::string name;
    std::function<std::string(const Matrix&)> label;

    /// Two classes: diagonal matrices ("diagonal") and everything else ("other").
    /// A coset labelling whenever the diagonal subgroup has index 2 in the
    /// ambient group (e.g. dihedral-type groups).
    static CosetLabeler is_diagonal() {
        return {"is-diagonal", [](const Matrix& m) { return m.is_diagonal() ? std::string("diagonal") : std::string("other"); }};
    }
    /// Monomial matrices modulo the diagonal subgroup: the permutation pattern.
    static CosetLabeler monomial() {
        return {"monomial", [](const Matrix& m) {
                    std::string s;
                    for (std::size_t i = 0; i < m.dim(); ++i) {
                        std::size_t col = m.dim();
                        for (std::size_t j = 0; j < m.dim(); ++j) {
                            if (m(i, j).is_zero()) continue;
                            if (col != m.dim()) throw PreconditionError("monomial labeler: matrix is not monomial");
                            col = j;
                        }
                        if (i) s += ",";
                        s += std::to_string(col);
                    }
                    return s;
                }};
    }
    /// Upper-triangular matrices modulo the unitriangular subgroup: the diagonal.
    static CosetLabeler diagonal_entries() {
        return {"diagonal-entries", [](const Matrix& m) {
                    detail::require_upper(m, "diagonal-entries labeler");
                    std::string s;
                    for (std::size_t i = 0; i < m.dim(); ++i) {
                        if (i) s += ";";
                        s += m(i, i).to_string();
                    }
                    return s;
                }};
    }
    static CosetLabeler by_name(const std::string& name) {
        if (name == "is-diagonal") return is_diagonal();
        if (name == "monomial") return monomial();
        if (name == "diagonal-entries") return diagonal_entries();
        throw PreconditionError("unknown coset labeler '" + name + "'");
    }
};

struct FiniteIndexReport {
    std::string labeler;
    std::string identity_label;
    std::vector<std::pair<std::string, std::size_t>> classes;  // label order
    std::string chosen_label;
    GroupSet a_prime;
    GroupSet b;  // A'⁻¹A'
    GroupSet s;  // B^{±6}
    bool s_in_subgroup = false;
    Rational class_fraction;  // |A'|/|A|
    ControlCertificate certificate;  // S controls A
};

/// Largest label class A′ (ties: the subgroup's own label, then label order),
/// B = A′⁻¹A′, S = B^{±6}, and a certificate that S controls A.
inline FiniteIndexReport finite_index_reduce(const GroupSet& a, const CosetLabeler& labeler, GrowthCap cap = {}) {
    if (a.empty()) throw PreconditionError("finite_index_reduce needs a nonempty set");
    FiniteIndexReport r;
    r.labeler = labeler.name;
    r.identity_label = labeler.label(Matrix::identity(a.dim()));
    std::map<std::string, std::vector<Matrix>> classes;
    for (const auto& m : a) classes[labeler.label(m)].push_back(m);
    const std::vector<Matrix>* best = nullptr;
    for (const auto& [lab, members] : classes) {
        r.classes.emplace_back(lab, members.size());
        const bool better = best == nullptr || members.size() > best->size() ||
                            (members.size() == best->size() && lab == r.identity_label);
        if (better) {
            best = &members;
            r.chosen_label = lab;
        }
    }
    r.a_prime = GroupSet(a.dim(), *best);
    r.class_fraction = size_ratio(r.a_prime.size(), a.size());
    r.b = product_set(inverse_set(r.a_prime), r.a_prime, cap, "finite_index_reduce(B)");
    r.s = pm_power_set(r.b, 6, cap);
    r.s_in_subgroup = std::all_of(r.s.begin(), r.s.end(),
                                  [&](const Matrix& m) { return labeler.label(m) == r.identity_label; });
    r.certificate = certify_control(a, r.s, cap);
    return r;
}

}  // namespace apgroup
