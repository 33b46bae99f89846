#pragma once

// Finite deduplicated sets of matrices and the product-set calculus on them.
//
// A GroupSet keeps its elements sorted in the canonical matrix order, which
// makes iteration (and therefore every greedy choice built on top of it)
// reproducible. Membership goes through an open-addressing index over the
// cached matrix hashes. Every operation that can grow a set takes a GrowthCap
// and throws CapExceeded instead of returning a truncated result.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apgroup/errors.hpp"
#include "apgroup/matrix.hpp"

namespace apgroup {

inline constexpr std::size_t kDefaultCap = 5'000'000;

struct GrowthCap {
    std::size_t max_elements = kDefaultCap;
};

namespace detail {

/// Open-addressing hash index over a vector of matrices; slots hold index + 1.
class SlotIndex {
public:
    void rebuild(const std::vector<Matrix>& items) {
        std::size_t cap = 16;
        while (cap < items.size() * 2 + 2) cap <<= 1;
        slots_.assign(cap, 0);
        mask_ = cap - 1;
        for (std::size_t i = 0; i < items.size(); ++i) place(items, i);
    }

    std::optional<std::size_t> find(const std::vector<Matrix>& items, const Matrix& m) const {
        if (slots_.empty()) return std::nullopt;
        std::size_t s = static_cast<std::size_t>(m.hash()) & mask_;
        while (slots_[s] != 0) {
            const std::size_t idx = slots_[s] - 1;
            if (items[idx] == m) return idx;
            s = (s + 1) & mask_;
        }
        return std::nullopt;
    }

    /// Registers items.back(); grows the table when half full.
    void push(const std::vector<Matrix>& items) {
        if (slots_.empty() || (items.size() + 1) * 2 > slots_.size()) {
            rebuild(items);
        } else {
            place(items, items.size() - 1);
        }
    }

private:
    std::vector<std::uint32_t> slots_;
    std::size_t mask_ = 0;

    void place(const std::vector<Matrix>& items, std::size_t idx) {
        std::size_t s = static_cast<std::size_t>(items[idx].hash()) & mask_;
        while (slots_[s] != 0) s = (s + 1) & mask_;
        slots_[s] = static_cast<std::uint32_t>(idx + 1);
    }
};

}  // namespace detail

class GroupSet {
public:
    explicit GroupSet(std::size_t n = 1) : n_(n) {
        if (n == 0) throw PreconditionError("matrix dimension must be positive");
        index_.rebuild(elems_);
    }

    /// Deduplicates; all elements must have dimension n.
    GroupSet(std::size_t n, std::vector<Matrix> elems) : n_(n), elems_(std::move(elems)) {
        if (n == 0) throw PreconditionError("matrix dimension must be positive");
        for (const auto& m : elems_) {
            if (m.dim() != n_) throw PreconditionError("set element has the wrong dimension");
        }
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        index_.rebuild(elems_);
    }

    static GroupSet singleton(const Matrix& m) { return GroupSet(m.dim(), {m}); }
    static GroupSet identity(std::size_t n) { return singleton(Matrix::identity(n)); }

    std::size_t dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    const Matrix& operator[](std::size_t i) const { return elems_[i]; }
    const std::vector<Matrix>& elements() const noexcept { return elems_; }

    bool contains(const Matrix& m) const { return m.dim() == n_ && index_.find(elems_, m).has_value(); }
    /// Position in canonical order.
    std::optional<std::size_t> index_of(const Matrix& m) const {
        if (m.dim() != n_) return std::nullopt;
        return index_.find(elems_, m);
    }

    bool is_subset_of(const GroupSet& other) const {
        if (other.n_ != n_) return false;
        return std::all_of(elems_.begin(), elems_.end(), [&](const Matrix& m) { return other.contains(m); });
    }
    bool contains_identity() const { return contains(Matrix::identity(n_)); }
    bool is_symmetric() const {
        return std::all_of(elems_.begin(), elems_.end(), [&](const Matrix& m) { return contains(m.inverse()); });
    }

    friend bool operator==(const GroupSet& a, const GroupSet& b) { return a.n_ == b.n_ && a.elems_ == b.elems_; }

private:
    friend class SetBuilder;
    std::size_t n_;
    std::vector<Matrix> elems_;
    detail::SlotIndex index_;

    struct Presorted {};
    GroupSet(Presorted, std::size_t n, std::vector<Matrix> elems) : n_(n), elems_(std::move(elems)) {
        index_.rebuild(elems_);
    }
};

/// Accumulates distinct matrices under an element budget.
class SetBuilder {
public:
    SetBuilder(std::size_t n, GrowthCap cap, std::string stage)
        : n_(n), cap_(cap), stage_(std::move(stage)) {
        index_.rebuild(items_);
    }

    /// Inserts a copy when absent; returns true if it was new.
    bool insert(const Matrix& m) {
        if (index_.find(items_, m)) return false;
        if (items_.size() >= cap_.max_elements) throw CapExceeded(stage_, cap_.max_elements);
        items_.push_back(m);
        index_.push(items_);
        return true;
    }

    bool contains(const Matrix& m) const { return index_.find(items_, m).has_value(); }
    std::size_t size() const noexcept { return items_.size(); }
    /// Elements in insertion order.
    const Matrix& item(std::size_t i) const { return items_[i]; }

    /// Sorted copy of the current contents.
    GroupSet snapshot() const {
        std::vector<Matrix> copy = items_;
        std::sort(copy.begin(), copy.end());
        return GroupSet(GroupSet::Presorted{}, n_, std::move(copy));
    }

    void rename(std::string stage) { stage_ = std::move(stage); }

    GroupSet build() && {
        std::sort(items_.begin(), items_.end());
        return GroupSet(GroupSet::Presorted{}, n_, std::move(items_));
    }

private:
    std::size_t n_;
    GrowthCap cap_;
    std::string stage_;
    std::vector<Matrix> items_;
    detail::SlotIndex index_;
};

namespace detail {

inline void require_same_dim(const GroupSet& a, const GroupSet& b, const char* op) {
    if (a.dim() != b.dim()) throw PreconditionError(std::string("dimension mismatch in ") + op);
}

}  // namespace detail

/// {a·b : a ∈ A, b ∈ B}.
inline GroupSet product_set(const GroupSet& a, const GroupSet& b, GrowthCap cap = {},
                            const std::string& stage = "product_set") {
    detail::require_same_dim(a, b, "product_set");
    SetBuilder out(a.dim(), cap, stage);
    Matrix scratch;
    for (const auto& x : a) {
        for (const auto& y : b) {
            Matrix::multiply_into(scratch, x, y);
            out.insert(scratch);
        }
    }
    return std::move(out).build();
}

inline GroupSet inverse_set(const GroupSet& a) {
    std::vector<Matrix> inv;
    inv.reserve(a.size());
    for (const auto& m : a) inv.push_back(m.inverse());
    return GroupSet(a.dim(), std::move(inv));
}

inline GroupSet set_union(const GroupSet& a, const GroupSet& b) {
    detail::require_same_dim(a, b, "set_union");
    std::vector<Matrix> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    return GroupSet(a.dim(), std::move(all));
}

/// A ∪ A⁻¹ ∪ {id}.
inline GroupSet symmetrize(const GroupSet& a) {
    std::vector<Matrix> all(a.begin(), a.end());
    for (const auto& m : a) all.push_back(m.inverse());
    all.push_back(Matrix::identity(a.dim()));
    return GroupSet(a.dim(), std::move(all));
}

namespace detail {

// When id ∈ A the powers are nested, and A^{k+1} = A^k ∪ F_k·A where
// F_k = A^k \ A^{k-1}; only the newest layer needs multiplying. on_power(k, b)
// is called after each A^k is complete.
template <class OnPower>
SetBuilder layered_powers(const GroupSet& a, std::size_t m, GrowthCap cap, OnPower on_power) {
    SetBuilder acc(a.dim(), cap, "power_set(A^1)");
    for (const auto& x : a) acc.insert(x);
    on_power(std::size_t{1}, acc);
    std::size_t layer_begin = 0;
    Matrix scratch;
    for (std::size_t k = 2; k <= m; ++k) {
        acc.rename("power_set(A^" + std::to_string(k) + ")");
        const std::size_t layer_end = acc.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (const auto& y : a) {
                Matrix::multiply_into(scratch, acc.item(i), y);
                acc.insert(scratch);
            }
        }
        layer_begin = layer_end;
        on_power(k, acc);
    }
    return acc;
}

}  // namespace detail

/// A¹, A², ..., A^m.
inline std::vector<GroupSet> power_chain(const GroupSet& a, std::size_t m, GrowthCap cap = {}) {
    if (m == 0) throw PreconditionError("power must be at least 1");
    std::vector<GroupSet> chain;
    chain.reserve(m);
    if (a.contains_identity()) {
        detail::layered_powers(a, m, cap, [&](std::size_t, const SetBuilder& b) { chain.push_back(b.snapshot()); });
        return chain;
    }
    chain.push_back(a);
    for (std::size_t k = 2; k <= m; ++k) {
        chain.push_back(product_set(chain.back(), a, cap, "power_set(A^" + std::to_string(k) + ")"));
    }
    return chain;
}

/// A^m by iterated right multiplication.
inline GroupSet power_set(const GroupSet& a, std::size_t m, GrowthCap cap = {}) {
    if (m == 0) throw PreconditionError("power must be at least 1");
    if (a.contains_identity()) {
        return detail::layered_powers(a, m, cap, [](std::size_t, const SetBuilder&) {}).build();
    }
    GroupSet p = a;
    for (std::size_t k = 2; k <= m; ++k) {
        p = product_set(p, a, cap, "power_set(A^" + std::to_string(k) + ")");
    }
    return p;
}

/// A^{±m} = {a₁^ε₁ ··· a_m^ε_m} = (A ∪ A⁻¹)^m.
inline GroupSet pm_power_set(const GroupSet& a, std::size_t m, GrowthCap cap = {}) {
    return power_set(set_union(a, inverse_set(a)), m, cap);
}

/// {a ∈ A : member(a)}; member is trusted to be a subgroup test.
inline GroupSet intersect_subgroup(const GroupSet& a, const std::function<bool(const Matrix&)>& member) {
    std::vector<Matrix> kept;
    for (const auto& m : a) {
        if (member(m)) kept.push_back(m);
    }
    return GroupSet(a.dim(), std::move(kept));
}

/// {f(a) : a ∈ A} in dimension out_dim.
inline GroupSet set_image(const GroupSet& a, std::size_t out_dim, const std::function<Matrix(const Matrix&)>& f) {
    std::vector<Matrix> img;
    img.reserve(a.size());
    for (const auto& m : a) img.push_back(f(m));
    return GroupSet(out_dim, std::move(img));
}

/// x·A.
inline GroupSet left_translate(const Matrix& x, const GroupSet& a) {
    std::vector<Matrix> out;
    out.reserve(a.size());
    for (const auto& m : a) out.push_back(x * m);
    return GroupSet(a.dim(), std::move(out));
}

/// A ∩ B.
inline GroupSet set_intersection(const GroupSet& a, const GroupSet& b) {
    detail::require_same_dim(a, b, "set_intersection");
    std::vector<Matrix> out;
    for (const auto& m : a) {
        if (b.contains(m)) out.push_back(m);
    }
    return GroupSet(a.dim(), std::move(out));
}

/// A named subgroup membership test.
struct SubgroupPredicate {
    std::string name;
    std::function<bool(const Matrix&)> member;

    bool operator()(const Matrix& m) const { return member(m); }

    /// The corner subgroup {id + λ·E_{1n}}.
    static SubgroupPredicate corner() { return {"corner", [](const Matrix& m) { return is_corner(m); }}; }
    static SubgroupPredicate diagonal() { return {"diagonal", [](const Matrix& m) { return m.is_diagonal(); }}; }
    static SubgroupPredicate unitriangular() {
        return {"unitriangular", [](const Matrix& m) { return m.is_unitriangular(); }};
    }
    /// Centre of the unitriangular group: unitriangular with nothing off the
    /// diagonal except possibly x_{1n}.
    static SubgroupPredicate unitriangular_center() {
        return {"center", [](const Matrix& m) {
                    if (!m.is_unitriangular()) return false;
                    const std::size_t n = m.dim();
                    for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t j = i + 1; j < n; ++j) {
                            if (i == 0 && j == n - 1) continue;
                            if (!m(i, j).is_zero()) return false;
                        }
                    }
                    return true;
                }};
    }
    static SubgroupPredicate scalar() {
        return {"scalar", [](const Matrix& m) {
                    if (!m.is_diagonal()) return false;
                    for (std::size_t i = 1; i < m.dim(); ++i) {
                        if (m(i, i) != m(0, 0)) return false;
                    }
                    return true;
                }};
    }
    static SubgroupPredicate whole() { return {"all", [](const Matrix&) { return true; }}; }

    /// Looks a predicate up by name; throws PreconditionError when unknown.
    static SubgroupPredicate by_name(const std::string& name) {
        if (name == "corner") return corner();
        if (name == "diagonal") return diagonal();
        if (name == "unitriangular") return unitriangular();
        if (name == "center") return unitriangular_center();
        if (name == "scalar") return scalar();
        if (name == "all") return whole();
        throw PreconditionError("unknown subgroup '" + name + "'");
    }
};

}  // namespace apgroup
