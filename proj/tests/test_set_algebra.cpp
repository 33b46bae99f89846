#include <gtest/gtest.h>

#include <random>

#include "apgroup/families.hpp"
#include "apgroup/group_set.hpp"
#include "apgroup/nilpotency.hpp"
#include "oracle.hpp"

using namespace apgroup;

namespace {

Matrix x12(std::int64_t k) { return Matrix::elementary(2, 0, 1, GaussianRational(k)); }

GroupSet line(std::int64_t lo, std::int64_t hi) {
    std::vector<Matrix> v;
    for (std::int64_t k = lo; k <= hi; ++k) v.push_back(x12(k));
    return GroupSet(2, v);
}

GroupSet random_set(std::mt19937_64& rng, std::size_t n, std::size_t size) {
    return families::random_upper_triangular(n, size, rng());
}

}  // namespace

TEST(GroupSet, DeduplicatesAndOrders) {
    GroupSet a(2, {x12(2), x12(1), x12(2), x12(0)});
    EXPECT_EQ(a.size(), 3u);
    EXPECT_EQ(a, line(0, 2));
    EXPECT_TRUE(a.contains(x12(1)));
    EXPECT_FALSE(a.contains(x12(3)));
    EXPECT_THROW(GroupSet(2, {Matrix::identity(3)}), PreconditionError);
}

TEST(SetAlgebra, ProductExamples) {
    EXPECT_EQ(product_set(line(-1, 1), line(-1, 1)), line(-2, 2));
    const GroupSet t4 = families::torsion_diag(4);
    EXPECT_EQ(product_set(t4, t4), t4);
    const GroupSet r = families::random_upper_triangular(3, 12, 4);
    EXPECT_EQ(product_set(r, GroupSet::identity(3)), r);
}

TEST(SetAlgebra, InverseExamples) {
    EXPECT_EQ(inverse_set(line(-3, 3)), line(-3, 3));
    EXPECT_EQ(inverse_set(GroupSet::singleton(x12(3))), GroupSet::singleton(x12(-3)));
    std::vector<Matrix> fwd, back;
    for (std::int64_t k = 0; k <= 3; ++k) {
        fwd.push_back(Matrix::diagonal({GaussianRational(Rational(std::int64_t{1} << k)), GaussianRational(1)}));
        back.push_back(Matrix::diagonal({GaussianRational(Rational(1, std::int64_t{1} << k)), GaussianRational(1)}));
    }
    EXPECT_EQ(inverse_set(GroupSet(2, fwd)), GroupSet(2, back));
}

TEST(SetAlgebra, PowerExamples) {
    const GroupSet a = line(0, 1);
    EXPECT_EQ(power_set(a, 3), line(0, 3));
    EXPECT_EQ(power_set(a, 1), a);
    EXPECT_EQ(pm_power_set(line(-1, 1), 4), power_set(line(-1, 1), 4));
    EXPECT_EQ(pm_power_set(line(1, 1), 2), GroupSet(2, {x12(-2), x12(0), x12(2)}));
    EXPECT_THROW(power_set(a, 0), PreconditionError);
}

TEST(SetAlgebra, SymmetrizeExamples) {
    EXPECT_EQ(symmetrize(line(-2, 2)), line(-2, 2));
    EXPECT_EQ(symmetrize(GroupSet::singleton(x12(1))), line(-1, 1));
    EXPECT_EQ(symmetrize(GroupSet(2)), GroupSet::identity(2));
}

TEST(SetAlgebra, IntersectExamples) {
    const GroupSet ball = families::heisenberg_ball(1);
    ASSERT_EQ(ball.size(), 7u);
    const GroupSet centre = intersect_subgroup(ball, SubgroupPredicate::unitriangular_center());
    EXPECT_EQ(centre.size(), 3u);
    EXPECT_EQ(intersect_subgroup(ball, [](const Matrix&) { return true; }), ball);
    const GroupSet corner = intersect_subgroup(ball, SubgroupPredicate::corner());
    EXPECT_EQ(corner, centre);
}

TEST(SetAlgebra, ProductMatchesOracle) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 2;
        const GroupSet a = random_set(rng, n, 1 + rng() % 12), b = random_set(rng, n, 1 + rng() % 12);
        EXPECT_EQ(oracle::keys(product_set(a, b)), oracle::keys(oracle::product(oracle::to_oracle(a), oracle::to_oracle(b))));
        EXPECT_EQ(oracle::keys(power_set(a, 3)), oracle::keys(oracle::power(oracle::to_oracle(a), 3)));
        const GroupSet sym = symmetrize(a);
        EXPECT_EQ(oracle::keys(power_set(sym, 3)), oracle::keys(oracle::power(oracle::to_oracle(sym), 3)));
    }
}

TEST(SetAlgebra, InverseLaws) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 30; ++t) {
        const GroupSet a = random_set(rng, 3, 1 + rng() % 15), b = random_set(rng, 3, 1 + rng() % 15);
        EXPECT_EQ(inverse_set(a).size(), a.size());
        EXPECT_EQ(inverse_set(inverse_set(a)), a);
        EXPECT_EQ(inverse_set(product_set(a, b)), product_set(inverse_set(b), inverse_set(a)));
        EXPECT_TRUE(symmetrize(a).is_symmetric());
        EXPECT_TRUE(symmetrize(a).contains_identity());
    }
}

TEST(SetAlgebra, PowerChainIsMonotoneWithIdentity) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 20; ++t) {
        const GroupSet a = symmetrize(random_set(rng, 2, 1 + rng() % 6));
        const auto chain = power_chain(a, 4);
        for (std::size_t k = 1; k < chain.size(); ++k) EXPECT_TRUE(chain[k - 1].is_subset_of(chain[k]));
        EXPECT_EQ(chain[3], power_set(a, 4));
    }
}

TEST(SetAlgebra, RuzsaTriangleInequality) {
    // |A|·|B·C⁻¹| ≤ |B·A⁻¹|·|A·C⁻¹|
    std::mt19937_64 rng(53);
    for (int t = 0; t < 30; ++t) {
        const GroupSet a = random_set(rng, 2, 1 + rng() % 8), b = random_set(rng, 2, 1 + rng() % 8),
                       c = random_set(rng, 2, 1 + rng() % 8);
        const std::size_t lhs = a.size() * product_set(b, inverse_set(c)).size();
        const std::size_t rhs = product_set(b, inverse_set(a)).size() * product_set(a, inverse_set(c)).size();
        EXPECT_LE(lhs, rhs);
    }
}

TEST(SetAlgebra, CapThrowsInsteadOfTruncating) {
    const GroupSet a = line(-10, 10);
    EXPECT_THROW(product_set(a, a, GrowthCap{30}), CapExceeded);
    EXPECT_NO_THROW(product_set(a, a, GrowthCap{41}));
    try {
        power_set(families::heisenberg_ball(1), 3, GrowthCap{20});
        FAIL() << "expected CapExceeded";
    } catch (const CapExceeded& e) {
        EXPECT_EQ(e.limit(), 20u);
    }
}

TEST(SetAlgebra, DimensionMismatch) {
    EXPECT_THROW(product_set(GroupSet::identity(2), GroupSet::identity(3)), PreconditionError);
}

TEST(SetAlgebra, BallProductContainment) {
    const GroupSet gens(3, {families::heisenberg_generators()[0], families::heisenberg_generators()[1]});
    const GroupSet b1 = group_ball(gens, 1), b2 = group_ball(gens, 2), b3 = group_ball(gens, 3);
    EXPECT_TRUE(product_set(b1, b2).is_subset_of(b3));
}
