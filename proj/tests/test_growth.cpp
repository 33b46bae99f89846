#include <gtest/gtest.h>

#include <random>

#include "apgroup/families.hpp"
#include "apgroup/growth.hpp"
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

std::vector<oracle::C> oracle_scalars(const std::vector<GaussianRational>& v) {
    std::vector<oracle::C> out;
    for (const auto& s : v) out.push_back({s.re().to_mpq(), s.im().to_mpq()});
    return out;
}

ScalarSet ints(std::initializer_list<std::int64_t> v) {
    ScalarSet out;
    for (auto k : v) out.push_back(GaussianRational(k));
    return out;
}

}  // namespace

TEST(Growth, ProgressionStats) {
    const auto r = growth_stats(line(-2, 2), 3);
    EXPECT_EQ(r.sizes, (std::vector<std::size_t>{5, 9, 13}));
    EXPECT_EQ(r.doubling, Rational(9, 5));
    EXPECT_EQ(r.tripling, Rational(13, 5));
    const auto g = growth_stats(families::torsion_diag(4), 4);
    EXPECT_EQ(g.doubling, Rational(1));
    EXPECT_EQ(g.tripling, Rational(1));
}

TEST(Growth, SubgroupCertificate) {
    const auto c = certify_approximate_group(families::torsion_diag(4));
    EXPECT_EQ(c.k_witness, 1u);
    EXPECT_TRUE(c.x.contains_identity());
    EXPECT_TRUE(c.valid());
}

TEST(Growth, ProgressionCertificateAgainstExhaustiveOracle) {
    for (std::int64_t l = 1; l <= 6; ++l) {
        const GroupSet a = line(-l, l);
        const auto c = certify_approximate_group(a);
        EXPECT_TRUE(c.valid());
        EXPECT_LE(c.k_witness, 4u);
        const std::size_t best = oracle::min_approximate_k(oracle::to_oracle(a), 4);
        ASSERT_NE(best, 0u) << "L=" << l;
        EXPECT_LE(best, 3u);
        EXPECT_LE(best, c.k_witness);
    }
}

TEST(Growth, InfiniteOrderTripleCertificate) {
    const Matrix g = Matrix::from_rows({{GaussianRational(2), GaussianRational(1)}, {GaussianRational(0), GaussianRational(1)}});
    const GroupSet a(2, {Matrix::identity(2), g, g.inverse()});
    const auto c = certify_approximate_group(a);
    EXPECT_TRUE(c.valid());
    EXPECT_LE(c.k_witness, 4u);
    const std::size_t best = oracle::min_approximate_k(oracle::to_oracle(a), 4);
    ASSERT_NE(best, 0u);
    EXPECT_LE(best, c.k_witness);
}

TEST(Growth, CertificatePreconditions) {
    EXPECT_THROW(certify_approximate_group(line(0, 2)), PreconditionError);
    EXPECT_THROW(certify_approximate_group(GroupSet(2, {x12(1), x12(-1)})), PreconditionError);
}

TEST(Growth, VerifierRejectsShortX) {
    const GroupSet a = line(-3, 3);
    const GroupSet sq = product_set(a, a);
    EXPECT_TRUE(verify_approximate_group(a, sq, GroupSet::identity(2)).has_value());
    EXPECT_FALSE(verify_approximate_group(a, sq, GroupSet(2, {Matrix::identity(2), x12(3), x12(-3), x12(6), x12(-6)})).has_value());
}

TEST(Growth, ControlExamples) {
    const GroupSet a = line(-3, 3);
    const auto same = certify_control(a, a);
    EXPECT_EQ(same.x, GroupSet::identity(2));
    EXPECT_EQ(same.k_witness, Rational(1));

    for (std::int64_t l = 1; l <= 5; ++l) {
        const auto c = certify_control(line(-2 * l, 2 * l), line(-l, l));
        EXPECT_LE(c.x.size(), 3u);
        EXPECT_FALSE(verify_control(line(-2 * l, 2 * l), line(-l, l), c).has_value());
    }

    // A = g·B = B·g for a central g: one translate on each side.
    const Matrix g = Matrix::scalar(2, GaussianRational(3));
    const GroupSet b = line(-2, 2);
    const GroupSet shifted = left_translate(g, b);
    const auto c = certify_control(shifted, b);
    EXPECT_EQ(c.x.size(), 1u);
}

TEST(Growth, ControlVerifierRejectsTampering) {
    const GroupSet a = line(-4, 4), b = line(-2, 2);
    auto c = certify_control(a, b);
    ASSERT_FALSE(verify_control(a, b, c).has_value());
    std::vector<Matrix> fewer(c.x.begin(), c.x.end());
    fewer.pop_back();
    c.x = GroupSet(2, fewer);
    EXPECT_TRUE(verify_control(a, b, c).has_value());
}

TEST(Growth, ComposeControl) {
    const GroupSet a = line(-8, 8), b = line(-4, 4), c_set = line(-2, 2);
    const auto ab = certify_control(a, b);
    const auto bc = certify_control(b, c_set);
    const auto ac = compose_control(a, c_set, ab, bc);
    EXPECT_LE(ac.x.size(), 2 * ab.x.size() * bc.x.size());
    EXPECT_FALSE(verify_control(a, c_set, ac).has_value());
}

TEST(Growth, RuzsaExamples) {
    const auto r = ruzsa_cover(line(-4, 4), line(-1, 1));
    EXPECT_EQ(r.ba_size, 11u);
    EXPECT_EQ(r.b_size, 3u);
    EXPECT_LE(r.x1.size(), 3u);
    EXPECT_TRUE(r.left_contained);
    EXPECT_TRUE(r.right_contained);

    const GroupSet t = families::torsion_diag(4);
    const auto sub = ruzsa_cover(t, t);
    EXPECT_EQ(sub.x1.size(), 1u);
    EXPECT_EQ(sub.x2.size(), 1u);

    const GroupSet a = families::random_upper_triangular(2, 9, 3);
    const auto single = ruzsa_cover(a, GroupSet::identity(2));
    EXPECT_EQ(single.x1, a);
}

TEST(Growth, RuzsaMatchesOracleContainment) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const GroupSet a = families::random_upper_triangular(2, 1 + rng() % 10, rng());
        const GroupSet b = symmetrize(families::random_upper_triangular(2, 1 + rng() % 5, rng()));
        const auto r = ruzsa_cover(a, b);
        const auto b2 = oracle::power(oracle::to_oracle(b), 2);
        const auto left = oracle::keys(oracle::product(b2, oracle::to_oracle(r.x1)));
        const auto right = oracle::keys(oracle::product(oracle::to_oracle(r.x2), b2));
        for (const auto& k : oracle::keys(a)) {
            EXPECT_TRUE(left.count(k));
            EXPECT_TRUE(right.count(k));
        }
        EXPECT_LE(r.x1.size() * b.size(), r.ba_size);
        EXPECT_LE(r.x2.size() * b.size(), r.ab_size);
    }
}

TEST(Growth, FiberExamples) {
    const auto f = fiber_stats(families::heisenberg_ball(1), Homomorphism::pi());
    EXPECT_EQ(f.fiber_count, 3u);
    std::vector<std::size_t> sizes = f.fiber_sizes;
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 5}));
    EXPECT_EQ(f.ratio, Rational(5));
    // |A²| = 29, so K = 29/7 < 5: the uniform-fibre inequality fails here,
    // while the transversal bound max·|π(A)| ≤ |A²| holds.
    EXPECT_EQ(f.square_size, 29u);
    EXPECT_FALSE(f.inequality_holds);
    EXPECT_TRUE(f.count_bound_holds);

    const auto sub = fiber_stats(families::torsion_diag(4), Homomorphism::diagonal_part());
    EXPECT_EQ(sub.ratio, Rational(1));

    const GroupSet corner = families::corner_progression(3, 3);
    const auto one = fiber_stats(corner, Homomorphism::pi());
    EXPECT_EQ(one.fiber_count, 1u);
    EXPECT_EQ(one.max_fiber, corner.size());
    EXPECT_EQ(one.min_fiber, corner.size());
}

TEST(Growth, HomTripling) {
    const auto r = hom_tripling_report(families::heisenberg_ball(1), Homomorphism::pi());
    EXPECT_EQ(r.image_tripling, Rational(7, 3));
    EXPECT_TRUE(r.identity_holds);
    const auto t = hom_tripling_report(families::unitriangular_ball(3, 0), Homomorphism::pi());
    EXPECT_EQ(t.image_tripling, Rational(1));
}

TEST(Growth, HomImageOfCubeIsCubeOfImage) {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 20; ++t) {
        const GroupSet a = families::random_upper_triangular(3, 1 + rng() % 20, rng());
        for (const auto& h : {Homomorphism::pi(), Homomorphism::pi_prime()}) {
            EXPECT_EQ(h.image(power_set(a, 3)), power_set(h.image(a), 3));
        }
    }
}

TEST(Growth, IntersectionExamples) {
    const GroupSet ball = families::heisenberg_ball(1);
    const auto r = intersection_growth(ball, SubgroupPredicate::unitriangular_center(), 4);
    EXPECT_EQ(r.intersection_sizes.front(), 5u);
    EXPECT_TRUE(r.monotone);

    const GroupSet corner = families::corner_progression(2, 3);
    const auto inside = intersection_growth(corner, SubgroupPredicate::corner(), 4);
    EXPECT_EQ(inside.intersection_sizes, inside.power_sizes);

    const auto whole = intersection_growth(ball, SubgroupPredicate::whole(), 4);
    const auto g = growth_stats(ball, 4);
    EXPECT_EQ(whole.intersection_sizes, std::vector<std::size_t>(g.sizes.begin() + 1, g.sizes.end()));
    EXPECT_THROW(intersection_growth(line(0, 2), SubgroupPredicate::corner(), 4), PreconditionError);
}

TEST(Growth, SolymosiExamples) {
    const auto one = solymosi_statistic(ints({1}), ints({1}), ints({1}));
    EXPECT_EQ(one.lhs, 1u);
    EXPECT_EQ(one.squared_ratio, Rational(1));

    const auto two = solymosi_statistic(ints({1, 2}), ints({1, 2}), ints({1, 2}));
    EXPECT_EQ(two.sum_size, 3u);
    EXPECT_EQ(two.product_size, 3u);
    EXPECT_EQ(two.squared_ratio, Rational(81, 32));

    const ScalarSet geo = ints({1, 2, 4, 8, 16});
    const auto g = solymosi_statistic(geo, geo, geo);
    EXPECT_EQ(g.product_size, 9u);
    EXPECT_EQ(g.sum_size, 15u);
    EXPECT_EQ(g.lhs, 135u);
}

TEST(Growth, SolymosiMatchesOracle) {
    std::mt19937_64 rng(71);
    const auto pool = families::default_entry_pool();
    for (int t = 0; t < 30; ++t) {
        ScalarSet u, w;
        for (std::size_t k = 0, m = 1 + rng() % 7; k < m; ++k) u.push_back(pool[rng() % pool.size()] * GaussianRational(static_cast<std::int64_t>(1 + rng() % 3)));
        for (std::size_t k = 0, m = 1 + rng() % 7; k < m; ++k) w.push_back(pool[rng() % pool.size()] + GaussianRational(1));
        const auto st = solymosi_statistic(u, u, w);
        const auto uo = oracle_scalars(make_scalar_set(u)), wo = oracle_scalars(make_scalar_set(w));
        EXPECT_EQ(st.sum_size, oracle::sumset_size(uo, uo));
        EXPECT_EQ(st.product_size, oracle::productset_size(uo, wo));
    }
}

TEST(Growth, DihedralReduce) {
    const GroupSet a = families::dihedral(2);
    ASSERT_EQ(a.size(), 10u);
    const auto r = finite_index_reduce(a, CosetLabeler::is_diagonal());
    EXPECT_EQ(r.chosen_label, "diagonal");
    EXPECT_EQ(r.a_prime.size(), 5u);
    const Matrix d = Matrix::diagonal({GaussianRational(2), GaussianRational(Rational(1, 2))});
    EXPECT_EQ(r.b, ordered_progression({d}, {4}));
    EXPECT_EQ(r.class_fraction, Rational(1, 2));
    EXPECT_TRUE(r.s_in_subgroup);
    EXPECT_FALSE(verify_control(a, r.s, r.certificate).has_value());
}

TEST(Growth, SingleClassReduce) {
    const GroupSet a = families::diag_progression(GaussianRational(3), 1);
    const auto r = finite_index_reduce(a, CosetLabeler::is_diagonal());
    EXPECT_EQ(r.a_prime, a);
    EXPECT_EQ(r.class_fraction, Rational(1));
    EXPECT_TRUE(r.s_in_subgroup);
}
