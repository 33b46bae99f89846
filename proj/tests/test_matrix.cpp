#include <gtest/gtest.h>

#include <random>

#include "apgroup/families.hpp"
#include "apgroup/growth.hpp"
#include "apgroup/jordan.hpp"
#include "apgroup/matrix.hpp"
#include "oracle.hpp"

using namespace apgroup;

namespace {

GaussianRational s(std::int64_t v) { return GaussianRational(v); }
GaussianRational frac(std::int64_t n, std::int64_t d) { return GaussianRational(Rational(n, d)); }

Matrix upper2(std::int64_t a) { return Matrix::from_rows({{s(1), s(a)}, {s(0), s(1)}}); }

}  // namespace

TEST(Matrix, MultiplicationExamples) {
    EXPECT_EQ(upper2(3) * upper2(-7), upper2(-4));
    const Matrix g = Matrix::from_rows({{s(2), s(1)}, {s(0), frac(1, 3)}});
    EXPECT_EQ(g * Matrix::identity(2), g);
    EXPECT_EQ(corner_make(s(2), 3) * corner_make(s(5), 3), corner_make(s(7), 3));
    EXPECT_THROW(g * Matrix::identity(3), PreconditionError);
}

TEST(Matrix, InverseExamples) {
    EXPECT_EQ(Matrix::diagonal({s(2), frac(1, 2)}).inverse(), Matrix::diagonal({frac(1, 2), s(2)}));
    EXPECT_EQ(upper2(3).inverse(), upper2(-3));
    EXPECT_EQ(corner_make(s(4), 4).inverse(), corner_make(s(-4), 4));
    EXPECT_THROW(Matrix::from_rows({{s(1), s(2)}, {s(2), s(4)}}), PreconditionError);
}

TEST(Matrix, CommutatorExamples) {
    const auto h = families::heisenberg_generators();
    EXPECT_EQ(commutator(h[0], h[1]), Matrix::elementary(3, 0, 2, s(1)));
    const Matrix a = Matrix::diagonal({s(2), s(1)});
    EXPECT_EQ(commutator(a, upper2(1)), upper2(1));
    EXPECT_TRUE(commutator(a, Matrix::diagonal({s(3), frac(1, 5)})).is_identity());
}

TEST(Matrix, Projections) {
    const Matrix g = Matrix::from_rows({{s(1), s(2), s(3)}, {s(0), s(4), s(5)}, {s(0), s(0), s(6)}});
    EXPECT_EQ(pi_project(g), Matrix::from_rows({{s(1), s(2)}, {s(0), s(4)}}));
    EXPECT_EQ(pi_prime_project(g), Matrix::from_rows({{s(4), s(5)}, {s(0), s(6)}}));
    EXPECT_EQ(pi_project(Matrix::identity(4)), Matrix::identity(3));
    EXPECT_THROW(pi_project(Matrix::from_rows({{s(0), s(1)}, {s(1), s(0)}})), PreconditionError);
}

TEST(Matrix, Corner) {
    EXPECT_EQ(corner_make(s(7), 3), Matrix::elementary(3, 0, 2, s(7)));
    EXPECT_EQ(corner_extract(Matrix::identity(3)), std::optional<GaussianRational>(s(0)));
    EXPECT_FALSE(corner_extract(Matrix::elementary(3, 0, 1, s(1))).has_value());
    EXPECT_EQ(diag_ratio(Matrix::diagonal({s(2), s(1), s(4)})), frac(1, 2));
    EXPECT_EQ(diag_ratio(Matrix::elementary(3, 1, 2, s(9))), s(1));
}

TEST(Matrix, ProductAndInverseAgreeWithOracle) {
    std::mt19937_64 rng(5);
    const auto pool = families::default_entry_pool();
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 4;
        const Matrix g = families::random_upper_triangular_matrix(n, pool, rng);
        const Matrix h = families::random_upper_triangular_matrix(n, pool, rng);
        EXPECT_EQ(oracle::key(oracle::to_oracle(g * h)), oracle::key(oracle::mul(oracle::to_oracle(g), oracle::to_oracle(h))));
        EXPECT_EQ(oracle::key(oracle::to_oracle(g.inverse())), oracle::key(oracle::inverse(oracle::to_oracle(g))));
        EXPECT_TRUE((g * g.inverse()).is_identity());
    }
}

TEST(Matrix, GeneralInverseAgreesWithOracle) {
    const Matrix s2 = Matrix::from_rows({{s(0), s(1)}, {s(1), s(0)}});
    const Matrix g = Matrix::from_rows({{s(1), s(2), s(0)}, {GaussianRational::i(), s(0), s(1)}, {s(3), s(0), frac(1, 2)}});
    for (const Matrix& m : {s2, g}) {
        EXPECT_EQ(oracle::key(oracle::to_oracle(m.inverse())), oracle::key(oracle::inverse(oracle::to_oracle(m))));
    }
}

TEST(Matrix, LargeEntriesStayExact) {
    Matrix g = Matrix::from_rows({{s(3), s(1)}, {s(0), frac(1, 7)}});
    Matrix p = Matrix::identity(2);
    for (int k = 0; k < 60; ++k) p = p * g;
    Matrix q = p;
    for (int k = 0; k < 60; ++k) q = q * g.inverse();
    EXPECT_TRUE(q.is_identity());
    EXPECT_EQ(p(0, 0).re().to_mpq(), mpq_class(mpz_class("42391158275216203514294433201")));
}

TEST(Matrix, ConjugationLaw) {
    std::mt19937_64 rng(17);
    const auto pool = families::default_entry_pool();
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const Matrix y = families::random_upper_triangular_matrix(n, pool, rng);
        const GaussianRational lambda = pool[rng() % pool.size()] + s(static_cast<std::int64_t>(rng() % 5));
        EXPECT_EQ(y * corner_make(lambda, n) * y.inverse(), corner_make(diag_ratio(y) * lambda, n));
    }
}

TEST(Matrix, ProjectionsAreHomomorphisms) {
    std::mt19937_64 rng(23);
    const auto pool = families::default_entry_pool();
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const Matrix g = families::random_upper_triangular_matrix(n, pool, rng);
        const Matrix h = families::random_upper_triangular_matrix(n, pool, rng);
        EXPECT_EQ(pi_project(g * h), pi_project(g) * pi_project(h));
        EXPECT_EQ(pi_prime_project(g * h), pi_prime_project(g) * pi_prime_project(h));
        EXPECT_EQ(commutator(h, g), commutator(g, h).inverse());
    }
}

TEST(Matrix, CornerIsKernelIntersection) {
    std::mt19937_64 rng(29);
    const auto pool = families::default_entry_pool();
    for (int t = 0; t < 300; ++t) {
        const Matrix g = families::random_upper_triangular_matrix(3, pool, rng);
        const bool in_kernels = pi_project(g).is_identity() && pi_prime_project(g).is_identity();
        EXPECT_EQ(in_kernels, is_corner(g));
    }
}

TEST(Matrix, CanonicalOrderIsTotal) {
    std::mt19937_64 rng(31);
    const auto pool = families::default_entry_pool();
    for (int t = 0; t < 200; ++t) {
        const Matrix g = families::random_upper_triangular_matrix(2, pool, rng);
        const Matrix h = families::random_upper_triangular_matrix(2, pool, rng);
        EXPECT_EQ((g <=> h) == 0, g == h);
        if (g == h) {
            EXPECT_EQ(g.hash(), h.hash());
        }
    }
}

TEST(Jordan, OracleCases) {
    const Matrix g1 = Matrix::from_rows({{s(2), s(1)}, {s(0), s(3)}});
    auto jp = jordan_split(g1);
    EXPECT_EQ(jp.semisimple, g1);
    EXPECT_TRUE(jp.unipotent.is_identity());

    const Matrix g2 = Matrix::from_rows({{s(2), s(1)}, {s(0), s(2)}});
    jp = jordan_split(g2);
    EXPECT_EQ(jp.semisimple, Matrix::scalar(2, s(2)));
    EXPECT_EQ(jp.unipotent, Matrix::from_rows({{s(1), frac(1, 2)}, {s(0), s(1)}}));

    const Matrix u = Matrix::elementary(3, 0, 2, s(5)) * Matrix::elementary(3, 1, 2, s(1));
    jp = jordan_split(u);
    EXPECT_TRUE(jp.semisimple.is_identity());
    EXPECT_EQ(jp.unipotent, u);
}

TEST(Jordan, RandomUpperTriangularSplitsCheck) {
    std::mt19937_64 rng(37);
    const std::vector<GaussianRational> pool{s(1), s(1), s(2), s(-1), frac(1, 2), GaussianRational::i(), s(0), s(3)};
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 4;
        const Matrix g = families::random_upper_triangular_matrix(n, pool, rng);
        const auto jp = jordan_split(g);
        const auto c = check_jordan(g, jp);
        EXPECT_TRUE(c.ok()) << g.to_string() << ": " << c.failure;
    }
}

TEST(Jordan, RejectsNonTriangular) {
    EXPECT_THROW(jordan_split(Matrix::from_rows({{s(0), s(1)}, {s(1), s(0)}})), PreconditionError);
}
