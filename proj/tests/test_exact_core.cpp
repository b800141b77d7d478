#include "support.hpp"

#include <gtest/gtest.h>

using namespace toric;
using toric::testing::Rng;

namespace {

// Cofactor expansion, independent of the elimination code.
Rat cofactor_det(const QMat& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    if (n == 1) return m(0, 0);
    Rat total;
    for (std::size_t j = 0; j < n; ++j) {
        QMat minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        Rat term = m(0, j) * cofactor_det(minor);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

QMat random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    QMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.rat(6, 4);
    return m;
}

} // namespace

TEST(Rational, NormalizesAndParses) {
    EXPECT_EQ(Rat::parse("6/4"), Rat(BigInt(3), BigInt(2)));
    EXPECT_EQ(Rat::parse("-6/4").str(), "-3/2");
    EXPECT_EQ(Rat::parse("7").str(), "7");
    EXPECT_EQ(Rat::parse_decimal("0.25"), Rat(BigInt(1), BigInt(4)));
    EXPECT_EQ(Rat::parse_decimal("-1.5"), Rat::parse("-3/2"));
    EXPECT_EQ(Rat::parse_decimal("-0.25"), Rat::parse("-1/4"));
    EXPECT_THROW(Rat::parse_decimal("1."), std::exception);
    EXPECT_THROW(Rat::parse("1/0"), std::exception);
    EXPECT_THROW(Rat::parse("1/-2"), std::exception);
    EXPECT_THROW(Rat::parse("abc"), std::exception);
    EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
}

TEST(Rational, FloorCeilAndDoubles) {
    EXPECT_EQ(Rat::parse("-7/2").floor(), BigInt(-4));
    EXPECT_EQ(Rat::parse("-7/2").ceil(), BigInt(-3));
    EXPECT_EQ(Rat::parse("7/2").floor(), BigInt(3));
    EXPECT_EQ(Rat(4).ceil(), BigInt(4));
    EXPECT_EQ(Rat::from_double(0.1).to_double(), 0.1);
    EXPECT_EQ(Rat::from_double(-0.375), Rat::parse("-3/8"));
    EXPECT_THROW(Rat::from_double(std::nan("")), std::exception);
}

TEST(Rational, BigValuesDoNotOverflow) {
    Rat r(1);
    for (int i = 0; i < 40; ++i) r *= Rat(BigInt(1000003), BigInt(999983));
    for (int i = 0; i < 40; ++i) r /= Rat(BigInt(1000003), BigInt(999983));
    EXPECT_EQ(r, Rat(1));
}

TEST(Linalg, DeterminantMatchesCofactorOracle) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto n = static_cast<std::size_t>(rng.uniform(1, 5));
        QMat m = random_matrix(rng, n, n);
        if (trial % 7 == 0 && n > 1)
            for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) * Rat(3);
        EXPECT_EQ(det(m), cofactor_det(m)) << "trial " << trial;
    }
}

TEST(Linalg, DeterminantExamples) {
    EXPECT_EQ(det(QMat::identity(4)), Rat(1));
    EXPECT_EQ(det(QMat::from_rows(std::vector<IVec>{{1, 2}, {2, 4}}, 2)), Rat(0));
    EXPECT_EQ(det(QMat::from_rows(std::vector<IVec>{{0, 1}, {1, 0}}, 2)), Rat(-1));
    EXPECT_THROW(det(QMat(2, 3)), std::invalid_argument);
}

TEST(Linalg, SolveSatisfiesSystem) {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        auto rows = n + static_cast<std::size_t>(rng.uniform(0, 2));
        QMat a = random_matrix(rng, rows, n);
        QVec x = rng.rat_vec(n, 5, 3);
        QVec b = a * x;
        auto res = solve(a, b);
        if (rank(a) == n) {
            ASSERT_EQ(res.status, SolveStatus::Unique);
            EXPECT_EQ(res.x, x);
        } else {
            EXPECT_EQ(res.status, SolveStatus::Underdetermined);
        }
    }
}

TEST(Linalg, SolveDetectsInconsistency) {
    QMat a = QMat::from_rows(std::vector<IVec>{{1, 0}, {0, 1}, {1, 1}}, 2);
    auto res = solve(a, QVec{Rat(1), Rat(1), Rat(3)});
    EXPECT_EQ(res.status, SolveStatus::NoSolution);
    EXPECT_FALSE(res);
}

TEST(Linalg, NullspaceAnnihilates) {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto rows = static_cast<std::size_t>(rng.uniform(1, 4));
        auto cols = static_cast<std::size_t>(rng.uniform(1, 5));
        QMat m = random_matrix(rng, rows, cols);
        auto ns = nullspace(m);
        EXPECT_EQ(ns.size(), cols - rank(m));
        for (const auto& v : ns) EXPECT_EQ(m * v, QVec(rows));
    }
}

TEST(Linalg, PrimitiveVectors) {
    EXPECT_EQ(primitive(std::span<const std::int64_t>(IVec{4, -6, 0})), (IVec{2, -3, 0}));
    EXPECT_TRUE(is_primitive(std::span<const std::int64_t>(IVec{2, 3})));
    EXPECT_FALSE(is_primitive(std::span<const std::int64_t>(IVec{2, 4})));
    EXPECT_FALSE(is_primitive(std::span<const std::int64_t>(IVec{0, 0})));
    QVec q{Rat::parse("1/2"), Rat::parse("-3/4")};
    EXPECT_EQ(primitive(std::span<const Rat>(q)), (IVec{2, -3}));
}
