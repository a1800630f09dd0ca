#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace enumgeom;
using testing_support::poly;

namespace {

Context xy() { return make_context({"x", "y"}); }

TEST(Rational, LowestTermsAndSign) {
    Rational a(6, -4);
    EXPECT_EQ(a.str(), "-3/2");
    EXPECT_EQ(a.denominator(), 2);
    EXPECT_EQ(Rational(0, 7).str(), "0");
    EXPECT_EQ(Rational(0, 7).denominator(), 1);
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
}

TEST(Rational, ExactCancellation) {
    Rational a(1, 3), b(mpz_class("123456789012345678901234567890"), mpz_class(7));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(binomial(5, 3), Rational(10));
    EXPECT_EQ(factorial(6), Rational(720));
}

TEST(VariableContext, RejectsBadDeclarations) {
    EXPECT_THROW(make_context({"x", "x"}), std::invalid_argument);
    EXPECT_THROW(make_context({"x"}, {0}), std::invalid_argument);
    auto ctx = make_context({"s", "z"}, {6, 2});
    EXPECT_EQ(ctx->weight(0), 6);
    EXPECT_EQ(Monomial({1, 2}).weighted_degree(ctx->weights()), 10);
}

TEST(Arith, BinomialSquare) {
    auto ctx = xy();
    auto s = poly(ctx, "x + y");
    EXPECT_EQ(s * s, poly(ctx, "x^2 + 2*x*y + y^2"));
}

TEST(Arith, ZeroAnnihilates) {
    auto ctx = xy();
    auto p = poly(ctx, "3*x^2 - y + 7");
    EXPECT_TRUE((p * Polynomial(ctx)).is_zero());
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ((p - p).size(), 0u);
}

TEST(Arith, MultinomialCoefficient) {
    auto ctx = xy();
    auto p = poly(ctx, "2*x + y").pow(5);
    // Oracle: C(5,3) * 2^3.
    EXPECT_EQ(p.coefficient(Monomial{3, 2}), binomial(5, 3) * Rational(8));
    for (unsigned i = 0; i <= 5; ++i)
        EXPECT_EQ(p.coefficient(Monomial{static_cast<int>(i), static_cast<int>(5 - i)}),
                  binomial(5, i) * Rational(1L << i));
}

TEST(Arith, ContextMismatchThrows) {
    auto a = poly(xy(), "x");
    auto b = poly(make_context({"x", "z"}), "x");
    EXPECT_THROW(a + b, ContextMismatch);
}

TEST(Arith, RingAxiomsOnRandomInputs) {
    std::mt19937 rng(11);
    auto ctx = make_context({"x", "y", "z"});
    for (int i = 0; i < 100; ++i) {
        auto p = testing_support::random_polynomial(rng, ctx, 6, 5);
        auto q = testing_support::random_polynomial(rng, ctx, 6, 5);
        auto r = testing_support::random_polynomial(rng, ctx, 6, 5);
        EXPECT_EQ(p + q, q + p);
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ((p + q) + r, p + (q + r));
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
    }
}

TEST(Printing, DescendingTermsAndFractions) {
    auto ctx = make_context({"x", "y", "z"});
    auto p = poly(ctx, "z^2 - 1/2*x*y + 3*x^2 - 1");
    EXPECT_EQ(p.str(), "3*x^2 - 1/2*x*y + z^2 - 1");
    EXPECT_EQ(p.str(MonomialOrder::lex(*ctx)), "3*x^2 - 1/2*x*y + z^2 - 1");
    EXPECT_EQ(Polynomial(ctx).str(), "0");
    EXPECT_EQ(poly(ctx, "-x").str(), "-x");
}

TEST(Substitute, ScalarCube) {
    auto src = make_context({"y"});
    auto dst = make_context({"rho"});
    std::vector<Polynomial> images{poly(dst, "2*rho")};
    EXPECT_EQ(substitute(poly(src, "y^3"), images, dst), poly(dst, "8*rho^3"));
}

TEST(Substitute, KernelCofactorDoubles) {
    auto src = xy();
    auto dst = make_context({"x", "rho"});
    std::vector<Polynomial> images{poly(dst, "x"), poly(dst, "2*rho")};
    auto img = substitute(poly(src, "y^3 + 2*x*y^2 + 4*x^2*y + 8*x^3"), images, dst);
    EXPECT_EQ(img, Rational(8) * poly(dst, "rho^3 + x*rho^2 + x^2*rho + x^3"));
}

TEST(Substitute, ExceptionalDivisorMap) {
    auto src = make_context({"u", "v"});
    auto dst = xy();
    std::vector<Polynomial> images{poly(dst, "2*x"), poly(dst, "-2*x + y")};
    EXPECT_EQ(substitute(poly(src, "u"), images, dst), poly(dst, "2*x"));
    EXPECT_EQ(substitute(poly(src, "v"), images, dst), poly(dst, "-2*x + y"));
}

TEST(Substitute, MissingImageAndHomogeneity) {
    auto src = xy();
    auto dst = make_context({"t"});
    std::vector<Polynomial> one{poly(dst, "t")};
    EXPECT_THROW(substitute(poly(src, "x"), one, dst), std::invalid_argument);
    std::vector<Polynomial> bad{poly(dst, "t^2"), poly(dst, "t")};
    EXPECT_THROW(substitute_homogeneous(poly(src, "x"), bad, dst), DegreeError);
}

TEST(Substitute, IsARingHomomorphism) {
    std::mt19937 rng(5);
    auto src = make_context({"a", "b"});
    auto dst = make_context({"x", "y", "z"});
    for (int i = 0; i < 50; ++i) {
        std::vector<Polynomial> images{testing_support::random_polynomial(rng, dst, 4, 3),
                                       testing_support::random_polynomial(rng, dst, 4, 3)};
        auto p = testing_support::random_polynomial(rng, src, 6, 4);
        auto q = testing_support::random_polynomial(rng, src, 6, 4);
        EXPECT_EQ(substitute(p * q, images, dst), substitute(p, images, dst) * substitute(q, images, dst));
        EXPECT_EQ(substitute(p + q, images, dst), substitute(p, images, dst) + substitute(q, images, dst));
    }
}

TEST(WeightedDegreeSplit, Grouping) {
    auto ctx = make_context({"x"});
    auto parts = weighted_degree_split(poly(ctx, "1 + 3*x + x^2"));
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0].first, 0);
    EXPECT_EQ(parts[0].second, poly(ctx, "1"));
    EXPECT_EQ(parts[1].first, 2);
    EXPECT_EQ(parts[1].second, poly(ctx, "3*x"));
    EXPECT_EQ(parts[2].first, 4);
    EXPECT_EQ(parts[2].second, poly(ctx, "x^2"));
    EXPECT_TRUE(weighted_degree_split(Polynomial(ctx)).empty());
}

TEST(WeightedDegreeSplit, HomogeneousSextic) {
    auto ctx = xy();
    auto parts = weighted_degree_split(poly(ctx, "y^6 + 4*x*y^5 + 10*x^2*y^4 + 20*x^3*y^3"));
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].first, 12);
}

TEST(WeightedDegreeSplit, RecombinesOnRandomInputs) {
    std::mt19937 rng(3);
    auto ctx = make_context({"a", "b", "c"}, {2, 4, 6});
    for (int i = 0; i < 50; ++i) {
        auto p = testing_support::random_polynomial(rng, ctx, 12, 8);
        Polynomial sum(ctx);
        int last = -1;
        for (const auto& [d, part] : weighted_degree_split(p)) {
            EXPECT_GT(d, last);
            last = d;
            EXPECT_EQ(part.homogeneous_degree(), d);
            sum += part;
        }
        EXPECT_EQ(sum, p);
    }
}

TEST(LinearSolve, DualClassFamilyWithPin) {
    // Unknowns (a, b, c, d); rows 8a - d = 32, 4b - d = 32, 2c - d = 16.
    RationalMatrix a{{8, 0, 0, -1}, {0, 4, 0, -1}, {0, 0, 2, -1}};
    RationalVector b{32, 32, 16};
    auto sol = linear_solve(a, b);
    ASSERT_TRUE(sol);
    ASSERT_EQ(sol->nullspace.size(), 1u);
    a.push_back({1, 0, 0, 0});
    b.push_back(4);
    auto pinned = linear_solve(a, b);
    ASSERT_TRUE(pinned);
    EXPECT_TRUE(pinned->nullspace.empty());
    EXPECT_EQ(pinned->particular, (RationalVector{4, 8, 8, 0}));
}

TEST(LinearSolve, Identity) {
    RationalMatrix a{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    RationalVector b{Rational(1, 2), 7, -3};
    auto sol = linear_solve(a, b);
    ASSERT_TRUE(sol);
    EXPECT_EQ(sol->particular, b);
    EXPECT_TRUE(sol->nullspace.empty());
}

TEST(LinearSolve, InconsistentIsDistinctFromEmptyNullspace) {
    RationalMatrix a{{1, 1}, {2, 2}};
    EXPECT_FALSE(linear_solve(a, RationalVector{1, 3}));
    EXPECT_TRUE(linear_solve(a, RationalVector{1, 2}));
    EXPECT_THROW(linear_solve(a, RationalVector{1}), std::invalid_argument);
}

TEST(LinearSolve, NoRowsKeepsColumnCount) {
    auto sol = linear_solve({}, {}, 3);
    ASSERT_TRUE(sol);
    EXPECT_EQ(sol->particular.size(), 3u);
    EXPECT_EQ(sol->nullspace.size(), 3u);
}

TEST(LinearSolve, RandomSystemsAndRowPermutations) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = 2 + trial % 4, cols = 2 + (trial / 4) % 4;
        RationalMatrix a(rows, RationalVector(cols));
        for (auto& r : a)
            for (auto& v : r) v = coeff(rng);
        RationalVector x0(cols);
        for (auto& v : x0) v = coeff(rng);
        auto b = mat_vec(a, x0);
        auto sol = linear_solve(a, b);
        ASSERT_TRUE(sol);
        EXPECT_EQ(mat_vec(a, sol->particular), b);
        for (const auto& n : sol->nullspace) EXPECT_EQ(mat_vec(a, n), RationalVector(rows, Rational(0)));
        EXPECT_EQ(sol->nullspace.size(), cols - matrix_rank(a));

        std::vector<std::size_t> perm(rows);
        for (std::size_t i = 0; i < rows; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        RationalMatrix pa;
        RationalVector pb;
        for (auto i : perm) {
            pa.push_back(a[i]);
            pb.push_back(b[i]);
        }
        auto psol = linear_solve(pa, pb);
        ASSERT_TRUE(psol);
        EXPECT_EQ(psol->nullspace.size(), sol->nullspace.size());
        // Same affine set: each particular solution satisfies the other system,
        // and the nullspaces span the same space.
        EXPECT_EQ(mat_vec(a, psol->particular), b);
        EXPECT_EQ(mat_vec(pa, sol->particular), pb);
        RationalMatrix both = sol->nullspace;
        both.insert(both.end(), psol->nullspace.begin(), psol->nullspace.end());
        if (!both.empty()) { EXPECT_EQ(matrix_rank(both), sol->nullspace.size()); }
    }
}

}  // namespace
