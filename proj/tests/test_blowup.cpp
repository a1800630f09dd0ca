#include "support.hpp"

#include <gtest/gtest.h>

using namespace enumgeom;
using testing_support::poly;

namespace {

std::vector<std::size_t> dims(const RingPresentation& r) {
    std::vector<std::size_t> out;
    for (int d = 0; d <= r.top_degree(); d += 2) out.push_back(standard_basis(r, d).size());
    return out;
}

std::size_t dim_at(const RingPresentation& r, int d) {
    return d < 0 || d > r.top_degree() ? 0 : standard_basis(r, d).size();
}

void expect_dimension_law(const BlowupInput& in, const RingPresentation& blown) {
    int k = in.codimension();
    for (int d = 0; d <= blown.top_degree(); d += 2) {
        std::size_t expected = dim_at(*in.base, d);
        for (int r = 1; r <= k - 1; ++r) expected += dim_at(*in.center, d - 2 * r);
        EXPECT_EQ(dim_at(blown, d), expected) << "degree " << d;
    }
}

/// P^2 blown up along a line: a divisor, so nothing changes.
BlowupInput line_in_plane() {
    const auto& p2 = builtin("p2").ring;
    auto lctx = make_context({"y"});
    auto line = make_presentation(lctx, {poly(lctx, "y^2")}, 2,
                                  Reference{Monomial{1}, Rational(1)}, "line");
    return BlowupInput{p2, line, {poly(line, "y")}, std::vector<Polynomial>{poly(p2, "x")}, {poly(line, "y")},
                       poly(p2, "x"), "z"};
}

TEST(ProjectiveBundlePresentation, DoubleLineBundle) {
    const auto& p3 = builtin("p3").ring;
    auto r = projective_bundle_presentation(p3, {poly(p3, "x"), poly(p3, "x^2"), poly(p3, "x^3")}, "rho");
    auto ctx = r->context();
    auto expected = buchberger(ctx, std::vector<Polynomial>{poly(ctx, "x^4"), poly(ctx, "rho^3 + rho^2*x + rho*x^2 + x^3")});
    EXPECT_TRUE(ideal_equal(r->basis(), expected));
    EXPECT_EQ(r->top_degree(), 10);
    EXPECT_FALSE(r->reference());
}

TEST(ProjectiveBundlePresentation, ConicBundle) {
    const auto& p3 = builtin("p3").ring;
    auto r = projective_bundle_presentation(
        p3, {poly(p3, "4*x"), poly(p3, "10*x^2"), poly(p3, "20*x^3"), p3->zero(), p3->zero(), p3->zero()}, "y");
    auto ctx = r->context();
    auto expected = buchberger(ctx, std::vector<Polynomial>{poly(ctx, "x^4"), poly(ctx, "y^6 + 4*x*y^5 + 10*x^2*y^4 + 20*x^3*y^3")});
    EXPECT_TRUE(ideal_equal(r->basis(), expected));
    EXPECT_EQ(r->top_degree(), 16);
}

TEST(ProjectiveBundlePresentation, SymmetricSquareOverGrassmannian) {
    const auto& x = builtin("x-variety").ring;
    auto ctx = x->context();
    auto expected = buchberger(ctx, std::vector<Polynomial>{poly(ctx, "2*c1*c2 - c1^3"), poly(ctx, "c2^2 - c1^2*c2"),
                                                            poly(ctx, "t^3 + 3*t^2*c1 + t*(2*c1^2 + 4*c2) + 2*c1^3")});
    EXPECT_TRUE(ideal_equal(x->basis(), expected));
    EXPECT_EQ(x->top_degree(), 12);
}

TEST(ProjectiveBundlePresentation, FreeModuleCountLaw) {
    struct Case {
        std::string model;
        Ring base;
        int rank;
    };
    std::vector<Case> cases{{"veronese-bundle", builtin("p3").ring, 3},
                            {"conic-bundle", builtin("p3").ring, 6},
                            {"x-variety", detail::grassmannian_lines_p3(), 3}};
    for (const auto& c : cases) {
        const auto& r = builtin(c.model).ring;
        for (int d = 0; d <= r->top_degree(); d += 2) {
            std::size_t expected = 0;
            for (int j = 0; j < c.rank; ++j) expected += dim_at(*c.base, d - 2 * j);
            EXPECT_EQ(dim_at(*r, d), expected) << c.model << " degree " << d;
        }
    }
}

TEST(ProjectiveBundlePresentation, Errors) {
    const auto& p3 = builtin("p3").ring;
    EXPECT_THROW(projective_bundle_presentation(p3, {poly(p3, "x^2")}, "t"), DegreeError);
    EXPECT_THROW(projective_bundle_presentation(p3, {}, "t"), std::invalid_argument);
    EXPECT_THROW(projective_bundle_presentation(p3, {poly(p3, "x")}, "x"), std::invalid_argument);
}

TEST(BlowupPresentation, CompleteConicsMatchesCatalogRing) {
    auto in = complete_conics_input();
    auto r = blowup_presentation(in);
    EXPECT_TRUE(ideal_equal(r->basis(), builtin("conics-p3").ring->basis()));
    ASSERT_TRUE(r->reference());
    EXPECT_EQ(integrate(*r, poly(r, "x^3*y^5")), Rational(1));
    expect_dimension_law(in, *r);
}

TEST(BlowupPresentation, CompleteQuadricsMatchesCatalogRing) {
    auto in = complete_quadrics_input();
    EXPECT_FALSE(in.section);
    auto r = blowup_presentation(in);
    EXPECT_TRUE(ideal_equal(r->basis(), builtin("quadrics-p3").ring->basis()));
    expect_dimension_law(in, *r);
    EXPECT_THROW(blowup_presentation(in, BlowupRoute::Section), MathError);
}

TEST(BlowupPresentation, SphereAtPointIsProjectiveSpace) {
    auto in = sphere_at_point_input();
    auto r = blowup_presentation(in);
    EXPECT_EQ(dims(*r), (std::vector<std::size_t>{1, 1, 1, 1}));
    auto ctx = r->context();
    auto expected = buchberger(ctx, std::vector<Polynomial>{poly(ctx, "s^2"), poly(ctx, "s*z"), poly(ctx, "s - z^3")});
    EXPECT_TRUE(ideal_equal(r->basis(), expected));
    EXPECT_TRUE(equal_in_ring(*r, poly(r, "z^4"), r->zero()));
    EXPECT_EQ(integrate(*r, poly(r, "z^3")), Rational(1));
    expect_dimension_law(in, *r);
}

TEST(BlowupPresentation, RoutesAgreeWhenSectionExists) {
    for (const auto& in : {complete_conics_input(), sphere_at_point_input(), veronese_p9_input()}) {
        auto a = blowup_presentation(in, BlowupRoute::Section);
        auto b = blowup_presentation(in, BlowupRoute::Pushforward);
        EXPECT_TRUE(ideal_equal(a->basis(), b->basis())) << in.base->name();
    }
}

TEST(BlowupPresentation, VeroneseRederivationGivesStoredRing) {
    auto in = veronese_p9_input();
    auto r = blowup_presentation(in);
    const auto& pt = builtin("ptilde9").ring;
    // v = -omega_E in the stored ring.
    EXPECT_TRUE(RingMap::check(r, pt, {poly(pt, "u"), poly(pt, "-v")}).empty());
    EXPECT_TRUE(RingMap::check(pt, r, {poly(r, "x"), poly(r, "-z")}).empty());
    expect_dimension_law(in, *r);
}

TEST(BlowupPresentation, ExceptionalMultiplesFollowSection) {
    auto in = complete_conics_input();
    auto r = blowup_presentation(in);
    auto incl = inclusion_images(*in.base->context(), r);
    auto z = r->var("z");
    std::vector<Polynomial> sigma;
    for (const auto& s : *in.section) sigma.push_back(substitute(s, incl, r->context()));
    for (std::size_t i = 0; i < in.base->context()->arity(); ++i) {
        auto restricted = substitute(in.restriction[i], sigma, r->context());
        EXPECT_TRUE(equal_in_ring(*r, r->var(i) * z, restricted * z));
    }
}

TEST(BlowupPresentation, DivisorCenterChangesNothing) {
    auto in = line_in_plane();
    auto r = blowup_presentation(in);
    EXPECT_TRUE(equal_in_ring(*r, poly(r, "z"), poly(r, "x")));
    EXPECT_EQ(dims(*r), dims(*in.base));
    EXPECT_EQ(integrate(*r, poly(r, "z^2")), Rational(1));
    expect_dimension_law(in, *r);
    auto r2 = blowup_presentation(in, BlowupRoute::Pushforward);
    EXPECT_TRUE(ideal_equal(r->basis(), r2->basis()));
}

TEST(ValidateBlowupInput, ReportsEachFailure) {
    auto in = complete_conics_input();
    EXPECT_TRUE(validate_blowup_input(in).empty());

    auto bad_map = in;
    bad_map.restriction[0] = poly(in.center, "x + rho");
    auto f = validate_blowup_input(bad_map);
    ASSERT_FALSE(f.empty());
    EXPECT_NE(f[0].find("restriction: relation"), std::string::npos);
    EXPECT_THROW(blowup_presentation(bad_map), ValidationError);

    auto bad_section = in;
    (*bad_section.section)[1] = poly(in.base, "y");
    f = validate_blowup_input(bad_section);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_NE(f[0].find("section"), std::string::npos);

    auto bad_dual = in;
    bad_dual.dual_class = poly(in.base, "y^3");
    f = validate_blowup_input(bad_dual);
    ASSERT_EQ(f.size(), 1u);

    auto clash = in;
    clash.exceptional_name = "x";
    auto short_chern = in;
    short_chern.normal_chern.pop_back();
    EXPECT_FALSE(validate_blowup_input(clash).empty());
    EXPECT_FALSE(validate_blowup_input(short_chern).empty());

    auto several = bad_section;
    several.dual_class = poly(in.base, "y^3");
    EXPECT_EQ(validate_blowup_input(several).size(), 2u);
}

TEST(SolveDualClass, ConicFamilyAndPin) {
    auto in = complete_conics_input();
    auto target = in.normal_chern.back();
    auto fam = solve_dual_class(in.base, in.center, in.restriction, target, 6);
    ASSERT_EQ(fam.directions.size(), 1u);
    auto pinned = solve_dual_class(in.base, in.center, in.restriction, target, 6, {{Monomial{0, 3}, Rational(4)}});
    EXPECT_TRUE(pinned.directions.empty());
    EXPECT_EQ(pinned.particular, poly(in.base, "4*y^3 + 8*x*y^2 + 8*x^2*y"));
    // The family is the pinned class plus the kernel direction.
    EXPECT_TRUE(in.center->reduce(substitute(fam.directions[0], in.restriction, in.center->context())).is_zero());
}

TEST(SolveDualClass, QuadricIsUnique) {
    auto in = complete_quadrics_input();
    auto fam = solve_dual_class(in.base, in.center, in.restriction, in.normal_chern.back(), 6);
    EXPECT_TRUE(fam.directions.empty());
    EXPECT_EQ(fam.particular, poly(in.base, "10*u^3 + 22*u^2*v + 16*u*v^2 + 4*v^3"));
}

TEST(SolveDualClass, IntegralBasisCoefficients) {
    // Unknowns over the integral basis {u^3, y^2 v, y v^2, v^3} with y v = u v / 2.
    auto in = complete_quadrics_input();
    const auto& base = in.base;
    std::vector<Polynomial> basis{poly(base, "u^3"), poly(base, "1/4*u^2*v"), poly(base, "1/2*u*v^2"), poly(base, "v^3")};
    auto rows = standard_basis(*in.center, 6);
    auto target = in.center->reduce(in.normal_chern.back());
    RationalMatrix a(rows.size(), RationalVector(basis.size()));
    RationalVector b(rows.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto img = in.center->reduce(substitute(basis[j], in.restriction, in.center->context()));
        for (std::size_t i = 0; i < rows.size(); ++i) a[i][j] = img.coefficient(rows[i]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) b[i] = target.coefficient(rows[i]);
    auto sol = linear_solve(a, b);
    ASSERT_TRUE(sol);
    EXPECT_TRUE(sol->nullspace.empty());
    EXPECT_EQ(sol->particular, (RationalVector{10, 88, 32, 4}));
}

TEST(SolveDualClass, PointInProjectiveSpace) {
    const auto& p4 = builtin("p4").ring;
    auto point = make_presentation(make_context({}), {}, 0, Reference{Monomial(std::size_t{0}), Rational(1)});
    auto pc = point->context();
    auto fam = solve_dual_class(p4, point, {Polynomial(pc)}, Polynomial(pc), 8, {{Monomial{4}, Rational(1)}});
    EXPECT_EQ(fam.particular, poly(p4, "x^4"));
    EXPECT_THROW(solve_dual_class(p4, point, {Polynomial(pc)}, Polynomial(pc), 8,
                                  {{Monomial{4}, Rational(1)}, {Monomial{4}, Rational(2)}}),
                 MathError);
}

}  // namespace
