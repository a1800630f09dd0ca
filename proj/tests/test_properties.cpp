#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace enumgeom;
using testing_support::macaulay_dimension;

namespace {

class CatalogRings : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogRings, BuchbergerIsCanonicalUnderPermutation) {
    const auto& ring = builtin(GetParam()).ring;
    auto rels = ring->relations();
    std::mt19937 rng(std::hash<std::string>{}(GetParam()) & 0xffffffffu);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(rels.begin(), rels.end(), rng);
        auto g = buchberger(ring->context(), rels);
        ASSERT_EQ(g.elements(), ring->basis().elements()) << "permutation " << i;
    }
}

TEST_P(CatalogRings, SPolynomialsReduceToZero) {
    const auto& g = builtin(GetParam()).ring->basis();
    const auto& els = g.elements();
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = i + 1; j < els.size(); ++j)
            ASSERT_TRUE(g.reduce(s_polynomial(els[i], els[j], g.order())).is_zero()) << i << "," << j;
}

TEST_P(CatalogRings, StandardMonomialCountsMatchMacaulayRank) {
    const auto& ring = builtin(GetParam()).ring;
    for (int d = 0; d <= ring->top_degree(); d += 2)
        ASSERT_EQ(standard_basis(*ring, d).size(), macaulay_dimension(*ring, d)) << "degree " << d;
}

INSTANTIATE_TEST_SUITE_P(All, CatalogRings, ::testing::ValuesIn(model_names()), [](const auto& info) {
    auto n = info.param;
    std::replace(n.begin(), n.end(), '-', '_');
    return n;
});

TEST(BlowupRings, SPolynomialsReduceToZero) {
    for (const auto& in : {complete_conics_input(), complete_quadrics_input(), sphere_at_point_input(),
                           veronese_p9_input()}) {
        auto r = blowup_presentation(in);
        const auto& els = r->basis().elements();
        for (std::size_t i = 0; i < els.size(); ++i)
            for (std::size_t j = i + 1; j < els.size(); ++j)
                ASSERT_TRUE(r->basis().reduce(s_polynomial(els[i], els[j], r->basis().order())).is_zero());
    }
}

TEST(RandomIdeals, CanonicalAndReduced) {
    std::mt19937 rng(11);
    auto ctx = make_context({"a", "b", "c"});
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Polynomial> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(testing_support::random_homogeneous(rng, ctx, 2 * (2 + i % 2), 3));
        auto g = buchberger(ctx, gens);
        for (const auto& p : gens) EXPECT_TRUE(g.reduce(p).is_zero());
        std::reverse(gens.begin(), gens.end());
        EXPECT_EQ(buchberger(ctx, gens).elements(), g.elements());
        for (std::size_t i = 0; i < g.elements().size(); ++i) {
            EXPECT_TRUE(g.elements()[i].leading_term(g.order()).second.is_one());
            for (std::size_t j = 0; j < g.elements().size(); ++j) {
                if (i == j) continue;
                for (const auto& [m, c] : g.elements()[i].terms())
                    EXPECT_FALSE(g.leading_monomials()[j].divides(m));
            }
        }
    }
}

}  // namespace
