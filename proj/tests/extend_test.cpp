/**
 * This file is part of the supext project.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <supext/functionals.hpp>

#include <gtest/gtest.h>

using namespace supext;

namespace {

const GroundSet g2(2);

PointFunction pf(GroundSet g, std::vector<Rational> v) { return PointFunction(g, std::move(v)); }

/// sup over k in [-10, 10], step 1/100, of k·v + min(phi0 - k·b).
Rational grid_floor(const Generator& gen, const PointFunction& phi0)
{
    std::optional<Rational> best;
    for (int i = -1000; i <= 1000; ++i) {
        const Rational k(i, 100);
        Rational m = phi0[0] - k * gen.b[0];
        for (int x = 1; x < phi0.ground().size(); ++x) {
            m = std::min(m, Rational(phi0[x] - k * gen.b[x]));
        }
        const Rational val = k * gen.value + m;
        if (!best || val > *best) {
            best = val;
        }
    }
    return *best;
}

} // namespace

TEST(ExtendOne, ConstantsOnly)
{
    const GeneratedSubspace b0(g2, {{PointFunction::constant(g2, 1), Rational(1)}});
    const auto e = extend_one(b0, pf(g2, {0, 1}));
    EXPECT_EQ(e.lower, 0);
    EXPECT_EQ(e.upper, 1);
    EXPECT_EQ(e.value, Rational(1, 2));
    EXPECT_EQ(extend_one(b0, pf(g2, {0, 1}), ExtensionChoice::lower).value, 0);
    EXPECT_EQ(extend_one(b0, pf(g2, {0, 1}), ExtensionChoice::upper).value, 1);
}

TEST(ExtendOne, OwnGeneratorIsInSubspace)
{
    const GeneratedSubspace b0(g2, {{pf(g2, {0, 1}), Rational(1, 2)}});
    try {
        (void)extend_one(b0, pf(g2, {0, 1}));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::in_subspace);
    }
}

// b1 = (0, 1) valued 1 together with the constants; phi0 = (0, 2) is pinned to 2.
TEST(ExtendOne, PinnedByGenerator)
{
    const Generator b1{pf(g2, {0, 1}), Rational(1)};
    const GeneratedSubspace b0(g2, {b1, {PointFunction::constant(g2, 1), Rational(1)}});
    const auto phi0 = pf(g2, {0, 2});
    const auto e = extend_one(b0, phi0);
    EXPECT_EQ(e.lower, 2);
    EXPECT_EQ(e.upper, 2);
    EXPECT_EQ(e.value, 2);
    EXPECT_EQ(grid_floor(b1, phi0), 2);
    EXPECT_EQ(-grid_floor(b1, phi0.scaled(-1)), 2);
}

TEST(ExtendOne, InconsistentGenerators)
{
    // Value above the maximum of the function breaks monotonicity.
    EXPECT_THROW(GeneratedSubspace(g2, {{pf(g2, {0, 1}), Rational(2)}}), error);
    // Two generators whose values contradict each other: b ≤ b' pointwise but v > v'.
    try {
        GeneratedSubspace(g2, {{pf(g2, {0, 1}), Rational(1)}, {pf(g2, {1, 1}), Rational(1, 2)}});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::inconsistent);
    }
}

// The exact floor dominates every grid point and is reached at a breakpoint.
TEST(ExtendOne, ExactFloorAgainstGrid)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        const GroundSet g(2 + i % 3);
        const auto b = detail::random_function(g, rng);
        if (b.is_constant()) {
            continue;
        }
        const Rational v = (b.min() + b.max()) / 2;
        const Generator gen{b, v};
        const auto phi0 = detail::random_function(g, rng);
        const auto exact = detail::line_floor(b, v, phi0);
        ASSERT_TRUE(exact.has_value());
        const auto grid = grid_floor(gen, phi0);
        ASSERT_GE(*exact, grid);
    }
}

// Generator values taken from a real functional always leave room, and the
// true value lies inside the interval.
TEST(ExtendOne, IntervalContainsTrueValue)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const GroundSet g(3);
        const auto systems = enumerate_mls(g);
        const Term t = Term::maxmin(systems[seed % systems.size()]);
        std::vector<Generator> gens;
        for (int i = 0; i < 3; ++i) {
            const auto b = detail::random_function(g, rng);
            gens.push_back({b, evaluate(t, b)});
        }
        const GeneratedSubspace b0(g, gens);
        const auto phi0 = detail::random_function(g, rng);
        const auto e = extend_one(b0, phi0);
        ASSERT_LE(e.lower, e.upper);
        const auto truth = evaluate(t, phi0);
        ASSERT_LE(e.lower, truth);
        ASSERT_LE(truth, e.upper);
        const auto bigger = b0.with({phi0, e.value});
        ASSERT_EQ(bigger.generators().size(), 4u);
    }
}
