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
#include <supext/oracle.hpp>
#include <supext/superext.hpp>

#include <gtest/gtest.h>

using namespace supext;

namespace {

MaxLinkedSystem triangle()
{
    return MaxLinkedSystem::from_minimal(SetFamily(GroundSet(3), {0b011, 0b110, 0b101}));
}

} // namespace

TEST(Enumerate, SmallCounts)
{
    EXPECT_EQ(enumerate_mls(GroundSet(1)).size(), 1u);
    const auto l3 = enumerate_mls(GroundSet(3));
    ASSERT_EQ(l3.size(), 4u);
    EXPECT_EQ(l3[0], eta_point(GroundSet(3), 0));
    EXPECT_EQ(l3[1], eta_point(GroundSet(3), 1));
    EXPECT_EQ(l3[2], eta_point(GroundSet(3), 2));
    EXPECT_EQ(l3[3], triangle());
}

TEST(Enumerate, MatchesOracles)
{
    for (int n = 1; n <= 6; ++n) {
        const auto expected = n <= 4 ? oracle::count_mls_family_scan(n) : oracle::count_mls_monotone_scan(n);
        EXPECT_EQ(enumerate_mls(GroundSet(n)).size(), expected) << "n=" << n;
        EXPECT_EQ(count_mls(GroundSet(n)), expected) << "n=" << n;
    }
    EXPECT_EQ(oracle::count_mls_family_scan(4), oracle::count_mls_monotone_scan(4));
}

TEST(Enumerate, EverySystemIsSelfDualAndDistinct)
{
    const auto l5 = enumerate_mls(GroundSet(5));
    for (std::size_t i = 0; i < l5.size(); ++i) {
        ASSERT_TRUE(is_self_dual_upclosed(l5[i].members()));
        ASSERT_TRUE(is_antichain(l5[i].minimal()));
        if (i > 0) {
            ASSERT_TRUE(l5[i - 1] < l5[i]);
        }
    }
}

TEST(Enumerate, IndependentOfWorkers)
{
    const auto one = enumerate_mls(GroundSet(6), {7, 1});
    for (std::size_t w : {2u, 3u, 8u}) {
        const auto many = enumerate_mls(GroundSet(6), {7, w});
        ASSERT_EQ(many.systems(), one.systems());
    }
}

TEST(Enumerate, RespectsCap)
{
    EXPECT_THROW((void)enumerate_mls(GroundSet(6), {5, 1}), error);
    EXPECT_THROW((void)enumerate_mls(GroundSet(9), {9, 1}), error);
    try {
        (void)enumerate_mls(GroundSet(8), {7, 1});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::ground_too_large);
    }
}

TEST(EtaPoint, Examples)
{
    EXPECT_EQ(eta_point(GroundSet(3), 1).minimal(), SetFamily(GroundSet(3), {0b010}));
    EXPECT_EQ(eta_point(GroundSet(1), 0).minimal(), SetFamily(GroundSet(1), {0b1}));
    EXPECT_THROW((void)eta_point(GroundSet(3), 3), error);
    for (int n = 1; n <= 5; ++n) {
        const auto l = enumerate_mls(GroundSet(n));
        for (int x = 0; x < n; ++x) {
            EXPECT_TRUE(l.index_of(eta_point(GroundSet(n), x)).has_value());
        }
    }
}

TEST(CompleteLinked, Examples)
{
    const GroundSet g(3);
    EXPECT_EQ(complete_linked(SetFamily(g, {0b111})), eta_point(g, 0));
    EXPECT_EQ(complete_linked(triangle().minimal()), triangle());
    EXPECT_EQ(complete_linked(eta_point(g, 2).members()), eta_point(g, 2));
    EXPECT_THROW((void)complete_linked(SetFamily(g, {0b001, 0b010})), error);
}

TEST(CompleteLinked, ContainsInputOnAllLinkedFamilies)
{
    const GroundSet g(3);
    for (std::uint32_t t = 0; t < 256; ++t) {
        std::vector<Mask> sets;
        for (std::uint32_t s = 1; s < 8; ++s) {
            if ((t >> s) & 1u) {
                sets.push_back(s);
            }
        }
        const SetFamily f(g, sets);
        if (!is_linked(f)) {
            continue;
        }
        const auto eta = complete_linked(f);
        for (Mask m : f) {
            ASSERT_TRUE(eta.contains(m));
        }
        ASSERT_TRUE(is_self_dual_upclosed(eta.members()));
    }
}

TEST(LambdaMap, Examples)
{
    const GroundSet x(3);
    const GroundSet y(2);
    EXPECT_EQ(lambda_map(PointMap::identity(x), triangle()), triangle());
    EXPECT_EQ(lambda_map(PointMap(x, y, {0, 0, 1}), triangle()), eta_point(y, 0));
    const auto lambda_sys = enumerate_mls(x);
    for (const auto& eta : lambda_sys.systems()) {
        EXPECT_EQ(lambda_map(PointMap(x, y, {1, 1, 1}), eta), eta_point(y, 1));
    }
    EXPECT_THROW((void)lambda_map(PointMap::identity(y), triangle()), error);
}

TEST(LambdaMap, FunctorLawsAndFormulas)
{
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            for (int c = 1; c <= 3; ++c) {
                const GroundSet ga(a), gb(b), gc(c);
                const auto systems = enumerate_mls(ga);
                for (const auto& f : all_maps(ga, gb)) {
                    for (const auto& g : all_maps(gb, gc)) {
                        for (const auto& eta : systems.systems()) {
                            ASSERT_EQ(lambda_map(g.after(f), eta), lambda_map(g, lambda_map(f, eta)));
                            ASSERT_EQ(lambda_map(f, eta).minimal(), lambda_map_image(f, eta));
                        }
                    }
                }
            }
        }
    }
}

TEST(PlusSet, Examples)
{
    const auto l3 = enumerate_mls(GroundSet(3));
    EXPECT_EQ(plus_set(0b111, l3).size(), 4u);
    EXPECT_EQ(plus_set(0b010, l3), std::vector<MaxLinkedSystem>{eta_point(GroundSet(3), 1)});
    const auto two = plus_set(0b011, l3);
    EXPECT_EQ(two, (std::vector<MaxLinkedSystem>{eta_point(GroundSet(3), 0), eta_point(GroundSet(3), 1), triangle()}));
    EXPECT_THROW((void)plus_set(0, l3), error);
}

// Every linked subfamily of {F+} has a common system, for n <= 4.
TEST(PlusSet, SubbaseIsBinary)
{
    for (int n = 1; n <= 4; ++n) {
        const GroundSet g(n);
        const auto l = enumerate_mls(g);
        std::vector<CarrierSet> ms;
        for (std::uint32_t f = 1; f < g.subset_count(); ++f) {
            ms.push_back(plus_carrier(f, l));
        }
        const std::size_t m = ms.size();
        for (std::uint32_t sub = 1; sub < (1u << m); ++sub) {
            CarrierSet common(l.size());
            common.set();
            bool linked = true;
            for (std::size_t i = 0; i < m && linked; ++i) {
                if (!((sub >> i) & 1u)) {
                    continue;
                }
                common &= ms[i];
                for (std::size_t j = i + 1; j < m && linked; ++j) {
                    linked = !((sub >> j) & 1u) || ms[i].intersects(ms[j]);
                }
            }
            ASSERT_TRUE(!linked || common.any());
        }
    }
}

TEST(MaxLinkedSystem, RejectsNonMaximal)
{
    EXPECT_THROW((void)MaxLinkedSystem::from_minimal(SetFamily(GroundSet(2), {0b11})), error);
    EXPECT_THROW((void)MaxLinkedSystem::from_minimal(SetFamily(GroundSet(2), {0b01, 0b11})), error);
    EXPECT_EQ(MaxLinkedSystem::from_family(SetFamily(GroundSet(2), {0b01, 0b11})), eta_point(GroundSet(2), 0));
}
