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
#include <supext/inclusion.hpp>
#include <supext/oracle.hpp>

#include <gtest/gtest.h>

using namespace supext;

TEST(EnumerateIh, Counts)
{
    EXPECT_EQ(enumerate_ih(GroundSet(1)).size(), 1u);
    EXPECT_EQ(enumerate_ih(GroundSet(2)).size(), 4u);
    EXPECT_EQ(enumerate_ih(GroundSet(3)).size(), 18u);
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(enumerate_ih(GroundSet(n)).size(), oracle::count_nonempty_antichains(n));
        EXPECT_EQ(enumerate_ih(GroundSet(n)).size(), oracle::count_upclosed_families(n));
    }
    EXPECT_THROW((void)enumerate_ih(GroundSet(6)), error);
}

TEST(EnumerateIh, ContainsEveryMaxLinkedSystem)
{
    for (int n = 1; n <= 4; ++n) {
        const GroundSet g(n);
        const auto ih = enumerate_ih(g);
        const auto lambda = enumerate_mls(g);
        std::size_t mls = 0;
        for (const auto& a : ih) {
            const bool in_lambda = is_self_dual_upclosed(a.members()) &&
                                   lambda.index_of(MaxLinkedSystem::from_family(a.members())).has_value();
            ASSERT_EQ(a.is_mls(), in_lambda);
            mls += a.is_mls() ? 1 : 0;
        }
        EXPECT_EQ(mls, lambda.size());
        for (const auto& eta : lambda.systems()) {
            const auto a = InclusionHyperspace::from_system(eta);
            EXPECT_TRUE(std::find(ih.begin(), ih.end(), a) != ih.end());
        }
    }
}

TEST(InclusionHyperspace, RejectsEmpty)
{
    EXPECT_THROW((void)InclusionHyperspace::from_minimal(SetFamily(GroundSet(2), {})), error);
    EXPECT_THROW((void)InclusionHyperspace::from_minimal(SetFamily(GroundSet(2), {0})), error);
}

TEST(GMap, Examples)
{
    const GroundSet x(3), y(2);
    const PointMap f(x, y, {0, 0, 1});
    const auto tri = InclusionHyperspace::from_minimal(SetFamily(x, {0b011, 0b110, 0b101}));
    EXPECT_EQ(g_map(f, tri).minimal(), SetFamily(y, {0b01}));
    const auto two = InclusionHyperspace::from_minimal(SetFamily(x, {0b001, 0b100}));
    EXPECT_EQ(g_map(f, two).minimal(), SetFamily(y, {0b01, 0b10}));
    EXPECT_EQ(g_map(PointMap::identity(x), two), two);
}

TEST(GMap, FormulasAgreeAndCompose)
{
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            const GroundSet ga(a), gb(b);
            const auto ih = enumerate_ih(ga);
            for (const auto& f : all_maps(ga, gb)) {
                for (const auto& h : ih) {
                    ASSERT_EQ(g_map_image(f, h), g_map_preimage(f, h));
                    for (const auto& g : all_maps(gb, GroundSet(2))) {
                        ASSERT_EQ(g_map(g.after(f), h), g_map(g, g_map(f, h)));
                    }
                }
            }
        }
    }
}

TEST(CandidateSubbase, TwoPoints)
{
    const GroundSet g(2);
    const auto ih = enumerate_ih(g);
    const auto sb = candidate_subbase_gx(g, ih);
    EXPECT_EQ(sb.carrier(), 4u);
    ASSERT_EQ(sb.members().size(), 6u);
    EXPECT_EQ(sb.members()[0].count(), 2u);
    EXPECT_TRUE(sb.members()[2].all());
    EXPECT_TRUE(is_binary(sb).binary);
    EXPECT_THROW((void)candidate_subbase_gx(GroundSet(5)), error);
}
