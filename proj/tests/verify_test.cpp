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
#include <supext/verify.hpp>

#include <gtest/gtest.h>

using namespace supext;

namespace {

Report run(const std::string& suite, int n, std::size_t workers = 1)
{
    RunConfig cfg;
    cfg.suite = suite;
    cfg.n = n;
    cfg.workers = workers;
    cfg.trials = 100;
    return run_verify_suite(cfg);
}

} // namespace

TEST(Verify, Counts)
{
    const auto r = run("counts", 5);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.body.at("expected"), 81);
    EXPECT_EQ(r.body.at("actual"), 81);
}

TEST(Verify, Eq1)
{
    const auto r = run("eq1", 3);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.body.at("checks_run"), 256);
}

TEST(Verify, PassingSuites)
{
    EXPECT_TRUE(run("functor-laws", 2).pass());
    EXPECT_TRUE(run("subbase-lambda", 3).pass());
    EXPECT_TRUE(run("usco-roundtrip", 3).pass());
    EXPECT_TRUE(run("axioms", 1).pass());
}

TEST(Verify, AxiomsFlagMinAndMaxOverPairs)
{
    const auto r = run("axioms", 2);
    EXPECT_FALSE(r.pass());
    ASSERT_EQ(r.body.at("failures").size(), 2u);
    for (const auto& f : r.body.at("failures")) {
        const auto kind = f.at("term").at("t").get<std::string>();
        EXPECT_TRUE(kind == "min" || kind == "max") << kind;
        EXPECT_EQ(f.at("axiom"), "homogeneity");
    }
}

TEST(Verify, UnknownSuiteAndLimits)
{
    try {
        (void)run("nope", 3);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::unknown_suite);
    }
    EXPECT_THROW((void)run("eq1", 6), error);
    EXPECT_THROW((void)run("counts", 0), error);
}

TEST(Verify, CsvSummary)
{
    const auto out = run("eq1", 2).render(OutputFormat::csv_summary);
    EXPECT_EQ(out.substr(0, out.find('\n')), "suite,anchor,n,checks_run,failures,pass");
    EXPECT_NE(out.find(",true\n"), std::string::npos);
}

TEST(Verify, IndependentOfWorkers)
{
    for (const char* s : {"eq1", "functor-laws", "usco-roundtrip", "axioms"}) {
        const auto a = run(s, 3, 1).render(OutputFormat::json);
        const auto b = run(s, 3, 8).render(OutputFormat::json);
        EXPECT_EQ(a, b) << s;
    }
}
