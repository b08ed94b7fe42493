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
#include <supext/io.hpp>

#include <gtest/gtest.h>

using namespace supext;

TEST(Parse, ReportsLineAndColumn)
{
    try {
        (void)io::parse("{\n  \"n\": 3,\n  oops\n}", "bad.json");
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::parse_error);
        const std::string what = e.what();
        EXPECT_NE(what.find("bad.json"), std::string::npos) << what;
        EXPECT_NE(what.find("line 3"), std::string::npos) << what;
    }
    EXPECT_THROW((void)io::read_file("/nonexistent/file.json"), error);
}

TEST(Family, RoundTrip)
{
    const SetFamily f(GroundSet(3), {0b011, 0b110, 0b101});
    const auto j = io::to_json(f);
    EXPECT_EQ(j.at("n"), 3);
    EXPECT_EQ(j.at("sets"), io::json::parse(R"(["3","5","6"])"));
    EXPECT_EQ(io::family_from_json(j), f);
}

TEST(Superextension, Json)
{
    const auto j = io::to_json(enumerate_mls(GroundSet(2)));
    EXPECT_EQ(j.dump(), R"({"n":2,"count":2,"systems":[["1"],["2"]]})");
}

TEST(Term, RoundTrip)
{
    const GroundSet g(3);
    const auto eta = MaxLinkedSystem::from_minimal(SetFamily(g, {0b011, 0b110, 0b101}));
    const std::vector<Term> terms{
        Term::dirac(g, 2),
        Term::maxmin(eta),
        Term::min_over(g, 0b011),
        Term::max_over(g, 0b111),
        Term::linear(g, {Rational(1, 3), Rational(2, 3), 0}),
        Term::convex({Rational(1, 2), Rational(1, 2)}, {Term::max_over(g, 7), Term::min_over(g, 7)}),
        Term::precompose(PointMap(GroundSet(4), g, {0, 1, 2, 2}), Term::maxmin(eta_point(GroundSet(4), 3))),
    };
    const PointFunction f(g, {Rational(-1), Rational(1, 2), Rational(4)});
    for (const auto& t : terms) {
        const auto j = io::to_json(t);
        const auto back = io::term_from_json(j, g);
        EXPECT_EQ(io::to_json(back), j);
        EXPECT_EQ(evaluate(back, f), evaluate(t, f));
        EXPECT_EQ(io::term_oracle_from_json(j, g)(f), evaluate(t, f));
    }
}

TEST(Term, Errors)
{
    const GroundSet g(2);
    EXPECT_THROW((void)io::term_from_json(io::json::parse(R"({"t":"nope"})"), g), error);
    EXPECT_THROW((void)io::term_from_json(io::json::parse(R"({"t":"dirac","x":5})"), g), error);
    EXPECT_THROW((void)io::term_from_json(io::json::parse(R"({"n":3,"t":"dirac","x":0})"), g), error);
    const auto broken = io::json::parse(R"({"t":"linear","w":["2","-1"]})");
    EXPECT_THROW((void)io::term_from_json(broken, g), error);
    // The unchecked path still evaluates, so the axiom check can report it.
    const auto u = io::term_oracle_from_json(broken, g);
    EXPECT_EQ(u(PointFunction(g, {Rational(1), Rational(3)})), -1);
}

TEST(Values, ParseCsv)
{
    EXPECT_EQ(io::parse_values("1, -2/4,3"), (std::vector<Rational>{1, Rational(-1, 2), 3}));
    EXPECT_THROW((void)io::parse_values("1,x"), error);
    EXPECT_THROW((void)io::parse_values("1/0"), error);
}

TEST(Generators, RoundTrip)
{
    const auto j = io::json::parse(R"({"n":2,"generators":[{"b":["0","1"],"v":"1"},{"b":[1,1],"v":1}]})");
    const auto s = io::generators_from_json(j);
    EXPECT_EQ(s.generators().size(), 2u);
    const auto out = io::to_json(s);
    EXPECT_EQ(io::to_json(io::generators_from_json(out)), out);
}

TEST(Subbase, RoundTrip)
{
    const auto j = io::json::parse(R"({"carrier":3,"members":["3","6","5"]})");
    const auto sb = io::subbase_from_json(j);
    EXPECT_EQ(sb.members().size(), 3u);
    EXPECT_EQ(io::to_json(sb), j);
    EXPECT_THROW((void)io::subbase_from_json(io::json::parse(R"({"carrier":3,"members":["8"]})")), error);
}

TEST(Operator, RoundTrip)
{
    const auto j = io::json::parse(R"({
        "X": {"n": 2, "min_nbhd": ["1", "2"]},
        "Y": {"n": 3, "min_nbhd": ["1", "2", "7"]},
        "inject": [0, 1],
        "table": [["0", "0"], ["1", "1"], ["2", "2"], ["3", "7"]]})");
    const auto e = io::operator_from_json(j);
    EXPECT_FALSE(validate_regular(e).has_value());
    EXPECT_EQ(io::to_json(e), j);
    EXPECT_EQ(io::violation_json(std::nullopt).dump(), R"({"valid":true})");
    const auto u = io::to_json(usco_from_regular(e));
    EXPECT_EQ(u.at("check").dump(), R"({"nonempty":true,"point_fixed":true,"usc":true})");
}
