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
#pragma once

/// @file io.hpp
/// JSON file formats. Masks are lowercase hex without leading zeros (bit i
/// is point i, points 0-indexed); rationals are "p/q" strings.
///
///   family     {"n": int, "sets": [hex]}
///   systems    {"n": int, "count": int, "systems": [[hex]]}
///   term       {"t":"dirac","x":int} | {"t":"maxmin","minimal":[hex]}
///              | {"t":"min","F":hex} | {"t":"max","F":hex}
///              | {"t":"linear","w":["p/q"]}
///              | {"t":"convex","w":["p/q"],"parts":[term]}
///              | {"t":"precompose","map":[int],"inner":term}
///   generators {"n": int, "generators": [{"b": ["p/q"], "v": "p/q"}]}
///   subbase    {"carrier": int, "members": [hex]}
///   space      {"n": int, "min_nbhd": [hex]}
///   operator   {"X": space, "Y": space, "inject": [int], "table": [[hexU, hexEU]]}

#include <supext/embed.hpp>
#include <supext/functionals.hpp>
#include <supext/inclusion.hpp>
#include <supext/subbase.hpp>
#include <supext/superext.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace supext::io {

using json = nlohmann::ordered_json;

/// Parses text, mapping syntax errors to ParseError with the parser's
/// line/column report.
[[nodiscard]] inline json parse(const std::string& text, const std::string& origin = "input")
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw error(errc::parse_error, origin + ": " + e.what());
    }
}

[[nodiscard]] inline json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw error(errc::parse_error, "cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

namespace detail {

template <class T>
T get(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw error(errc::parse_error, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw error(errc::parse_error, std::string("field '") + key + "': " + e.what());
    }
}

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw error(errc::parse_error, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline std::vector<Mask> masks(const json& arr)
{
    if (!arr.is_array()) {
        throw error(errc::parse_error, "expected an array of hex masks");
    }
    std::vector<Mask> out;
    for (const auto& h : arr) {
        if (!h.is_string()) {
            throw error(errc::parse_error, "expected a hex string");
        }
        out.push_back(from_hex(h.get<std::string>()));
    }
    return out;
}

inline json hex_list(const SetFamily& fam)
{
    json arr = json::array();
    for (Mask m : fam) {
        arr.push_back(to_hex(m));
    }
    return arr;
}

inline std::vector<Rational> rationals(const json& arr)
{
    if (!arr.is_array()) {
        throw error(errc::parse_error, "expected an array of rationals");
    }
    std::vector<Rational> out;
    for (const auto& v : arr) {
        if (v.is_string()) {
            out.push_back(parse_rational(v.get<std::string>()));
        } else if (v.is_number_integer()) {
            out.emplace_back(v.get<long long>());
        } else {
            throw error(errc::parse_error, "rationals must be \"p/q\" strings");
        }
    }
    return out;
}

inline json rational_list(std::span<const Rational> vs)
{
    json arr = json::array();
    for (const auto& v : vs) {
        arr.push_back(to_string(v));
    }
    return arr;
}

} // namespace detail

// --- families and systems --------------------------------------------------

[[nodiscard]] inline json to_json(const SetFamily& fam)
{
    return json{{"n", fam.ground().size()}, {"sets", detail::hex_list(fam)}};
}

[[nodiscard]] inline SetFamily family_from_json(const json& j)
{
    const GroundSet g(detail::get<int>(j, "n"));
    return SetFamily(g, detail::masks(detail::field(j, "sets")));
}

[[nodiscard]] inline json systems_json(int n, const std::vector<const SetFamily*>& minimals)
{
    json systems = json::array();
    for (const auto* m : minimals) {
        systems.push_back(detail::hex_list(*m));
    }
    return json{{"n", n}, {"count", minimals.size()}, {"systems", std::move(systems)}};
}

[[nodiscard]] inline json to_json(const Superextension& lambda)
{
    std::vector<const SetFamily*> ms;
    for (const auto& eta : lambda.systems()) {
        ms.push_back(&eta.minimal());
    }
    return systems_json(lambda.ground().size(), ms);
}

[[nodiscard]] inline json to_json(GroundSet g, const std::vector<InclusionHyperspace>& hs)
{
    std::vector<const SetFamily*> ms;
    for (const auto& h : hs) {
        ms.push_back(&h.minimal());
    }
    return systems_json(g.size(), ms);
}

// --- terms ------------------------------------------------------------------

[[nodiscard]] inline json to_json(const Term& t)
{
    return std::visit(
        supext::detail::overloaded{
            [](const term::Dirac& d) { return json{{"t", "dirac"}, {"x", d.x}}; },
            [](const term::MaxMin& m) { return json{{"t", "maxmin"}, {"minimal", detail::hex_list(m.eta.minimal())}}; },
            [](const term::MinOver& m) { return json{{"t", "min"}, {"F", to_hex(m.set)}}; },
            [](const term::MaxOver& m) { return json{{"t", "max"}, {"F", to_hex(m.set)}}; },
            [](const term::Linear& l) { return json{{"t", "linear"}, {"w", detail::rational_list(l.weights)}}; },
            [](const term::Convex& c) {
                json parts = json::array();
                for (const auto& p : c.parts) {
                    parts.push_back(to_json(p));
                }
                return json{{"t", "convex"}, {"w", detail::rational_list(c.weights)}, {"parts", std::move(parts)}};
            },
            [](const term::Precompose& p) {
                json map = json::array();
                for (int v : p.map.table()) {
                    map.push_back(v);
                }
                return json{{"t", "precompose"}, {"map", std::move(map)}, {"inner", to_json(*p.inner)}};
            },
        },
        t.node());
}

/// Terms carry no ground of their own in the file; it is supplied by the
/// caller (usually the length of the function being evaluated). An optional
/// top-level "n" must agree with it.
[[nodiscard]] inline Term term_from_json(const json& j, GroundSet g)
{
    if (j.is_object() && j.contains("n") && j.at("n") != g.size()) {
        throw error(errc::ground_mismatch, "term file declares n different from the function's ground");
    }
    const auto tag = detail::get<std::string>(j, "t");
    if (tag == "dirac") {
        return Term::dirac(g, detail::get<int>(j, "x"));
    }
    if (tag == "maxmin") {
        return Term::maxmin(MaxLinkedSystem::from_minimal(SetFamily(g, detail::masks(detail::field(j, "minimal")))));
    }
    if (tag == "min") {
        return Term::min_over(g, from_hex(detail::get<std::string>(j, "F")));
    }
    if (tag == "max") {
        return Term::max_over(g, from_hex(detail::get<std::string>(j, "F")));
    }
    if (tag == "linear") {
        return Term::linear(g, detail::rationals(detail::field(j, "w")));
    }
    if (tag == "convex") {
        std::vector<Term> parts;
        const auto& ps = detail::field(j, "parts");
        if (!ps.is_array()) {
            throw error(errc::parse_error, "convex parts must be an array");
        }
        for (const auto& p : ps) {
            parts.push_back(term_from_json(p, g));
        }
        return Term::convex(detail::rationals(detail::field(j, "w")), std::move(parts));
    }
    if (tag == "precompose") {
        const auto map = detail::get<std::vector<int>>(j, "map");
        if (map.empty()) {
            throw error(errc::parse_error, "precompose map must be nonempty");
        }
        const GroundSet inner_ground(static_cast<int>(map.size()));
        PointMap f(inner_ground, g, map);
        return Term::precompose(std::move(f), term_from_json(detail::field(j, "inner"), inner_ground));
    }
    throw error(errc::parse_error, "unknown term tag '" + tag + "'");
}

/// Same file format, but linear and convex weights are taken as given, so a
/// file that breaks the weight invariants still yields something to test.
[[nodiscard]] inline Functional term_oracle_from_json(const json& j, GroundSet g)
{
    const auto tag = detail::get<std::string>(j, "t");
    if (tag == "linear") {
        auto w = detail::rationals(detail::field(j, "w"));
        if (static_cast<int>(w.size()) != g.size()) {
            throw error(errc::ground_mismatch, "linear weights must have one entry per point");
        }
        return [w = std::move(w)](const PointFunction& f) {
            Rational s = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                s += w[i] * f[static_cast<int>(i)];
            }
            return s;
        };
    }
    if (tag == "convex") {
        auto w = detail::rationals(detail::field(j, "w"));
        std::vector<Functional> parts;
        for (const auto& p : detail::field(j, "parts")) {
            parts.push_back(term_oracle_from_json(p, g));
        }
        if (w.size() != parts.size() || parts.empty()) {
            throw error(errc::invalid_argument, "convex combination needs one weight per part");
        }
        return [w = std::move(w), parts = std::move(parts)](const PointFunction& f) {
            Rational s = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                s += w[i] * parts[i](f);
            }
            return s;
        };
    }
    if (tag == "precompose") {
        const auto map = detail::get<std::vector<int>>(j, "map");
        if (map.empty()) {
            throw error(errc::parse_error, "precompose map must be nonempty");
        }
        const GroundSet inner_ground(static_cast<int>(map.size()));
        PointMap f(inner_ground, g, map);
        auto inner = term_oracle_from_json(detail::field(j, "inner"), inner_ground);
        return [f = std::move(f), inner = std::move(inner)](const PointFunction& h) { return inner(h.compose(f)); };
    }
    return as_functional(term_from_json(j, g));
}

/// "0,1/2,-3" → rationals.
[[nodiscard]] inline std::vector<Rational> parse_values(const std::string& csv)
{
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) {
            throw error(errc::parse_error, "empty value in '" + csv + "'");
        }
        out.push_back(parse_rational(item.substr(b, e - b + 1)));
    }
    if (out.empty()) {
        throw error(errc::parse_error, "no values in '" + csv + "'");
    }
    return out;
}

[[nodiscard]] inline json to_json(const PointFunction& f) { return detail::rational_list(f.values()); }

// --- generators ---------------------------------------------------------------

[[nodiscard]] inline GeneratedSubspace generators_from_json(const json& j)
{
    const GroundSet g(detail::get<int>(j, "n"));
    std::vector<Generator> gens;
    const auto& arr = detail::field(j, "generators");
    if (!arr.is_array()) {
        throw error(errc::parse_error, "generators must be an array");
    }
    for (const auto& item : arr) {
        const auto b = detail::rationals(detail::field(item, "b"));
        const auto v = detail::rationals(json::array({detail::field(item, "v")}));
        gens.push_back({PointFunction(g, b), v.front()});
    }
    return GeneratedSubspace(g, std::move(gens));
}

[[nodiscard]] inline json to_json(const GeneratedSubspace& s)
{
    json arr = json::array();
    for (const auto& gen : s.generators()) {
        arr.push_back(json{{"b", detail::rational_list(gen.b.values())}, {"v", to_string(gen.value)}});
    }
    return json{{"n", s.ground().size()}, {"generators", std::move(arr)}};
}

// --- subbases -------------------------------------------------------------

[[nodiscard]] inline Subbase subbase_from_json(const json& j)
{
    const auto carrier = detail::get<std::size_t>(j, "carrier");
    if (carrier == 0 || carrier > max_subbase_carrier) {
        throw error(errc::too_large, "carrier size out of range");
    }
    std::vector<CarrierSet> members;
    const auto& arr = detail::field(j, "members");
    if (!arr.is_array()) {
        throw error(errc::parse_error, "members must be an array");
    }
    for (const auto& h : arr) {
        if (!h.is_string()) {
            throw error(errc::parse_error, "members must be hex strings");
        }
        members.push_back(carrier_from_hex(h.get<std::string>(), carrier));
    }
    return Subbase(carrier, std::move(members));
}

[[nodiscard]] inline json to_json(const Subbase& sb)
{
    json arr = json::array();
    for (const auto& m : sb.members()) {
        arr.push_back(carrier_to_hex(m));
    }
    return json{{"carrier", sb.carrier()}, {"members", std::move(arr)}};
}

// --- spaces and operators ---------------------------------------------------

[[nodiscard]] inline FiniteTopSpace space_from_json(const json& j)
{
    const int n = detail::get<int>(j, "n");
    if (n < 1 || n > max_ground_bits) {
        throw error(errc::too_large, "space size out of range");
    }
    return FiniteTopSpace(n, detail::masks(detail::field(j, "min_nbhd")));
}

[[nodiscard]] inline json to_json(const FiniteTopSpace& s)
{
    json nb = json::array();
    for (Mask m : s.min_nbhds()) {
        nb.push_back(to_hex(m));
    }
    return json{{"n", s.size()}, {"min_nbhd", std::move(nb)}};
}

[[nodiscard]] inline RegularOperator operator_from_json(const json& j)
{
    FiniteTopSpace x = space_from_json(detail::field(j, "X"));
    FiniteTopSpace y = space_from_json(detail::field(j, "Y"));
    auto inject = detail::get<std::vector<int>>(j, "inject");
    std::map<Mask, Mask> table;
    const auto& arr = detail::field(j, "table");
    if (!arr.is_array()) {
        throw error(errc::parse_error, "table must be an array of [hexU, hexEU] pairs");
    }
    for (const auto& row : arr) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_string() || !row[1].is_string()) {
            throw error(errc::parse_error, "table rows must be [hexU, hexEU]");
        }
        table[from_hex(row[0].get<std::string>())] = from_hex(row[1].get<std::string>());
    }
    return RegularOperator(std::move(x), std::move(y), std::move(inject), std::move(table));
}

[[nodiscard]] inline json to_json(const RegularOperator& e)
{
    json table = json::array();
    for (Mask u : opens(e.domain())) {
        if (auto v = e.find(u)) {
            table.push_back(json::array({to_hex(u), to_hex(*v)}));
        }
    }
    return json{{"X", to_json(e.domain())}, {"Y", to_json(e.codomain())}, {"inject", e.inject()}, {"table", table}};
}

[[nodiscard]] inline json violation_json(const std::optional<Violation>& v)
{
    if (!v) {
        return json{{"valid", true}};
    }
    return json{{"valid", false},
                {"violation",
                 {{"kind", std::string(to_string(v->kind))}, {"U", to_hex(v->u)}, {"V", to_hex(v->v)}, {"detail", v->detail}}}};
}

[[nodiscard]] inline json to_json(const UscoMap& r)
{
    json lambda = json::array();
    for (const auto& eta : r.lambda.systems()) {
        lambda.push_back(detail::hex_list(eta.minimal()));
    }
    json values = json::array();
    for (const auto& v : r.values) {
        values.push_back(points_of(v));
    }
    const auto chk = check_usco(r);
    json check{{"nonempty", !chk.empty_at}, {"point_fixed", !chk.not_point_fixed_at}, {"usc", !chk.not_usc_at}};
    return json{{"lambda", std::move(lambda)}, {"values", std::move(values)}, {"check", std::move(check)}};
}

} // namespace supext::io
