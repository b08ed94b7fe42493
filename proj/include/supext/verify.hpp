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

/// @file verify.hpp
/// Invariant suites with JSON reports. Reports depend only on the
/// configuration and inputs, never on the worker count.

#include <supext/inclusion.hpp>
#include <supext/io.hpp>
#include <supext/oracle.hpp>
#include <supext/parallel.hpp>

#include <optional>
#include <string>
#include <vector>

namespace supext {

enum class OutputFormat { json, csv_summary };

struct RunConfig {
    std::string suite;
    int n = 3;
    std::uint64_t seed = 0;
    std::size_t trials = 500;
    std::size_t workers = 1;
    /// Enumeration cap for grounds (SUPEXT_MAX_N).
    int max_n = 7;
    /// Optional term file contents for the axioms suite.
    std::optional<io::json> term;
};

struct Report {
    io::json body;

    [[nodiscard]] bool pass() const
    {
        if (body.contains("pass")) {
            return body.at("pass").get<bool>();
        }
        return body.at("failures").empty();
    }

    [[nodiscard]] std::string render(OutputFormat fmt) const
    {
        if (fmt == OutputFormat::json) {
            return body.dump(2) + "\n";
        }
        std::string out = "suite,anchor,n,checks_run,failures,pass\n";
        out += body.at("suite").get<std::string>() + ",\"" + body.at("anchor").get<std::string>() + "\"," +
               std::to_string(body.at("n").get<int>()) + "," +
               std::to_string(body.at("checks_run").get<std::uint64_t>()) + "," +
               std::to_string(body.at("failures").size()) + "," + (pass() ? "true" : "false") + "\n";
        return out;
    }
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"eq1",           "axioms",         "functor-laws",
                                                "subbase-lambda", "usco-roundtrip", "counts"};
    return names;
}

namespace detail {

inline io::json report_header(const RunConfig& cfg, const char* anchor)
{
    return io::json{{"suite", cfg.suite}, {"anchor", anchor}, {"n", cfg.n}};
}

inline void require_n(const RunConfig& cfg, int limit)
{
    if (cfg.n < 1) {
        throw error(errc::invalid_argument, "n must be at least 1");
    }
    if (cfg.n > limit) {
        throw error(errc::too_large, "suite " + cfg.suite + " supports n <= " + std::to_string(limit));
    }
}

inline io::json function_json(const PointFunction& f) { return io::to_json(f); }

inline io::json counterexample_json(const AxiomCounterexample& c)
{
    io::json j{{"axiom", std::string(to_string(c.axiom))}, {"trial", c.trial}, {"f", function_json(c.f)}};
    if (c.g) {
        j["g"] = function_json(*c.g);
    }
    if (c.scalar) {
        j["scalar"] = to_string(*c.scalar);
    }
    j["detail"] = c.detail;
    return j;
}

inline std::vector<Mask> nonempty_subsets(GroundSet g)
{
    std::vector<Mask> out;
    for (std::uint32_t s = 1; s < g.subset_count(); ++s) {
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

/// Terms exercised by the axioms suite: every Dirac, MaxMin, MinOver and
/// MaxOver term, some measures, convex mixtures, and push-forwards.
inline std::vector<Term> term_corpus(GroundSet g, const Superextension& lambda)
{
    const int n = g.size();
    std::vector<Term> out;
    for (int x = 0; x < n; ++x) {
        out.push_back(Term::dirac(g, x));
    }
    for (const auto& eta : lambda.systems()) {
        out.push_back(Term::maxmin(eta));
    }
    for (Mask s : nonempty_subsets(g)) {
        out.push_back(Term::min_over(g, s));
        out.push_back(Term::max_over(g, s));
    }
    out.push_back(Term::linear(g, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n))));
    {
        std::vector<Rational> w(static_cast<std::size_t>(n), Rational(0));
        w.front() += Rational(1, 3);
        w.back() += Rational(2, 3);
        out.push_back(Term::linear(g, std::move(w)));
    }
    const Term midrange = Term::convex({Rational(1, 2), Rational(1, 2)},
                                       {Term::max_over(g, g.full()), Term::min_over(g, g.full())});
    out.push_back(midrange);
    {
        std::vector<Term> parts;
        for (const auto& eta : lambda.systems()) {
            parts.push_back(Term::maxmin(eta));
        }
        std::vector<Rational> w(parts.size(), Rational(1, static_cast<long long>(parts.size())));
        out.push_back(Term::convex(std::move(w), std::move(parts)));
    }
    {
        std::vector<int> shift;
        for (int x = 0; x < n; ++x) {
            shift.push_back((x + 1) % n);
        }
        const PointMap cyc(g, g, shift);
        for (const auto& eta : lambda.systems()) {
            out.push_back(Term::precompose(cyc, Term::maxmin(eta)));
        }
        out.push_back(Term::precompose(cyc, midrange));
    }
    if (n > 1) {
        std::vector<int> fold;
        for (int x = 0; x < n; ++x) {
            fold.push_back(std::min(x, n - 2));
        }
        const GroundSet smaller(n - 1);
        const PointMap f(g, smaller, fold);
        out.push_back(s_preimage(f, Term::max_over(smaller, smaller.full())));
        out.push_back(s_map(f, midrange));
    }
    return out;
}

inline Report suite_eq1(const RunConfig& cfg)
{
    require_n(cfg, 5);
    const GroundSet g(cfg.n);
    const Superextension lambda = enumerate_mls(g, {cfg.max_n, cfg.workers});
    const auto levels = sweep_levels();
    std::vector<io::json> slots(lambda.size(), io::json::array());
    std::vector<std::uint64_t> counts(lambda.size(), 0);
    run_tasks(cfg.workers, lambda.size(), [&](std::size_t i) {
        for_each_grid_function(g, levels, [&](const PointFunction& f) {
            ++counts[i];
            const auto r = check_eq1(lambda[i], f);
            if (!r.equal) {
                slots[i].push_back(io::json{{"system", io::detail::hex_list(lambda[i].minimal())},
                                            {"f", function_json(f)},
                                            {"max_min", to_string(r.max_min)},
                                            {"min_max", to_string(r.min_max)}});
            }
        });
    });
    io::json rep = report_header(cfg, "max-min equals min-max on maximal linked systems");
    std::uint64_t checks = 0;
    io::json failures = io::json::array();
    for (std::size_t i = 0; i < slots.size(); ++i) {
        checks += counts[i];
        for (auto& f : slots[i]) {
            failures.push_back(std::move(f));
        }
    }
    rep["systems"] = lambda.size();
    rep["checks_run"] = checks;
    if (cfg.n >= 2) {
        // A linked but not maximal family must break the equality.
        const SetFamily control(g, {g.full()});
        std::vector<Rational> ramp;
        for (int x = 0; x < cfg.n; ++x) {
            ramp.emplace_back(x);
        }
        const PointFunction f(g, ramp);
        const auto r = check_eq1(control, f);
        rep["control"] = io::json{{"family", io::detail::hex_list(control)},
                                  {"f", function_json(f)},
                                  {"max_min", to_string(r.max_min)},
                                  {"min_max", to_string(r.min_max)},
                                  {"equal", r.equal}};
        if (r.equal) {
            failures.push_back(io::json{{"control", "non-maximal family satisfied the equality"}});
        }
    }
    rep["failures"] = std::move(failures);
    return {std::move(rep)};
}

inline Report suite_axioms(const RunConfig& cfg)
{
    io::json rep = report_header(cfg, "monotone, homogeneous and weakly additive");
    rep["seed"] = cfg.seed;
    rep["trials"] = cfg.trials;
    io::json failures = io::json::array();
    const AxiomOptions opts{cfg.trials, cfg.seed, false, 1};

    if (cfg.term) {
        // A single term from a file; weight invariants are not enforced so
        // that broken files produce counterexamples instead of input errors.
        require_n(cfg, max_family_ground);
        const GroundSet g(cfg.n);
        const auto u = io::term_oracle_from_json(*cfg.term, g);
        const auto r = axiom_check(u, g, {cfg.trials, cfg.seed, false, cfg.workers});
        rep["checks_run"] = 1;
        if (!r.pass()) {
            auto c = counterexample_json(*r.counterexample);
            c["term"] = *cfg.term;
            failures.push_back(std::move(c));
        }
        rep["failures"] = std::move(failures);
        return {std::move(rep)};
    }

    require_n(cfg, 4);
    const GroundSet g(cfg.n);
    const Superextension lambda = enumerate_mls(g, {cfg.max_n, cfg.workers});
    const auto terms = term_corpus(g, lambda);
    std::vector<std::optional<AxiomCounterexample>> slots(terms.size());
    run_tasks(cfg.workers, terms.size(), [&](std::size_t i) { slots[i] = axiom_check(terms[i], opts).counterexample; });
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (slots[i]) {
            auto c = counterexample_json(*slots[i]);
            c["term"] = io::to_json(terms[i]);
            failures.push_back(std::move(c));
        }
    }

    // Negative controls: each must fail, on the named axiom.
    struct Control {
        const char* name;
        Axiom expected;
        Functional u;
    };
    const std::vector<Control> controls{
        {"max(f) + min(f)", Axiom::weak_additivity, [](const PointFunction& f) { return Rational(f.max() + f.min()); }},
        {"f(0)^2", Axiom::homogeneity, [](const PointFunction& f) { return Rational(f[0] * f[0]); }},
    };
    io::json cj = io::json::array();
    for (const auto& c : controls) {
        const auto r = axiom_check(c.u, g, opts);
        io::json entry{{"oracle", c.name}, {"expected", std::string(to_string(c.expected))}};
        if (r.pass()) {
            entry["got"] = "pass";
        } else {
            entry["got"] = std::string(to_string(r.counterexample->axiom));
            entry["counterexample"] = counterexample_json(*r.counterexample);
        }
        if (r.pass() || r.counterexample->axiom != c.expected) {
            failures.push_back(io::json{{"control", c.name}, {"got", entry["got"]}});
        }
        cj.push_back(std::move(entry));
    }
    rep["terms"] = terms.size();
    rep["checks_run"] = terms.size() + controls.size();
    rep["controls"] = std::move(cj);
    rep["failures"] = std::move(failures);
    return {std::move(rep)};
}

inline Report suite_functor_laws(const RunConfig& cfg)
{
    require_n(cfg, 3);
    std::vector<GroundSet> grounds;
    std::vector<Superextension> lambdas;
    std::vector<std::vector<InclusionHyperspace>> ghs;
    for (int k = 1; k <= cfg.n; ++k) {
        grounds.emplace_back(k);
        lambdas.push_back(enumerate_mls(grounds.back(), {cfg.max_n, 1}));
        ghs.push_back(enumerate_ih(grounds.back()));
    }
    const auto m = grounds.size();
    // One task per (a, b, c) triple of ground sizes.
    const std::size_t tasks = m * m * m;
    std::vector<io::json> slots(tasks, io::json::array());
    std::vector<std::uint64_t> counts(tasks, 0);
    auto fam_json = [](const SetFamily& s) { return io::detail::hex_list(s); };
    auto map_json = [](const PointMap& f) { return io::json(f.table()); };
    run_tasks(cfg.workers, tasks, [&](std::size_t t) {
        const std::size_t a = t / (m * m);
        const std::size_t b = (t / m) % m;
        const std::size_t c = t % m;
        auto& out = slots[t];
        auto& cnt = counts[t];
        if (b == a && c == a) {
            const auto id = PointMap::identity(grounds[a]);
            for (const auto& eta : lambdas[a].systems()) {
                ++cnt;
                if (!(lambda_map(id, eta) == eta)) {
                    out.push_back(io::json{{"law", "lambda identity"}, {"system", fam_json(eta.minimal())}});
                }
            }
            for (const auto& h : ghs[a]) {
                ++cnt;
                if (!(g_map_preimage(id, h) == h)) {
                    out.push_back(io::json{{"law", "G identity"}, {"hyperspace", fam_json(h.minimal())}});
                }
            }
        }
        const auto fs = all_maps(grounds[a], grounds[b]);
        const auto gs = all_maps(grounds[b], grounds[c]);
        if (c == 0) {
            // Preimage and image formulas, once per map f: a -> b.
            for (const auto& f : fs) {
                for (const auto& eta : lambdas[a].systems()) {
                    ++cnt;
                    if (!(lambda_map(f, eta).minimal() == lambda_map_image(f, eta))) {
                        out.push_back(io::json{{"law", "lambda formulas agree"},
                                               {"map", map_json(f)},
                                               {"system", fam_json(eta.minimal())}});
                    }
                }
                for (const auto& h : ghs[a]) {
                    ++cnt;
                    if (!(g_map_preimage(f, h) == g_map_image(f, h))) {
                        out.push_back(io::json{
                            {"law", "G formulas agree"}, {"map", map_json(f)}, {"hyperspace", fam_json(h.minimal())}});
                    }
                }
            }
        }
        for (const auto& f : fs) {
            for (const auto& gm : gs) {
                const PointMap gf = gm.after(f);
                for (const auto& eta : lambdas[a].systems()) {
                    ++cnt;
                    if (!(lambda_map(gf, eta) == lambda_map(gm, lambda_map(f, eta)))) {
                        out.push_back(io::json{{"law", "lambda composition"},
                                               {"f", map_json(f)},
                                               {"g", map_json(gm)},
                                               {"system", fam_json(eta.minimal())}});
                    }
                }
                for (const auto& h : ghs[a]) {
                    ++cnt;
                    if (!(g_map_preimage(gf, h) == g_map_preimage(gm, g_map_preimage(f, h)))) {
                        out.push_back(io::json{{"law", "G composition"},
                                               {"f", map_json(f)},
                                               {"g", map_json(gm)},
                                               {"hyperspace", fam_json(h.minimal())}});
                    }
                }
            }
        }
    });
    io::json rep = report_header(cfg, "functor identity and composition laws for lambda and G");
    std::uint64_t checks = 0;
    io::json failures = io::json::array();
    for (std::size_t t = 0; t < tasks; ++t) {
        checks += counts[t];
        for (auto& f : slots[t]) {
            failures.push_back(std::move(f));
        }
    }
    rep["checks_run"] = checks;
    rep["failures"] = std::move(failures);
    return {std::move(rep)};
}

inline Report suite_subbase_lambda(const RunConfig& cfg)
{
    require_n(cfg, 4);
    const GroundSet g(cfg.n);
    const Superextension lambda = enumerate_mls(g, {cfg.max_n, cfg.workers});
    const Subbase sb = lambda_subbase(lambda);
    io::json rep = report_header(cfg, "binary normal subbase of the superextension");
    rep["carrier"] = sb.carrier();
    rep["members"] = sb.members().size();
    io::json failures = io::json::array();
    const auto bin = is_binary(sb);
    if (!bin.binary) {
        failures.push_back(io::json{{"property", "binary"}, {"witness", bin.witness}});
    }
    const auto nor = is_normal(sb);
    if (!nor.normal) {
        failures.push_back(
            io::json{{"property", "normal"}, {"witness", io::json::array({nor.witness->first, nor.witness->second})}});
    }
    rep["binary"] = bin.binary;
    rep["normal"] = nor.normal;
    rep["checks_run"] = 2;
    rep["failures"] = std::move(failures);
    return {std::move(rep)};
}

/// Named regular operators used by the usco suite. The embedded spaces
/// are discrete; codomains have at most 9 points.
inline std::vector<std::pair<std::string, RegularOperator>> operator_corpus()
{
    std::vector<std::pair<std::string, RegularOperator>> out;
    for (int k = 1; k <= 3; ++k) {
        out.emplace_back("identity on discrete " + std::to_string(k),
                         RegularOperator::identity(FiniteTopSpace::discrete(k)));
    }
    // Two discrete points inside Y = {0, 1, 2} whose third point only sees Y.
    const FiniteTopSpace x2 = FiniteTopSpace::discrete(2);
    const FiniteTopSpace y3(3, {0b001, 0b010, 0b111});
    const RegularOperator three(x2, y3, {0, 1}, {{0, 0}, {0b01, 0b001}, {0b10, 0b010}, {0b11, 0b111}});
    out.emplace_back("two points in three", three);
    out.emplace_back("two points in three, e(X) = X",
                     RegularOperator(x2, y3, {0, 1}, {{0, 0}, {0b01, 0b001}, {0b10, 0b010}, {0b11, 0b011}}));

    const FiniteTopSpace z4(4, {0b0001, 0b0010, 0b0111, 0b1000});
    const RegularOperator widen(y3, z4, {0, 1, 2},
                                {{0, 0}, {0b001, 0b001}, {0b010, 0b010}, {0b011, 0b011}, {0b111, 0b111}});
    out.emplace_back("two in three in four", compose_operators(widen, three));
    out.emplace_back("product of two point-in-three", product_operator({three, three}));
    out.emplace_back("product with an identity",
                     product_operator({three, RegularOperator::identity(FiniteTopSpace::discrete(2))}));
    return out;
}

inline Report suite_usco_roundtrip(const RunConfig& cfg)
{
    require_n(cfg, 16);
    std::vector<std::pair<std::string, RegularOperator>> ops;
    for (auto& op : operator_corpus()) {
        if (op.second.codomain().size() <= cfg.n) {
            ops.push_back(std::move(op));
        }
    }
    // Exhaustive sweep: every topology on Y (|Y| <= 5), every discrete X on
    // the first k points of Y, every regular operator.
    const int sweep_max = std::min(cfg.n, 5);
    for (int ny = 1; ny <= sweep_max; ++ny) {
        for (const auto& y : all_spaces(ny)) {
            for (int k = 1; k <= ny; ++k) {
                std::vector<int> inject;
                for (int i = 0; i < k; ++i) {
                    inject.push_back(i);
                }
                for_each_regular_operator(FiniteTopSpace::discrete(k), y, inject, [&](RegularOperator e) {
                    io::json label{{"Y", io::to_json(y).at("min_nbhd")}, {"k", k}};
                    ops.emplace_back(label.dump(), std::move(e));
                    return true;
                });
            }
        }
    }
    std::vector<io::json> slots(ops.size(), io::json::array());
    run_tasks(cfg.workers, ops.size(), [&](std::size_t i) {
        const auto& [name, e] = ops[i];
        auto& out = slots[i];
        if (auto v = validate_regular(e)) {
            out.push_back(io::json{{"operator", name}, {"stage", "input"}, {"violation", std::string(to_string(v->kind))}});
            return;
        }
        const UscoMap r = usco_from_regular(e, {cfg.max_n, 1});
        const auto chk = check_usco(r);
        if (!chk.ok()) {
            io::json f{{"operator", name}, {"table", io::to_json(e).at("table")}, {"stage", "usco"}};
            if (chk.empty_at) {
                f["empty_at"] = *chk.empty_at;
            }
            if (chk.not_point_fixed_at) {
                f["not_point_fixed_at"] = *chk.not_point_fixed_at;
            }
            if (chk.not_usc_at) {
                f["not_usc_at"] = io::json::array({chk.not_usc_at->first, chk.not_usc_at->second});
            }
            out.push_back(std::move(f));
            return;
        }
        const RegularOperator back = regular_from_usco(r);
        if (auto v = validate_regular(back)) {
            out.push_back(io::json{{"operator", name},
                                   {"table", io::to_json(e).at("table")},
                                   {"stage", "roundtrip"},
                                   {"violation", std::string(to_string(v->kind))},
                                   {"U", to_hex(v->u)},
                                   {"V", to_hex(v->v)}});
        }
    });
    io::json rep = report_header(cfg, "usco map from a regular operator and back");
    io::json names = io::json::array();
    io::json failures = io::json::array();
    std::size_t named = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].first.front() != '{') {
            names.push_back(ops[i].first);
            ++named;
        }
        for (auto& f : slots[i]) {
            failures.push_back(std::move(f));
        }
    }
    rep["operators"] = std::move(names);
    rep["sweep_operators"] = ops.size() - named;
    rep["checks_run"] = ops.size() * 3;
    rep["failures"] = std::move(failures);
    return {std::move(rep)};
}

/// Known count for n = 7; no oracle here reaches it.
inline constexpr std::uint64_t mls_count_n7 = 1422564;

inline Report suite_counts(const RunConfig& cfg)
{
    require_n(cfg, enumeration_hard_cap);
    const GroundSet g(cfg.n);
    std::uint64_t expected = 0;
    std::string oracle;
    if (cfg.n <= 4) {
        expected = oracle::count_mls_family_scan(cfg.n);
        oracle = "family scan";
    } else if (cfg.n <= 6) {
        expected = oracle::count_mls_monotone_scan(cfg.n);
        oracle = "monotone scan";
    } else if (cfg.n == 7) {
        expected = mls_count_n7;
        oracle = "known value";
    } else {
        throw error(errc::too_large, "no reference count for n = " + std::to_string(cfg.n));
    }
    const std::uint64_t actual = count_mls(g, {cfg.max_n, cfg.workers});
    io::json rep = report_header(cfg, "number of maximal linked systems");
    rep["oracle"] = oracle;
    rep["expected"] = expected;
    rep["actual"] = actual;
    rep["pass"] = expected == actual;
    rep["checks_run"] = 1;
    io::json failures = io::json::array();
    if (expected != actual) {
        failures.push_back(io::json{{"expected", expected}, {"actual", actual}});
    }
    rep["failures"] = std::move(failures);
    return {std::move(rep)};
}

} // namespace detail

[[nodiscard]] inline Report run_verify_suite(const RunConfig& cfg)
{
    if (cfg.suite == "eq1") {
        return detail::suite_eq1(cfg);
    }
    if (cfg.suite == "axioms") {
        return detail::suite_axioms(cfg);
    }
    if (cfg.suite == "functor-laws") {
        return detail::suite_functor_laws(cfg);
    }
    if (cfg.suite == "subbase-lambda") {
        return detail::suite_subbase_lambda(cfg);
    }
    if (cfg.suite == "usco-roundtrip") {
        return detail::suite_usco_roundtrip(cfg);
    }
    if (cfg.suite == "counts") {
        return detail::suite_counts(cfg);
    }
    throw error(errc::unknown_suite, "unknown suite '" + cfg.suite + "'");
}

} // namespace supext
