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

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <supext/verify.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace supext;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Notes {
public:
    void fail(const std::string& what)
    {
        pass_ = false;
        if (failures_++ < 5) {
            msg_ << (msg_.tellp() > 0 ? "; " : "") << what;
        }
    }
    void note(const std::string& what) { info_ << (info_.tellp() > 0 ? "; " : "") << what; }

    [[nodiscard]] Outcome done() const
    {
        std::string d = info_.str();
        if (!pass_) {
            d = msg_.str() + (failures_ > 5 ? " (+" + std::to_string(failures_ - 5) + " more)" : "") +
                (d.empty() ? "" : " | " + d);
        }
        return {pass_, d};
    }

private:
    bool pass_ = true;
    int failures_ = 0;
    std::ostringstream msg_;
    std::ostringstream info_;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v)
{
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << v;
    return s.str();
}

// 1. Counts against the independent oracles, with the time limits.
Outcome mls_counts()
{
    Notes n;
    const std::uint64_t expected[] = {1, 2, 4, 12, 81, 2646};
    for (int k = 1; k <= 6; ++k) {
        const auto oracle = k <= 4 ? oracle::count_mls_family_scan(k) : oracle::count_mls_monotone_scan(k);
        if (k <= 4 && oracle != oracle::count_mls_monotone_scan(k)) {
            n.fail("oracles disagree at n=" + std::to_string(k));
        }
        const auto t0 = std::chrono::steady_clock::now();
        const auto lambda = enumerate_mls(GroundSet(k), {7, 1});
        const double secs = seconds_since(t0);
        if (lambda.size() != oracle || oracle != expected[k - 1]) {
            n.fail("n=" + std::to_string(k) + ": enumerated " + std::to_string(lambda.size()) + ", oracle " +
                   std::to_string(oracle));
        }
        if (k == 6) {
            n.note("n=6 in " + fixed(secs) + "s");
            if (secs >= 10.0) {
                n.fail("n=6 took " + fixed(secs) + "s");
            }
        }
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto c7 = count_mls(GroundSet(7), {7, 1});
    const double secs = seconds_since(t0);
    n.note("n=7 count " + std::to_string(c7) + " in " + fixed(secs) + "s");
    if (c7 != detail::mls_count_n7 || secs >= 300.0) {
        n.fail("n=7 gave " + std::to_string(c7));
    }
    return n.done();
}

// 2. Max-min equals min-max on the full grid, and the non-maximal control breaks it.
Outcome eq1()
{
    Notes n;
    std::uint64_t checks = 0;
    for (int k = 1; k <= 5; ++k) {
        const GroundSet g(k);
        const auto lambda = enumerate_mls(g);
        const auto levels = sweep_levels();
        for (const auto& eta : lambda.systems()) {
            for_each_grid_function(g, levels, [&](const PointFunction& f) {
                ++checks;
                // Evaluated over the full family, not only the minimal members.
                const auto full = eta.members();
                Rational mm;
                Rational xm;
                bool first = true;
                for (Mask m : full) {
                    const Rational lo = f.min_on(m);
                    const Rational hi = f.max_on(m);
                    if (first || lo > mm) {
                        mm = lo;
                    }
                    if (first || hi < xm) {
                        xm = hi;
                    }
                    first = false;
                }
                const auto r = check_eq1(eta, f);
                if (!r.equal || r.max_min != mm || r.min_max != xm || mm != xm) {
                    n.fail("n=" + std::to_string(k) + " system " + io::detail::hex_list(eta.minimal()).dump());
                }
            });
        }
    }
    const GroundSet g3(3);
    const auto control = check_eq1(up_closure(SetFamily(g3, {g3.full()})), PointFunction(g3, {0, 1, 2}));
    if (control.equal || control.max_min != 0 || control.min_max != 2) {
        n.fail("non-maximal control satisfied the equality");
    }
    n.note(std::to_string(checks) + " checks, control (0, 2)");
    return n.done();
}

// 3. Axioms on the term corpus for n <= 4, plus the two negative oracles.
Outcome axioms()
{
    Notes n;
    std::size_t total = 0;
    std::size_t failing = 0;
    std::size_t failing_minmax = 0;
    for (int k = 1; k <= 4; ++k) {
        RunConfig cfg;
        cfg.suite = "axioms";
        cfg.n = k;
        cfg.trials = 500;
        const auto rep = run_verify_suite(cfg);
        total += rep.body.at("terms").get<std::size_t>();
        for (const auto& f : rep.body.at("failures")) {
            if (f.contains("control")) {
                n.fail("n=" + std::to_string(k) + " control " + f.at("control").get<std::string>() + " did not fail as expected");
                continue;
            }
            ++failing;
            // Terms whose only non-odd ingredient is a min or max over two or more points.
            const auto s = f.at("term").dump();
            if (s.find("\"t\":\"min\"") != std::string::npos || s.find("\"t\":\"max\"") != std::string::npos) {
                ++failing_minmax;
            }
            n.fail("n=" + std::to_string(k) + " " + f.at("axiom").get<std::string>() + " fails for " + s);
        }
    }
    n.note(std::to_string(failing) + " of " + std::to_string(total) + " terms fail (" + std::to_string(failing_minmax) +
           " of them built from MinOver/MaxOver on 2+ points, which are not odd: min(-f) = -max(f)); "
           "both negative oracles fail on the expected axiom");
    return n.done();
}

// 4. Separating functions witness injectivity of eta -> phi_eta.
Outcome separation()
{
    Notes n;
    std::size_t pairs = 0;
    for (int k = 1; k <= 4; ++k) {
        const auto lambda = enumerate_mls(GroundSet(k));
        for (const auto& eta : lambda.systems()) {
            for (const auto& xi : lambda.systems()) {
                if (eta == xi) {
                    continue;
                }
                ++pairs;
                const auto f = separating_function(eta, xi);
                bool binary = true;
                for (const auto& v : f.values()) {
                    binary = binary && (v == 0 || v == 1);
                }
                if (!binary || phi(eta, f) != 1 || phi(xi, f) != 0) {
                    n.fail("n=" + std::to_string(k) + " pair " + io::detail::hex_list(eta.minimal()).dump() + " / " +
                           io::detail::hex_list(xi.minimal()).dump());
                }
            }
        }
    }
    n.note(std::to_string(pairs) + " ordered pairs");
    return n.done();
}

// 5. Functor laws for lambda and G over all maps between grounds of size <= 3.
Outcome functor_laws()
{
    Notes n;
    RunConfig cfg;
    cfg.suite = "functor-laws";
    cfg.n = 3;
    const auto rep = run_verify_suite(cfg);
    for (const auto& f : rep.body.at("failures")) {
        n.fail(f.dump());
    }
    // Surjections specifically: both lambda formulas and both G formulas.
    std::size_t surj = 0;
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= a; ++b) {
            for (const auto& f : all_maps(GroundSet(a), GroundSet(b))) {
                if (!f.is_surjective()) {
                    continue;
                }
                const auto lambda_sys = enumerate_mls(GroundSet(a));
                for (const auto& eta : lambda_sys.systems()) {
                    ++surj;
                    if (!(lambda_map(f, eta).minimal() == lambda_map_image(f, eta))) {
                        n.fail("lambda formulas disagree");
                    }
                }
                for (const auto& h : enumerate_ih(GroundSet(a))) {
                    ++surj;
                    if (!(g_map_preimage(f, h) == g_map_image(f, h))) {
                        n.fail("G formulas disagree");
                    }
                }
            }
        }
    }
    n.note(std::to_string(rep.body.at("checks_run").get<std::uint64_t>()) + " law checks, " + std::to_string(surj) +
           " surjection cross-checks");
    return n.done();
}

// 6. {F+} on lambda X is binary and normal, checked by the library and by
// brute force over all subfamilies.
Outcome subbase_lambda()
{
    Notes n;
    for (int k = 1; k <= 4; ++k) {
        const auto lambda = enumerate_mls(GroundSet(k));
        const auto sb = lambda_subbase(lambda);
        const auto& ms = sb.members();
        const auto bin = is_binary(sb);
        const auto nor = is_normal(sb);
        if (!bin.binary || !nor.normal) {
            n.fail("n=" + std::to_string(k) + " library check failed");
        }
        const std::size_t m = ms.size();
        for (std::uint32_t sub = 1; sub < (1u << m); ++sub) {
            bool linked = true;
            CarrierSet common = sb.whole();
            for (std::size_t i = 0; i < m && linked; ++i) {
                if (!((sub >> i) & 1u)) {
                    continue;
                }
                common &= ms[i];
                for (std::size_t j = i + 1; j < m && linked; ++j) {
                    if (((sub >> j) & 1u) && !ms[i].intersects(ms[j])) {
                        linked = false;
                    }
                }
            }
            if (linked && common.none()) {
                n.fail("n=" + std::to_string(k) + " linked subfamily without common point");
                break;
            }
        }
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                if (ms[a].intersects(ms[b])) {
                    continue;
                }
                bool found = false;
                for (std::size_t t0 = 0; t0 < m && !found; ++t0) {
                    for (std::size_t t1 = 0; t1 < m && !found; ++t1) {
                        found = !ms[a].intersects(ms[t1]) && !ms[t0].intersects(ms[b]) && (ms[t0] | ms[t1]).all();
                    }
                }
                if (!found) {
                    n.fail("n=" + std::to_string(k) + " disjoint pair without separating cover");
                }
            }
        }
    }
    n.note("n <= 4, brute force over all subfamilies agrees");
    return n.done();
}

// 7. usco maps from regular operators and the round trip back.
Outcome usco()
{
    Notes n;
    RunConfig cfg;
    cfg.suite = "usco-roundtrip";
    cfg.n = 9;
    const auto rep = run_verify_suite(cfg);
    for (const auto& f : rep.body.at("failures")) {
        n.fail(f.dump());
    }
    n.note(std::to_string(rep.body.at("operators").size() + rep.body.at("sweep_operators").get<std::size_t>()) +
           " validated operators");
    return n.done();
}

/// Grid search for the lower end: sup over k in [-10, 10] step 1/100 of
/// k·v + min(phi0 - k·b), together with the constant floor min(phi0).
Rational grid_lower(std::span<const Generator> gens, const PointFunction& phi0)
{
    Rational best = phi0.min();
    for (const auto& gen : gens) {
        for (int i = -1000; i <= 1000; ++i) {
            const Rational k(i, 100);
            Rational m = phi0[0] - k * gen.b[0];
            for (int x = 1; x < phi0.ground().size(); ++x) {
                const Rational d = phi0[x] - k * gen.b[x];
                if (d < m) {
                    m = d;
                }
            }
            const Rational val = k * gen.value + m;
            if (val > best) {
                best = val;
            }
        }
    }
    return best;
}

Rational grid_upper(std::span<const Generator> gens, const PointFunction& phi0)
{
    return -grid_lower(gens, phi0.scaled(Rational(-1)));
}

// 8. extend_one intervals.
Outcome extend()
{
    Notes n;
    const GroundSet g2(2);
    const auto one = PointFunction::constant(g2, Rational(1));
    struct Case {
        std::vector<Generator> gens;
        PointFunction phi0;
        Rational lower;
        Rational upper;
    };
    const std::vector<Case> cases{
        {{{one, Rational(1)}}, PointFunction(g2, {0, 1}), Rational(0), Rational(1)},
        {{{PointFunction(g2, {0, 1}), Rational(1)}, {one, Rational(1)}}, PointFunction(g2, {0, 2}), Rational(2), Rational(2)},
    };
    for (const auto& c : cases) {
        const GeneratedSubspace b0(g2, c.gens);
        const auto ext = extend_one(b0, c.phi0);
        const auto lo = grid_lower(c.gens, c.phi0);
        const auto hi = grid_upper(c.gens, c.phi0);
        // The documented intervals have breakpoints on the grid, so agreement is exact.
        if (ext.lower != c.lower || ext.upper != c.upper || lo != c.lower || hi != c.upper) {
            n.fail("interval [" + to_string(ext.lower) + ", " + to_string(ext.upper) + "], grid [" + to_string(lo) +
                   ", " + to_string(hi) + "]");
        }
    }
    if (extend_one(GeneratedSubspace(g2, {{one, Rational(1)}}), PointFunction(g2, {0, 1})).value != Rational(1, 2)) {
        n.fail("default midpoint");
    }

    // Seeded instances: generator values come from an actual functional.
    std::size_t grid_checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const int k = 2 + static_cast<int>(seed % 3);
        const GroundSet g(k);
        const auto lambda = enumerate_mls(g);
        std::vector<Term> pool;
        for (int x = 0; x < k; ++x) {
            pool.push_back(Term::dirac(g, x));
        }
        for (const auto& eta : lambda.systems()) {
            pool.push_back(Term::maxmin(eta));
        }
        pool.push_back(Term::linear(g, std::vector<Rational>(static_cast<std::size_t>(k), Rational(1, k))));
        pool.push_back(Term::convex({Rational(1, 2), Rational(1, 2)}, {Term::max_over(g, g.full()), Term::min_over(g, g.full())}));
        const Term& t = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        std::vector<Generator> gens;
        const int count = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i) {
            const auto b = detail::random_function(g, rng);
            gens.push_back({b, evaluate(t, b)});
        }
        const auto phi0 = detail::random_function(g, rng);
        try {
            const GeneratedSubspace b0(g, gens);
            const auto ext = extend_one(b0, phi0);
            const auto truth = evaluate(t, phi0);
            if (ext.lower > ext.upper || truth < ext.lower || truth > ext.upper) {
                n.fail("seed " + std::to_string(seed) + ": [" + to_string(ext.lower) + ", " + to_string(ext.upper) +
                       "] vs true value " + to_string(truth));
            }
            // The grid can only under-estimate the supremum.
            if (seed % 10 == 0) {
                ++grid_checked;
                const auto lo = grid_lower(gens, phi0);
                const auto hi = grid_upper(gens, phi0);
                if (lo > ext.lower || hi < ext.upper) {
                    n.fail("seed " + std::to_string(seed) + ": grid beats the exact interval");
                }
            }
            // The extended subspace must stay consistent.
            (void)b0.with({phi0, ext.value});
        } catch (const error& e) {
            n.fail("seed " + std::to_string(seed) + ": " + e.what());
        }
    }
    n.note("2 documented intervals exact, 100 seeded instances, " + std::to_string(grid_checked) + " grid cross-checks");
    return n.done();
}

// 9. Inclusion hyperspaces.
Outcome inclusion()
{
    Notes n;
    const std::uint64_t expected[] = {1, 4, 18};
    for (int k = 1; k <= 3; ++k) {
        const auto count = enumerate_ih(GroundSet(k)).size();
        if (count != expected[k - 1] || count != oracle::count_nonempty_antichains(k) ||
            count != oracle::count_upclosed_families(k)) {
            n.fail("n=" + std::to_string(k) + " count " + std::to_string(count));
        }
    }
    for (int k = 1; k <= 4; ++k) {
        const GroundSet g(k);
        const auto lambda = enumerate_mls(g);
        const auto gx = enumerate_ih(g);
        if (gx.size() != oracle::count_nonempty_antichains(k)) {
            n.fail("n=" + std::to_string(k) + " antichain oracle mismatch");
        }
        for (const auto& eta : lambda.systems()) {
            if (!std::binary_search(gx.begin(), gx.end(), InclusionHyperspace::from_system(eta))) {
                n.fail("MLS missing from GX");
            }
        }
        std::size_t self_dual = 0;
        for (const auto& h : gx) {
            const bool in_lambda = std::any_of(lambda.systems().begin(), lambda.systems().end(),
                                               [&](const MaxLinkedSystem& eta) { return eta.minimal() == h.minimal(); });
            if (h.is_mls()) {
                ++self_dual;
            }
            if (h.is_mls() != in_lambda) {
                n.fail("self-duality misclassifies " + io::detail::hex_list(h.minimal()).dump());
            }
        }
        if (self_dual != lambda.size()) {
            n.fail("n=" + std::to_string(k) + " self-dual count");
        }
    }
    n.note("counts 1, 4, 18 (166 at n=4) match both oracles");
    return n.done();
}

// 10. Reports are byte-identical across repeated runs and worker counts.
Outcome determinism()
{
    Notes n;
    const std::vector<std::pair<std::string, int>> runs{
        {"eq1", 4}, {"axioms", 3}, {"functor-laws", 3}, {"subbase-lambda", 4}, {"usco-roundtrip", 9}, {"counts", 6}};
    for (const auto& [suite, k] : runs) {
        std::string reference;
        for (std::size_t workers : {1, 2, 8, 1, 8}) {
            RunConfig cfg;
            cfg.suite = suite;
            cfg.n = k;
            cfg.seed = 42;
            cfg.trials = 200;
            cfg.workers = workers;
            const auto text = run_verify_suite(cfg).render(OutputFormat::json);
            if (reference.empty()) {
                reference = text;
            } else if (text != reference) {
                n.fail(suite + " differs under " + std::to_string(workers) + " workers");
            }
        }
    }
    for (std::size_t workers : {2, 8}) {
        if (!(io::to_json(enumerate_mls(GroundSet(6), {7, workers})) == io::to_json(enumerate_mls(GroundSet(6), {7, 1})))) {
            n.fail("enumeration differs under " + std::to_string(workers) + " workers");
        }
    }
    AxiomOptions a1{300, 7, false, 1};
    AxiomOptions a8{300, 7, false, 8};
    const GroundSet g3(3);
    const Functional broken = [](const PointFunction& f) { return Rational(f.max() + f.min()); };
    const auto r1 = axiom_check(broken, g3, a1);
    const auto r8 = axiom_check(broken, g3, a8);
    if (r1.pass() || r8.pass() || detail::counterexample_json(*r1.counterexample) != detail::counterexample_json(*r8.counterexample)) {
        n.fail("axiom counterexample depends on workers");
    }
    n.note("6 suites x 5 runs under 1, 2 and 8 workers");
    return n.done();
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 MLS counts", mls_counts},
        {"2 max-min = min-max", eq1},
        {"3 axioms", axioms},
        {"4 embedding injectivity", separation},
        {"5 functor laws", functor_laws},
        {"6 binary normal subbase", subbase_lambda},
        {"7 usco constructions", usco},
        {"8 extend_one", extend},
        {"9 inclusion hyperspaces", inclusion},
        {"10 determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = seconds_since(t0);
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << fixed(secs) << "s)";
        if (!o.detail.empty()) {
            std::cout << ": " << o.detail;
        }
        std::cout << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
