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

/// @file functionals.hpp
/// Monotone, homogeneous, weakly additive functionals on the functions of a
/// finite discrete space, represented as a closed term language and
/// evaluated in exact rationals.
///
/// A functional u maps real functions on X to reals and satisfies
///   monotone:         f <= g  implies u(f) <= u(g)
///   homogeneous:      u(k f) = k u(f)      for every real k
///   weakly additive:  u(f + c) = u(f) + c  for every constant c
/// The term language covers point evaluations, the max-min functional of a
/// maximal linked system, min/max over a set, probability measures, convex
/// combinations, and push-forward along a map of grounds.

#include <supext/parallel.hpp>
#include <supext/rational.hpp>
#include <supext/setkit.hpp>
#include <supext/superext.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace supext {

/// A real function on a finite ground set, one exact value per point.
class PointFunction {
public:
    PointFunction(GroundSet ground, std::vector<Rational> values) : ground_(ground), values_(std::move(values))
    {
        if (static_cast<int>(values_.size()) != ground_.size()) {
            throw error(errc::ground_mismatch, "function has " + std::to_string(values_.size()) +
                                                   " values for a ground of size " + std::to_string(ground_.size()));
        }
    }

    static PointFunction constant(GroundSet g, const Rational& c)
    {
        return PointFunction(g, std::vector<Rational>(static_cast<std::size_t>(g.size()), c));
    }

    static PointFunction indicator(GroundSet g, Mask set)
    {
        std::vector<Rational> v(static_cast<std::size_t>(g.size()), Rational(0));
        for_each_point(set, [&](int x) { v[static_cast<std::size_t>(x)] = 1; });
        return PointFunction(g, std::move(v));
    }

    [[nodiscard]] GroundSet ground() const noexcept { return ground_; }
    [[nodiscard]] std::span<const Rational> values() const noexcept { return values_; }
    [[nodiscard]] const Rational& operator[](int x) const { return values_.at(static_cast<std::size_t>(x)); }

    [[nodiscard]] Rational min_on(Mask set) const
    {
        std::optional<Rational> best;
        for_each_point(set, [&](int x) {
            const Rational& v = values_[static_cast<std::size_t>(x)];
            if (!best || v < *best) {
                best = v;
            }
        });
        return best.value();
    }

    [[nodiscard]] Rational max_on(Mask set) const
    {
        std::optional<Rational> best;
        for_each_point(set, [&](int x) {
            const Rational& v = values_[static_cast<std::size_t>(x)];
            if (!best || v > *best) {
                best = v;
            }
        });
        return best.value();
    }

    [[nodiscard]] Rational min() const { return min_on(ground_.full()); }
    [[nodiscard]] Rational max() const { return max_on(ground_.full()); }

    [[nodiscard]] PointFunction scaled(const Rational& k) const
    {
        auto v = values_;
        for (auto& x : v) {
            x *= k;
        }
        return PointFunction(ground_, std::move(v));
    }

    [[nodiscard]] PointFunction shifted(const Rational& c) const
    {
        auto v = values_;
        for (auto& x : v) {
            x += c;
        }
        return PointFunction(ground_, std::move(v));
    }

    /// (this ∘ f): the function x ↦ this(f(x)) on f's domain.
    [[nodiscard]] PointFunction compose(const PointMap& f) const
    {
        if (f.codomain() != ground_) {
            throw error(errc::ground_mismatch, "cannot compose: map codomain differs from function ground");
        }
        std::vector<Rational> v;
        v.reserve(static_cast<std::size_t>(f.domain().size()));
        for (int y : f.table()) {
            v.push_back(values_[static_cast<std::size_t>(y)]);
        }
        return PointFunction(f.domain(), std::move(v));
    }

    [[nodiscard]] bool is_constant() const
    {
        for (const auto& v : values_) {
            if (v != values_.front()) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const PointFunction&, const PointFunction&) = default;

private:
    GroundSet ground_;
    std::vector<Rational> values_;
};

[[nodiscard]] inline bool pointwise_le(const PointFunction& f, const PointFunction& g)
{
    for (int x = 0; x < f.ground().size(); ++x) {
        if (f[x] > g[x]) {
            return false;
        }
    }
    return true;
}

/// Calls fn on every function with values drawn from `levels`, in
/// lexicographic order (point 0 varies slowest).
template <class Fn>
void for_each_grid_function(GroundSet g, std::span<const Rational> levels, Fn&& fn)
{
    const auto n = static_cast<std::size_t>(g.size());
    std::vector<std::size_t> digit(n, 0);
    std::vector<Rational> vals(n, levels[0]);
    while (true) {
        fn(PointFunction(g, vals));
        std::size_t i = n;
        while (i > 0 && digit[i - 1] + 1 == levels.size()) {
            digit[i - 1] = 0;
            vals[i - 1] = levels[0];
            --i;
        }
        if (i == 0) {
            return;
        }
        ++digit[i - 1];
        vals[i - 1] = levels[digit[i - 1]];
    }
}

/// The exhaustive sweep grid {-1, 0, 1, 2}.
[[nodiscard]] inline std::vector<Rational> sweep_levels() { return {Rational(-1), Rational(0), Rational(1), Rational(2)}; }

// ---------------------------------------------------------------------------
// max-min functional of a maximal linked system

struct Eq1Values {
    Rational max_min;
    Rational min_max;
    bool equal = false;
};

/// Both sides of max_F min_{x∈F} f(x) = min_F max_{x∈F} f(x) for an arbitrary
/// family of nonempty sets. Minimal members suffice on both sides.
[[nodiscard]] inline Eq1Values check_eq1(const SetFamily& family, const PointFunction& f)
{
    if (family.ground() != f.ground()) {
        throw error(errc::ground_mismatch, "family and function live on different grounds");
    }
    if (family.empty() || family.contains(0)) {
        throw error(errc::invalid_argument, "max-min needs a nonempty family of nonempty sets");
    }
    std::optional<Rational> mm;
    std::optional<Rational> xm;
    for (Mask m : family) {
        Rational lo = f.min_on(m);
        Rational hi = f.max_on(m);
        if (!mm || lo > *mm) {
            mm = std::move(lo);
        }
        if (!xm || hi < *xm) {
            xm = std::move(hi);
        }
    }
    Eq1Values out{*mm, *xm, false};
    out.equal = out.max_min == out.min_max;
    return out;
}

[[nodiscard]] inline Eq1Values check_eq1(const MaxLinkedSystem& eta, const PointFunction& f)
{
    return check_eq1(eta.minimal(), f);
}

/// φ_η(f) = max over members F of min of f on F.
[[nodiscard]] inline Rational phi(const MaxLinkedSystem& eta, const PointFunction& f)
{
    if (eta.ground() != f.ground()) {
        throw error(errc::ground_mismatch, "system and function live on different grounds");
    }
    std::optional<Rational> best;
    for (Mask m : eta.minimal()) {
        Rational lo = f.min_on(m);
        if (!best || lo > *best) {
            best = std::move(lo);
        }
    }
    return *best;
}

// ---------------------------------------------------------------------------
// terms

class Term;

namespace term {

struct Dirac {
    int x;
};
struct MaxMin {
    MaxLinkedSystem eta;
};
struct MinOver {
    Mask set;
};
struct MaxOver {
    Mask set;
};
struct Linear {
    std::vector<Rational> weights;
};
struct Convex {
    std::vector<Rational> weights;
    std::vector<Term> parts;
};
/// Push-forward along map: A -> B of a term on A; the result lives on B and
/// evaluates h as inner(h ∘ map).
struct Precompose {
    PointMap map;
    std::shared_ptr<const Term> inner;
};

using Node = std::variant<Dirac, MaxMin, MinOver, MaxOver, Linear, Convex, Precompose>;

} // namespace term

class Term {
public:
    static Term dirac(GroundSet g, int x)
    {
        if (!g.has_point(x)) {
            throw error(errc::point_out_of_range, "dirac point " + std::to_string(x) + " outside ground");
        }
        return Term(g, term::Dirac{x});
    }

    static Term maxmin(MaxLinkedSystem eta)
    {
        const GroundSet g = eta.ground();
        return Term(g, term::MaxMin{std::move(eta)});
    }

    static Term min_over(GroundSet g, Mask set)
    {
        check_nonempty_subset(g, set);
        return Term(g, term::MinOver{set});
    }

    static Term max_over(GroundSet g, Mask set)
    {
        check_nonempty_subset(g, set);
        return Term(g, term::MaxOver{set});
    }

    /// A probability measure given by its point masses.
    static Term linear(GroundSet g, std::vector<Rational> weights)
    {
        if (static_cast<int>(weights.size()) != g.size()) {
            throw error(errc::ground_mismatch, "linear weights must have one entry per point");
        }
        Rational sum = 0;
        for (const auto& w : weights) {
            if (w < 0) {
                throw error(errc::invalid_argument, "linear weights must be nonnegative");
            }
            sum += w;
        }
        if (sum != 1) {
            throw error(errc::invalid_argument, "linear weights must sum to 1");
        }
        return Term(g, term::Linear{std::move(weights)});
    }

    static Term convex(std::vector<Rational> weights, std::vector<Term> parts)
    {
        if (parts.empty() || weights.size() != parts.size()) {
            throw error(errc::invalid_argument, "convex combination needs one weight per part");
        }
        Rational sum = 0;
        for (const auto& w : weights) {
            if (w <= 0) {
                throw error(errc::invalid_argument, "convex weights must be positive");
            }
            sum += w;
        }
        if (sum != 1) {
            throw error(errc::invalid_argument, "convex weights must sum to 1");
        }
        const GroundSet g = parts.front().ground();
        for (const auto& p : parts) {
            if (p.ground() != g) {
                throw error(errc::ground_mismatch, "convex parts live on different grounds");
            }
        }
        return Term(g, term::Convex{std::move(weights), std::move(parts)});
    }

    static Term precompose(PointMap map, Term inner)
    {
        if (map.domain() != inner.ground()) {
            throw error(errc::ground_mismatch, "precompose: map domain differs from inner term ground");
        }
        const GroundSet g = map.codomain();
        return Term(g, term::Precompose{std::move(map), std::make_shared<const Term>(std::move(inner))});
    }

    [[nodiscard]] GroundSet ground() const noexcept { return ground_; }
    [[nodiscard]] const term::Node& node() const noexcept { return *node_; }

private:
    Term(GroundSet g, term::Node node) : ground_(g), node_(std::make_shared<const term::Node>(std::move(node))) {}

    static void check_nonempty_subset(GroundSet g, Mask set)
    {
        if (set == 0) {
            throw error(errc::empty_set, "min/max over the empty set");
        }
        if (!g.contains(set)) {
            throw error(errc::ground_mismatch, "set uses points outside the ground");
        }
    }

    GroundSet ground_;
    std::shared_ptr<const term::Node> node_;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace detail

[[nodiscard]] inline Rational evaluate(const Term& t, const PointFunction& f)
{
    if (t.ground() != f.ground()) {
        throw error(errc::ground_mismatch, "term and function live on different grounds");
    }
    return std::visit(
        detail::overloaded{
            [&](const term::Dirac& d) { return f[d.x]; },
            [&](const term::MaxMin& m) { return phi(m.eta, f); },
            [&](const term::MinOver& m) { return f.min_on(m.set); },
            [&](const term::MaxOver& m) { return f.max_on(m.set); },
            [&](const term::Linear& l) {
                Rational s = 0;
                for (int x = 0; x < f.ground().size(); ++x) {
                    s += l.weights[static_cast<std::size_t>(x)] * f[x];
                }
                return s;
            },
            [&](const term::Convex& c) {
                Rational s = 0;
                for (std::size_t i = 0; i < c.parts.size(); ++i) {
                    s += c.weights[i] * evaluate(c.parts[i], f);
                }
                return s;
            },
            [&](const term::Precompose& p) { return evaluate(*p.inner, f.compose(p.map)); },
        },
        t.node());
}

/// A functional given only as a black box.
using Functional = std::function<Rational(const PointFunction&)>;

[[nodiscard]] inline Functional as_functional(Term t)
{
    return [t = std::move(t)](const PointFunction& f) { return evaluate(t, f); };
}

// ---------------------------------------------------------------------------
// axiom checking

enum class Axiom {
    evaluation, ///< the functional threw
    normalization,
    homogeneity,
    weak_additivity,
    monotonicity,
};

constexpr std::string_view to_string(Axiom a) noexcept
{
    switch (a) {
    case Axiom::evaluation: return "evaluation";
    case Axiom::normalization: return "normalization";
    case Axiom::homogeneity: return "homogeneity";
    case Axiom::weak_additivity: return "weak_additivity";
    case Axiom::monotonicity: return "monotonicity";
    }
    return "unknown";
}

struct AxiomCounterexample {
    Axiom axiom;
    std::size_t trial;
    PointFunction f;
    std::optional<PointFunction> g;
    std::optional<Rational> scalar;
    std::string detail;
};

struct AxiomReport {
    std::size_t trials = 0;
    std::optional<AxiomCounterexample> counterexample;

    [[nodiscard]] bool pass() const noexcept { return !counterexample.has_value(); }
};

struct AxiomOptions {
    std::size_t trials = 500;
    std::uint64_t seed = 0;
    /// Check u(1) = 1 instead of homogeneity (order-preserving functionals).
    bool normalized = false;
    std::size_t workers = 1;
};

namespace detail {

/// Trial-local generator: depends only on (seed, trial), not on scheduling.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(std::uint64_t{trial} >> 32)};
    return std::mt19937_64(seq);
}

/// p/q with |p| <= 32 and 1 <= q <= 16.
inline Rational random_rational(std::mt19937_64& rng, bool nonnegative = false)
{
    std::uniform_int_distribution<int> num(nonnegative ? 0 : -32, 32);
    std::uniform_int_distribution<int> den(1, 16);
    const int p = num(rng);
    const int q = den(rng);
    return Rational(p, q);
}

inline PointFunction random_function(GroundSet g, std::mt19937_64& rng)
{
    std::vector<Rational> v;
    for (int i = 0; i < g.size(); ++i) {
        v.push_back(random_rational(rng));
    }
    return PointFunction(g, std::move(v));
}

/// Every fourth trial uses k = 0 and every fourth uses a negative k.
inline Rational trial_scalar(std::mt19937_64& rng, std::size_t trial)
{
    Rational k = random_rational(rng);
    switch (trial % 4) {
    case 0: return Rational(0);
    case 1: return k > 0 ? Rational(-k) : (k == 0 ? Rational(-1) : k);
    default: return k;
    }
}

} // namespace detail

/// Samples function pairs f <= g, scalars and constants, and reports the
/// first violated axiom. Axioms are ranked normalization/homogeneity, then
/// weak additivity, then monotonicity; among failures of the top-ranked
/// axiom the lowest trial index is reported, so the result does not depend
/// on the worker count.
[[nodiscard]] inline AxiomReport axiom_check(const Functional& u, GroundSet g, const AxiomOptions& opts = {})
{
    if (opts.trials < 1) {
        throw error(errc::invalid_argument, "axiom_check needs at least one trial");
    }
    AxiomReport report;
    report.trials = opts.trials;

    auto safe_eval = [&](const PointFunction& f) -> std::optional<Rational> {
        try {
            return u(f);
        } catch (...) {
            return std::nullopt;
        }
    };

    std::vector<std::optional<AxiomCounterexample>> found(opts.trials);
    if (opts.normalized) {
        const auto one = PointFunction::constant(g, 1);
        const auto v = safe_eval(one);
        if (!v) {
            report.counterexample = AxiomCounterexample{Axiom::evaluation, 0, one, std::nullopt, std::nullopt,
                                                        "functional threw on the constant 1"};
            return report;
        }
        if (*v != 1) {
            report.counterexample = AxiomCounterexample{Axiom::normalization, 0, one, std::nullopt, std::nullopt,
                                                        "u(1) = " + to_string(*v)};
            return report;
        }
    }

    auto rank = [](Axiom a) { return static_cast<int>(a); };

    run_tasks(opts.workers, opts.trials, [&](std::size_t trial) {
        auto rng = detail::trial_rng(opts.seed, trial);
        const PointFunction f = detail::random_function(g, rng);
        std::vector<Rational> inc;
        for (int i = 0; i < g.size(); ++i) {
            inc.push_back(detail::random_rational(rng, true));
        }
        std::vector<Rational> gv(f.values().begin(), f.values().end());
        for (std::size_t i = 0; i < gv.size(); ++i) {
            gv[i] += inc[i];
        }
        const PointFunction gfun(g, std::move(gv));
        const Rational k = detail::trial_scalar(rng, trial);
        const Rational c = detail::random_rational(rng);

        std::optional<AxiomCounterexample> worst;
        auto record = [&](AxiomCounterexample cx) {
            if (!worst || rank(cx.axiom) < rank(worst->axiom)) {
                worst = std::move(cx);
            }
        };

        const auto uf = safe_eval(f);
        if (!uf) {
            found[trial] = AxiomCounterexample{Axiom::evaluation, trial, f, std::nullopt, std::nullopt,
                                               "functional threw"};
            return;
        }
        if (!opts.normalized) {
            const auto ukf = safe_eval(f.scaled(k));
            if (!ukf) {
                record({Axiom::evaluation, trial, f.scaled(k), std::nullopt, k, "functional threw"});
            } else if (*ukf != k * *uf) {
                record({Axiom::homogeneity, trial, f, std::nullopt, k,
                        "u(k f) = " + to_string(*ukf) + " but k u(f) = " + to_string(Rational(k * *uf))});
            }
        }
        const auto ufc = safe_eval(f.shifted(c));
        if (!ufc) {
            record({Axiom::evaluation, trial, f.shifted(c), std::nullopt, c, "functional threw"});
        } else if (*ufc != *uf + c) {
            record({Axiom::weak_additivity, trial, f, std::nullopt, c,
                    "u(f + c) = " + to_string(*ufc) + " but u(f) + c = " + to_string(Rational(*uf + c))});
        }
        const auto ug = safe_eval(gfun);
        if (!ug) {
            record({Axiom::evaluation, trial, gfun, std::nullopt, std::nullopt, "functional threw"});
        } else if (*uf > *ug) {
            record({Axiom::monotonicity, trial, f, gfun, std::nullopt,
                    "f <= g but u(f) = " + to_string(*uf) + " > u(g) = " + to_string(*ug)});
        }
        found[trial] = std::move(worst);
    });

    for (const auto& cx : found) {
        if (cx && (!report.counterexample || rank(cx->axiom) < rank(report.counterexample->axiom))) {
            report.counterexample = cx;
        }
    }
    return report;
}

[[nodiscard]] inline AxiomReport axiom_check(const Term& t, const AxiomOptions& opts = {})
{
    return axiom_check(as_functional(t), t.ground(), opts);
}

// ---------------------------------------------------------------------------
// embedding λX -> S(X)

/// A 0/1 function that φ_eta sends to 1 and φ_xi sends to 0. It is the
/// indicator of the first minimal member F of eta (canonical order) that
/// xi does not contain; xi then contains the complement of F.
[[nodiscard]] inline PointFunction separating_function(const MaxLinkedSystem& eta, const MaxLinkedSystem& xi)
{
    if (eta.ground() != xi.ground()) {
        throw error(errc::ground_mismatch, "systems live on different grounds");
    }
    if (eta == xi) {
        throw error(errc::equal_systems, "cannot separate a system from itself");
    }
    for (Mask m : eta.minimal()) {
        if (!xi.contains(m)) {
            return PointFunction::indicator(eta.ground(), m);
        }
    }
    throw std::logic_error("distinct maximal linked systems must differ on a minimal member");
}

/// Smallest set H, in canonical order, such that the term's value depends
/// only on the restriction to H, decided on the grid {0, 1, 2}^n.
[[nodiscard]] inline Mask support(const Term& t)
{
    const GroundSet g = t.ground();
    if (g.size() > 8) {
        throw error(errc::too_large, "support scan is limited to 8 points");
    }
    const std::vector<Rational> levels{Rational(0), Rational(1), Rational(2)};
    std::vector<std::vector<int>> points;
    std::vector<Rational> values;
    for_each_grid_function(g, levels, [&](const PointFunction& f) {
        std::vector<int> d;
        for (const auto& v : f.values()) {
            d.push_back(static_cast<int>(boost::multiprecision::numerator(v)));
        }
        points.push_back(std::move(d));
        values.push_back(evaluate(t, f));
    });
    std::vector<Mask> order;
    for (std::uint32_t h = 0; h < g.subset_count(); ++h) {
        order.push_back(h);
    }
    std::sort(order.begin(), order.end(), canonical_less);
    for (Mask h : order) {
        std::map<std::vector<int>, const Rational*> seen;
        bool factors = true;
        for (std::size_t i = 0; i < points.size() && factors; ++i) {
            std::vector<int> key;
            for_each_point(h, [&](int x) { key.push_back(points[i][static_cast<std::size_t>(x)]); });
            auto [it, inserted] = seen.emplace(std::move(key), &values[i]);
            if (!inserted && *it->second != values[i]) {
                factors = false;
            }
        }
        if (factors) {
            return h;
        }
    }
    return g.full();
}

/// η ↦ φ_η(f) over all of λX, in the superextension's order.
[[nodiscard]] inline std::vector<Rational> extender_to_lambda(const PointFunction& f, const Superextension& lambda)
{
    if (f.ground() != lambda.ground()) {
        throw error(errc::ground_mismatch, "function and superextension live on different grounds");
    }
    std::vector<Rational> out;
    out.reserve(lambda.size());
    for (const auto& eta : lambda.systems()) {
        out.push_back(phi(eta, f));
    }
    return out;
}

/// An extender C(X) -> C(Y) for a finite Y; returns one value per point of Y.
using Extender = std::function<std::vector<Rational>(const PointFunction&)>;

struct RetractionOptions {
    /// Axiom trials run on every r(y) during validation.
    std::size_t axiom_trials = 64;
    std::uint64_t seed = 0;
};

/// r(y)(f) = u(f)(y). `inject[x]` is the point of Y that x is identified with.
/// The extender property is validated on the grid {-1,0,1,2}^n and every r(y)
/// is axiom-checked; any failure raises NotAnExtender.
[[nodiscard]] inline std::vector<Functional> retraction_from_extender(const Extender& u, GroundSet x,
                                                                      std::size_t y_size,
                                                                      std::span<const std::size_t> inject,
                                                                      const RetractionOptions& opts = {})
{
    if (static_cast<int>(inject.size()) != x.size()) {
        throw error(errc::ground_mismatch, "injection must list one point of Y per point of X");
    }
    for (std::size_t p : inject) {
        if (p >= y_size) {
            throw error(errc::point_out_of_range, "injection points outside Y");
        }
    }
    if (x.size() > 6) {
        throw error(errc::too_large, "extender validation grid is limited to 6 points");
    }
    const auto levels = sweep_levels();
    for_each_grid_function(x, levels, [&](const PointFunction& f) {
        const auto uf = u(f);
        if (uf.size() != y_size) {
            throw error(errc::not_an_extender, "extender returned the wrong number of values");
        }
        for (int p = 0; p < x.size(); ++p) {
            if (uf[inject[static_cast<std::size_t>(p)]] != f[p]) {
                throw error(errc::not_an_extender, "u(f) does not restrict to f on X");
            }
        }
    });
    std::vector<Functional> r;
    r.reserve(y_size);
    for (std::size_t y = 0; y < y_size; ++y) {
        r.emplace_back([u, y](const PointFunction& f) { return u(f)[y]; });
    }
    if (opts.axiom_trials > 0) {
        for (std::size_t y = 0; y < y_size; ++y) {
            const auto rep = axiom_check(r[y], x, {opts.axiom_trials, opts.seed, false, 1});
            if (!rep.pass()) {
                throw error(errc::not_an_extender,
                            "r(" + std::to_string(y) + ") violates " + std::string(to_string(rep.counterexample->axiom)));
            }
        }
    }
    return r;
}

/// A functional on X whose push-forward along the surjection f is nu. Built
/// by precomposing nu with the section that sends y to its least preimage.
[[nodiscard]] inline Term s_preimage(const PointMap& f, const Term& nu)
{
    if (nu.ground() != f.codomain()) {
        throw error(errc::ground_mismatch, "nu must live on the codomain of f");
    }
    if (!f.is_surjective()) {
        throw error(errc::not_surjective, "S-preimage needs a surjective map");
    }
    std::vector<int> section(static_cast<std::size_t>(f.codomain().size()), -1);
    for (int x = 0; x < f.domain().size(); ++x) {
        auto& s = section[static_cast<std::size_t>(f(x))];
        if (s < 0) {
            s = x;
        }
    }
    return Term::precompose(PointMap(f.codomain(), f.domain(), std::move(section)), nu);
}

/// Push-forward S(f)(mu): a term on f's codomain.
[[nodiscard]] inline Term s_map(const PointMap& f, const Term& mu) { return Term::precompose(f, mu); }

// ---------------------------------------------------------------------------
// one-step extension of a partial functional

struct Generator {
    PointFunction b;
    Rational value;
};

struct Interval {
    Rational lower;
    Rational upper;
};

namespace detail {

/// sup over k of k·v + min_x(φ(x) − k·b(x)): the largest value that the
/// partial functional assigns below φ along the line {k·b + c}. The concave
/// piecewise-linear objective peaks where the minimizing point changes,
/// i.e. at some k = (φ(x) − φ(x')) / (b(x) − b(x')). Returns nullopt when the
/// supremum is infinite.
inline std::optional<Rational> line_floor(const PointFunction& b, const Rational& v, const PointFunction& phi0)
{
    const int n = b.ground().size();
    auto objective = [&](const Rational& k) {
        std::optional<Rational> m;
        for (int x = 0; x < n; ++x) {
            Rational d = phi0[x] - k * b[x];
            if (!m || d < *m) {
                m = std::move(d);
            }
        }
        return Rational(k * v + *m);
    };
    const Rational bmin = b.min();
    const Rational bmax = b.max();
    if (bmin == bmax) {
        // b is the constant bmin: the line is the constants plus a slope
        // (v - bmin) in k.
        if (v != bmin) {
            return std::nullopt;
        }
        return phi0.min();
    }
    if (v > bmax || v < bmin) {
        return std::nullopt;
    }
    std::optional<Rational> best;
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (b[x] == b[y]) {
                continue;
            }
            Rational val = objective((phi0[x] - phi0[y]) / (b[x] - b[y]));
            if (!best || val > *best) {
                best = std::move(val);
            }
        }
    }
    return best;
}

inline PointFunction negated(const PointFunction& f) { return f.scaled(Rational(-1)); }

/// Admissible interval for phi0 against the constants and each generator.
inline Interval envelope(std::span<const Generator> gens, const PointFunction& phi0)
{
    Rational lower = phi0.min();
    Rational upper = phi0.max();
    const PointFunction neg = negated(phi0);
    for (const auto& gen : gens) {
        const auto lo = line_floor(gen.b, gen.value, phi0);
        const auto hi = line_floor(gen.b, gen.value, neg);
        if (!lo || !hi) {
            throw error(errc::inconsistent, "generator value outside the range of its function");
        }
        if (*lo > lower) {
            lower = *lo;
        }
        if (-*hi < upper) {
            upper = -*hi;
        }
    }
    return {lower, upper};
}

} // namespace detail

/// The subspace {k·b + c} spanned by finitely many functions together with
/// the values a partial functional assigns them. Constants are always
/// included and valued as themselves.
class GeneratedSubspace {
public:
    /// Validates that the induced partial functional k·b + c ↦ k·v_b + c is
    /// single-valued and monotone by checking every generator against the
    /// constants and against every other generator.
    GeneratedSubspace(GroundSet ground, std::vector<Generator> generators)
        : ground_(ground), generators_(std::move(generators))
    {
        for (const auto& g : generators_) {
            if (g.b.ground() != ground_) {
                throw error(errc::ground_mismatch, "generator lives on a different ground");
            }
        }
        for (std::size_t j = 0; j < generators_.size(); ++j) {
            for (std::size_t i = 0; i <= generators_.size(); ++i) {
                if (i == j) {
                    continue;
                }
                std::span<const Generator> against;
                if (i < generators_.size()) {
                    against = std::span<const Generator>(&generators_[i], 1);
                }
                const Interval iv = detail::envelope(against, generators_[j].b);
                const Rational& v = generators_[j].value;
                if (v < iv.lower || v > iv.upper) {
                    throw error(errc::inconsistent, "generator " + std::to_string(j) +
                                                        " value is not monotone-compatible with " +
                                                        (i < generators_.size() ? "generator " + std::to_string(i)
                                                                                : std::string("the constants")));
                }
            }
        }
    }

    [[nodiscard]] GroundSet ground() const noexcept { return ground_; }
    [[nodiscard]] std::span<const Generator> generators() const noexcept { return generators_; }

    [[nodiscard]] GeneratedSubspace with(Generator g) const
    {
        auto gens = generators_;
        gens.push_back(std::move(g));
        return GeneratedSubspace(ground_, std::move(gens));
    }

private:
    GroundSet ground_;
    std::vector<Generator> generators_;
};

enum class ExtensionChoice { midpoint, lower, upper };

struct Extension {
    Rational lower;
    Rational upper;
    Rational value;
};

/// Exact interval [lower, upper] of values p such that extending the partial
/// functional by phi0 ↦ p keeps it monotone along every generator line, plus
/// the chosen p.
[[nodiscard]] inline Extension extend_one(const GeneratedSubspace& b0, const PointFunction& phi0,
                                          ExtensionChoice choice = ExtensionChoice::midpoint)
{
    if (phi0.ground() != b0.ground()) {
        throw error(errc::ground_mismatch, "phi0 lives on a different ground");
    }
    for (const auto& g : b0.generators()) {
        if (g.b == phi0) {
            throw error(errc::in_subspace, "phi0 is already a generator");
        }
    }
    const Interval iv = detail::envelope(b0.generators(), phi0);
    if (iv.lower > iv.upper) {
        throw error(errc::inconsistent,
                    "empty admissible interval [" + to_string(iv.lower) + ", " + to_string(iv.upper) + "]");
    }
    Rational p;
    switch (choice) {
    case ExtensionChoice::midpoint: p = (iv.lower + iv.upper) / 2; break;
    case ExtensionChoice::lower: p = iv.lower; break;
    case ExtensionChoice::upper: p = iv.upper; break;
    }
    return {iv.lower, iv.upper, p};
}

} // namespace supext
