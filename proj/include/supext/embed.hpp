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

/// @file embed.hpp
/// Finite topological spaces, regular operators between their open-set
/// lattices, and the conversions between regular operators and usc
/// set-valued maps into λX.
///
/// A finite topology is fixed by the minimal open neighbourhood of each
/// point; a set is open iff it contains the minimal neighbourhood of each of
/// its points. A regular operator e for X ⊆ Y sends opens of X to opens of Y
/// with e(∅) = ∅, e(U) ∩ X = U, and e(U) ∩ e(V) = ∅ whenever U ∩ V = ∅.

#include <supext/carrier.hpp>
#include <supext/setkit.hpp>
#include <supext/superext.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supext {

class FiniteTopSpace {
public:
    FiniteTopSpace(int n, std::vector<Mask> min_nbhd) : ground_(n), min_nbhd_(std::move(min_nbhd))
    {
        if (static_cast<int>(min_nbhd_.size()) != n) {
            throw error(errc::invalid_argument, "need one minimal neighbourhood per point");
        }
        for (int x = 0; x < n; ++x) {
            const Mask u = min_nbhd_[static_cast<std::size_t>(x)];
            if (!ground_.contains(u) || !(u & singleton(x))) {
                throw error(errc::invalid_argument,
                            "minimal neighbourhood of point " + std::to_string(x) + " must contain it");
            }
            bool ok = true;
            for_each_point(u, [&](int y) { ok = ok && is_subset(min_nbhd_[static_cast<std::size_t>(y)], u); });
            if (!ok) {
                throw error(errc::invalid_argument,
                            "neighbourhoods are not preorder-consistent at point " + std::to_string(x));
            }
        }
    }

    static FiniteTopSpace discrete(int n)
    {
        std::vector<Mask> nb;
        for (int x = 0; x < n; ++x) {
            nb.push_back(singleton(x));
        }
        return FiniteTopSpace(n, std::move(nb));
    }

    [[nodiscard]] int size() const noexcept { return ground_.size(); }
    [[nodiscard]] GroundSet ground() const noexcept { return ground_; }
    [[nodiscard]] Mask full() const noexcept { return ground_.full(); }
    [[nodiscard]] Mask min_nbhd(int x) const { return min_nbhd_.at(static_cast<std::size_t>(x)); }
    [[nodiscard]] const std::vector<Mask>& min_nbhds() const noexcept { return min_nbhd_; }

    [[nodiscard]] bool is_discrete() const
    {
        for (int x = 0; x < size(); ++x) {
            if (min_nbhd(x) != singleton(x)) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool is_open(Mask u) const
    {
        bool ok = ground_.contains(u);
        for_each_point(u, [&](int x) { ok = ok && is_subset(min_nbhd(x), u); });
        return ok;
    }

    /// Smallest open set containing a.
    [[nodiscard]] Mask open_hull(Mask a) const
    {
        Mask out = 0;
        for_each_point(a, [&](int x) { out |= min_nbhd(x); });
        return out;
    }

    /// Points every neighbourhood of which meets a.
    [[nodiscard]] Mask closure(Mask a) const
    {
        Mask out = 0;
        for (int x = 0; x < size(); ++x) {
            if (intersects(min_nbhd(x), a)) {
                out |= singleton(x);
            }
        }
        return out;
    }

    /// Largest closed set contained in u.
    [[nodiscard]] Mask closed_kernel(Mask u) const { return full() & ~open_hull(full() & ~u); }

    friend bool operator==(const FiniteTopSpace&, const FiniteTopSpace&) = default;

private:
    GroundSet ground_;
    std::vector<Mask> min_nbhd_;
};

/// All open sets in canonical order.
[[nodiscard]] inline std::vector<Mask> opens(const FiniteTopSpace& s)
{
    if (s.size() > max_family_ground) {
        throw error(errc::too_large, "open-set enumeration is limited to 16 points");
    }
    std::vector<Mask> out;
    for (std::uint32_t u = 0; u < s.ground().subset_count(); ++u) {
        if (s.is_open(u)) {
            out.push_back(u);
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

class RegularOperator {
public:
    /// inject[x] is the point of Y that x is identified with.
    RegularOperator(FiniteTopSpace x, FiniteTopSpace y, std::vector<int> inject, std::map<Mask, Mask> table)
        : x_(std::move(x)), y_(std::move(y)), inject_(std::move(inject)), table_(std::move(table))
    {
        if (static_cast<int>(inject_.size()) != x_.size()) {
            throw error(errc::invalid_operator, "injection must list one point of Y per point of X");
        }
        Mask hit = 0;
        for (int p : inject_) {
            if (!y_.ground().has_point(p) || (hit & singleton(p))) {
                throw error(errc::invalid_operator, "injection is not a one-to-one map into Y");
            }
            hit |= singleton(p);
        }
        for (const auto& [u, v] : table_) {
            if (!x_.ground().contains(u) || !y_.ground().contains(v)) {
                throw error(errc::invalid_operator, "table entry uses points outside the spaces");
            }
        }
    }

    /// X embedded in itself with e(U) = U.
    static RegularOperator identity(const FiniteTopSpace& x)
    {
        std::vector<int> inj;
        for (int i = 0; i < x.size(); ++i) {
            inj.push_back(i);
        }
        std::map<Mask, Mask> t;
        for (Mask u : opens(x)) {
            t[u] = u;
        }
        return RegularOperator(x, x, std::move(inj), std::move(t));
    }

    [[nodiscard]] const FiniteTopSpace& domain() const noexcept { return x_; }
    [[nodiscard]] const FiniteTopSpace& codomain() const noexcept { return y_; }
    [[nodiscard]] const std::vector<int>& inject() const noexcept { return inject_; }
    [[nodiscard]] const std::map<Mask, Mask>& table() const noexcept { return table_; }

    [[nodiscard]] std::optional<Mask> find(Mask u) const
    {
        auto it = table_.find(u);
        if (it == table_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] Mask operator()(Mask u) const
    {
        auto v = find(u);
        if (!v) {
            throw error(errc::invalid_operator, "operator has no value for open set " + to_hex(u));
        }
        return *v;
    }

    /// Image of a subset of X inside Y.
    [[nodiscard]] Mask embed(Mask a) const
    {
        Mask out = 0;
        for_each_point(a, [&](int x) { out |= singleton(inject_[static_cast<std::size_t>(x)]); });
        return out;
    }

    /// v ∩ X, as a subset of X.
    [[nodiscard]] Mask trace(Mask v) const
    {
        Mask out = 0;
        for (int x = 0; x < x_.size(); ++x) {
            if (v & singleton(inject_[static_cast<std::size_t>(x)])) {
                out |= singleton(x);
            }
        }
        return out;
    }

    /// Point of X sitting at y, if any.
    [[nodiscard]] std::optional<int> preimage_point(int y) const
    {
        for (int x = 0; x < x_.size(); ++x) {
            if (inject_[static_cast<std::size_t>(x)] == y) {
                return x;
            }
        }
        return std::nullopt;
    }

private:
    FiniteTopSpace x_;
    FiniteTopSpace y_;
    std::vector<int> inject_;
    std::map<Mask, Mask> table_;
};

enum class ViolationKind { missing_open, not_open, empty_not_empty, trace, disjointness };

constexpr std::string_view to_string(ViolationKind k) noexcept
{
    switch (k) {
    case ViolationKind::missing_open: return "missing_open";
    case ViolationKind::not_open: return "not_open";
    case ViolationKind::empty_not_empty: return "empty_not_empty";
    case ViolationKind::trace: return "trace";
    case ViolationKind::disjointness: return "disjointness";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    Mask u = 0;
    Mask v = 0;
    std::string detail;
};

/// First violation in canonical order of open sets, or nullopt on success.
[[nodiscard]] inline std::optional<Violation> validate_regular(const RegularOperator& e)
{
    const auto xs = opens(e.domain());
    for (Mask u : xs) {
        const auto ev = e.find(u);
        if (!ev) {
            return Violation{ViolationKind::missing_open, u, 0, "no value for open set " + to_hex(u)};
        }
        if (!e.codomain().is_open(*ev)) {
            return Violation{ViolationKind::not_open, u, 0,
                             "e(" + to_hex(u) + ") = " + to_hex(*ev) + " is not open in Y"};
        }
    }
    if (e(0) != 0) {
        return Violation{ViolationKind::empty_not_empty, 0, 0, "e(empty) = " + to_hex(e(0))};
    }
    for (Mask u : xs) {
        if (e.trace(e(u)) != u) {
            return Violation{ViolationKind::trace, u, 0,
                             "e(" + to_hex(u) + ") meets X in " + to_hex(e.trace(e(u)))};
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (!intersects(xs[i], xs[j]) && intersects(e(xs[i]), e(xs[j]))) {
                return Violation{ViolationKind::disjointness, xs[i], xs[j],
                                 "disjoint opens " + to_hex(xs[i]) + ", " + to_hex(xs[j]) + " have meeting images"};
            }
        }
    }
    return std::nullopt;
}

namespace detail {

/// Mixed-radix indexing of a product of finite spaces; factor 0 varies slowest.
struct ProductIndex {
    std::vector<int> sizes;

    [[nodiscard]] int total() const
    {
        int t = 1;
        for (int s : sizes) {
            t *= s;
        }
        return t;
    }

    [[nodiscard]] std::vector<int> split(int idx) const
    {
        std::vector<int> out(sizes.size());
        for (std::size_t a = sizes.size(); a-- > 0;) {
            out[a] = idx % sizes[a];
            idx /= sizes[a];
        }
        return out;
    }

    [[nodiscard]] int join(const std::vector<int>& coords) const
    {
        int idx = 0;
        for (std::size_t a = 0; a < sizes.size(); ++a) {
            idx = idx * sizes[a] + coords[a];
        }
        return idx;
    }

    /// Mask of the box ∏ boxes[a].
    [[nodiscard]] Mask box(const std::vector<Mask>& sides) const
    {
        Mask out = 0;
        for (int i = 0; i < total(); ++i) {
            const auto c = split(i);
            bool in = true;
            for (std::size_t a = 0; a < sizes.size() && in; ++a) {
                in = (sides[a] & singleton(c[a])) != 0;
            }
            if (in) {
                out |= singleton(i);
            }
        }
        return out;
    }
};

inline FiniteTopSpace product_space(const std::vector<const FiniteTopSpace*>& parts)
{
    ProductIndex idx;
    for (const auto* p : parts) {
        idx.sizes.push_back(p->size());
    }
    const int total = idx.total();
    if (total > max_family_ground) {
        throw error(errc::too_large, "product space has " + std::to_string(total) + " points; limit is 16");
    }
    std::vector<Mask> nb;
    for (int i = 0; i < total; ++i) {
        const auto c = idx.split(i);
        std::vector<Mask> sides;
        for (std::size_t a = 0; a < parts.size(); ++a) {
            sides.push_back(parts[a]->min_nbhd(c[a]));
        }
        nb.push_back(idx.box(sides));
    }
    return FiniteTopSpace(total, std::move(nb));
}

} // namespace detail

/// θ(G) = ⋃ {∏ e_a(U_a) : ∏ U_a ⊆ G}, where factors left unconstrained use
/// all of X_a on the X side and all of Y_a on the Y side.
[[nodiscard]] inline RegularOperator product_operator(const std::vector<RegularOperator>& parts)
{
    if (parts.empty()) {
        throw error(errc::invalid_argument, "product of no operators");
    }
    for (const auto& p : parts) {
        if (auto v = validate_regular(p)) {
            throw error(errc::invalid_operator, "factor is not regular: " + v->detail);
        }
    }
    std::vector<const FiniteTopSpace*> xs;
    std::vector<const FiniteTopSpace*> ys;
    for (const auto& p : parts) {
        xs.push_back(&p.domain());
        ys.push_back(&p.codomain());
    }
    FiniteTopSpace px = detail::product_space(xs);
    FiniteTopSpace py = detail::product_space(ys);
    detail::ProductIndex xi;
    detail::ProductIndex yi;
    for (const auto& p : parts) {
        xi.sizes.push_back(p.domain().size());
        yi.sizes.push_back(p.codomain().size());
    }

    std::vector<int> inject;
    for (int i = 0; i < xi.total(); ++i) {
        auto c = xi.split(i);
        for (std::size_t a = 0; a < parts.size(); ++a) {
            c[a] = parts[a].inject()[static_cast<std::size_t>(c[a])];
        }
        inject.push_back(yi.join(c));
    }

    // Choice per factor: index 0 = unconstrained, otherwise a nonempty open.
    std::vector<std::vector<Mask>> choices;
    for (const auto& p : parts) {
        std::vector<Mask> ch{0};
        for (Mask u : opens(p.domain())) {
            if (u != 0) {
                ch.push_back(u);
            }
        }
        choices.push_back(std::move(ch));
    }
    std::vector<std::pair<Mask, Mask>> boxes;
    std::vector<std::size_t> pick(parts.size(), 0);
    while (true) {
        std::vector<Mask> xside;
        std::vector<Mask> yside;
        for (std::size_t a = 0; a < parts.size(); ++a) {
            const Mask u = choices[a][pick[a]];
            xside.push_back(pick[a] == 0 ? parts[a].domain().full() : u);
            yside.push_back(pick[a] == 0 ? parts[a].codomain().full() : parts[a](u));
        }
        boxes.emplace_back(xi.box(xside), yi.box(yside));
        std::size_t a = parts.size();
        while (a > 0 && pick[a - 1] + 1 == choices[a - 1].size()) {
            pick[a - 1] = 0;
            --a;
        }
        if (a == 0) {
            break;
        }
        ++pick[a - 1];
    }

    std::map<Mask, Mask> table;
    for (Mask g : opens(px)) {
        Mask img = 0;
        for (const auto& [v, t] : boxes) {
            if (is_subset(v, g)) {
                img |= t;
            }
        }
        table[g] = img;
    }
    return RegularOperator(std::move(px), std::move(py), std::move(inject), std::move(table));
}

/// W ↦ outer(inner(W)) for X ⊆ X' ⊆ Z.
[[nodiscard]] inline RegularOperator compose_operators(const RegularOperator& outer, const RegularOperator& inner)
{
    if (!(inner.codomain() == outer.domain())) {
        throw error(errc::carrier_mismatch, "inner codomain must equal outer domain");
    }
    std::vector<int> inject;
    for (int p : inner.inject()) {
        inject.push_back(outer.inject()[static_cast<std::size_t>(p)]);
    }
    std::map<Mask, Mask> table;
    for (const auto& [u, v] : inner.table()) {
        table[u] = outer(v);
    }
    return RegularOperator(inner.domain(), outer.codomain(), std::move(inject), std::move(table));
}

/// Calls fn on every regular operator for the given embedding, in
/// lexicographic order of the tables (opens of X in canonical order, images
/// in canonical order); stops early when fn returns false. Limited to
/// codomains of at most 6 points.
template <class Fn>
void for_each_regular_operator(const FiniteTopSpace& x, const FiniteTopSpace& y, const std::vector<int>& inject,
                               Fn&& fn)
{
    if (y.size() > 6) {
        throw error(errc::too_large, "operator search is limited to codomains of 6 points");
    }
    const RegularOperator probe(x, y, inject, {});
    const auto xs = opens(x);
    const auto ys = opens(y);
    std::vector<std::vector<Mask>> candidates;
    for (Mask u : xs) {
        std::vector<Mask> c;
        for (Mask v : ys) {
            if (probe.trace(v) == u && (u != 0 || v == 0)) {
                c.push_back(v);
            }
        }
        candidates.push_back(std::move(c));
    }
    std::vector<Mask> chosen(xs.size(), 0);
    auto search = [&](auto&& self, std::size_t i) -> bool {
        if (i == xs.size()) {
            std::map<Mask, Mask> table;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                table[xs[k]] = chosen[k];
            }
            return fn(RegularOperator(x, y, inject, std::move(table)));
        }
        for (Mask v : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                ok = intersects(xs[i], xs[j]) || !intersects(v, chosen[j]);
            }
            if (ok) {
                chosen[i] = v;
                if (!self(self, i + 1)) {
                    return false;
                }
            }
        }
        return true;
    };
    search(search, 0);
}

/// Some regular operator for the given embedding, if one exists.
[[nodiscard]] inline std::optional<RegularOperator> find_regular_operator(const FiniteTopSpace& x,
                                                                          const FiniteTopSpace& y,
                                                                          const std::vector<int>& inject)
{
    std::optional<RegularOperator> out;
    for_each_regular_operator(x, y, inject, [&](RegularOperator e) {
        out = std::move(e);
        return false;
    });
    return out;
}

/// All topologies on n points, as minimal-neighbourhood vectors in
/// lexicographic order. Limited to 5 points.
[[nodiscard]] inline std::vector<FiniteTopSpace> all_spaces(int n)
{
    if (n < 1 || n > 5) {
        throw error(errc::too_large, "topology enumeration is limited to 5 points");
    }
    const GroundSet g(n);
    std::vector<FiniteTopSpace> out;
    std::vector<Mask> nb(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int x) -> void {
        if (x == n) {
            for (int p = 0; p < n; ++p) {
                bool ok = true;
                for_each_point(nb[static_cast<std::size_t>(p)],
                               [&](int q) { ok = ok && is_subset(nb[static_cast<std::size_t>(q)], nb[static_cast<std::size_t>(p)]); });
                if (!ok) {
                    return;
                }
            }
            out.emplace_back(n, nb);
            return;
        }
        for (std::uint32_t m = 0; m < g.subset_count(); ++m) {
            if (m & singleton(x)) {
                nb[static_cast<std::size_t>(x)] = m;
                self(self, x + 1);
            }
        }
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------------------
// usc maps into λX

/// A set-valued map from the points of Y to subsets of λX.
struct UscoMap {
    FiniteTopSpace x;
    FiniteTopSpace y;
    std::vector<int> inject;
    Superextension lambda;
    std::vector<CarrierSet> values;
};

struct UscoCheck {
    std::optional<int> empty_at;
    std::optional<int> not_point_fixed_at;
    /// (y, y') with y' in the minimal neighbourhood of y and r(y') ⊄ r(y).
    std::optional<std::pair<int, int>> not_usc_at;

    [[nodiscard]] bool ok() const noexcept { return !empty_at && !not_point_fixed_at && !not_usc_at; }
};

/// λX is a finite Hausdorff space, so r is usc at y iff r(y') ⊆ r(y) for
/// every y' in the minimal neighbourhood of y.
[[nodiscard]] inline UscoCheck check_usco(const UscoMap& r)
{
    UscoCheck out;
    for (int p = 0; p < r.y.size(); ++p) {
        if (r.values[static_cast<std::size_t>(p)].none()) {
            out.empty_at = p;
            break;
        }
    }
    for (int x = 0; x < r.x.size() && !out.not_point_fixed_at; ++x) {
        const auto idx = r.lambda.index_of(eta_point(r.x.ground(), x));
        const auto& v = r.values[static_cast<std::size_t>(r.inject[static_cast<std::size_t>(x)])];
        if (v.count() != 1 || !v.test(*idx)) {
            out.not_point_fixed_at = x;
        }
    }
    for (int p = 0; p < r.y.size() && !out.not_usc_at; ++p) {
        for_each_point(r.y.min_nbhd(p), [&](int q) {
            if (!out.not_usc_at &&
                !r.values[static_cast<std::size_t>(q)].is_subset_of(r.values[static_cast<std::size_t>(p)])) {
                out.not_usc_at = std::make_pair(p, q);
            }
        });
    }
    return out;
}

/// r(y) = ⋂ {(cl U)⁺ : y ∈ e(U)}, and r(y) = λX when y lies in no e(U).
/// X must be discrete: λX is built from all subsets, which are the closed
/// sets only then, and a finite Hausdorff space is discrete anyway.
[[nodiscard]] inline UscoMap usco_from_regular(const RegularOperator& e, const EnumerateOptions& opts = {})
{
    if (auto v = validate_regular(e)) {
        throw error(errc::invalid_operator, v->detail);
    }
    const FiniteTopSpace& x = e.domain();
    if (!x.is_discrete()) {
        throw error(errc::invalid_argument, "usco construction needs a discrete embedded space");
    }
    Superextension lambda = enumerate_mls(x.ground(), opts);
    std::vector<CarrierSet> values;
    for (int p = 0; p < e.codomain().size(); ++p) {
        CarrierSet v(lambda.size());
        v.set();
        for (const auto& [u, eu] : e.table()) {
            if (eu & singleton(p)) {
                v &= plus_carrier(x.closure(u), lambda);
            }
        }
        values.push_back(std::move(v));
    }
    return UscoMap{x, e.codomain(), e.inject(), std::move(lambda), std::move(values)};
}

/// e(U) = {y : r(y) ⊆ U⁺}, with U⁺ the systems having a closed member inside U.
[[nodiscard]] inline RegularOperator regular_from_usco(const UscoMap& r)
{
    const UscoCheck chk = check_usco(r);
    if (chk.not_point_fixed_at) {
        throw error(errc::not_point_fixed, "r(x) differs from {eta_x} at x = " + std::to_string(*chk.not_point_fixed_at));
    }
    if (chk.empty_at || chk.not_usc_at) {
        throw error(errc::not_usco, chk.empty_at ? "empty value at y = " + std::to_string(*chk.empty_at)
                                                 : "not usc at y = " + std::to_string(chk.not_usc_at->first));
    }
    std::map<Mask, Mask> table;
    for (Mask u : opens(r.x)) {
        const Mask kernel = r.x.closed_kernel(u);
        const CarrierSet plus = kernel == 0 ? CarrierSet(r.lambda.size()) : plus_carrier(kernel, r.lambda);
        Mask eu = 0;
        for (int p = 0; p < r.y.size(); ++p) {
            if (r.values[static_cast<std::size_t>(p)].is_subset_of(plus)) {
                eu |= singleton(p);
            }
        }
        table[u] = eu;
    }
    return RegularOperator(r.x, r.y, r.inject, std::move(table));
}

} // namespace supext
