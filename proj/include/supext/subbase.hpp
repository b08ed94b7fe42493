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

/// @file subbase.hpp
/// Closed subbases on finite carriers: binarity and normality checks, hulls,
/// convexity, and the hull-based retraction induced by a regular operator.

#include <supext/carrier.hpp>
#include <supext/embed.hpp>
#include <supext/superext.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace supext {

inline constexpr std::size_t max_subbase_carrier = std::size_t{1} << 16;
inline constexpr std::size_t max_subbase_members = 4096;

class Subbase {
public:
    Subbase(std::size_t carrier, std::vector<CarrierSet> members) : carrier_(carrier), members_(std::move(members))
    {
        if (carrier_ == 0) {
            throw error(errc::invalid_argument, "empty carrier");
        }
        if (carrier_ > max_subbase_carrier || members_.size() > max_subbase_members) {
            throw error(errc::too_large, "subbase exceeds the carrier or member bound");
        }
        for (const auto& m : members_) {
            if (m.size() != carrier_) {
                throw error(errc::carrier_mismatch, "member sized for a different carrier");
            }
            if (m.none()) {
                throw error(errc::empty_set, "subbase members must be nonempty");
            }
        }
    }

    [[nodiscard]] std::size_t carrier() const noexcept { return carrier_; }
    [[nodiscard]] const std::vector<CarrierSet>& members() const noexcept { return members_; }

    [[nodiscard]] CarrierSet whole() const
    {
        CarrierSet s(carrier_);
        s.set();
        return s;
    }

private:
    std::size_t carrier_;
    std::vector<CarrierSet> members_;
};

/// Subbase on a ground set given by masks.
[[nodiscard]] inline Subbase subbase_of_masks(GroundSet g, const std::vector<Mask>& members)
{
    std::vector<CarrierSet> ms;
    for (Mask m : members) {
        CarrierSet s(static_cast<std::size_t>(g.size()));
        for_each_point(m, [&](int x) { s.set(static_cast<std::size_t>(x)); });
        ms.push_back(std::move(s));
    }
    return Subbase(static_cast<std::size_t>(g.size()), std::move(ms));
}

/// {F⁺ : F nonempty} on λX, one member per nonempty F in canonical order.
[[nodiscard]] inline Subbase lambda_subbase(const Superextension& lambda)
{
    const GroundSet g = lambda.ground();
    g.require_family_scale();
    std::vector<Mask> fs;
    for (std::uint32_t f = 1; f < g.subset_count(); ++f) {
        fs.push_back(f);
    }
    std::sort(fs.begin(), fs.end(), canonical_less);
    std::vector<CarrierSet> members;
    for (Mask f : fs) {
        members.push_back(plus_carrier(f, lambda));
    }
    return Subbase(lambda.size(), std::move(members));
}

struct BinaryCheck {
    bool binary = true;
    /// Member indices of a maximal linked subfamily with empty intersection.
    std::vector<std::size_t> witness;
};

/// Every linked subfamily has a common point. Only inclusion-maximal linked
/// subfamilies (maximal cliques of the meeting graph) are inspected; they
/// have the smallest intersections.
[[nodiscard]] inline BinaryCheck is_binary(const Subbase& sb)
{
    const auto& ms = sb.members();
    const std::size_t k = ms.size();
    std::vector<CarrierSet> adj(k, CarrierSet(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (ms[i].intersects(ms[j])) {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
    }
    BinaryCheck out;
    std::vector<std::size_t> clique;
    // Bron–Kerbosch with pivoting; candidates are visited in index order.
    auto expand = [&](auto&& self, CarrierSet p, CarrierSet x, const CarrierSet& common) -> void {
        if (!out.binary) {
            return;
        }
        if (p.none() && x.none()) {
            if (common.none()) {
                out.binary = false;
                out.witness = clique;
            }
            return;
        }
        const CarrierSet px = p | x;
        std::size_t pivot = px.find_first();
        std::size_t best = 0;
        for (auto u = px.find_first(); u != CarrierSet::npos; u = px.find_next(u)) {
            const std::size_t c = (p & adj[u]).count();
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        const CarrierSet todo = p - adj[pivot];
        for (auto v = todo.find_first(); v != CarrierSet::npos && out.binary; v = todo.find_next(v)) {
            clique.push_back(v);
            self(self, p & adj[v], x & adj[v], common & ms[v]);
            clique.pop_back();
            p.reset(v);
            x.set(v);
        }
    };
    CarrierSet all(k);
    all.set();
    expand(expand, all, CarrierSet(k), sb.whole());
    std::sort(out.witness.begin(), out.witness.end());
    return out;
}

struct NormalCheck {
    bool normal = true;
    /// Disjoint member pair admitting no separating cover.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// For every disjoint pair S0, S1 there are members T0, T1 with
/// S0 ∩ T1 = ∅ = T0 ∩ S1 and T0 ∪ T1 the whole carrier.
[[nodiscard]] inline NormalCheck is_normal(const Subbase& sb)
{
    const auto& ms = sb.members();
    const std::size_t k = ms.size();
    NormalCheck out;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (ms[a].intersects(ms[b])) {
                continue;
            }
            bool found = false;
            for (std::size_t t1 = 0; t1 < k && !found; ++t1) {
                if (ms[a].intersects(ms[t1])) {
                    continue;
                }
                for (std::size_t t0 = 0; t0 < k && !found; ++t0) {
                    if (ms[t0].intersects(ms[b])) {
                        continue;
                    }
                    found = (ms[t0] | ms[t1]).all();
                }
            }
            if (!found) {
                out.normal = false;
                out.witness = std::make_pair(a, b);
                return out;
            }
        }
    }
    return out;
}

/// Intersection of the members containing a; the whole carrier if none does.
[[nodiscard]] inline CarrierSet s_hull(const Subbase& sb, const CarrierSet& a)
{
    if (a.size() != sb.carrier()) {
        throw error(errc::carrier_mismatch, "set sized for a different carrier");
    }
    CarrierSet out = sb.whole();
    for (const auto& m : sb.members()) {
        if (a.is_subset_of(m)) {
            out &= m;
        }
    }
    return out;
}

/// Hulls of all point pairs of a stay inside a.
[[nodiscard]] inline bool is_s_convex(const Subbase& sb, const CarrierSet& a)
{
    const auto pts = points_of(a);
    CarrierSet pair(sb.carrier());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i; j < pts.size(); ++j) {
            pair.reset();
            pair.set(pts[i]);
            pair.set(pts[j]);
            if (!s_hull(sb, pair).is_subset_of(a)) {
                return false;
            }
        }
    }
    return true;
}

[[nodiscard]] inline CarrierSet carrier_of_mask(std::size_t size, Mask m)
{
    CarrierSet s(size);
    for_each_point(m, [&](int x) { s.set(static_cast<std::size_t>(x)); });
    return s;
}

[[nodiscard]] inline Mask mask_of_carrier(const CarrierSet& s)
{
    Mask m = 0;
    for (auto i = s.find_first(); i != CarrierSet::npos; i = s.find_next(i)) {
        m |= singleton(static_cast<int>(i));
    }
    return m;
}

/// r(y) = ⋂ {I(cl U) : y ∈ e(U)} over opens U of X, and r(y) = X when y lies
/// in no e(U). Values are subsets of X, one per point of Y.
[[nodiscard]] inline std::vector<Mask> sconvex_retraction(const RegularOperator& e, const Subbase& sb)
{
    if (auto v = validate_regular(e)) {
        throw error(errc::invalid_operator, v->detail);
    }
    const FiniteTopSpace& x = e.domain();
    if (sb.carrier() != static_cast<std::size_t>(x.size())) {
        throw error(errc::invalid_operator, "subbase carrier differs from the domain of the operator");
    }
    std::vector<Mask> out;
    for (int p = 0; p < e.codomain().size(); ++p) {
        CarrierSet v = sb.whole();
        for (const auto& [u, eu] : e.table()) {
            if (eu & singleton(p)) {
                v &= s_hull(sb, carrier_of_mask(sb.carrier(), x.closure(u)));
            }
        }
        out.push_back(mask_of_carrier(v));
    }
    return out;
}

struct RetractionCheck {
    std::optional<int> empty_at;
    std::optional<int> not_fixed_at;
    std::optional<std::pair<int, int>> not_usc_at;

    [[nodiscard]] bool ok() const noexcept { return !empty_at && !not_fixed_at && !not_usc_at; }
};

/// Nonempty values, r(x) = {x} on X, and upper semicontinuity: each y' in the
/// minimal neighbourhood of y maps into the smallest open set around r(y).
[[nodiscard]] inline RetractionCheck check_retraction(const RegularOperator& e, const std::vector<Mask>& r)
{
    RetractionCheck out;
    const FiniteTopSpace& x = e.domain();
    const FiniteTopSpace& y = e.codomain();
    for (int p = 0; p < y.size() && !out.empty_at; ++p) {
        if (r[static_cast<std::size_t>(p)] == 0) {
            out.empty_at = p;
        }
    }
    for (int q = 0; q < x.size() && !out.not_fixed_at; ++q) {
        if (r[static_cast<std::size_t>(e.inject()[static_cast<std::size_t>(q)])] != singleton(q)) {
            out.not_fixed_at = q;
        }
    }
    for (int p = 0; p < y.size() && !out.not_usc_at; ++p) {
        const Mask w = x.open_hull(r[static_cast<std::size_t>(p)]);
        for_each_point(y.min_nbhd(p), [&](int q) {
            if (!out.not_usc_at && !is_subset(r[static_cast<std::size_t>(q)], w)) {
                out.not_usc_at = std::make_pair(p, q);
            }
        });
    }
    return out;
}

} // namespace supext
