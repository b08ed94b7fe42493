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

/// @file superext.hpp
/// Maximal linked systems on a finite discrete space and the superextension
/// λX made of all of them.
///
/// On a finite discrete space every subset is closed, and a family is a
/// maximal linked system exactly when it is up-closed, omits the empty set,
/// and picks one side of every complementary pair {A, X∖A}. Systems are
/// stored by their antichain of inclusion-minimal members.

#include <supext/carrier.hpp>
#include <supext/parallel.hpp>
#include <supext/setkit.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace supext {

class MaxLinkedSystem {
public:
    /// Validates that the antichain generates a self-dual up-closed family.
    static MaxLinkedSystem from_minimal(const SetFamily& minimal)
    {
        if (!is_antichain(minimal) || !is_self_dual_upclosed(up_closure(minimal))) {
            throw error(errc::invalid_argument, "family is not the antichain of a maximal linked system");
        }
        return MaxLinkedSystem(minimal);
    }

    /// Any generating family; reduced to its minimal members first.
    static MaxLinkedSystem from_family(const SetFamily& fam) { return from_minimal(minimal_members(fam)); }

    [[nodiscard]] GroundSet ground() const noexcept { return minimal_.ground(); }
    [[nodiscard]] const SetFamily& minimal() const noexcept { return minimal_; }

    /// Membership of an arbitrary subset in the (up-closed) system.
    [[nodiscard]] bool contains(Mask a) const noexcept { return upset_contains(minimal_.members(), a); }

    [[nodiscard]] SetFamily members() const { return up_closure(minimal_); }

    /// Some point of the ground lies in every member.
    [[nodiscard]] std::optional<int> principal_point() const
    {
        if (minimal_.size() == 1 && popcount(minimal_.members()[0]) == 1) {
            return std::countr_zero(minimal_.members()[0]);
        }
        return std::nullopt;
    }

    friend bool operator==(const MaxLinkedSystem&, const MaxLinkedSystem&) = default;
    friend bool operator<(const MaxLinkedSystem& a, const MaxLinkedSystem& b) { return a.minimal_ < b.minimal_; }

private:
    explicit MaxLinkedSystem(SetFamily minimal) : minimal_(std::move(minimal)) {}

    friend class detail_mls_access;
    SetFamily minimal_;
};

/// Trusted construction for enumerators whose output is correct by construction.
class detail_mls_access {
public:
    static MaxLinkedSystem make(SetFamily minimal) { return MaxLinkedSystem(std::move(minimal)); }
};

class Superextension {
public:
    Superextension(GroundSet ground, std::vector<MaxLinkedSystem> systems)
        : ground_(ground), systems_(std::move(systems))
    {
        std::sort(systems_.begin(), systems_.end());
    }

    [[nodiscard]] GroundSet ground() const noexcept { return ground_; }
    [[nodiscard]] const std::vector<MaxLinkedSystem>& systems() const noexcept { return systems_; }
    [[nodiscard]] std::size_t size() const noexcept { return systems_.size(); }
    [[nodiscard]] const MaxLinkedSystem& operator[](std::size_t i) const { return systems_.at(i); }

    [[nodiscard]] std::optional<std::size_t> index_of(const MaxLinkedSystem& eta) const
    {
        auto it = std::lower_bound(systems_.begin(), systems_.end(), eta);
        if (it == systems_.end() || !(*it == eta)) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - systems_.begin());
    }

private:
    GroundSet ground_;
    std::vector<MaxLinkedSystem> systems_;
};

struct EnumerateOptions {
    /// Refuse grounds above this size.
    int max_n = 7;
    std::size_t workers = 1;
};

/// Enumeration never goes beyond this, whatever the configured cap.
inline constexpr int enumeration_hard_cap = 8;

namespace detail {

/// Truth table over the 2^n subsets of an n <= 8 ground set.
struct SubsetBits {
    std::array<std::uint64_t, 4> w{};

    [[nodiscard]] bool test(unsigned s) const noexcept { return (w[s >> 6] >> (s & 63)) & 1u; }
    void set(unsigned s) noexcept { w[s >> 6] |= std::uint64_t{1} << (s & 63); }
    SubsetBits& operator&=(const SubsetBits& o) noexcept
    {
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] &= o.w[i];
        }
        return *this;
    }
};

/// Representative of each complementary pair {A, X∖A} other than {∅, X}:
/// the side of smaller cardinality (smaller mask on ties), ordered by
/// (cardinality, mask).
inline std::vector<Mask> complementary_pairs(GroundSet g)
{
    std::vector<Mask> reps;
    const Mask full = g.full();
    for (std::uint32_t s = 1; s < full; ++s) {
        const Mask c = g.complement(s);
        const int ps = popcount(s);
        const int pc = popcount(c);
        if (ps < pc || (ps == pc && s < c)) {
            reps.push_back(s);
        }
    }
    std::sort(reps.begin(), reps.end(), canonical_less);
    return reps;
}

class PairSearch {
public:
    explicit PairSearch(GroundSet g) : g_(g), pairs_(complementary_pairs(g)), meets_(g.subset_count())
    {
        for (unsigned a = 0; a < g.subset_count(); ++a) {
            for (unsigned b = 0; b < g.subset_count(); ++b) {
                if (a & b) {
                    meets_[a].set(b);
                }
            }
        }
    }

    struct State {
        std::size_t depth = 0;
        SubsetBits allowed;
    };

    [[nodiscard]] State root() const
    {
        State st;
        for (unsigned s = 1; s < g_.subset_count(); ++s) {
            st.allowed.set(s);
        }
        return st;
    }

    /// States reached after deciding the first `levels` pairs, in search order.
    [[nodiscard]] std::vector<State> frontier(std::size_t levels) const
    {
        std::vector<State> cur{root()};
        for (std::size_t l = 0; l < levels && l < pairs_.size(); ++l) {
            std::vector<State> next;
            for (const State& st : cur) {
                for_each_choice(st, [&](const State& child) { next.push_back(child); });
            }
            cur = std::move(next);
        }
        return cur;
    }

    /// Visits every completed assignment below `st`; the allowed table of a
    /// completed assignment is exactly the system's member table.
    template <class Leaf>
    void run(const State& st, Leaf&& leaf) const
    {
        if (st.depth == pairs_.size()) {
            leaf(st.allowed);
            return;
        }
        for_each_choice(st, [&](const State& child) { run(child, leaf); });
    }

    [[nodiscard]] SetFamily minimal_of(const SubsetBits& table) const
    {
        std::vector<Mask> out;
        for (unsigned s = 1; s < g_.subset_count(); ++s) {
            if (!table.test(s)) {
                continue;
            }
            bool minimal = true;
            for_each_point(s, [&](int x) {
                if (minimal && table.test(s & ~singleton(x))) {
                    minimal = false;
                }
            });
            if (minimal) {
                out.push_back(s);
            }
        }
        return SetFamily(g_, std::move(out));
    }

private:
    template <class Fn>
    void for_each_choice(const State& st, Fn&& fn) const
    {
        const Mask a = pairs_[st.depth];
        const Mask b = g_.complement(a);
        // Both sides can never be excluded at once: a chosen member inside
        // each side would give two disjoint chosen members.
        for (Mask side : {a, b}) {
            if (st.allowed.test(side)) {
                State child{st.depth + 1, st.allowed};
                child.allowed &= meets_[side];
                fn(child);
            }
        }
    }

    GroundSet g_;
    std::vector<Mask> pairs_;
    std::vector<SubsetBits> meets_;
};

inline void check_enumeration_cap(GroundSet g, int max_n)
{
    const int cap = std::min(max_n, enumeration_hard_cap);
    if (g.size() > cap) {
        throw error(errc::ground_too_large,
                    "enumeration cap is " + std::to_string(cap) + ", got n=" + std::to_string(g.size()));
    }
}

/// Depth at which the search tree is split across workers.
inline constexpr std::size_t split_depth = 2;

} // namespace detail

/// All maximal linked systems on the ground set, in canonical order.
[[nodiscard]] inline Superextension enumerate_mls(GroundSet g, const EnumerateOptions& opts = {})
{
    detail::check_enumeration_cap(g, opts.max_n);
    const detail::PairSearch search(g);
    const auto starts = search.frontier(detail::split_depth);
    std::vector<std::vector<MaxLinkedSystem>> parts(starts.size());
    run_tasks(opts.workers, starts.size(), [&](std::size_t i) {
        search.run(starts[i], [&](const detail::SubsetBits& table) {
            parts[i].push_back(detail_mls_access::make(search.minimal_of(table)));
        });
    });
    std::vector<MaxLinkedSystem> all;
    for (auto& p : parts) {
        all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return Superextension(g, std::move(all));
}

/// Same search as enumerate_mls without materializing the systems.
[[nodiscard]] inline std::uint64_t count_mls(GroundSet g, const EnumerateOptions& opts = {})
{
    detail::check_enumeration_cap(g, opts.max_n);
    const detail::PairSearch search(g);
    const auto starts = search.frontier(detail::split_depth);
    std::vector<std::uint64_t> counts(starts.size(), 0);
    run_tasks(opts.workers, starts.size(), [&](std::size_t i) {
        search.run(starts[i], [&](const detail::SubsetBits&) { ++counts[i]; });
    });
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    return total;
}

/// η_x: every subset containing x.
[[nodiscard]] inline MaxLinkedSystem eta_point(GroundSet g, int x)
{
    if (!g.has_point(x)) {
        throw error(errc::point_out_of_range, "point " + std::to_string(x) + " not in ground of size " +
                                                  std::to_string(g.size()));
    }
    return detail_mls_access::make(SetFamily(g, {singleton(x)}));
}

/// Extends a linked family of nonempty sets to a maximal linked system.
/// Complementary pairs are decided in the enumeration order; when both sides
/// are still compatible the numerically smaller mask wins.
[[nodiscard]] inline MaxLinkedSystem complete_linked(const SetFamily& fam)
{
    if (fam.contains(0) || !is_linked(fam)) {
        throw error(errc::not_linked, "cannot complete a family that is not linked");
    }
    const GroundSet g = fam.ground();
    g.require_family_scale();
    std::vector<bool> member(g.subset_count(), false);
    auto add_upset = [&](Mask a) {
        const Mask free = g.complement(a);
        for (Mask extra = free;; extra = (extra - 1) & free) {
            member[a | extra] = true;
            if (extra == 0) {
                break;
            }
        }
    };
    for (Mask m : fam) {
        add_upset(m);
    }
    add_upset(g.full());
    // A side is compatible iff its complement is not yet a member.
    for (Mask a : detail::complementary_pairs(g)) {
        const Mask b = g.complement(a);
        if (member[a] || member[b]) {
            continue;
        }
        add_upset(std::min(a, b));
    }
    std::vector<Mask> all;
    for (std::uint32_t s = 1; s < g.subset_count(); ++s) {
        if (member[s]) {
            all.push_back(s);
        }
    }
    return detail_mls_access::make(minimal_members(SetFamily(g, std::move(all))));
}

/// λ(f)(η) = {B ⊆ Y : f⁻¹(B) ∈ η}.
[[nodiscard]] inline MaxLinkedSystem lambda_map(const PointMap& f, const MaxLinkedSystem& eta)
{
    if (f.domain() != eta.ground()) {
        throw error(errc::ground_mismatch, "map domain differs from the system's ground");
    }
    const GroundSet y = f.codomain();
    y.require_family_scale();
    std::vector<Mask> members;
    for (std::uint32_t b = 0; b < y.subset_count(); ++b) {
        if (eta.contains(f.preimage(b))) {
            members.push_back(b);
        }
    }
    SetFamily fam(y, std::move(members));
    if (!is_self_dual_upclosed(fam)) {
        throw std::logic_error("lambda_map produced a family that is not maximal linked");
    }
    return detail_mls_access::make(minimal_members(fam));
}

/// Minimal antichain of the up-closure of the images {f(F) : F ∈ η}.
[[nodiscard]] inline SetFamily lambda_map_image(const PointMap& f, const MaxLinkedSystem& eta)
{
    if (f.domain() != eta.ground()) {
        throw error(errc::ground_mismatch, "map domain differs from the system's ground");
    }
    std::vector<Mask> images;
    for (Mask m : eta.minimal()) {
        images.push_back(f.image(m));
    }
    return minimal_members(SetFamily(f.codomain(), std::move(images)));
}

/// Indicator over λX of F⁺ = {η : F ∈ η}.
[[nodiscard]] inline CarrierSet plus_carrier(Mask f, const Superextension& lambda)
{
    if (f == 0) {
        throw error(errc::empty_set, "F must be nonempty");
    }
    if (!lambda.ground().contains(f)) {
        throw error(errc::ground_mismatch, "F uses points outside the ground");
    }
    CarrierSet out(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i].contains(f)) {
            out.set(i);
        }
    }
    return out;
}

/// All η in λX with F ∈ η.
[[nodiscard]] inline std::vector<MaxLinkedSystem> plus_set(Mask f, const Superextension& lambda)
{
    std::vector<MaxLinkedSystem> out;
    for (std::size_t i : points_of(plus_carrier(f, lambda))) {
        out.push_back(lambda[i]);
    }
    return out;
}

} // namespace supext
