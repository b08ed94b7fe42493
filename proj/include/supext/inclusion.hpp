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

/// @file inclusion.hpp
/// Inclusion hyperspaces: nonempty up-closed families of nonempty subsets,
/// stored by their minimal antichain like maximal linked systems.

#include <supext/subbase.hpp>
#include <supext/superext.hpp>

#include <vector>

namespace supext {

inline constexpr int max_ih_ground = 5;

class InclusionHyperspace {
public:
    static InclusionHyperspace from_minimal(const SetFamily& minimal)
    {
        if (minimal.empty() || minimal.contains(0) || !is_antichain(minimal)) {
            throw error(errc::invalid_argument, "need a nonempty antichain of nonempty sets");
        }
        return InclusionHyperspace(minimal);
    }

    static InclusionHyperspace from_family(const SetFamily& fam) { return from_minimal(minimal_members(fam)); }

    static InclusionHyperspace from_system(const MaxLinkedSystem& eta) { return InclusionHyperspace(eta.minimal()); }

    [[nodiscard]] GroundSet ground() const noexcept { return minimal_.ground(); }
    [[nodiscard]] const SetFamily& minimal() const noexcept { return minimal_; }
    [[nodiscard]] bool contains(Mask a) const noexcept { return upset_contains(minimal_.members(), a); }
    [[nodiscard]] SetFamily members() const { return up_closure(minimal_); }

    /// Every member meets u.
    [[nodiscard]] bool all_meet(Mask u) const
    {
        return std::all_of(minimal_.begin(), minimal_.end(), [u](Mask m) { return intersects(m, u); });
    }

    /// The hyperspace is a maximal linked system.
    [[nodiscard]] bool is_mls() const { return is_self_dual_upclosed(members()); }

    friend bool operator==(const InclusionHyperspace&, const InclusionHyperspace&) = default;
    friend bool operator<(const InclusionHyperspace& a, const InclusionHyperspace& b)
    {
        return a.minimal_ < b.minimal_;
    }

private:
    explicit InclusionHyperspace(SetFamily minimal) : minimal_(std::move(minimal)) {}

    SetFamily minimal_;
};

/// All inclusion hyperspaces on the ground, in canonical order. Antichains
/// are built by deciding subsets in canonical order, so a candidate only has
/// to be checked against earlier (never larger) chosen sets.
[[nodiscard]] inline std::vector<InclusionHyperspace> enumerate_ih(GroundSet g)
{
    if (g.size() > max_ih_ground) {
        throw error(errc::too_large, "inclusion hyperspace enumeration is limited to 5 points");
    }
    std::vector<Mask> subsets;
    for (std::uint32_t s = 1; s < g.subset_count(); ++s) {
        subsets.push_back(s);
    }
    std::sort(subsets.begin(), subsets.end(), canonical_less);
    std::vector<InclusionHyperspace> out;
    std::vector<Mask> chosen;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == subsets.size()) {
            if (!chosen.empty()) {
                out.push_back(InclusionHyperspace::from_minimal(SetFamily(g, chosen)));
            }
            return;
        }
        const Mask s = subsets[i];
        if (std::none_of(chosen.begin(), chosen.end(), [s](Mask c) { return is_subset(c, s); })) {
            chosen.push_back(s);
            self(self, i + 1);
            chosen.pop_back();
        }
        self(self, i + 1);
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// G(f)(A) = {B ⊆ Y : f⁻¹(B) ∈ A}.
[[nodiscard]] inline InclusionHyperspace g_map_preimage(const PointMap& f, const InclusionHyperspace& a)
{
    if (f.domain() != a.ground()) {
        throw error(errc::ground_mismatch, "map domain differs from the hyperspace's ground");
    }
    const GroundSet y = f.codomain();
    y.require_family_scale();
    std::vector<Mask> members;
    for (std::uint32_t b = 1; b < y.subset_count(); ++b) {
        if (a.contains(f.preimage(b))) {
            members.push_back(b);
        }
    }
    return InclusionHyperspace::from_family(SetFamily(y, std::move(members)));
}

/// Up-closure of the images {f(A') : A' ∈ A}.
[[nodiscard]] inline InclusionHyperspace g_map_image(const PointMap& f, const InclusionHyperspace& a)
{
    if (f.domain() != a.ground()) {
        throw error(errc::ground_mismatch, "map domain differs from the hyperspace's ground");
    }
    std::vector<Mask> images;
    for (Mask m : a.minimal()) {
        images.push_back(f.image(m));
    }
    return InclusionHyperspace::from_family(SetFamily(f.codomain(), std::move(images)));
}

/// G on maps; both formulas are computed and must agree.
[[nodiscard]] inline InclusionHyperspace g_map(const PointMap& f, const InclusionHyperspace& a)
{
    auto pre = g_map_preimage(f, a);
    if (!(pre == g_map_image(f, a))) {
        throw std::logic_error("g_map: preimage and image formulas disagree");
    }
    return pre;
}

/// Candidate binary subbase of GX over the enumerated carrier: first
/// ⟨F⟩ = {A : F ∈ A} for every nonempty F, then ⟨U⟩* = {A : every member
/// of A meets U} for every nonempty U, both in canonical order of F, U.
[[nodiscard]] inline Subbase candidate_subbase_gx(GroundSet g, const std::vector<InclusionHyperspace>& carrier)
{
    if (g.size() > 4) {
        throw error(errc::too_large, "candidate GX subbase is limited to 4 points");
    }
    std::vector<Mask> sets;
    for (std::uint32_t s = 1; s < g.subset_count(); ++s) {
        sets.push_back(s);
    }
    std::sort(sets.begin(), sets.end(), canonical_less);
    std::vector<CarrierSet> members;
    for (Mask f : sets) {
        CarrierSet m(carrier.size());
        for (std::size_t i = 0; i < carrier.size(); ++i) {
            if (carrier[i].contains(f)) {
                m.set(i);
            }
        }
        members.push_back(std::move(m));
    }
    for (Mask u : sets) {
        CarrierSet m(carrier.size());
        for (std::size_t i = 0; i < carrier.size(); ++i) {
            if (carrier[i].all_meet(u)) {
                m.set(i);
            }
        }
        members.push_back(std::move(m));
    }
    return Subbase(carrier.size(), std::move(members));
}

[[nodiscard]] inline Subbase candidate_subbase_gx(GroundSet g) { return candidate_subbase_gx(g, enumerate_ih(g)); }

} // namespace supext
