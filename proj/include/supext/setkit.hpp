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

/// @file setkit.hpp
/// Bit-encoded subsets of a finite ground set and families of such subsets.
///
/// A ground set of size n is {0, ..., n-1}; a subset is a machine word whose
/// bit i is set iff point i belongs to it. Families are kept duplicate-free in
/// canonical order: ascending cardinality, then ascending numeric mask.

#include <supext/error.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace supext {

using Mask = std::uint32_t;

/// Largest ground set a mask can address.
inline constexpr int max_ground_bits = 32;
/// Largest ground set for operations that scan all 2^n subsets.
inline constexpr int max_family_ground = 16;

[[nodiscard]] constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

[[nodiscard]] constexpr bool is_subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }

[[nodiscard]] constexpr bool intersects(Mask a, Mask b) noexcept { return (a & b) != 0; }

/// Canonical subset order: (cardinality, numeric mask).
[[nodiscard]] constexpr bool canonical_less(Mask a, Mask b) noexcept
{
    const int pa = popcount(a);
    const int pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
}

class GroundSet {
public:
    constexpr GroundSet() = default;

    explicit GroundSet(int n) : n_(n)
    {
        if (n < 1) {
            throw error(errc::empty_ground, "ground set must have at least one point");
        }
        if (n > max_ground_bits) {
            throw error(errc::ground_too_large,
                        "ground set of size " + std::to_string(n) + " exceeds the word width");
        }
    }

    [[nodiscard]] constexpr int size() const noexcept { return n_; }

    [[nodiscard]] constexpr Mask full() const noexcept
    {
        return n_ == 32 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    }

    [[nodiscard]] constexpr Mask complement(Mask m) const noexcept { return full() & ~m; }

    [[nodiscard]] constexpr bool contains(Mask m) const noexcept { return (m & ~full()) == 0; }

    [[nodiscard]] constexpr bool has_point(int x) const noexcept { return x >= 0 && x < n_; }

    /// Number of subsets; only meaningful below max_family_ground.
    [[nodiscard]] constexpr std::uint32_t subset_count() const noexcept { return std::uint32_t{1} << n_; }

    void require_family_scale() const
    {
        if (n_ > max_family_ground) {
            throw error(errc::ground_too_large,
                        "family operations are limited to " + std::to_string(max_family_ground) + " points");
        }
    }

    friend constexpr bool operator==(GroundSet, GroundSet) = default;

private:
    int n_ = 1;
};

[[nodiscard]] constexpr Mask singleton(int x) noexcept { return Mask{1} << x; }

/// Builds a mask from 0-indexed points.
[[nodiscard]] inline Mask mask_of(std::initializer_list<int> points)
{
    Mask m = 0;
    for (int p : points) {
        m |= singleton(p);
    }
    return m;
}

/// Calls fn(i) for each set bit i in ascending order.
template <class Fn>
constexpr void for_each_point(Mask m, Fn&& fn)
{
    while (m != 0) {
        fn(std::countr_zero(m));
        m &= m - 1;
    }
}

/// Lowercase hex, no leading zeros; the empty set encodes as "0".
[[nodiscard]] inline std::string to_hex(Mask m)
{
    static constexpr char digits[] = "0123456789abcdef";
    if (m == 0) {
        return "0";
    }
    std::string out;
    while (m != 0) {
        out.push_back(digits[m & 0xfu]);
        m >>= 4;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

[[nodiscard]] inline Mask from_hex(const std::string& s)
{
    if (s.empty() || s.size() > 8) {
        throw error(errc::parse_error, "bad hex mask '" + s + "'");
    }
    Mask m = 0;
    for (char c : s) {
        int d = 0;
        if (c >= '0' && c <= '9') {
            d = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            d = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            d = c - 'A' + 10;
        } else {
            throw error(errc::parse_error, "bad hex mask '" + s + "'");
        }
        m = (m << 4) | static_cast<Mask>(d);
    }
    return m;
}

/// A duplicate-free, canonically ordered collection of subsets of a ground set.
class SetFamily {
public:
    explicit SetFamily(GroundSet ground) : ground_(ground) {}

    SetFamily(GroundSet ground, std::vector<Mask> members) : ground_(ground), members_(std::move(members))
    {
        for (Mask m : members_) {
            if (!ground_.contains(m)) {
                throw error(errc::ground_mismatch, "mask " + to_hex(m) + " uses points outside the ground set");
            }
        }
        normalize();
    }

    SetFamily(GroundSet ground, std::initializer_list<Mask> members)
        : SetFamily(ground, std::vector<Mask>(members))
    {
    }

    [[nodiscard]] GroundSet ground() const noexcept { return ground_; }
    [[nodiscard]] std::span<const Mask> members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }

    [[nodiscard]] bool contains(Mask m) const
    {
        return std::binary_search(members_.begin(), members_.end(), m, canonical_less);
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

    /// Lexicographic over the canonical member sequence.
    friend bool operator<(const SetFamily& a, const SetFamily& b)
    {
        return std::lexicographical_compare(a.members_.begin(), a.members_.end(), b.members_.begin(),
                                            b.members_.end(), canonical_less);
    }

private:
    void normalize()
    {
        std::sort(members_.begin(), members_.end(), canonical_less);
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    GroundSet ground_;
    std::vector<Mask> members_;
};

/// True iff every two members meet. A family holding the empty set is never
/// linked; the empty family and singletons of nonempty sets are.
[[nodiscard]] inline bool is_linked(const SetFamily& fam)
{
    auto ms = fam.members();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i] == 0) {
            return false;
        }
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            if (!intersects(ms[i], ms[j])) {
                return false;
            }
        }
    }
    return true;
}

[[nodiscard]] inline SetFamily up_closure(const SetFamily& fam)
{
    const GroundSet g = fam.ground();
    if (fam.empty()) {
        return SetFamily(g);
    }
    g.require_family_scale();
    std::vector<Mask> out;
    for (std::uint32_t s = 0; s < g.subset_count(); ++s) {
        for (Mask m : fam) {
            if (is_subset(m, s)) {
                out.push_back(s);
                break;
            }
        }
    }
    return SetFamily(g, std::move(out));
}

[[nodiscard]] inline SetFamily minimal_members(const SetFamily& fam)
{
    std::vector<Mask> out;
    // Canonical order lists every proper subset of a member before the member.
    for (Mask m : fam) {
        bool minimal = true;
        for (Mask kept : out) {
            if (is_subset(kept, m)) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            out.push_back(m);
        }
    }
    return SetFamily(fam.ground(), std::move(out));
}

[[nodiscard]] inline bool is_antichain(const SetFamily& fam)
{
    auto ms = fam.members();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = 0; j < ms.size(); ++j) {
            if (i != j && is_subset(ms[i], ms[j])) {
                return false;
            }
        }
    }
    return true;
}

[[nodiscard]] inline bool is_up_closed(const SetFamily& fam)
{
    const GroundSet g = fam.ground();
    for (Mask m : fam) {
        for (int x = 0; x < g.size(); ++x) {
            if (!fam.contains(m | singleton(x))) {
                return false;
            }
        }
    }
    return true;
}

/// Up-closed, free of the empty set, and containing exactly one of A and its
/// complement for every subset A.
[[nodiscard]] inline bool is_self_dual_upclosed(const SetFamily& fam)
{
    const GroundSet g = fam.ground();
    g.require_family_scale();
    if (fam.contains(0) || !is_up_closed(fam)) {
        return false;
    }
    for (std::uint32_t s = 0; s < g.subset_count(); ++s) {
        if (fam.contains(s) == fam.contains(g.complement(s))) {
            return false;
        }
    }
    return true;
}

/// True iff some member of the antichain lies inside s.
[[nodiscard]] inline bool upset_contains(std::span<const Mask> antichain, Mask s) noexcept
{
    return std::any_of(antichain.begin(), antichain.end(), [s](Mask m) { return is_subset(m, s); });
}

/// A total map between ground sets, given by the image of each domain point.
class PointMap {
public:
    PointMap(GroundSet domain, GroundSet codomain, std::vector<int> image)
        : domain_(domain), codomain_(codomain), image_(std::move(image))
    {
        if (static_cast<int>(image_.size()) != domain_.size()) {
            throw error(errc::ground_mismatch, "map table length differs from domain size");
        }
        for (int y : image_) {
            if (!codomain_.has_point(y)) {
                throw error(errc::point_out_of_range, "map value " + std::to_string(y) + " outside codomain");
            }
        }
    }

    static PointMap identity(GroundSet g)
    {
        std::vector<int> img(static_cast<std::size_t>(g.size()));
        for (int i = 0; i < g.size(); ++i) {
            img[static_cast<std::size_t>(i)] = i;
        }
        return PointMap(g, g, std::move(img));
    }

    [[nodiscard]] GroundSet domain() const noexcept { return domain_; }
    [[nodiscard]] GroundSet codomain() const noexcept { return codomain_; }
    [[nodiscard]] std::span<const int> table() const noexcept { return image_; }
    [[nodiscard]] int operator()(int x) const { return image_.at(static_cast<std::size_t>(x)); }

    [[nodiscard]] Mask image(Mask a) const noexcept
    {
        Mask out = 0;
        for_each_point(a, [&](int x) { out |= singleton(image_[static_cast<std::size_t>(x)]); });
        return out;
    }

    [[nodiscard]] Mask preimage(Mask b) const noexcept
    {
        Mask out = 0;
        for (int x = 0; x < domain_.size(); ++x) {
            if (b & singleton(image_[static_cast<std::size_t>(x)])) {
                out |= singleton(x);
            }
        }
        return out;
    }

    [[nodiscard]] bool is_surjective() const noexcept
    {
        Mask hit = 0;
        for (int y : image_) {
            hit |= singleton(y);
        }
        return hit == codomain_.full();
    }

    /// (this ∘ inner): x ↦ this(inner(x)).
    [[nodiscard]] PointMap after(const PointMap& inner) const
    {
        if (inner.codomain_ != domain_) {
            throw error(errc::ground_mismatch, "composition of maps with mismatched grounds");
        }
        std::vector<int> img;
        img.reserve(inner.image_.size());
        for (int v : inner.image_) {
            img.push_back(image_[static_cast<std::size_t>(v)]);
        }
        return PointMap(inner.domain_, codomain_, std::move(img));
    }

    friend bool operator==(const PointMap&, const PointMap&) = default;

private:
    GroundSet domain_;
    GroundSet codomain_;
    std::vector<int> image_;
};

/// Every total map from a domain of size m to a codomain of size k, in
/// lexicographic order of their tables.
[[nodiscard]] inline std::vector<PointMap> all_maps(GroundSet domain, GroundSet codomain)
{
    std::vector<PointMap> out;
    std::vector<int> img(static_cast<std::size_t>(domain.size()), 0);
    while (true) {
        out.emplace_back(domain, codomain, img);
        int i = domain.size() - 1;
        while (i >= 0 && img[static_cast<std::size_t>(i)] == codomain.size() - 1) {
            img[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) {
            break;
        }
        ++img[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace supext
