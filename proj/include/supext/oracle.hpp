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

/// @file oracle.hpp
/// Slow reference counters used to cross-check the enumerators.
///
/// Nothing here calls into superext or inclusion: the counts are produced
/// by scanning raw families and testing linkedness and maximality pairwise,
/// so an error in the pair-assignment search cannot leak into them.

#include <supext/error.hpp>

#include <bit>
#include <cstdint>
#include <vector>

namespace supext::oracle {

namespace detail {

/// Family over the subsets of an n-set (n <= 4) stored as a 16-bit table.
inline bool family_has(std::uint32_t fam, unsigned s) { return (fam >> s) & 1u; }

inline bool family_linked(std::uint32_t fam, unsigned subsets)
{
    for (unsigned a = 0; a < subsets; ++a) {
        if (!family_has(fam, a)) {
            continue;
        }
        for (unsigned b = a; b < subsets; ++b) {
            if (family_has(fam, b) && (a & b) == 0) {
                return false;
            }
        }
    }
    return true;
}

inline std::uint32_t family_upclose(std::uint32_t fam, unsigned subsets)
{
    std::uint32_t out = 0;
    for (unsigned s = 0; s < subsets; ++s) {
        for (unsigned a = 0; a < subsets; ++a) {
            if (family_has(fam, a) && (a & ~s) == 0) {
                out |= 1u << s;
                break;
            }
        }
    }
    return out;
}

/// All up-closed families on n points as 2^n-bit truth tables (n <= 5).
inline std::vector<std::uint64_t> monotone_tables(int n)
{
    std::vector<std::uint64_t> level{0, 1};
    for (int k = 1; k <= n; ++k) {
        const unsigned half = 1u << (k - 1);
        std::vector<std::uint64_t> next;
        for (std::uint64_t lo : level) {
            for (std::uint64_t hi : level) {
                if ((lo & ~hi) == 0) {
                    next.push_back(lo | (hi << half));
                }
            }
        }
        level = std::move(next);
    }
    return level;
}

} // namespace detail

/// Counts maximal linked systems on n <= 4 points by scanning every family of
/// nonempty subsets: keep it if it is linked, up-closed, and no nonempty set
/// outside it can be added with the up-closure staying linked.
inline std::uint64_t count_mls_family_scan(int n)
{
    if (n < 1 || n > 4) {
        throw error(errc::too_large, "family scan oracle supports 1 <= n <= 4");
    }
    const unsigned subsets = 1u << n;
    const std::uint32_t nonempty = ((std::uint32_t{1} << subsets) - 1) & ~std::uint32_t{1};
    std::uint64_t count = 0;
    // Families are sub-masks of `nonempty`.
    for (std::uint32_t fam = nonempty;; fam = (fam - 1) & nonempty) {
        if (fam != 0 && detail::family_linked(fam, subsets) && detail::family_upclose(fam, subsets) == fam) {
            bool maximal = true;
            for (unsigned b = 1; b < subsets && maximal; ++b) {
                if (detail::family_has(fam, b)) {
                    continue;
                }
                const std::uint32_t bigger = detail::family_upclose(fam | (1u << b), subsets);
                if (detail::family_linked(bigger, subsets)) {
                    maximal = false;
                }
            }
            if (maximal) {
                ++count;
            }
        }
        if (fam == 0) {
            break;
        }
    }
    return count;
}

/// Counts maximal linked systems on n <= 6 points by scanning every up-closed
/// family (generated as monotone truth tables) with a direct pairwise
/// linkedness test and a direct maximality test.
inline std::uint64_t count_mls_monotone_scan(int n)
{
    if (n < 1 || n > 6) {
        throw error(errc::too_large, "monotone scan oracle supports 1 <= n <= 6");
    }
    const unsigned subsets = 1u << n;
    // disjoint[a]: truth table of the subsets disjoint from a.
    std::vector<std::uint64_t> disjoint(subsets, 0);
    for (unsigned a = 0; a < subsets; ++a) {
        for (unsigned b = 0; b < subsets; ++b) {
            if ((a & b) == 0) {
                disjoint[a] |= std::uint64_t{1} << b;
            }
        }
    }
    auto check = [&](std::uint64_t table) {
        if (table == 0 || (table & 1u)) {
            return false;
        }
        for (unsigned a = 1; a < subsets; ++a) {
            if (((table >> a) & 1u) && (table & disjoint[a])) {
                return false;
            }
        }
        // Any nonempty set outside the family must already clash with a member.
        for (unsigned b = 1; b < subsets; ++b) {
            if (!((table >> b) & 1u) && (table & disjoint[b]) == 0) {
                return false;
            }
        }
        return true;
    };
    std::uint64_t count = 0;
    if (n <= 5) {
        for (std::uint64_t t : detail::monotone_tables(n)) {
            count += check(t) ? 1 : 0;
        }
        return count;
    }
    const auto half = detail::monotone_tables(n - 1);
    const unsigned shift = subsets / 2;
    for (std::uint64_t lo : half) {
        for (std::uint64_t hi : half) {
            if ((lo & ~hi) == 0 && check(lo | (hi << shift))) {
                ++count;
            }
        }
    }
    return count;
}

/// Counts nonempty antichains of nonempty subsets of an n-set (n <= 4) by
/// scanning all families and testing pairwise incomparability.
inline std::uint64_t count_nonempty_antichains(int n)
{
    if (n < 1 || n > 4) {
        throw error(errc::too_large, "antichain oracle supports 1 <= n <= 4");
    }
    const unsigned subsets = 1u << n;
    const std::uint32_t nonempty = ((std::uint32_t{1} << subsets) - 1) & ~std::uint32_t{1};
    std::uint64_t count = 0;
    for (std::uint32_t fam = nonempty; fam != 0; fam = (fam - 1) & nonempty) {
        bool ok = true;
        for (unsigned a = 1; a < subsets && ok; ++a) {
            for (unsigned b = 1; b < subsets && ok; ++b) {
                if (a != b && detail::family_has(fam, a) && detail::family_has(fam, b) && (a & ~b) == 0) {
                    ok = false;
                }
            }
        }
        count += ok ? 1 : 0;
    }
    return count;
}

/// Counts nonempty up-closed families of nonempty subsets (n <= 4) directly.
inline std::uint64_t count_upclosed_families(int n)
{
    if (n < 1 || n > 4) {
        throw error(errc::too_large, "up-closed family oracle supports 1 <= n <= 4");
    }
    const unsigned subsets = 1u << n;
    const std::uint32_t nonempty = ((std::uint32_t{1} << subsets) - 1) & ~std::uint32_t{1};
    std::uint64_t count = 0;
    for (std::uint32_t fam = nonempty; fam != 0; fam = (fam - 1) & nonempty) {
        if (detail::family_upclose(fam, subsets) == fam) {
            ++count;
        }
    }
    return count;
}

} // namespace supext::oracle
