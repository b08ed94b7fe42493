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

/// @file carrier.hpp
/// Subsets of abstract finite carriers (points of λX, GX, or any indexed set)
/// whose size can exceed a machine word.

#include <supext/error.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace supext {

using CarrierSet = boost::dynamic_bitset<>;

[[nodiscard]] inline CarrierSet carrier_of(std::size_t size, const std::vector<std::size_t>& points)
{
    CarrierSet s(size);
    for (std::size_t p : points) {
        s.set(p);
    }
    return s;
}

[[nodiscard]] inline std::vector<std::size_t> points_of(const CarrierSet& s)
{
    std::vector<std::size_t> out;
    for (auto i = s.find_first(); i != CarrierSet::npos; i = s.find_next(i)) {
        out.push_back(i);
    }
    return out;
}

/// Same hex convention as masks: lowercase, no leading zeros, bit i = point i.
[[nodiscard]] inline std::string carrier_to_hex(const CarrierSet& s)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    const std::size_t nibbles = (s.size() + 3) / 4;
    for (std::size_t k = nibbles; k-- > 0;) {
        unsigned d = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::size_t i = k * 4 + b;
            if (i < s.size() && s.test(i)) {
                d |= 1u << b;
            }
        }
        if (d != 0 || !out.empty()) {
            out.push_back(digits[d]);
        }
    }
    return out.empty() ? "0" : out;
}

[[nodiscard]] inline CarrierSet carrier_from_hex(const std::string& hex, std::size_t size)
{
    if (hex.empty()) {
        throw error(errc::parse_error, "empty hex carrier set");
    }
    CarrierSet s(size);
    std::size_t bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
        const char c = *it;
        unsigned d = 0;
        if (c >= '0' && c <= '9') {
            d = static_cast<unsigned>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            d = static_cast<unsigned>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            d = static_cast<unsigned>(c - 'A' + 10);
        } else {
            throw error(errc::parse_error, "bad hex carrier set '" + hex + "'");
        }
        for (unsigned b = 0; b < 4; ++b) {
            if (d & (1u << b)) {
                if (bit + b >= size) {
                    throw error(errc::parse_error, "hex carrier set '" + hex + "' exceeds carrier size");
                }
                s.set(bit + b);
            }
        }
    }
    return s;
}

} // namespace supext
