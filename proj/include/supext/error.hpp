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

#include <stdexcept>
#include <string>
#include <string_view>

namespace supext {

enum class errc {
    ground_too_large,
    empty_ground,
    point_out_of_range,
    ground_mismatch,
    not_linked,
    empty_set,
    equal_systems,
    not_an_extender,
    not_surjective,
    inconsistent,
    in_subspace,
    too_large,
    invalid_operator,
    carrier_mismatch,
    not_usco,
    not_point_fixed,
    invalid_argument,
    unknown_suite,
    parse_error,
};

constexpr std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::ground_too_large: return "GroundTooLarge";
    case errc::empty_ground: return "EmptyGround";
    case errc::point_out_of_range: return "PointOutOfRange";
    case errc::ground_mismatch: return "GroundMismatch";
    case errc::not_linked: return "NotLinked";
    case errc::empty_set: return "EmptySet";
    case errc::equal_systems: return "EqualSystems";
    case errc::not_an_extender: return "NotAnExtender";
    case errc::not_surjective: return "NotSurjective";
    case errc::inconsistent: return "Inconsistent";
    case errc::in_subspace: return "InSubspace";
    case errc::too_large: return "TooLarge";
    case errc::invalid_operator: return "InvalidOperator";
    case errc::carrier_mismatch: return "CarrierMismatch";
    case errc::not_usco: return "NotUsco";
    case errc::not_point_fixed: return "NotPointFixed";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace supext
