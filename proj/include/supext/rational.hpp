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

#include <supext/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace supext {

/// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Always "p/q" with q > 0, e.g. "2/1", "-1/2".
[[nodiscard]] inline std::string to_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Accepts "p/q" or a bare integer "p".
[[nodiscard]] inline Rational parse_rational(const std::string& text)
{
    auto is_int = [](const std::string& s) {
        if (s.empty()) {
            return false;
        }
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) {
            return false;
        }
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                return false;
            }
        }
        return true;
    };
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) {
        throw error(errc::parse_error, "bad rational '" + text + "'");
    }
    const Integer q(den[0] == '+' ? den.substr(1) : den);
    if (q == 0) {
        throw error(errc::parse_error, "zero denominator in '" + text + "'");
    }
    const Integer p(num[0] == '+' ? num.substr(1) : num);
    return Rational(p, q);
}

} // namespace supext
