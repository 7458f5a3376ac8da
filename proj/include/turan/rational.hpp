#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace turan {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "p" (optionally signed). Decimal notation is rejected so
/// that thresholds never pass through floating point.
Rational parse_rational(std::string_view text);

/// Formats as "p/q" with q > 0 and gcd(p, q) = 1; integers print as "p/1".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// A rational d = num/den with both parts small enough for 64-bit scaled
/// arithmetic in the inner loops of the audits.
struct SmallFraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static SmallFraction from(const Rational& r);
    Rational value() const { return Rational(num, den); }
};

} // namespace turan
