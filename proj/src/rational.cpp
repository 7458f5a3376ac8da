#include "turan/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace turan {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    BigInt value = 0;
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
            throw std::invalid_argument("malformed rational '" + std::string(whole) +
                                        "' (expected p/q with integer p and q)");
        value = value * 10 + (text[pos] - '0');
    }
    return negative ? BigInt(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& value)
{
    return numerator_of(value).str() + "/" + denominator_of(value).str();
}

double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

SmallFraction SmallFraction::from(const Rational& r)
{
    const BigInt limit = BigInt(std::numeric_limits<std::int32_t>::max());
    BigInt num = numerator_of(r);
    BigInt den = denominator_of(r);
    if (abs(num) > limit || den > limit)
        throw std::invalid_argument("rational " + to_string(r) +
                                    " exceeds the 32-bit numerator/denominator range of the audit kernels");
    return SmallFraction{num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()};
}

} // namespace turan
