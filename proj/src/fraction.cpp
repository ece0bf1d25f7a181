#include "brun/fraction.hpp"

#include <charconv>

namespace brun {

namespace {

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("cannot parse integer '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

Fraction Fraction::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return make(parse_int(text), 1);
    return make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Interval pow(const Interval& x, const Interval& exponent)
{
    if (exponent.is_point()) return pow(x, exponent.lo());
    if (!x.positive()) throw IntervalError("interval power needs a positive base");
    // x^e is monotone in e for fixed x and monotone in x for fixed e, so the
    // extremes sit at the four corners.
    const Interval a = pow(x, exponent.lo());
    const Interval b = pow(x, exponent.hi());
    return hull(a, b);
}

} // namespace brun
