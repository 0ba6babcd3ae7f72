#pragma once

// Exact scalar types used throughout the library, plus the handful of
// integer/rational helpers the other headers need.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oddtrace {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    return Rational(Integer(num), Integer(den));
}

inline Integer numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denom(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rational& r)
{
    return r.sign();
}

inline Integer floor_div(const Integer& n, const Integer& d)
{
    // d > 0 for every caller
    Integer q = n / d;
    if (n % d != 0 && n < 0)
        --q;
    return q;
}

inline Integer floor(const Rational& r) { return floor_div(numer(r), denom(r)); }

inline Integer ceil(const Rational& r)
{
    Integer f = floor(r);
    return Rational(f) == r ? f : Integer(f + 1);
}

inline std::int64_t to_int64(const Integer& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
    return static_cast<std::int64_t>(v);
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    return boost::multiprecision::lcm(a, b);
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b)
{
    return to_int64(lcm(Integer(a), Integer(b)));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact square root, if r is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r)
{
    if (r < 0)
        return std::nullopt;
    const Integer n = numer(r);
    const Integer d = denom(r);
    const Integer sn = boost::multiprecision::sqrt(n);
    const Integer sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d)
        return std::nullopt;
    return Rational(sn, sd);
}

/// "n" or "n/d" in lowest terms, denominator positive.
inline std::string to_string(const Rational& r)
{
    if (denom(r) == 1)
        return numer(r).str();
    return numer(r).str() + "/" + denom(r).str();
}

namespace detail {

inline bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char ch : s)
        if (ch < '0' || ch > '9')
            return false;
    return true;
}

inline Integer parse_integer(std::string_view s)
{
    if (!is_integer_literal(s))
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    if (s.front() == '+')
        s.remove_prefix(1);
    return Integer(std::string(s));
}

} // namespace detail

/// Parses "N" or "N/D" (D nonzero) into a normalized rational.
inline Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer(text));
    const Integer n = detail::parse_integer(text.substr(0, slash));
    const Integer d = detail::parse_integer(text.substr(slash + 1));
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
}

} // namespace oddtrace
