#pragma once

// Truncated formal power series in q^{1/D} with exact rational coefficients.
//
// A series carries a single exponent grid 1/D shared by all of its terms and
// a truncation T: every coefficient at an exponent < T is known exactly, and
// nothing is claimed about exponents >= T.  Stored coefficients are never
// zero and D is always the smallest grid that holds every stored exponent.

#include <oddtrace/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oddtrace {

/// An exponent numerator/denominator; compares by exact value.
struct QExponent {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    QExponent() = default;
    QExponent(std::int64_t num, std::int64_t den) : numerator(num), denominator(den)
    {
        if (den <= 0)
            throw std::invalid_argument("exponent denominator must be positive");
    }

    Rational value() const { return make_rational(numerator, denominator); }

    friend bool operator==(const QExponent& a, const QExponent& b) { return a.value() == b.value(); }
    friend std::strong_ordering operator<=>(const QExponent& a, const QExponent& b)
    {
        const Rational x = a.value();
        const Rational y = b.value();
        if (x < y)
            return std::strong_ordering::less;
        if (y < x)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

/// Where two series first disagree.
struct Discrepancy {
    Rational exponent;
    Rational lhs;
    Rational rhs;
};

class FracPowerSeries {
public:
    /// Grid numerator (exponent = key / D) -> nonzero coefficient.
    using TermMap = std::map<std::int64_t, Rational>;

    /// The zero series, exact below `truncation`.
    explicit FracPowerSeries(Rational truncation) : truncation_(std::move(truncation)) {}

    FracPowerSeries(std::int64_t denominator, Rational truncation, TermMap terms)
        : denominator_(denominator), truncation_(std::move(truncation)), terms_(std::move(terms))
    {
        if (denominator_ <= 0)
            throw std::invalid_argument("series denominator must be positive");
        normalize();
    }

    static FracPowerSeries zero(Rational truncation) { return FracPowerSeries(std::move(truncation)); }

    static FracPowerSeries one(Rational truncation)
    {
        return monomial(Rational(0), Rational(1), std::move(truncation));
    }

    static FracPowerSeries monomial(const Rational& exponent, const Rational& coefficient, Rational truncation)
    {
        const std::int64_t d = to_int64(denom(exponent));
        TermMap t;
        t.emplace(to_int64(numer(exponent)), coefficient);
        return FracPowerSeries(d, std::move(truncation), std::move(t));
    }

    /// Builds a series from (exponent, coefficient) pairs; repeated exponents add.
    static FracPowerSeries from_pairs(const std::vector<std::pair<Rational, Rational>>& pairs, Rational truncation)
    {
        std::int64_t d = 1;
        for (const auto& [e, c] : pairs)
            d = lcm64(d, to_int64(denom(e)));
        TermMap t;
        for (const auto& [e, c] : pairs)
            t[to_int64(numer(Rational(e * d)))] += c;
        return FracPowerSeries(d, std::move(truncation), std::move(t));
    }

    std::int64_t denominator() const noexcept { return denominator_; }
    const Rational& truncation() const noexcept { return truncation_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational exponent_of(std::int64_t grid_numerator) const { return make_rational(grid_numerator, denominator_); }

    /// Lowest stored exponent; the truncation for the zero series.
    Rational lowest_exponent() const
    {
        return terms_.empty() ? truncation_ : exponent_of(terms_.begin()->first);
    }

    /// (exponent, coefficient) in increasing exponent order.
    std::vector<std::pair<Rational, Rational>> ordered_terms() const
    {
        std::vector<std::pair<Rational, Rational>> out;
        out.reserve(terms_.size());
        for (const auto& [k, c] : terms_)
            out.emplace_back(exponent_of(k), c);
        return out;
    }

    /// Coefficient at exponent e; throws std::out_of_range when e >= truncation.
    Rational coeff(const Rational& e) const
    {
        if (e >= truncation_)
            throw std::out_of_range("exponent " + to_string(e) + " is beyond the truncation " +
                                    to_string(truncation_));
        const Rational scaled = e * denominator_;
        if (denom(scaled) != 1)
            return Rational(0);
        const auto it = terms_.find(to_int64(numer(scaled)));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coeff(const QExponent& e) const { return coeff(e.value()); }

    /// Same series with truncation lowered to min(T, new_truncation).
    FracPowerSeries truncated(const Rational& new_truncation) const
    {
        return FracPowerSeries(denominator_, std::min(truncation_, new_truncation), terms_);
    }

    FracPowerSeries scaled(const Rational& factor) const
    {
        if (factor == 0)
            return zero(truncation_);
        TermMap t;
        for (const auto& [k, c] : terms_)
            t.emplace(k, Rational(c * factor));
        return FracPowerSeries(denominator_, truncation_, std::move(t));
    }

    /// Multiplication by q^shift.
    FracPowerSeries shifted(const Rational& shift) const
    {
        const std::int64_t d = lcm64(denominator_, to_int64(denom(shift)));
        const std::int64_t offset = to_int64(numer(Rational(shift * d)));
        const std::int64_t factor = d / denominator_;
        TermMap t;
        for (const auto& [k, c] : terms_)
            t.emplace(k * factor + offset, c);
        return FracPowerSeries(d, Rational(truncation_ + shift), std::move(t));
    }

    /// Structural equality: same truncation, grid and terms.
    friend bool operator==(const FracPowerSeries& a, const FracPowerSeries& b)
    {
        return a.denominator_ == b.denominator_ && a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
    }

private:
    void normalize()
    {
        const Integer limit = ceil(Rational(truncation_ * denominator_));
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0 || Integer(it->first) >= limit)
                it = terms_.erase(it);
            else
                ++it;
        }
        std::int64_t g = denominator_;
        for (const auto& [k, c] : terms_) {
            g = std::gcd(g, k < 0 ? -k : k);
            if (g == 1)
                break;
        }
        if (terms_.empty())
            g = denominator_;
        if (g > 1) {
            TermMap t;
            for (const auto& [k, c] : terms_)
                t.emplace_hint(t.end(), k / g, c);
            terms_ = std::move(t);
            denominator_ /= g;
        }
    }

    std::int64_t denominator_ = 1;
    Rational truncation_;
    TermMap terms_;
};

namespace detail {

// Grid numerators of `s` re-expressed on the finer grid `d`.
inline FracPowerSeries::TermMap regrid(const FracPowerSeries& s, std::int64_t d)
{
    const std::int64_t factor = d / s.denominator();
    FracPowerSeries::TermMap t;
    for (const auto& [k, c] : s.terms())
        t.emplace_hint(t.end(), k * factor, c);
    return t;
}

// Smallest integer k such that k/d >= bound, i.e. k/d < bound  <=>  k < result.
inline std::int64_t grid_limit(const Rational& bound, std::int64_t d)
{
    return to_int64(ceil(Rational(bound * d)));
}

} // namespace detail

inline FracPowerSeries add(const FracPowerSeries& a, const FracPowerSeries& b)
{
    const std::int64_t d = lcm64(a.denominator(), b.denominator());
    auto terms = detail::regrid(a, d);
    for (const auto& [k, c] : detail::regrid(b, d))
        terms[k] += c;
    return FracPowerSeries(d, std::min(a.truncation(), b.truncation()), std::move(terms));
}

inline FracPowerSeries negate(const FracPowerSeries& a) { return a.scaled(Rational(-1)); }

inline FracPowerSeries sub(const FracPowerSeries& a, const FracPowerSeries& b) { return add(a, negate(b)); }

/// Cauchy product; truncation min(T_a + lowest(b), T_b + lowest(a)).
inline FracPowerSeries mul(const FracPowerSeries& a, const FracPowerSeries& b)
{
    const Rational t = std::min(Rational(a.truncation() + b.lowest_exponent()),
                                Rational(b.truncation() + a.lowest_exponent()));
    const std::int64_t d = lcm64(a.denominator(), b.denominator());
    const std::int64_t limit = detail::grid_limit(t, d);
    const auto ta = detail::regrid(a, d);
    const auto tb = detail::regrid(b, d);
    FracPowerSeries::TermMap out;
    for (const auto& [i, ci] : ta) {
        for (const auto& [j, cj] : tb) {
            if (i + j >= limit)
                break;
            out[i + j] += ci * cj;
        }
    }
    return FracPowerSeries(d, t, std::move(out));
}

/// Multiplicative inverse of a = q^e u (u(0) != 0): q^{-e} u^{-1}, exact below T_a - 2e.
inline FracPowerSeries invert(const FracPowerSeries& a)
{
    if (a.is_zero())
        throw std::domain_error("cannot invert the zero series");
    const Rational e = a.lowest_exponent();
    const FracPowerSeries u = a.shifted(Rational(-e));
    const std::int64_t d = u.denominator();
    const std::int64_t n = std::max<std::int64_t>(detail::grid_limit(u.truncation(), d), 0);

    // u_0 sits at grid index 0 after the shift.
    const Rational inv0 = Rational(1) / u.terms().begin()->second;
    std::vector<std::pair<std::int64_t, Rational>> tail;
    for (auto it = std::next(u.terms().begin()); it != u.terms().end(); ++it)
        tail.emplace_back(it->first, it->second);

    std::vector<Rational> w(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        Rational acc = (k == 0) ? Rational(1) : Rational(0);
        for (const auto& [j, uj] : tail) {
            if (j > k)
                break;
            acc -= uj * w[static_cast<std::size_t>(k - j)];
        }
        w[static_cast<std::size_t>(k)] = acc * inv0;
    }

    FracPowerSeries::TermMap terms;
    for (std::int64_t k = 0; k < n; ++k)
        if (w[static_cast<std::size_t>(k)] != 0)
            terms.emplace_hint(terms.end(), k, std::move(w[static_cast<std::size_t>(k)]));
    return FracPowerSeries(d, u.truncation(), std::move(terms)).shifted(Rational(-e));
}

/// a^k by repeated squaring; a^0 is 1 with a's relative precision T_a - lowest(a).
inline FracPowerSeries power(const FracPowerSeries& a, unsigned k)
{
    FracPowerSeries result = FracPowerSeries::one(Rational(a.truncation() - a.lowest_exponent()));
    if (k == 0)
        return result;
    FracPowerSeries base = a;
    bool first = true;
    while (k > 0) {
        if (k & 1u) {
            result = first ? base : mul(result, base);
            first = false;
        }
        k >>= 1u;
        if (k > 0)
            base = mul(base, base);
    }
    return result;
}

inline Rational coeff(const FracPowerSeries& a, const Rational& e) { return a.coeff(e); }

/// First exponent below `order` (or at most `order` when inclusive) where a and b differ.
inline std::optional<Discrepancy> first_difference(const FracPowerSeries& a, const FracPowerSeries& b,
                                                   const Rational& order, bool inclusive = false)
{
    const Rational known = std::min(a.truncation(), b.truncation());
    if (inclusive ? order >= known : order > known)
        throw std::out_of_range("comparison order " + to_string(order) + " exceeds the known truncation " +
                                to_string(known));
    const std::int64_t d = lcm64(a.denominator(), b.denominator());
    const auto ta = detail::regrid(a, d);
    const auto tb = detail::regrid(b, d);
    auto ia = ta.begin();
    auto ib = tb.begin();
    auto within = [&](std::int64_t k) {
        const Rational e = make_rational(k, d);
        return inclusive ? e <= order : e < order;
    };
    while (ia != ta.end() || ib != tb.end()) {
        std::int64_t k;
        Rational ca(0), cb(0);
        if (ib == tb.end() || (ia != ta.end() && ia->first < ib->first)) {
            k = ia->first;
            ca = ia->second;
            ++ia;
        } else if (ia == ta.end() || ib->first < ia->first) {
            k = ib->first;
            cb = ib->second;
            ++ib;
        } else {
            k = ia->first;
            ca = ia->second;
            cb = ib->second;
            ++ia;
            ++ib;
        }
        if (!within(k))
            break;
        if (ca != cb)
            return Discrepancy{make_rational(k, d), ca, cb};
    }
    return std::nullopt;
}

/// True iff every coefficient below `order` agrees; order must not exceed either truncation.
inline bool eq_to_order(const FracPowerSeries& a, const FracPowerSeries& b, const Rational& order)
{
    return !first_difference(a, b, order).has_value();
}

/// prod_{n>=1} (1 - q^n) below q^T, via the pentagonal number theorem
/// sum_k (-1)^k q^{k(3k-1)/2}.
inline FracPowerSeries euler_product(std::int64_t order)
{
    if (order < 1)
        throw std::invalid_argument("euler_product order must be >= 1");
    FracPowerSeries::TermMap terms;
    for (std::int64_t k = 0;; ++k) {
        const std::int64_t lo = k * (3 * k - 1) / 2;
        if (lo >= order)
            break;
        const Rational s(k % 2 == 0 ? 1 : -1);
        terms.emplace(lo, s);
        if (k > 0) {
            const std::int64_t hi = k * (3 * k + 1) / 2;
            if (hi < order)
                terms.emplace(hi, s);
        }
    }
    return FracPowerSeries(1, Rational(order), std::move(terms));
}

/// Dedekind eta: q^{1/24} prod (1 - q^n), exact below q^{T + 1/24}.
inline FracPowerSeries eta(std::int64_t order)
{
    return euler_product(order).shifted(make_rational(1, 24));
}

/// q^{1/8} sum_{n : n(2n+1) < T} (4n+1) q^{n(2n+1)}, exact below q^{T + 1/8}.
inline FracPowerSeries jacobi_rhs(std::int64_t order)
{
    if (order < 1)
        throw std::invalid_argument("jacobi_rhs order must be >= 1");
    FracPowerSeries::TermMap terms;
    for (std::int64_t n = 0;; ++n) {
        bool any = false;
        for (const std::int64_t m : {n, -n - 1}) {
            const std::int64_t e = m * (2 * m + 1);
            if (e < order) {
                terms.emplace(8 * e + 1, Rational(4 * m + 1));
                any = true;
            }
        }
        if (!any)
            break;
    }
    return FracPowerSeries(8, Rational(Rational(order) + make_rational(1, 8)), std::move(terms));
}

} // namespace oddtrace
