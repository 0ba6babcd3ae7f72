#include <oddtrace/json_io.hpp>
#include <oddtrace/qseries.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <random>

using namespace oddtrace;

namespace {

Rational r(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

// 1 - q, exact below q^T.
FracPowerSeries one_minus_q(std::int64_t t)
{
    return FracPowerSeries::from_pairs({{r(0), r(1)}, {r(1), r(-1)}}, r(t));
}

// Random series on grid 1/d with small rational coefficients, exact below q^order.
FracPowerSeries random_series(std::mt19937_64& rng, std::int64_t d, std::int64_t order)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> keep(0, 2);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (std::int64_t k = 0; k < order * d; ++k)
        if (keep(rng) == 0)
            pairs.emplace_back(r(k, d), r(num(rng), den(rng)));
    return FracPowerSeries::from_pairs(pairs, r(order));
}

// Structural invariants every series must satisfy.
void check_normalized(const FracPowerSeries& s)
{
    for (const auto& [k, c] : s.terms()) {
        REQUIRE(c != 0);
        REQUIRE(s.exponent_of(k) < s.truncation());
    }
    std::int64_t g = s.denominator();
    for (const auto& [k, c] : s.terms())
        g = std::gcd(g, k < 0 ? -k : k);
    if (!s.is_zero())
        REQUIRE(g == 1);
}

} // namespace

TEST_CASE("add merges grids and cancels", "[qseries]")
{
    SECTION("(1 - q) + q = 1 with the truncation kept")
    {
        const auto sum = add(one_minus_q(10), FracPowerSeries::monomial(r(1), r(1), r(10)));
        REQUIRE(sum == FracPowerSeries::one(r(10)));
        REQUIRE(sum.truncation() == 10);
    }
    SECTION("zero is the additive identity")
    {
        const auto e = eta(30);
        REQUIRE(add(e, FracPowerSeries::zero(e.truncation())) == e);
    }
    SECTION("q^{1/24} + q^{1/8} lives on the 1/24 grid")
    {
        const auto sum = add(FracPowerSeries::monomial(r(1, 24), r(1), r(5)),
                             FracPowerSeries::monomial(r(1, 8), r(1), r(5)));
        REQUIRE(sum.denominator() == 24);
        REQUIRE(sum.size() == 2);
        REQUIRE(sum.coeff(r(1, 24)) == 1);
        REQUIRE(sum.coeff(r(3, 24)) == 1);
    }
    SECTION("truncation is the minimum")
    {
        REQUIRE(add(one_minus_q(4), one_minus_q(9)).truncation() == 4);
    }
}

TEST_CASE("mul is the truncated Cauchy product", "[qseries]")
{
    SECTION("(1 - q)(1 + q + ... + q^{T-1}) = 1 to order T")
    {
        const std::int64_t t = 25;
        std::vector<std::pair<Rational, Rational>> geo;
        for (std::int64_t k = 0; k < t; ++k)
            geo.emplace_back(r(k), r(1));
        const auto prod = mul(one_minus_q(t), FracPowerSeries::from_pairs(geo, r(t)));
        REQUIRE(prod.truncation() == t);
        REQUIRE(eq_to_order(prod, FracPowerSeries::one(r(t)), r(t)));
    }
    SECTION("q^{1/24} q^{1/24} = q^{1/12}")
    {
        const auto a = FracPowerSeries::monomial(r(1, 24), r(1), r(3));
        const auto prod = mul(a, a);
        REQUIRE(prod.denominator() == 12);
        REQUIRE(prod.size() == 1);
        REQUIRE(prod.coeff(r(1, 12)) == 1);
        REQUIRE(prod.truncation() == r(3) + r(1, 24));
    }
    SECTION("eta^3 matches the Jacobi sum to order 50")
    {
        const auto e = eta(50);
        REQUIRE(eq_to_order(mul(mul(e, e), e), jacobi_rhs(50), r(50)));
    }
}

TEST_CASE("invert", "[qseries]")
{
    SECTION("1/(1 - q) is the geometric series")
    {
        const auto inv = invert(one_minus_q(12));
        REQUIRE(inv.truncation() == 12);
        for (std::int64_t k = 0; k < 12; ++k)
            REQUIRE(inv.coeff(r(k)) == 1);
    }
    SECTION("1/q^{1/24} = q^{-1/24}")
    {
        const auto inv = invert(FracPowerSeries::monomial(r(1, 24), r(1), r(2)));
        REQUIRE(inv.size() == 1);
        REQUIRE(inv.coeff(r(-1, 24)) == 1);
        REQUIRE(inv.truncation() == r(2) - r(2, 24));
    }
    SECTION("1/prod(1 - q^n) counts partitions")
    {
        const auto gen = invert(euler_product(40));
        REQUIRE(gen.coeff(r(5)) == 7);
        for (int n = 0; n < 40; ++n)
            REQUIRE(gen.coeff(r(n)) == oracle::partition_count(n));
    }
    SECTION("zero series is an error")
    {
        REQUIRE_THROWS_AS(invert(FracPowerSeries::zero(r(5))), std::domain_error);
    }
}

TEST_CASE("euler_product against the direct product", "[qseries]")
{
    SECTION("leading terms 1 - q - q^2 + q^5 + q^7 - q^12 - q^15")
    {
        const auto e = euler_product(20);
        REQUIRE(e.coeff(r(0)) == 1);
        REQUIRE(e.coeff(r(1)) == -1);
        REQUIRE(e.coeff(r(2)) == -1);
        REQUIRE(e.coeff(r(3)) == 0);
        REQUIRE(e.coeff(r(4)) == 0);
        REQUIRE(e.coeff(r(5)) == 1);
        REQUIRE(e.coeff(r(7)) == 1);
        REQUIRE(e.coeff(r(12)) == -1);
        REQUIRE(e.coeff(r(15)) == -1);
    }
    SECTION("coefficients in {-1, 0, 1} and equal to the oracle through 200")
    {
        const int order = 200;
        const auto e = euler_product(order);
        const auto direct = oracle::euler_product_direct(order);
        for (int n = 0; n < order; ++n) {
            const Rational c = e.coeff(r(n));
            REQUIRE(c == direct[n]);
            REQUIRE((c == 0 || c == 1 || c == -1));
        }
    }
    SECTION("order must be positive")
    {
        REQUIRE_THROWS_AS(euler_product(0), std::invalid_argument);
    }
}

TEST_CASE("eta", "[qseries]")
{
    const auto e = eta(10);
    REQUIRE(e.denominator() == 24);
    REQUIRE(e.lowest_exponent() == r(1, 24));
    REQUIRE(e.coeff(r(1, 24)) == 1);
    REQUIRE(e.coeff(r(1, 24) + 1) == -1);
    REQUIRE(e.coeff(r(1, 24) + 3) == 0);
    REQUIRE(e.truncation() == r(10) + r(1, 24));
}

TEST_CASE("jacobi_rhs", "[qseries]")
{
    const auto j = jacobi_rhs(12);
    REQUIRE(j.denominator() == 8);
    const std::vector<std::pair<int, int>> expected = {{0, 1}, {1, -3}, {3, 5}, {6, -7}, {10, 9}};
    for (const auto& [offset, c] : expected)
        REQUIRE(j.coeff(r(1, 8) + offset) == c);
    REQUIRE(j.coeff(r(1, 8) + 2) == 0);
    REQUIRE(j.size() == expected.size());

    const auto single = jacobi_rhs(1);
    REQUIRE(single.size() == 1);
    REQUIRE(single.coeff(r(1, 8)) == 1);
}

TEST_CASE("power", "[qseries]")
{
    const auto e = eta(20);
    REQUIRE(eq_to_order(power(e, 0), FracPowerSeries::one(r(20)), r(20)));
    REQUIRE(power(e, 3).lowest_exponent() == r(1, 8));
    REQUIRE(power(e, 3).coeff(r(1, 8)) == 1);
    REQUIRE(power(one_minus_q(10), 2) == FracPowerSeries::from_pairs({{r(0), r(1)}, {r(1), r(-2)}, {r(2), r(1)}}, r(10)));
    REQUIRE(power(e, 5) == mul(mul(mul(mul(e, e), e), e), e));
}

TEST_CASE("coeff and eq_to_order respect truncation", "[qseries]")
{
    const auto e = eta(60);
    REQUIRE(coeff(e, r(1, 24)) == 1);
    REQUIRE(coeff(power(e, 3), r(1, 8) + 6) == -7);
    REQUIRE(coeff(e, r(1, 7)) == 0); // off grid
    REQUIRE_THROWS_AS(coeff(eta(1), r(2)), std::out_of_range);

    const auto e3 = power(e, 3);
    REQUIRE(eq_to_order(e3, jacobi_rhs(60), r(50)));
    REQUIRE_FALSE(eq_to_order(e, e3, r(1)));
    REQUIRE(eq_to_order(e, e, e.truncation()));
    REQUIRE_THROWS_AS(eq_to_order(e, e, e.truncation() + 1), std::out_of_range);

    const auto diff = first_difference(e, e3, r(1));
    REQUIRE(diff);
    REQUIRE(diff->exponent == r(1, 24));
    REQUIRE(diff->lhs == 1);
    REQUIRE(diff->rhs == 0);
}

TEST_CASE("QExponent compares by value", "[qseries]")
{
    REQUIRE(QExponent(1, 24) == QExponent(2, 48));
    REQUIRE(QExponent(1, 24) < QExponent(1, 8));
    REQUIRE(QExponent(-1, 2) < QExponent(0, 1));
    REQUIRE_THROWS_AS(QExponent(1, 0), std::invalid_argument);
    REQUIRE(eta(5).coeff(QExponent(25, 24)) == -1);
}

TEST_CASE("ring axioms on random series to order 20", "[qseries][property]")
{
    std::mt19937_64 rng(7);
    const std::int64_t grids[] = {1, 2, 3, 8, 24};
    std::uniform_int_distribution<int> pick(0, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_series(rng, grids[pick(rng)], 20);
        const auto b = random_series(rng, grids[pick(rng)], 20);
        const auto c = random_series(rng, grids[pick(rng)], 20);
        const Rational order = 20;
        REQUIRE(add(a, b) == add(b, a));
        REQUIRE(add(add(a, b), c) == add(a, add(b, c)));
        REQUIRE(eq_to_order(mul(a, b), mul(b, a), order));
        // Products of exact-below-20 series starting at q^0 are exact below 20.
        REQUIRE(eq_to_order(mul(mul(a, b), c), mul(a, mul(b, c)), order));
        REQUIRE(eq_to_order(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), order));
        for (const auto& s : {add(a, b), mul(a, b), mul(a, add(b, c))}) {
            check_normalized(s);
            REQUIRE(std::lcm(a.denominator(), std::lcm(b.denominator(), c.denominator())) % s.denominator() == 0);
        }
    }
}

TEST_CASE("a * invert(a) = 1 for random units", "[qseries][property]")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto u = random_series(rng, trial % 2 ? 1 : 3, 15);
        if (u.is_zero())
            continue;
        const Rational shift = r(trial % 5, 24);
        const auto a = u.shifted(shift);
        const auto prod = mul(a, invert(a));
        check_normalized(prod);
        REQUIRE(eq_to_order(prod, FracPowerSeries::one(prod.truncation()), prod.truncation()));
        REQUIRE(prod.truncation() == a.truncation() - a.lowest_exponent());
    }
}

TEST_CASE("series JSON round-trips", "[qseries][json]")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_series(rng, trial % 3 + 1, 10).shifted(r(trial, 8));
        REQUIRE(series_from_json(json::parse(to_json(s).dump())) == s);
    }
    const json j = to_json(eta(3));
    REQUIRE(j.dump() ==
            R"({"denominator":24,"terms":[[1,1,1],[25,-1,1],[49,-1,1]],"truncation":[73,24]})");
    REQUIRE_THROWS(series_from_json(json::parse(R"({"denominator":0,"truncation":[1,1],"terms":[]})")));
    REQUIRE_THROWS(series_from_json(json::parse(R"({"denominator":1,"truncation":[1,1],"terms":[[0,0,1]]})")));
}
