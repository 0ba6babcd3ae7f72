#include <oddtrace/zhu_queer.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace oddtrace;

namespace {

Rational r(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

// (X Y; Y X) as a full 2n x 2n matrix, for an oracle product.
RationalMatrix expand(const QueerElement& q)
{
    const std::size_t n = q.n();
    RationalMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = q.x(i, j);
            m(i + n, j + n) = q.x(i, j);
            m(i, j + n) = q.y(i, j);
            m(i + n, j) = q.y(i, j);
        }
    return m;
}

RationalMatrix expand(const EndElement& e)
{
    const std::size_t d0 = e.even_dim();
    const std::size_t d1 = e.odd_dim();
    RationalMatrix m(d0 + d1, d0 + d1);
    for (std::size_t i = 0; i < d0 + d1; ++i)
        for (std::size_t j = 0; j < d0 + d1; ++j) {
            if (i < d0 && j < d0)
                m(i, j) = e.a(i, j);
            else if (i < d0)
                m(i, j) = e.b(i, j - d0);
            else if (j < d0)
                m(i, j) = e.c(i - d0, j);
            else
                m(i, j) = e.d(i - d0, j - d0);
        }
    return m;
}

template <class Rng>
EndElement random_end(Rng& rng, std::size_t d0, std::size_t d1, Parity p)
{
    if (p == Parity::even)
        return {random_matrix(rng, d0, d0), RationalMatrix(d0, d1), RationalMatrix(d1, d0), random_matrix(rng, d1, d1)};
    return {RationalMatrix(d0, d0), random_matrix(rng, d0, d1), random_matrix(rng, d1, d0), RationalMatrix(d1, d1)};
}

} // namespace

TEST_CASE("queer_mul", "[zhu_queer]")
{
    std::mt19937_64 rng(5);
    SECTION("identity is a two-sided unit")
    {
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto a = QueerElement(random_matrix(rng, n, n), random_matrix(rng, n, n));
            REQUIRE(queer_mul(QueerElement::identity(n), a) == a);
            REQUIRE(queer_mul(a, QueerElement::identity(n)) == a);
        }
    }
    SECTION("theta^2 = 1")
    {
        REQUIRE(queer_mul(QueerElement::theta(1), QueerElement::theta(1)) == QueerElement::identity(1));
        REQUIRE(queer_mul(QueerElement::theta(3), QueerElement::theta(3)) == QueerElement::identity(3));
    }
    SECTION("agrees with the block-matrix product and is associative")
    {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 2;
            const QueerElement a(random_matrix(rng, n, n), random_matrix(rng, n, n));
            const QueerElement b(random_matrix(rng, n, n), random_matrix(rng, n, n));
            const QueerElement c(random_matrix(rng, n, n), random_matrix(rng, n, n));
            REQUIRE(expand(queer_mul(a, b)) == expand(a) * expand(b));
            REQUIRE(queer_mul(queer_mul(a, b), c) == queer_mul(a, queer_mul(b, c)));
        }
    }
    SECTION("size mismatch")
    {
        REQUIRE_THROWS_AS(queer_mul(QueerElement::identity(1), QueerElement::identity(2)), std::invalid_argument);
        REQUIRE_THROWS_AS(QueerElement(RationalMatrix(2, 2), RationalMatrix(3, 3)), std::invalid_argument);
    }
}

TEST_CASE("odd_trace", "[zhu_queer]")
{
    REQUIRE(odd_trace(QueerElement::identity(3)) == 0);
    RationalMatrix one(1, 1);
    one(0, 0) = 1;
    REQUIRE(odd_trace(QueerElement(RationalMatrix(1, 1), one)) == 1);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const Parity pa = trial % 2 ? Parity::odd : Parity::even;
        const Parity pb = (trial / 2) % 2 ? Parity::odd : Parity::even;
        const auto a = random_queer_element(rng, n, pa);
        const auto b = random_queer_element(rng, n, pb);
        REQUIRE(odd_trace(queer_mul(a, b)) == parity_sign(pa, pb) * odd_trace(queer_mul(b, a)));
        if (pa == Parity::even)
            REQUIRE(odd_trace(a) == 0);
    }
}

TEST_CASE("supertrace", "[zhu_queer]")
{
    REQUIRE(supertrace(EndElement::identity(2, 3)) == -1);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Parity pa = trial % 2 ? Parity::odd : Parity::even;
        const Parity pb = (trial / 2) % 2 ? Parity::odd : Parity::even;
        const auto a = random_end(rng, 2, 2, pa);
        const auto b = random_end(rng, 2, 2, pb);
        REQUIRE(expand(end_mul(a, b)) == expand(a) * expand(b));
        REQUIRE(supertrace(end_mul(a, b)) == parity_sign(pa, pb) * supertrace(end_mul(b, a)));
        if (pa == Parity::odd) {
            REQUIRE(a.parity() == Parity::odd);
            REQUIRE(supertrace(a) == 0);
        }
    }
    // unequal dimensions
    const auto a = random_end(rng, 1, 3, Parity::odd);
    const auto b = random_end(rng, 1, 3, Parity::odd);
    REQUIRE(supertrace(end_mul(a, b)) == -supertrace(end_mul(b, a)));
    REQUIRE_THROWS_AS(end_mul(EndElement::zero(1, 2), EndElement::zero(2, 1)), std::invalid_argument);
}

TEST_CASE("supersymmetric functionals on Q_1 form a line spanned by the odd trace", "[zhu_queer]")
{
    std::mt19937_64 rng(29);
    std::vector<std::pair<QueerElement, QueerElement>> pairs;
    for (const Parity pa : {Parity::even, Parity::odd})
        for (const Parity pb : {Parity::even, Parity::odd})
            pairs.emplace_back(random_queer_element(rng, 1, pa), random_queer_element(rng, 1, pb));
    const auto probe = probe_supersymmetric_functionals(pairs);
    REQUIRE(probe.solution_dimension == 1);
    REQUIRE(probe.odd_trace_solves);

    // Only even-even pairs: tr X survives too, so the probe must see a plane.
    std::vector<std::pair<QueerElement, QueerElement>> even_only = {
        {random_queer_element(rng, 1, Parity::even), random_queer_element(rng, 1, Parity::even)}};
    REQUIRE(probe_supersymmetric_functionals(even_only).solution_dimension == 2);

    const QueerElement mixed(RationalMatrix::identity(1), RationalMatrix::identity(1));
    REQUIRE_FALSE(mixed.parity());
    REQUIRE_THROWS_AS(probe_supersymmetric_functionals({{mixed, mixed}}), std::invalid_argument);
}

TEST_CASE("check_queer_supersymmetry summary", "[zhu_queer]")
{
    const auto s = check_queer_supersymmetry(1000, 1);
    REQUIRE(s.pairs_checked == 1000);
    REQUIRE(s.failures == 0);
    REQUIRE(s.probe.solution_dimension == 1);
    REQUIRE(s.pass);
}

TEST_CASE("rank", "[zhu_queer]")
{
    RationalMatrix m(3, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(2, 2) = r(1, 3);
    REQUIRE(rank(m) == 2);
    REQUIRE(rank(RationalMatrix(2, 2)) == 0);
    REQUIRE(rank(RationalMatrix::identity(4)) == 4);
}
