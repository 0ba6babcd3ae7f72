#pragma once

// Structure constants of the two Lie superalgebras whose modules we trace:
//
//   * the neutral free fermion with integral modes: psi_n (odd), 1 (even central),
//       [psi_m, psi_n] = delta_{m,-n} 1;
//   * the Ramond N=1 superconformal algebra: L_n (even), G_m (odd), C (central),
//       [L_m, L_n] = (m - n) L_{m+n} + (m^3 - m)/12 delta_{m,-n} C
//       [G_m, L_n] = (m - n/2) G_{m+n}
//       [G_m, G_n] = 2 L_{m+n} + (1/3)(m^2 - 1/4) delta_{m,-n} C
//
// plus the N=1 minimal-model central charges and conformal weights.

#include <oddtrace/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddtrace {

enum class Parity { even = 0, odd = 1 };

inline int parity_sign(Parity a, Parity b)
{
    return (a == Parity::odd && b == Parity::odd) ? -1 : 1;
}

enum class Algebra { ramond, fermion };

struct BasisElement {
    enum class Kind { L, G, Psi, Central, Unit };

    Kind kind = Kind::Unit;
    std::int64_t index = 0;

    static BasisElement L(std::int64_t n) { return {Kind::L, n}; }
    static BasisElement G(std::int64_t n) { return {Kind::G, n}; }
    static BasisElement psi(std::int64_t n) { return {Kind::Psi, n}; }
    static BasisElement central() { return {Kind::Central, 0}; }
    static BasisElement unit() { return {Kind::Unit, 0}; }

    Parity parity() const { return (kind == Kind::G || kind == Kind::Psi) ? Parity::odd : Parity::even; }

    bool has_index() const { return kind == Kind::L || kind == Kind::G || kind == Kind::Psi; }

    /// psi_n belongs to the fermion algebra; L, G, C to the Ramond algebra.  The
    /// unit 1 belongs to neither: a specialized C becomes c * 1, so 1 is shared.
    std::optional<Algebra> algebra() const
    {
        if (kind == Kind::Unit)
            return std::nullopt;
        return kind == Kind::Psi ? Algebra::fermion : Algebra::ramond;
    }

    std::string name() const
    {
        switch (kind) {
        case Kind::L: return "L_" + std::to_string(index);
        case Kind::G: return "G_" + std::to_string(index);
        case Kind::Psi: return "psi_" + std::to_string(index);
        case Kind::Central: return "C";
        case Kind::Unit: return "1";
        }
        return "?";
    }

    friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
};

/// A finite linear combination of basis elements with nonzero coefficients.
class Combination {
public:
    Combination() = default;
    Combination(const BasisElement& e) { add(e, Rational(1)); }

    void add(const BasisElement& e, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    void add(const Combination& other, const Rational& scale = Rational(1))
    {
        for (const auto& [e, c] : other.terms_)
            add(e, Rational(c * scale));
    }

    Rational coefficient(const BasisElement& e) const
    {
        const auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::map<BasisElement, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    friend bool operator==(const Combination&, const Combination&) = default;

private:
    std::map<BasisElement, Rational> terms_;
};

/// Right-hand side of a single bracket; at most two terms.
using BracketResult = Combination;

namespace detail {

inline void require_same_algebra(const BasisElement& a, const BasisElement& b)
{
    if (a.algebra() && b.algebra() && a.algebra() != b.algebra())
        throw std::invalid_argument("bracket of " + a.name() + " and " + b.name() +
                                    " mixes the fermion and Ramond algebras");
}

// Central term: formal C, or c * 1 once specialized.
inline void add_central(BracketResult& out, const Rational& coefficient, const std::optional<Rational>& c_value)
{
    if (c_value)
        out.add(BasisElement::unit(), Rational(coefficient * *c_value));
    else
        out.add(BasisElement::central(), coefficient);
}

} // namespace detail

/// Super-bracket [a, b].  With `c_value` the central element C is specialized
/// to c_value * 1; otherwise C is kept formal.
inline BracketResult bracket(const BasisElement& a, const BasisElement& b,
                             const std::optional<Rational>& c_value = std::nullopt)
{
    using K = BasisElement::Kind;
    detail::require_same_algebra(a, b);
    BracketResult out;
    if (a.kind == K::Central || a.kind == K::Unit || b.kind == K::Central || b.kind == K::Unit)
        return out;

    const std::int64_t m = a.index;
    const std::int64_t n = b.index;
    const bool opposite = (m + n == 0);

    if (a.kind == K::Psi && b.kind == K::Psi) {
        if (opposite)
            out.add(BasisElement::unit(), Rational(1));
        return out;
    }
    if (a.kind == K::L && b.kind == K::L) {
        out.add(BasisElement::L(m + n), Rational(m - n));
        if (opposite)
            detail::add_central(out, make_rational(m * m * m - m, 12), c_value);
        return out;
    }
    if (a.kind == K::G && b.kind == K::L) {
        out.add(BasisElement::G(m + n), Rational(Rational(m) - make_rational(n, 2)));
        return out;
    }
    if (a.kind == K::L && b.kind == K::G) {
        // [L_n, G_m] = -[G_m, L_n]
        out.add(BasisElement::G(m + n), Rational(make_rational(m, 2) - Rational(n)));
        return out;
    }
    // G, G
    out.add(BasisElement::L(m + n), Rational(2));
    if (opposite)
        detail::add_central(out, Rational((Rational(m * m) - make_rational(1, 4)) / 3), c_value);
    return out;
}

/// Bilinear extension of `bracket` to linear combinations.  Combinations
/// passed here must be homogeneous in each basis element (always true for
/// basis elements); parity signs are taken per term.
inline Combination bracket(const Combination& a, const Combination& b,
                           const std::optional<Rational>& c_value = std::nullopt)
{
    Combination out;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms())
            out.add(bracket(ea, eb, c_value), Rational(ca * cb));
    return out;
}

/// N=1 minimal model datum.
struct SpectrumEntry {
    int p = 0;
    int pp = 0;
    int r = 0;
    int s = 0;
    Rational c;
    Rational h;
};

/// c_{p,p'} = (3/2)(1 - 2(p'-p)^2 / (p p'))
inline Rational minimal_model_central_charge(int p, int pp)
{
    const Rational diff(pp - p);
    return Rational(Rational(3, 2) * (Rational(1) - Rational(2 * diff * diff) / Rational(p * pp)));
}

/// h_{r,s} = ((r p' - s p)^2 - (p' - p)^2) / (8 p p') + 1/16
inline Rational minimal_model_weight(int p, int pp, int r, int s)
{
    const Integer a = Integer(r) * pp - Integer(s) * p;
    const Integer b = Integer(pp - p);
    return Rational(Rational(a * a - b * b, Integer(8) * p * pp) + Rational(1, 16));
}

/// Empty string if (p, p') is admissible; otherwise names the violated constraint.
inline std::string minimal_model_violation(int p, int pp)
{
    if (p <= 0 || pp <= 0)
        return "p and p' must be positive integers";
    if (p >= pp)
        return "p < p' is required";
    if ((pp - p) % 2 != 0)
        return "p' - p must be even";
    if (std::gcd((pp - p) / 2, p) != 1)
        return "gcd((p' - p)/2, p) must be 1";
    return {};
}

/// All (r, s) with 1 <= r <= p-1, 1 <= s <= p'-1, r - s odd; one entry per
/// distinct (c, h), sorted by h descending.  The first (r, s) in
/// lexicographic order represents each class.
inline std::vector<SpectrumEntry> minimal_model_spectrum(int p, int pp)
{
    if (const auto why = minimal_model_violation(p, pp); !why.empty())
        throw std::invalid_argument("inadmissible (p, p') = (" + std::to_string(p) + ", " + std::to_string(pp) +
                                    "): " + why);
    const Rational c = minimal_model_central_charge(p, pp);
    std::vector<SpectrumEntry> out;
    for (int r = 1; r <= p - 1; ++r) {
        for (int s = 1; s <= pp - 1; ++s) {
            if ((r - s) % 2 == 0)
                continue;
            const Rational h = minimal_model_weight(p, pp, r, s);
            const bool seen = std::any_of(out.begin(), out.end(), [&](const SpectrumEntry& e) { return e.h == h; });
            if (!seen)
                out.push_back({p, pp, r, s, c, h});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.h > y.h; });
    return out;
}

/// Scalar by which G_0^2 = L_0 - C/24 acts on the top space of M(c, h).
inline Rational g0_square_value(const Rational& c, const Rational& h)
{
    return Rational(h - c / 24);
}

} // namespace oddtrace
