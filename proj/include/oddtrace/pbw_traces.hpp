#pragma once

// PBW bases of the Ramond fermion Fock module and of Ramond N=1 Verma
// modules, and graded traces of odd operators computed on those bases.
//
// A monomial L_{-m_1}...L_{-m_s} G_{-n_1}...G_{-n_t} w (or psi_{-n_1}...psi_{-n_t} w
// in the fermion case) is stored by the positive parts m_i (weakly decreasing),
// n_j (strictly decreasing) and the index of the top vector w.

#include <oddtrace/qseries.hpp>
#include <oddtrace/rational.hpp>
#include <oddtrace/superalgebras.hpp>

#include <compare>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oddtrace {

struct PBWMonomial {
    std::vector<int> bosonic;   // |m_i| of L_{-m_i}, weakly decreasing
    std::vector<int> fermionic; // |n_j| of G_{-n_j} or psi_{-n_j}, strictly decreasing
    int top = 0;                // 0: v, 1: vbar (fermion) or G_0 v (Verma)

    int level() const
    {
        int n = 0;
        for (int m : bosonic)
            n += m;
        for (int m : fermionic)
            n += m;
        return n;
    }

    int fermion_length() const { return static_cast<int>(fermionic.size()); }

    friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
};

namespace detail {

// Visits every partition of n into parts <= max_part, parts weakly decreasing.
inline void for_each_partition(int n, int max_part, std::vector<int>& parts,
                               const std::function<void(const std::vector<int>&)>& visit)
{
    if (n == 0) {
        visit(parts);
        return;
    }
    for (int part = std::min(n, max_part); part >= 1; --part) {
        parts.push_back(part);
        for_each_partition(n - part, part, parts, visit);
        parts.pop_back();
    }
}

// Same, with strictly decreasing parts.
inline void for_each_distinct_partition(int n, int max_part, std::vector<int>& parts,
                                        const std::function<void(const std::vector<int>&)>& visit)
{
    if (n == 0) {
        visit(parts);
        return;
    }
    for (int part = std::min(n, max_part); part >= 1; --part) {
        // parts below `part` must still be able to sum to the rest
        if (part * (part + 1) / 2 < n)
            break;
        parts.push_back(part);
        for_each_distinct_partition(n - part, part - 1, parts, visit);
        parts.pop_back();
    }
}

inline void require_level(int level)
{
    if (level < 0)
        throw std::invalid_argument("level must be nonnegative");
}

} // namespace detail

/// Calls `visit` for each fermion Fock monomial at `level` (both top vectors).
inline void for_each_fermion_monomial(int level, const std::function<void(const PBWMonomial&)>& visit)
{
    detail::require_level(level);
    std::vector<int> parts;
    detail::for_each_distinct_partition(level, level, parts, [&](const std::vector<int>& f) {
        for (int top = 0; top < 2; ++top)
            visit(PBWMonomial{{}, f, top});
    });
}

/// Calls `visit` for each Verma monomial at `level` over a top space of dimension top_dim.
inline void for_each_ns_monomial(int level, int top_dim, const std::function<void(const PBWMonomial&)>& visit)
{
    detail::require_level(level);
    if (top_dim != 1 && top_dim != 2)
        throw std::invalid_argument("top space dimension must be 1 or 2");
    std::vector<int> bos;
    std::vector<int> fer;
    for (int b = 0; b <= level; ++b) {
        detail::for_each_partition(b, b, bos, [&](const std::vector<int>& bp) {
            detail::for_each_distinct_partition(level - b, level - b, fer, [&](const std::vector<int>& fp) {
                for (int top = 0; top < top_dim; ++top)
                    visit(PBWMonomial{bp, fp, top});
            });
        });
    }
}

inline std::vector<PBWMonomial> enumerate_fermion_monomials(int level)
{
    std::vector<PBWMonomial> out;
    for_each_fermion_monomial(level, [&](const PBWMonomial& m) { out.push_back(m); });
    return out;
}

inline std::vector<PBWMonomial> enumerate_ns_monomials(int level, int top_dim)
{
    std::vector<PBWMonomial> out;
    for_each_ns_monomial(level, top_dim, [&](const PBWMonomial& m) { out.push_back(m); });
    return out;
}

/// Sum of (-1)^t over Verma monomials at `level` on a single top vector.
inline Integer signed_monomial_count(int level)
{
    Integer total = 0;
    for_each_ns_monomial(level, 1, [&](const PBWMonomial& m) {
        if (m.fermion_length() % 2 == 0)
            ++total;
        else
            --total;
    });
    return total;
}

struct GradedTraceReport {
    Rational prefactor_exponent;                  // L_0|top - c/24
    std::vector<std::pair<int, Rational>> levels; // (N, trace on level N)
    FracPowerSeries series;                       // sum_N trace(N) q^{prefactor + N}
};

/// How psi_0 is moved past the creation operators of a monomial.  Only
/// `anticommute` is correct; `ignore_sign` exists so that the verifiers can be
/// shown to reject a broken trace.
enum class SignRule { anticommute, ignore_sign };

namespace fermion {

inline const Rational central_charge{Rational(1, 2)};
inline const Rational top_weight{Rational(1, 16)};

/// psi_0 on the top space: psi_0 v = vbar, psi_0 vbar = v/2.
inline std::pair<int, Rational> psi0_on_top(int top)
{
    return top == 0 ? std::pair{1, Rational(1)} : std::pair{0, Rational(1, 2)};
}

/// Sign picked up by moving psi_0 to the right through psi_{-n_1}...psi_{-n_t}.
inline int psi0_passage_sign(const std::vector<int>& fermionic, SignRule rule)
{
    int sign = 1;
    for (int n : fermionic) {
        // psi_0 psi_{-n} = -psi_{-n} psi_0 + [psi_0, psi_{-n}]
        if (!bracket(BasisElement::psi(0), BasisElement::psi(-n)).is_zero())
            throw std::logic_error("psi_0 does not anticommute with a creation mode");
        if (rule == SignRule::anticommute)
            sign = -sign;
    }
    return sign;
}

/// Diagonal entry of psi_0 Theta on the basis vector m w, where Theta(m w) = m psi_0 w.
inline Rational psi0_theta_diagonal(const PBWMonomial& m, SignRule rule = SignRule::anticommute)
{
    const auto [after_theta, c1] = psi0_on_top(m.top);
    const int sign = psi0_passage_sign(m.fermionic, rule);
    const auto [after_psi0, c2] = psi0_on_top(after_theta);
    if (after_psi0 != m.top)
        return Rational(0);
    return Rational(c1 * c2 * sign);
}

} // namespace fermion

/// tr psi_0 Theta q^{L_0 - c/24} on the fermion Fock module, level by level
/// through max_level; the series is exact below q^{1/24 + max_level + 1}.
inline GradedTraceReport fermion_odd_trace(int max_level, SignRule rule = SignRule::anticommute)
{
    detail::require_level(max_level);
    GradedTraceReport report{Rational(fermion::top_weight - fermion::central_charge / 24), {},
                             FracPowerSeries(Rational(0))};
    std::vector<std::pair<Rational, Rational>> pairs;
    for (int level = 0; level <= max_level; ++level) {
        Rational trace = 0;
        for_each_fermion_monomial(level, [&](const PBWMonomial& m) { trace += fermion::psi0_theta_diagonal(m, rule); });
        report.levels.emplace_back(level, trace);
        pairs.emplace_back(Rational(report.prefactor_exponent + level), trace);
    }
    report.series = FracPowerSeries::from_pairs(pairs, Rational(report.prefactor_exponent + max_level + 1));
    return report;
}

/// Leading contribution of M(c, h_k) to tr G_0 Theta q^{L_0 - c/24}.
struct LeadingTrace {
    Rational exponent;   // h_k - c/24
    Rational value;      // trace over the 1|1 top space
    Rational eigenvalue; // common eigenvalue of G_0 Theta on that space
};

namespace ramond {

inline const Rational bgg_central_charge{Rational(-21, 4)};

/// Weight of the queer module at c = -21/4: the largest weight of the (2, 8) model.
inline Rational queer_weight()
{
    return minimal_model_spectrum(2, 8).front().h;
}

/// h_k = h_0 + k(2k+1), the weights in the BGG resolution of L(-21/4, h_0).
inline Rational bgg_weight(std::int64_t k)
{
    return Rational(queer_weight() + Rational(k * (2 * k + 1)));
}

inline Rational bgg_exponent(std::int64_t k)
{
    return Rational(bgg_weight(k) - bgg_central_charge / 24);
}

} // namespace ramond

/// G_0 Theta on the top space S_k of M(c, h_k) is diagonal with eigenvalue
/// lambda, lambda^2 = (G_0^2 on S_k)(Theta^2) = (h_k - c/24)(h_0 - c/24).  Both
/// eigenvalues are taken equal to sign * |lambda|.
inline LeadingTrace verma_leading_trace(std::int64_t k, const Rational& c, int sign)
{
    if (c != ramond::bgg_central_charge)
        throw std::invalid_argument("the BGG route is implemented for c = -21/4 only, got c = " + to_string(c));
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("sign must be +1 or -1");
    const Rational g0_sq = g0_square_value(c, ramond::bgg_weight(k));
    const Rational theta_sq = g0_square_value(c, ramond::queer_weight());
    const auto magnitude = exact_sqrt(Rational(g0_sq * theta_sq));
    if (!magnitude)
        throw std::logic_error("(G_0 Theta)^2 is not a rational square on S_k");
    const Rational lambda = *magnitude * sign;
    return {g0_sq, Rational(lambda * 2), lambda};
}

} // namespace oddtrace
