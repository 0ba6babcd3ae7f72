#pragma once

// Character assembly and identity verification.
//
// Two independent computations of the odd trace function at c = -21/4 are
// compared: the alternating sum over the BGG resolution of L(c, h_0), where
// each Verma module contributes only its leading term, and eta^3/4.  The
// signs of the BGG terms are not derived from singular vectors; they are
// read off by matching against eta^3/4 (resolve_signs).
//
// All verification orders here are inclusive: a report at order x compares
// every exponent <= x.

#include <oddtrace/pbw_traces.hpp>
#include <oddtrace/qseries.hpp>
#include <oddtrace/rational.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddtrace {

/// Signs epsilon_k for a contiguous range lo <= k <= hi.  Ranges produced by
/// resolve_signs are the exponent windows {k : 1/8 + k(2k+1) <= x}, which are
/// either symmetric or carry one extra negative index.
class SignAssignment {
public:
    SignAssignment() = default;

    SignAssignment(std::int64_t lo, std::vector<int> signs) : lo_(lo), signs_(std::move(signs))
    {
        for (int s : signs_)
            if (s != 1 && s != -1)
                throw std::invalid_argument("signs must be +1 or -1");
    }

    /// Same sign on every k in [lo, hi].
    static SignAssignment uniform(std::int64_t lo, std::int64_t hi, int s)
    {
        return SignAssignment(lo, std::vector<int>(hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0, s));
    }

    bool empty() const { return signs_.empty(); }
    std::size_t size() const { return signs_.size(); }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(signs_.size()) - 1; }
    bool covers(std::int64_t k) const { return !empty() && k >= lo() && k <= hi(); }

    int at(std::int64_t k) const
    {
        if (!covers(k))
            throw std::out_of_range("no sign assigned for k = " + std::to_string(k));
        return signs_[static_cast<std::size_t>(k - lo_)];
    }

    friend bool operator==(const SignAssignment&, const SignAssignment&) = default;

private:
    std::int64_t lo_ = 0;
    std::vector<int> signs_;
};

struct VerificationReport {
    std::string name;
    Rational order;
    bool pass = false;
    std::optional<Discrepancy> first_discrepancy;
};

/// Exponent of the leading term of M(c, h_k): 1/8 + k(2k+1).
inline Rational bgg_term_exponent(std::int64_t k) { return ramond::bgg_exponent(k); }

/// The k with bgg_term_exponent(k) <= max_exponent, as an inclusive range
/// [lo, hi]; nullopt when max_exponent < 1/8.
inline std::optional<std::pair<std::int64_t, std::int64_t>> bgg_window(const Rational& max_exponent)
{
    if (bgg_term_exponent(0) > max_exponent)
        return std::nullopt;
    std::int64_t hi = 0;
    while (bgg_term_exponent(hi + 1) <= max_exponent)
        ++hi;
    std::int64_t lo = 0;
    while (bgg_term_exponent(lo - 1) <= max_exponent)
        --lo;
    return std::pair{lo, hi};
}

/// Smallest BGG exponent strictly above max_exponent.  Every BGG term below
/// it is accounted for, so it is the truncation of a window's series.
inline Rational bgg_next_exponent(const Rational& max_exponent)
{
    const auto w = bgg_window(max_exponent);
    if (!w)
        return bgg_term_exponent(0);
    return std::min(bgg_term_exponent(w->first - 1), bgg_term_exponent(w->second + 1));
}

/// sum_k signs(k) * |4k+1|/4 * q^{1/8 + k(2k+1)} over the window of max_exponent.
inline FracPowerSeries bgg_odd_trace(const Rational& max_exponent, const SignAssignment& signs)
{
    const Rational truncation = bgg_next_exponent(max_exponent);
    const auto window = bgg_window(max_exponent);
    if (!window)
        return FracPowerSeries::zero(truncation);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (std::int64_t k = window->first; k <= window->second; ++k) {
        if (!signs.covers(k))
            throw std::invalid_argument("sign assignment does not cover k = " + std::to_string(k) +
                                        " (exponent " + to_string(bgg_term_exponent(k)) + ")");
        const LeadingTrace t = verma_leading_trace(k, ramond::bgg_central_charge, signs.at(k));
        pairs.emplace_back(t.exponent, t.value);
    }
    return FracPowerSeries::from_pairs(pairs, truncation);
}

/// eta^3 / 4, exact beyond `through` (strictly above it).
inline FracPowerSeries eta_cubed_quarter(const Rational& through)
{
    const Integer needed = floor(Rational(through - Rational(1, 8))) + 1;
    const std::int64_t order = std::max<std::int64_t>(1, to_int64(needed));
    return power(eta(order), 3).scaled(Rational(1, 4));
}

/// The unique signs making bgg_odd_trace agree with eta^3/4 through max_exponent.
inline SignAssignment resolve_signs(const Rational& max_exponent)
{
    const auto window = bgg_window(max_exponent);
    if (!window)
        return {};
    const FracPowerSeries target = eta_cubed_quarter(max_exponent);
    const auto [lo, hi] = *window;
    std::vector<int> signs;
    for (std::int64_t k = lo; k <= hi; ++k) {
        const LeadingTrace plus = verma_leading_trace(k, ramond::bgg_central_charge, 1);
        const Rational ratio = target.coeff(plus.exponent) / plus.value;
        if (ratio != 1 && ratio != -1)
            throw std::runtime_error("no sign matches eta^3/4 at exponent " + to_string(plus.exponent) +
                                     ": target " + to_string(target.coeff(plus.exponent)) + ", magnitude " +
                                     to_string(plus.value));
        signs.push_back(ratio == 1 ? 1 : -1);
    }
    SignAssignment result(lo, std::move(signs));
    // Off-support coefficients of the target must vanish, or no assignment exists.
    if (auto d = first_difference(bgg_odd_trace(max_exponent, result), target, max_exponent, true))
        throw std::runtime_error("eta^3/4 has a term off the BGG support at exponent " + to_string(d->exponent));
    return result;
}

/// Compares lhs and rhs at every exponent <= order.
inline VerificationReport compare_through(std::string name, const FracPowerSeries& lhs, const FracPowerSeries& rhs,
                                          const Rational& order)
{
    VerificationReport r{std::move(name), order, false, first_difference(lhs, rhs, order, true)};
    r.pass = !r.first_discrepancy.has_value();
    return r;
}

/// eta^3 against q^{1/8} sum (4n+1) q^{n(2n+1)} through `order`.
inline VerificationReport verify_jacobi(const Rational& order)
{
    if (order < Rational(1, 8))
        throw std::invalid_argument("verify_jacobi order must be >= 1/8");
    const std::int64_t t = std::max<std::int64_t>(1, to_int64(floor(Rational(order - Rational(1, 8))) + 1));
    return compare_through("jacobi", power(eta(t), 3), jacobi_rhs(t), order);
}

/// PBW trace of psi_0 Theta against eta, levels 0..max_level.
inline VerificationReport verify_fermion_eta(int max_level, SignRule rule = SignRule::anticommute)
{
    if (max_level < 1)
        throw std::invalid_argument("verify_fermion_eta needs max_level >= 1");
    const GradedTraceReport trace = fermion_odd_trace(max_level, rule);
    const Rational order = trace.prefactor_exponent + max_level;
    return compare_through("fermion_eta", trace.series, eta(max_level + 1), order);
}

/// BGG alternating sum against eta^3/4 through `order`.  Without explicit
/// signs the resolved ones are used.
inline VerificationReport verify_bgg_equals_eta_cubed(const Rational& order,
                                                      const std::optional<SignAssignment>& signs = std::nullopt)
{
    if (order < Rational(1, 8))
        throw std::invalid_argument("verify_bgg_equals_eta_cubed order must be >= 1/8");
    const SignAssignment used = signs ? *signs : resolve_signs(order);
    return compare_through("bgg_eta_cubed", bgg_odd_trace(order, used), eta_cubed_quarter(order), order);
}

} // namespace oddtrace
