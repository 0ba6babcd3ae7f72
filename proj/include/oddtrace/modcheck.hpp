#pragma once

// Floating-point evaluation of truncated q-series on the upper half-plane,
// and residuals of the S and T modular transformations.  This is the only
// part of the library that leaves exact arithmetic.

#include <oddtrace/qseries.hpp>
#include <oddtrace/rational.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace oddtrace {

using Complex = std::complex<double>;

struct TauPoint {
    double re = 0.0;
    double im = 1.0;

    TauPoint() = default;
    TauPoint(double re_, double im_) : re(re_), im(im_)
    {
        if (!(im_ > 0.0) || !std::isfinite(re_) || !std::isfinite(im_))
            throw std::domain_error("tau must lie in the upper half-plane, got Im tau = " + std::to_string(im_));
    }

    Complex value() const { return {re, im}; }
    static TauPoint from(Complex z) { return {z.real(), z.imag()}; }
};

struct SeriesValue {
    Complex value;
    double tail_bound = 0.0;
};

enum class Transformation { S, T };

struct ModularResidual {
    Transformation transformation = Transformation::S;
    Rational weight;
    double residual = 0.0;
    double tail_bound = 0.0;
};

namespace detail {

// q^e = exp(2 pi i tau e) with the principal branch of the fractional power.
inline Complex q_power(const TauPoint& tau, const Rational& e)
{
    const double x = to_double(e);
    const Complex z = Complex(0.0, 2.0 * std::numbers::pi * x) * tau.value();
    return std::exp(z);
}

} // namespace detail

/// Evaluates s at tau.  The tail bound assumes the unknown coefficients satisfy
/// |a_e| <= g (1 + e), with g the largest |a_e| / (1 + e) among stored terms,
/// and lie in the residue classes mod 1 of the stored exponents:
///   R g |q|^T ((1 + T) / (1 - |q|) + |q| / (1 - |q|)^2).
inline SeriesValue eval_series(const FracPowerSeries& s, const TauPoint& tau)
{
    SeriesValue out{Complex(0.0, 0.0), 0.0};
    double growth = 0.0;
    std::set<Rational> classes;
    for (const auto& [e, c] : s.ordered_terms()) {
        out.value += to_double(c) * detail::q_power(tau, e);
        const double scale = 1.0 + std::max(0.0, to_double(e));
        growth = std::max(growth, std::abs(to_double(c)) / scale);
        classes.insert(Rational(e - Rational(floor(e))));
    }
    const double aq = std::exp(-2.0 * std::numbers::pi * tau.im);
    const double t = to_double(s.truncation());
    const double r = static_cast<double>(std::max<std::size_t>(classes.size(), 1));
    const double head = std::pow(aq, t);
    out.tail_bound = r * growth * head * ((1.0 + std::max(0.0, t)) / (1.0 - aq) + aq / ((1.0 - aq) * (1.0 - aq)));
    return out;
}

/// |f(tau + 1) - e^{2 pi i e_0} f(tau)|, e_0 the lowest exponent of s.
inline ModularResidual check_T(const FracPowerSeries& s, const Rational& weight, const TauPoint& tau)
{
    const SeriesValue here = eval_series(s, tau);
    const SeriesValue shifted = eval_series(s, TauPoint(tau.re + 1.0, tau.im));
    const double e0 = s.is_zero() ? 0.0 : to_double(s.lowest_exponent());
    const Complex mu = std::exp(Complex(0.0, 2.0 * std::numbers::pi * e0));
    return {Transformation::T, weight, std::abs(shifted.value - mu * here.value),
            here.tail_bound + shifted.tail_bound};
}

/// |f(-1/tau) - multiplier (-i tau)^weight f(tau)|, principal branch.  Throws
/// when either evaluation's tail bound exceeds `tail_tolerance`.
inline ModularResidual check_S(const FracPowerSeries& s, const Rational& weight, const TauPoint& tau,
                               Complex multiplier, double tail_tolerance = 1e-10)
{
    const TauPoint image = TauPoint::from(-1.0 / tau.value());
    const SeriesValue here = eval_series(s, tau);
    const SeriesValue there = eval_series(s, image);
    const double tail = here.tail_bound + there.tail_bound;
    if (!(tail <= tail_tolerance))
        throw std::domain_error("tau is too close to the real axis for this truncation: tail bound " +
                                std::to_string(tail));
    const Complex factor = std::pow(Complex(0.0, -1.0) * tau.value(), to_double(weight));
    const Complex expected = multiplier * factor * here.value;
    return {Transformation::S, weight, std::abs(there.value - expected), tail};
}

inline std::string to_string(Transformation t) { return t == Transformation::S ? "S" : "T"; }

} // namespace oddtrace
