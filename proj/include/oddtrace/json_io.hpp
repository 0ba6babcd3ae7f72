#pragma once

// JSON interchange formats.  Rationals are always [num, den] in lowest terms
// with a positive denominator; floats appear only in modular residual rows.
// Object keys come out sorted (nlohmann::json uses std::map), so dumps are
// byte-stable.

#include <oddtrace/characters.hpp>
#include <oddtrace/modcheck.hpp>
#include <oddtrace/pbw_traces.hpp>
#include <oddtrace/qseries.hpp>
#include <oddtrace/superalgebras.hpp>
#include <oddtrace/zhu_queer.hpp>

#include <json.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace oddtrace {

using json = nlohmann::json;

namespace detail {

// Integers beyond 64 bits are written as decimal strings.
inline json integer_json(const Integer& v)
{
    if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline Integer integer_from_json(const json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string())
        return detail::parse_integer(j.get<std::string>());
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

} // namespace detail

inline json to_json(const Rational& r) { return json::array({detail::integer_json(numer(r)), detail::integer_json(denom(r))}); }

inline Rational rational_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected [num, den], got " + j.dump());
    const Integer d = detail::integer_from_json(j[1]);
    if (d <= 0)
        throw std::invalid_argument("rational denominator must be positive");
    return Rational(detail::integer_from_json(j[0]), d);
}

/// { "denominator": D, "truncation": [n, d], "terms": [[exp_num, coeff_num, coeff_den], ...] }
inline json to_json(const FracPowerSeries& s)
{
    json terms = json::array();
    for (const auto& [k, c] : s.terms())
        terms.push_back(json::array({k, detail::integer_json(numer(c)), detail::integer_json(denom(c))}));
    return json{{"denominator", s.denominator()}, {"truncation", to_json(s.truncation())}, {"terms", terms}};
}

inline FracPowerSeries series_from_json(const json& j)
{
    const auto d = j.at("denominator").get<std::int64_t>();
    if (d <= 0)
        throw std::invalid_argument("series denominator must be positive");
    const Rational t = rational_from_json(j.at("truncation"));
    FracPowerSeries::TermMap terms;
    for (const auto& row : j.at("terms")) {
        if (!row.is_array() || row.size() != 3)
            throw std::invalid_argument("series term must be [exp_num, coeff_num, coeff_den]");
        const auto k = row[0].get<std::int64_t>();
        const Rational c = rational_from_json(json::array({row[1], row[2]}));
        if (c == 0)
            throw std::invalid_argument("series terms must have nonzero coefficients");
        if (!terms.emplace(k, c).second)
            throw std::invalid_argument("duplicate exponent in series terms");
    }
    return FracPowerSeries(d, t, std::move(terms));
}

inline json to_json(const GradedTraceReport& r)
{
    json levels = json::array();
    for (const auto& [n, tr] : r.levels)
        levels.push_back(json::array({n, detail::integer_json(numer(tr)), detail::integer_json(denom(tr))}));
    return json{{"prefactor_exponent", to_json(r.prefactor_exponent)}, {"levels", levels}, {"series", to_json(r.series)}};
}

inline json to_json(const VerificationReport& r)
{
    json d = nullptr;
    if (r.first_discrepancy)
        d = json{{"exp", to_json(r.first_discrepancy->exponent)},
                 {"lhs", to_json(r.first_discrepancy->lhs)},
                 {"rhs", to_json(r.first_discrepancy->rhs)}};
    return json{{"name", r.name}, {"order", to_json(r.order)}, {"pass", r.pass}, {"first_discrepancy", d}};
}

inline json to_json(const SpectrumEntry& e)
{
    return json{{"p", e.p}, {"pp", e.pp}, {"r", e.r}, {"s", e.s}, {"c", to_json(e.c)}, {"h", to_json(e.h)}};
}

inline json to_json(const SignAssignment& s)
{
    json signs = json::array();
    if (!s.empty())
        for (std::int64_t k = s.lo(); k <= s.hi(); ++k)
            signs.push_back(json::array({k, s.at(k)}));
    return json{{"signs", signs}};
}

inline json residual_row(const std::string& series_name, const ModularResidual& r, const TauPoint& tau)
{
    return json{{"series", series_name},
                {"transform", to_string(r.transformation)},
                {"weight", to_json(r.weight)},
                {"tau", json::array({tau.re, tau.im})},
                {"residual", r.residual},
                {"tail_bound", r.tail_bound}};
}

inline json to_json(const QueerCheckSummary& q)
{
    return json{{"pairs_checked", q.pairs_checked},
                {"failures", q.failures},
                {"probe_constraints", q.probe.constraints},
                {"probe_solution_dimension", q.probe.solution_dimension},
                {"odd_trace_solves", q.probe.odd_trace_solves},
                {"pass", q.pass}};
}

} // namespace oddtrace
