#pragma once

// The queer superalgebra Q_n = { (X Y; Y X) } with its odd trace tr Y, and
// End(N) for a superspace N of dimension d0|d1 with its supertrace.  Both
// are realized as exact-rational block matrices.

#include <oddtrace/rational.hpp>
#include <oddtrace/superalgebras.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oddtrace {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n)
    {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& v : data_)
            if (v != 0)
                return false;
        return true;
    }

    Rational trace() const
    {
        if (rows_ != cols_)
            throw std::invalid_argument("trace of a non-square matrix");
        Rational t = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            t += (*this)(i, i);
        return t;
    }

    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix size mismatch in addition");
        RationalMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            out.data_[i] = a.data_[i] + b.data_[i];
        return out;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix size mismatch in product");
        RationalMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank by exact Gaussian elimination.
inline std::size_t rank(RationalMatrix m)
{
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::swap(m(pivot, j), m(r, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, col) == 0)
                continue;
            const Rational f = m(i, col) / m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

/// Element (X Y; Y X) of Q_n.
struct QueerElement {
    RationalMatrix x; // even part
    RationalMatrix y; // odd part

    QueerElement(RationalMatrix even, RationalMatrix odd) : x(std::move(even)), y(std::move(odd))
    {
        if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
            throw std::invalid_argument("queer element blocks must both be n x n");
    }

    static QueerElement identity(std::size_t n) { return {RationalMatrix::identity(n), RationalMatrix(n, n)}; }
    /// The odd generator theta = (0 I; I 0).
    static QueerElement theta(std::size_t n) { return {RationalMatrix(n, n), RationalMatrix::identity(n)}; }

    std::size_t n() const { return x.rows(); }

    std::optional<Parity> parity() const
    {
        if (y.is_zero())
            return Parity::even;
        if (x.is_zero())
            return Parity::odd;
        return std::nullopt;
    }

    friend bool operator==(const QueerElement&, const QueerElement&) = default;
};

inline QueerElement queer_mul(const QueerElement& a, const QueerElement& b)
{
    if (a.n() != b.n())
        throw std::invalid_argument("queer_mul: Q_n size mismatch");
    return {a.x * b.x + a.y * b.y, a.x * b.y + a.y * b.x};
}

inline Rational odd_trace(const QueerElement& a) { return a.y.trace(); }

/// Element of End(N), N = C^{d0|d1}, as blocks (A B; C D).
struct EndElement {
    RationalMatrix a; // d0 x d0
    RationalMatrix b; // d0 x d1
    RationalMatrix c; // d1 x d0
    RationalMatrix d; // d1 x d1

    EndElement(RationalMatrix a_, RationalMatrix b_, RationalMatrix c_, RationalMatrix d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_))
    {
        const std::size_t d0 = a.rows();
        const std::size_t d1 = d.rows();
        if (a.cols() != d0 || d.cols() != d1 || b.rows() != d0 || b.cols() != d1 || c.rows() != d1 ||
            c.cols() != d0)
            throw std::invalid_argument("End(N) blocks have inconsistent shapes");
    }

    static EndElement zero(std::size_t d0, std::size_t d1)
    {
        return {RationalMatrix(d0, d0), RationalMatrix(d0, d1), RationalMatrix(d1, d0), RationalMatrix(d1, d1)};
    }

    static EndElement identity(std::size_t d0, std::size_t d1)
    {
        return {RationalMatrix::identity(d0), RationalMatrix(d0, d1), RationalMatrix(d1, d0),
                RationalMatrix::identity(d1)};
    }

    std::size_t even_dim() const { return a.rows(); }
    std::size_t odd_dim() const { return d.rows(); }

    std::optional<Parity> parity() const
    {
        if (b.is_zero() && c.is_zero())
            return Parity::even;
        if (a.is_zero() && d.is_zero())
            return Parity::odd;
        return std::nullopt;
    }
};

inline EndElement end_mul(const EndElement& p, const EndElement& q)
{
    if (p.even_dim() != q.even_dim() || p.odd_dim() != q.odd_dim())
        throw std::invalid_argument("end_mul: superspace dimension mismatch");
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

inline Rational supertrace(const EndElement& e) { return Rational(e.a.trace() - e.d.trace()); }

/// Solutions of phi(ab) = (-1)^{p(a)p(b)} phi(ba) among phi = alpha tr X + beta tr Y on Q_n.
struct FunctionalProbe {
    std::size_t constraints = 0;
    std::size_t solution_dimension = 0;
    /// Whether (alpha, beta) = (0, 1), the odd trace, satisfies every constraint.
    bool odd_trace_solves = false;
};

/// Builds the linear system from the given homogeneous pairs and reports the
/// dimension of its solution space in the 2-dimensional space of functionals.
inline FunctionalProbe probe_supersymmetric_functionals(const std::vector<std::pair<QueerElement, QueerElement>>& pairs)
{
    RationalMatrix system(pairs.size(), 2);
    bool odd_ok = true;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [a, b] = pairs[i];
        const auto pa = a.parity();
        const auto pb = b.parity();
        if (!pa || !pb)
            throw std::invalid_argument("probe pairs must be homogeneous");
        const int s = parity_sign(*pa, *pb);
        const QueerElement ab = queer_mul(a, b);
        const QueerElement ba = queer_mul(b, a);
        system(i, 0) = ab.x.trace() - s * ba.x.trace();
        system(i, 1) = ab.y.trace() - s * ba.y.trace();
        if (system(i, 1) != 0)
            odd_ok = false;
    }
    return {pairs.size(), 2 - rank(system), odd_ok};
}

/// Random matrix with entries num/den, |num| <= 9, 1 <= den <= 5.
template <class Rng>
RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = make_rational(num(rng), den(rng));
    return m;
}

template <class Rng>
QueerElement random_queer_element(Rng& rng, std::size_t n, Parity p)
{
    RationalMatrix block = random_matrix(rng, n, n);
    if (p == Parity::even)
        return {std::move(block), RationalMatrix(n, n)};
    return {RationalMatrix(n, n), std::move(block)};
}

struct QueerCheckSummary {
    std::size_t pairs_checked = 0;
    std::size_t failures = 0;
    FunctionalProbe probe; // on Q_1
    bool pass = false;
};

/// Checks odd_trace(ab) = (-1)^{p(a)p(b)} odd_trace(ba) on `pairs` random
/// homogeneous pairs in Q_n, 1 <= n <= max_n, then probes the space of
/// supersymmetric functionals on Q_1.
inline QueerCheckSummary check_queer_supersymmetry(std::size_t pairs, std::uint64_t seed, std::size_t max_n = 4)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::uniform_int_distribution<int> bit(0, 1);
    QueerCheckSummary out;
    for (std::size_t i = 0; i < pairs; ++i) {
        const std::size_t n = size(rng);
        const Parity pa = bit(rng) ? Parity::odd : Parity::even;
        const Parity pb = bit(rng) ? Parity::odd : Parity::even;
        const QueerElement a = random_queer_element(rng, n, pa);
        const QueerElement b = random_queer_element(rng, n, pb);
        ++out.pairs_checked;
        if (odd_trace(queer_mul(a, b)) != parity_sign(pa, pb) * odd_trace(queer_mul(b, a)))
            ++out.failures;
    }
    std::vector<std::pair<QueerElement, QueerElement>> probe_pairs;
    for (const Parity pa : {Parity::even, Parity::odd})
        for (const Parity pb : {Parity::even, Parity::odd})
            for (int rep = 0; rep < 3; ++rep)
                probe_pairs.emplace_back(random_queer_element(rng, 1, pa), random_queer_element(rng, 1, pb));
    out.probe = probe_supersymmetric_functionals(probe_pairs);
    out.pass = out.failures == 0 && out.probe.solution_dimension == 1 && out.probe.odd_trace_solves;
    return out;
}

} // namespace oddtrace
