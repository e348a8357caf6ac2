#pragma once

// Truncated power series in t with polynomial coefficients. Coefficients
// are ordinary (a_n); the exponential-generating-function value n!·a_n is
// only formed at extraction.

#include <cstddef>
#include <string>
#include <vector>

#include "apb/exactq.hpp"

namespace apb {

class TruncSeries {
public:
    /// Zero series holding t^0..t^order.
    TruncSeries(VarSet ring, std::size_t order) : ring_(std::move(ring))
    {
        coeffs_.assign(order + 1, MultiPoly(ring_));
    }

    TruncSeries(VarSet ring, std::vector<MultiPoly> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw TruncationError("a truncated series needs at least one coefficient");
        for (const auto& c : coeffs_)
            if (c.ring() != ring_)
                throw RingMismatchError("series coefficient over a different variable set");
    }

    static TruncSeries constant(const MultiPoly& c, std::size_t order)
    {
        TruncSeries s(c.ring(), order);
        s.coeffs_[0] = c;
        return s;
    }

    static TruncSeries one(const VarSet& ring, std::size_t order) { return constant(MultiPoly(ring, GaussRational(1)), order); }

    /// c·t^k, or zero when k exceeds the order.
    static TruncSeries monomial(const MultiPoly& c, std::size_t k, std::size_t order)
    {
        TruncSeries s(c.ring(), order);
        if (k <= order)
            s.coeffs_[k] = c;
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const VarSet& ring() const { return ring_; }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }

    const MultiPoly& coeff(std::size_t n) const
    {
        if (n > order())
            throw TruncationError("coefficient t^" + std::to_string(n) + " is beyond order " + std::to_string(order()));
        return coeffs_[n];
    }

    void set_coeff(std::size_t n, MultiPoly c)
    {
        if (n > order())
            throw TruncationError("coefficient t^" + std::to_string(n) + " is beyond order " + std::to_string(order()));
        if (c.ring() != ring_)
            throw RingMismatchError("series coefficient over a different variable set");
        coeffs_[n] = std::move(c);
    }

    void require_compatible(const TruncSeries& o) const
    {
        if (ring_ != o.ring_)
            throw RingMismatchError("series over different variable sets");
        if (order() != o.order())
            throw TruncationError("series of different truncation orders");
    }

    TruncSeries& operator+=(const TruncSeries& o)
    {
        require_compatible(o);
        for (std::size_t n = 0; n < coeffs_.size(); ++n)
            coeffs_[n] += o.coeffs_[n];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o)
    {
        require_compatible(o);
        for (std::size_t n = 0; n < coeffs_.size(); ++n)
            coeffs_[n] -= o.coeffs_[n];
        return *this;
    }
    TruncSeries& operator*=(const GaussRational& s)
    {
        for (auto& c : coeffs_)
            c *= s;
        return *this;
    }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const GaussRational& s) { return a *= s; }
    friend TruncSeries operator*(const GaussRational& s, TruncSeries a) { return a *= s; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

private:
    VarSet ring_;
    std::vector<MultiPoly> coeffs_;
};

/// Multiplies every coefficient by a polynomial.
inline TruncSeries scale(const TruncSeries& s, const MultiPoly& p)
{
    std::vector<MultiPoly> out;
    out.reserve(s.order() + 1);
    for (const auto& c : s.coeffs())
        out.push_back(c * p);
    return TruncSeries(s.ring(), std::move(out));
}

/// Cauchy product truncated at the common order.
inline TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b)
{
    a.require_compatible(b);
    const std::size_t order = a.order();
    std::vector<MultiPoly> out(order + 1, MultiPoly(a.ring()));
    for (std::size_t i = 0; i <= order; ++i) {
        const MultiPoly& ai = a.coeffs()[i];
        if (ai.is_zero())
            continue;
        for (std::size_t j = 0; i + j <= order; ++j) {
            const MultiPoly& bj = b.coeffs()[j];
            if (bj.is_zero())
                continue;
            for (const auto& [ma, ca] : ai.terms())
                for (const auto& [mb, cb] : bj.terms())
                    out[i + j].add_term(ma * mb, ca * cb);
        }
    }
    return TruncSeries(a.ring(), std::move(out));
}

inline TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return series_mul(a, b); }

inline TruncSeries series_pow(const TruncSeries& base, unsigned e)
{
    TruncSeries r = TruncSeries::one(base.ring(), base.order());
    for (unsigned i = 0; i < e; ++i)
        r = r * base;
    return r;
}

/// Keeps t^0..t^order of s.
inline TruncSeries truncate(const TruncSeries& s, std::size_t order)
{
    if (order > s.order())
        throw TruncationError("cannot extend a truncated series to a higher order");
    return TruncSeries(s.ring(), std::vector<MultiPoly>(s.coeffs().begin(), s.coeffs().begin() + static_cast<std::ptrdiff_t>(order + 1)));
}

/// Division by t^k. The k lowest coefficients must vanish; the result has order N-k.
inline TruncSeries shift_down(const TruncSeries& s, std::size_t k)
{
    if (k > s.order())
        throw TruncationError("shift exceeds truncation order");
    for (std::size_t n = 0; n < k; ++n)
        if (!s.coeffs()[n].is_zero())
            throw DomainError("division by t^" + std::to_string(k) + " with nonzero coefficient of t^" + std::to_string(n));
    return TruncSeries(s.ring(), std::vector<MultiPoly>(s.coeffs().begin() + static_cast<std::ptrdiff_t>(k), s.coeffs().end()));
}

/// Multiplication by t^k, truncated at the same order.
inline TruncSeries shift_up(const TruncSeries& s, std::size_t k)
{
    TruncSeries r(s.ring(), s.order());
    for (std::size_t n = 0; n + k <= s.order(); ++n)
        r.set_coeff(n + k, s.coeffs()[n]);
    return r;
}

/// d/dt; exact up to t^(N-1), so the result has order N-1.
inline TruncSeries series_derivative(const TruncSeries& s)
{
    if (s.order() == 0)
        throw TruncationError("derivative of an order-0 series");
    std::vector<MultiPoly> out;
    out.reserve(s.order());
    for (std::size_t n = 1; n <= s.order(); ++n)
        out.push_back(s.coeffs()[n] * GaussRational(static_cast<long>(n)));
    return TruncSeries(s.ring(), std::move(out));
}

/// Multiplicative inverse; the constant term must be a nonzero scalar.
inline TruncSeries series_invert(const TruncSeries& a)
{
    const MultiPoly& a0 = a.coeffs()[0];
    if (a0.is_zero() || !a0.is_constant())
        throw DomainError("series is not a unit: constant term " + a0.str());
    const GaussRational inv0 = GaussRational(1) / a0.constant_term();
    const std::size_t order = a.order();
    std::vector<MultiPoly> b;
    b.reserve(order + 1);
    b.emplace_back(a.ring(), inv0);
    for (std::size_t n = 1; n <= order; ++n) {
        MultiPoly acc(a.ring());
        for (std::size_t k = 1; k <= n; ++k)
            if (!a.coeffs()[k].is_zero() && !b[n - k].is_zero())
                acc += a.coeffs()[k] * b[n - k];
        b.push_back(acc * (-inv0));
    }
    return TruncSeries(a.ring(), std::move(b));
}

/// exp(a) for a series with zero constant term, from n·b_n = Σ k·a_k·b_{n-k}.
inline TruncSeries series_exp(const TruncSeries& a)
{
    if (!a.coeffs()[0].is_zero())
        throw DomainError("exp of a series with nonzero constant term");
    const std::size_t order = a.order();
    std::vector<MultiPoly> b;
    b.reserve(order + 1);
    b.emplace_back(a.ring(), GaussRational(1));
    for (std::size_t n = 1; n <= order; ++n) {
        MultiPoly acc(a.ring());
        for (std::size_t k = 1; k <= n; ++k)
            if (!a.coeffs()[k].is_zero())
                acc += (a.coeffs()[k] * GaussRational(static_cast<long>(k))) * b[n - k];
        b.push_back(acc * GaussRational(Rational(1, static_cast<long>(n))));
    }
    return TruncSeries(a.ring(), std::move(b));
}

// ---------------------------------------------------------------------------
// Elementary builders

/// e^{arg·t}: coefficients arg^n / n!.
inline TruncSeries exp_linear(const MultiPoly& arg, std::size_t order)
{
    std::vector<MultiPoly> out;
    out.reserve(order + 1);
    MultiPoly power(arg.ring(), GaussRational(1));
    for (std::size_t n = 0; n <= order; ++n) {
        if (n > 0)
            power = power * arg;
        out.push_back(power * GaussRational(1 / factorial(static_cast<unsigned>(n))));
    }
    return TruncSeries(arg.ring(), std::move(out));
}

namespace detail {

// Σ_r (-1)^r arg^{2r+parity} t^{2r+parity} / (2r+parity+offset)!  (offset 0 for
// cos/sin, 1 for the sin(u)/u companion which also drops the t-power).
inline TruncSeries trig_like(const MultiPoly& arg, std::size_t order, unsigned parity, bool sinc)
{
    TruncSeries s(arg.ring(), order);
    const MultiPoly arg2 = arg * arg;
    MultiPoly power = parity == 1 && !sinc ? arg : MultiPoly(arg.ring(), GaussRational(1));
    for (std::size_t r = 0;; ++r) {
        const std::size_t t_power = sinc ? 2 * r : 2 * r + parity;
        if (t_power > order)
            break;
        const unsigned fact = static_cast<unsigned>(sinc ? 2 * r + 1 : 2 * r + parity);
        GaussRational c(1 / factorial(fact));
        if (r % 2 == 1)
            c = -c;
        s.set_coeff(t_power, power * c);
        power = power * arg2;
    }
    return s;
}

} // namespace detail

inline TruncSeries cos_series(const MultiPoly& arg, std::size_t order) { return detail::trig_like(arg, order, 0, false); }
inline TruncSeries sin_series(const MultiPoly& arg, std::size_t order) { return detail::trig_like(arg, order, 1, false); }

/// sin(arg·t)/(arg·t) = Σ (-1)^r arg^{2r} t^{2r}/(2r+1)!, a unit series.
inline TruncSeries sinc_series(const MultiPoly& arg, std::size_t order) { return detail::trig_like(arg, order, 1, true); }

/// cos(zt) and sin(zt) over `ring`, z being the ring's "z" variable.
inline std::pair<TruncSeries, TruncSeries> cos_sin_zt(std::size_t order, const VarSet& ring = standard_ring())
{
    const MultiPoly z = MultiPoly::variable(ring, "z");
    return {cos_series(z, order), sin_series(z, order)};
}

/// (1 + c·t^m)^e for integer e; negative powers go through the inverse.
inline TruncSeries binomial_power(const MultiPoly& c, unsigned m, long e, std::size_t order)
{
    if (m == 0)
        throw DomainError("binomial_power needs m >= 1");
    TruncSeries base = TruncSeries::one(c.ring(), order);
    if (m <= order)
        base.set_coeff(m, c);
    const unsigned mag = static_cast<unsigned>(e < 0 ? -e : e);
    TruncSeries r = series_pow(base, mag);
    return e < 0 ? series_invert(r) : r;
}

// ---------------------------------------------------------------------------
// The (lambda, mu) kernel (t / (lambda e^t + mu))^v

struct KernelSpec {
    int v = 1;
    GaussRational lambda{1};
    GaussRational mu{-1};

    bool classical_branch() const { return (lambda + mu).is_zero(); }

    void validate() const
    {
        if (v < 0)
            throw DomainError("kernel order v must be non-negative");
        if (lambda.is_zero() && mu.is_zero())
            throw DomainError("invalid kernel: lambda = mu = 0");
    }

    friend bool operator==(const KernelSpec& a, const KernelSpec& b) { return a.v == b.v && a.lambda == b.lambda && a.mu == b.mu; }
};

/// lambda·e^t + mu as a series.
inline TruncSeries kernel_denominator(const KernelSpec& spec, const VarSet& ring, std::size_t order)
{
    TruncSeries d = exp_linear(MultiPoly(ring, GaussRational(1)), order) * spec.lambda;
    d.set_coeff(0, d.coeff(0) + MultiPoly(ring, spec.mu));
    return d;
}

/// (t/(lambda e^t + mu))^v truncated at `order`.
///
/// When lambda + mu = 0 the denominator vanishes at t = 0 and is written as
/// t·(lambda (e^t - 1)/t), whose second factor is a unit; otherwise the
/// denominator itself is a unit and the result carries a t^v factor.
inline TruncSeries apostol_kernel(const KernelSpec& spec, std::size_t order, const VarSet& ring = standard_ring())
{
    spec.validate();
    if (spec.v == 0)
        return TruncSeries::one(ring, order);
    const unsigned v = static_cast<unsigned>(spec.v);
    if (spec.classical_branch()) {
        const TruncSeries unit = shift_down(kernel_denominator(spec, ring, order + 1), 1);
        return series_pow(series_invert(unit), v);
    }
    const TruncSeries inv = series_invert(kernel_denominator(spec, ring, order));
    return shift_up(series_pow(inv, v), v);
}

/// n!·a_n, the n-th member of the family generated by s.
inline MultiPoly extract_family(const TruncSeries& s, std::size_t n)
{
    if (n > s.order())
        throw TruncationError("index " + std::to_string(n) + " exceeds truncation order " + std::to_string(s.order()));
    return s.coeffs()[n] * GaussRational(factorial(static_cast<unsigned>(n)));
}

/// Default truncation for a sweep up to max_index: two guard slots.
inline std::size_t default_order(std::size_t max_index) { return max_index + 2; }

} // namespace apb
