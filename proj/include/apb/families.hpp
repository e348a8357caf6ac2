#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apb/fps.hpp"

namespace apb {

enum class Trig { None, Cos, Sin };

inline std::string_view to_string(Trig t)
{
    switch (t) {
    case Trig::None: return "none";
    case Trig::Cos: return "cos";
    case Trig::Sin: return "sin";
    }
    return "?";
}

/// Appell factor A(t) of the Hermite-Appell specialization.
enum class AppellFactor {
    One,      ///< A(t) = 1, the Hermite-Kampe de Feriet case
    Genocchi, ///< A(t) = 2/(e^t + 1)
};

/// Builder for the U(y,t) factor of a 2-variable general polynomial family.
class UFactory {
public:
    enum class Kind { One, GouldHopper, HermiteAppell, MillerLee, TruncExp };

    static UFactory one() { return UFactory(Kind::One, 0); }

    static UFactory gould_hopper(int m)
    {
        if (m < 1)
            throw DomainError("Gould-Hopper needs m >= 1");
        return UFactory(Kind::GouldHopper, m);
    }

    static UFactory hermite_appell(AppellFactor a = AppellFactor::One)
    {
        UFactory u(Kind::HermiteAppell, 2);
        u.appell_ = a;
        return u;
    }

    /// U = (1-t)^{m+1}, or its reciprocal when `reciprocal` is set.
    static UFactory miller_lee(int m, bool reciprocal = false)
    {
        if (m < 0)
            throw DomainError("Miller-Lee needs m >= 0");
        UFactory u(Kind::MillerLee, m);
        u.reciprocal_ = reciprocal;
        return u;
    }

    static UFactory trunc_exp(int m)
    {
        if (m < 1)
            throw DomainError("truncated exponential needs m >= 1");
        return UFactory(Kind::TruncExp, m);
    }

    Kind kind() const { return kind_; }
    int m() const { return m_; }
    AppellFactor appell() const { return appell_; }
    bool reciprocal() const { return reciprocal_; }

    /// Stable identifier, e.g. "gould-hopper(2)".
    std::string name() const
    {
        switch (kind_) {
        case Kind::One: return "one";
        case Kind::GouldHopper: return "gould-hopper(" + std::to_string(m_) + ")";
        case Kind::HermiteAppell: return appell_ == AppellFactor::One ? "hermite-appell(1)" : "hermite-appell(2/(e^t+1))";
        case Kind::MillerLee: return "miller-lee(" + std::to_string(m_) + (reciprocal_ ? ",reciprocal)" : ")");
        case Kind::TruncExp: return "trunc-exp(" + std::to_string(m_) + ")";
        }
        return "?";
    }

    TruncSeries build(std::size_t order, const VarSet& ring = standard_ring()) const
    {
        const MultiPoly y = MultiPoly::variable(ring, "y");
        const MultiPoly one(ring, GaussRational(1));
        switch (kind_) {
        case Kind::One:
            return TruncSeries::one(ring, order);
        case Kind::GouldHopper:
            return series_exp(TruncSeries::monomial(y, static_cast<std::size_t>(m_), order));
        case Kind::HermiteAppell:
            return series_mul(appell_series(order, ring), series_exp(TruncSeries::monomial(y, 2, order)));
        case Kind::MillerLee: {
            const long e = reciprocal_ ? -(m_ + 1L) : m_ + 1L;
            return binomial_power(-one, 1, e, order);
        }
        case Kind::TruncExp:
            return binomial_power(-y, static_cast<unsigned>(m_), -1, order);
        }
        throw DomainError("unknown U factory");
    }

    /// Closed form of U'/U in t.
    TruncSeries log_derivative(std::size_t order, const VarSet& ring = standard_ring()) const
    {
        const MultiPoly y = MultiPoly::variable(ring, "y");
        const MultiPoly one(ring, GaussRational(1));
        switch (kind_) {
        case Kind::One:
            return TruncSeries(ring, order);
        case Kind::GouldHopper:
            // m y t^{m-1}
            return TruncSeries::monomial(y * GaussRational(m_), static_cast<std::size_t>(m_ - 1), order);
        case Kind::HermiteAppell: {
            TruncSeries r = TruncSeries::monomial(y * GaussRational(2), 1, order);
            if (appell_ == AppellFactor::Genocchi) {
                // A = 2/(e^t+1): A'/A = -e^t/(e^t+1)
                const TruncSeries et = exp_linear(one, order);
                r -= series_mul(et, series_invert(et + TruncSeries::one(ring, order)));
            }
            return r;
        }
        case Kind::MillerLee: {
            // ∓(m+1)/(1-t)
            TruncSeries g = binomial_power(-one, 1, -1, order) * GaussRational(m_ + 1L);
            return reciprocal_ ? g : g * GaussRational(-1);
        }
        case Kind::TruncExp:
            // m y t^{m-1} / (1 - y t^m)
            return series_mul(TruncSeries::monomial(y * GaussRational(m_), static_cast<std::size_t>(m_ - 1), order),
                              binomial_power(-y, static_cast<unsigned>(m_), -1, order));
        }
        throw DomainError("unknown U factory");
    }

    friend bool operator==(const UFactory& a, const UFactory& b)
    {
        return a.kind_ == b.kind_ && a.m_ == b.m_ && a.appell_ == b.appell_ && a.reciprocal_ == b.reciprocal_;
    }

private:
    UFactory(Kind k, int m) : kind_(k), m_(m) {}

    TruncSeries appell_series(std::size_t order, const VarSet& ring) const
    {
        if (appell_ == AppellFactor::One)
            return TruncSeries::one(ring, order);
        const TruncSeries et = exp_linear(MultiPoly(ring, GaussRational(1)), order);
        return series_invert(et + TruncSeries::one(ring, order)) * GaussRational(2);
    }

    Kind kind_;
    int m_;
    AppellFactor appell_ = AppellFactor::One;
    bool reciprocal_ = false;
};

/// Looks a factory up by its CLI name: one, gould-hopper, hermite-appell, miller-lee, trunc-exp.
inline UFactory u_factory(std::string_view name, int m = 2, AppellFactor appell = AppellFactor::One, bool reciprocal = false)
{
    if (name == "one")
        return UFactory::one();
    if (name == "gould-hopper")
        return UFactory::gould_hopper(m);
    if (name == "hermite-appell")
        return UFactory::hermite_appell(appell);
    if (name == "miller-lee")
        return UFactory::miller_lee(m, reciprocal);
    if (name == "trunc-exp")
        return UFactory::trunc_exp(m);
    throw DomainError("unknown U factory '" + std::string(name) + "'");
}

/// One generating function (t/(λe^t+μ))^v · e^{xt} · U(y,t) · trig(zt) · e^{kt}.
struct FamilySpec {
    KernelSpec kernel;
    UFactory u = UFactory::one();
    Trig trig = Trig::None;
    std::optional<std::string> shift; ///< auxiliary symbol k of an extra e^{kt}

    /// Deterministic key used for caching and reporting.
    std::string key() const
    {
        std::string s = "v=" + std::to_string(kernel.v) + ";lambda=" + kernel.lambda.str() + ";mu=" + kernel.mu.str() +
                        ";u=" + u.name() + ";trig=" + std::string(to_string(trig));
        if (shift)
            s += ";shift=" + *shift;
        return s;
    }
};

/// Generating series with explicit arguments: e^{x_arg·t} and trig(z_arg·t).
inline TruncSeries family_series(const FamilySpec& spec, std::size_t order, const MultiPoly& x_arg, const MultiPoly& z_arg)
{
    const VarSet& ring = x_arg.ring();
    TruncSeries s = series_mul(apostol_kernel(spec.kernel, order, ring), exp_linear(x_arg, order));
    if (spec.u.kind() != UFactory::Kind::One)
        s = series_mul(s, spec.u.build(order, ring));
    if (spec.trig == Trig::Cos)
        s = series_mul(s, cos_series(z_arg, order));
    else if (spec.trig == Trig::Sin)
        s = series_mul(s, sin_series(z_arg, order));
    if (spec.shift)
        s = series_mul(s, exp_linear(MultiPoly::variable(ring, *spec.shift), order));
    return s;
}

inline TruncSeries family_series(const FamilySpec& spec, std::size_t order, const VarSet& ring = standard_ring())
{
    return family_series(spec, order, MultiPoly::variable(ring, "x"), MultiPoly::variable(ring, "z"));
}

/// P_0..P_max_n of a family.
inline std::vector<MultiPoly> family_polys(const FamilySpec& spec, std::size_t max_n, const VarSet& ring = standard_ring())
{
    const TruncSeries s = family_series(spec, default_order(max_n), ring);
    std::vector<MultiPoly> out;
    out.reserve(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n)
        out.push_back(extract_family(s, n));
    return out;
}

inline MultiPoly family_poly(const FamilySpec& spec, std::size_t n, const VarSet& ring = standard_ring())
{
    return extract_family(family_series(spec, default_order(n), ring), n);
}

// ---------------------------------------------------------------------------
// Classical members

inline FamilySpec apostol_spec(int v, const GaussRational& lambda, const GaussRational& mu = GaussRational(-1))
{
    return FamilySpec{KernelSpec{v, lambda, mu}, UFactory::one(), Trig::None, std::nullopt};
}

/// Generalized Apostol-Bernoulli polynomial of order v in x.
inline MultiPoly apostol_bernoulli_poly(std::size_t n, int v, const GaussRational& lambda, const GaussRational& mu = GaussRational(-1))
{
    return family_poly(apostol_spec(v, lambda, mu), n);
}

inline MultiPoly bernoulli_poly(std::size_t n) { return apostol_bernoulli_poly(n, 1, GaussRational(1)); }

/// x = 0 member of the (λ,μ) kernel of order v.
inline GaussRational apostol_bernoulli_number(std::size_t n, int v, const GaussRational& lambda, const GaussRational& mu = GaussRational(-1))
{
    const TruncSeries k = apostol_kernel(KernelSpec{v, lambda, mu}, default_order(n));
    return extract_family(k, n).constant_term();
}

inline GaussRational bernoulli_number(std::size_t n) { return apostol_bernoulli_number(n, 1, GaussRational(1)); }

/// Closed forms of the first six Apostol-Bernoulli numbers:
/// B_n(λ) = sign · n · λ · E(λ) / (λ-1)^n for n >= 2, B_1 = 1/(λ-1), B_0 = 0.
struct ClosedForm {
    int sign;
    std::vector<long> numerator; ///< coefficients of E(λ), low degree first
};

inline const std::array<ClosedForm, 6>& apostol_closed_forms()
{
    // The n = 4 entry is negative; see apostol_closed_form_printed_sign().
    static const std::array<ClosedForm, 6> forms{{
        {0, {}},
        {1, {1}},
        {-1, {1}},
        {1, {1, 1}},
        {-1, {1, 4, 1}},
        {1, {1, 11, 11, 1}},
    }};
    return forms;
}

/// Sign with which the n-th closed form is commonly printed (the n = 4 form
/// appears with a positive sign in the source tables).
inline int apostol_closed_form_printed_sign(std::size_t n) { return n == 4 ? 1 : apostol_closed_forms().at(n).sign; }

inline GaussRational apostol_bernoulli_number_closed(std::size_t n, const GaussRational& lambda, int sign_override = 0)
{
    if (n > 5)
        throw DomainError("closed forms exist only for n <= 5");
    if (lambda == GaussRational(1))
        throw DomainError("closed-form Apostol-Bernoulli numbers have a pole at lambda = 1");
    if (n == 0)
        return GaussRational(0);
    const GaussRational denom = pow(lambda - GaussRational(1), static_cast<unsigned>(n));
    if (n == 1)
        return GaussRational(1) / denom;
    const ClosedForm& f = apostol_closed_forms()[n];
    GaussRational e(0);
    for (std::size_t i = 0; i < f.numerator.size(); ++i)
        e += GaussRational(f.numerator[i]) * pow(lambda, static_cast<unsigned>(i));
    const int sign = sign_override != 0 ? sign_override : f.sign;
    return GaussRational(sign * static_cast<long>(n)) * lambda * e / denom;
}

/// C_n(x,y) and S_n(x,y) from their binomial sums.
inline std::pair<MultiPoly, MultiPoly> cs_closed_form(std::size_t n, std::string_view xvar = "x", std::string_view yvar = "y",
                                                      const VarSet& ring = standard_ring())
{
    MultiPoly c(ring);
    MultiPoly s(ring);
    const std::size_t xs = ring.slot(xvar);
    const std::size_t ys = ring.slot(yvar);
    const long ln = static_cast<long>(n);
    for (long r = 0; 2 * r <= ln; ++r) {
        const GaussRational coef(r % 2 == 0 ? binomial(ln, 2 * r) : Rational(-binomial(ln, 2 * r)));
        c.add_term(Monomial::var(xs, static_cast<unsigned>(ln - 2 * r)) * Monomial::var(ys, static_cast<unsigned>(2 * r)), coef);
    }
    for (long r = 0; 2 * r + 1 <= ln; ++r) {
        const GaussRational coef(r % 2 == 0 ? binomial(ln, 2 * r + 1) : Rational(-binomial(ln, 2 * r + 1)));
        s.add_term(Monomial::var(xs, static_cast<unsigned>(ln - 2 * r - 1)) * Monomial::var(ys, static_cast<unsigned>(2 * r + 1)), coef);
    }
    return {c, s};
}

/// Generalized Apostol-Genocchi polynomial: n-th member of (2t/(λe^t+μ))^v e^{xt}.
inline MultiPoly apostol_genocchi(std::size_t n, int v, const GaussRational& lambda, const GaussRational& mu,
                                  const VarSet& ring = standard_ring())
{
    const MultiPoly p = family_poly(FamilySpec{KernelSpec{v, lambda, mu}, UFactory::one(), Trig::None, std::nullopt}, n, ring);
    return p * pow(GaussRational(2), static_cast<unsigned>(v));
}

/// U_r(y) = r!·[t^r] U(y,t).
inline MultiPoly u_member(const UFactory& u, std::size_t r, const VarSet& ring = standard_ring())
{
    return extract_family(u.build(default_order(r), ring), r);
}

/// T_r(x,y), the r-th member of e^{xt} U(y,t).
inline MultiPoly t_member(const UFactory& u, std::size_t r, const VarSet& ring = standard_ring())
{
    return family_poly(FamilySpec{KernelSpec{0, GaussRational(1), GaussRational(-1)}, u, Trig::None, std::nullopt}, r, ring);
}

// ---------------------------------------------------------------------------
// Golden tables, as printed in the classical literature.

namespace golden {

/// B_0..B_18.
inline std::vector<GaussRational> bernoulli_numbers()
{
    std::vector<GaussRational> b(19, GaussRational(0));
    b[0] = GaussRational(1);
    b[1] = GaussRational(make_rational(-1, 2));
    const std::array<std::pair<long, long>, 9> even{{{1, 6}, {-1, 30}, {1, 42}, {-1, 30}, {5, 66}, {-691, 2730}, {7, 6}, {-3617, 510}, {43867, 798}}};
    for (std::size_t k = 0; k < even.size(); ++k)
        b[2 * (k + 1)] = GaussRational(make_rational(even[k].first, even[k].second));
    return b;
}

/// B_0(x)..B_4(x) in canonical text.
inline std::vector<std::string> bernoulli_polynomials()
{
    return {"1", "x - 1/2", "x^2 - x + 1/6", "x^3 - 3/2*x^2 + 1/2*x", "x^4 - 2*x^3 + x^2 - 1/30"};
}

} // namespace golden

} // namespace apb
