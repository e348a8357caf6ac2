#pragma once

// Operator calculus: power series in D = d/dx acting on polynomials, the
// differential equations they induce on the parametric families, and the
// generating-function form of the raising relation.

#include <span>
#include <string>
#include <vector>

#include "apb/families.hpp"
#include "apb/verdict.hpp"

namespace apb {

/// Σ_j c_j D^j with coefficients free of x, truncated at operator order J.
class DOperatorSeries {
public:
    explicit DOperatorSeries(std::vector<MultiPoly> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw TruncationError("an operator series needs at least one coefficient");
        for (const auto& c : coeffs_) {
            if (c.ring() != coeffs_.front().ring())
                throw RingMismatchError("operator coefficients over different variable sets");
            if (c.ring().find("x") && c.involves("x"))
                throw DomainError("operator coefficient depends on x: " + c.str());
        }
    }

    /// Reinterprets t as D.
    static DOperatorSeries from_series(const TruncSeries& s) { return DOperatorSeries(s.coeffs()); }

    static DOperatorSeries identity(const VarSet& ring, std::size_t order)
    {
        return from_series(TruncSeries::one(ring, order));
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const VarSet& ring() const { return coeffs_.front().ring(); }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }

    friend DOperatorSeries operator+(const DOperatorSeries& a, const DOperatorSeries& b)
    {
        return from_series(TruncSeries(a.ring(), a.coeffs_) + TruncSeries(b.ring(), b.coeffs_));
    }
    friend DOperatorSeries operator-(const DOperatorSeries& a, const DOperatorSeries& b)
    {
        return from_series(TruncSeries(a.ring(), a.coeffs_) - TruncSeries(b.ring(), b.coeffs_));
    }
    friend DOperatorSeries operator*(const GaussRational& s, const DOperatorSeries& a)
    {
        return from_series(TruncSeries(a.ring(), a.coeffs_) * s);
    }

private:
    std::vector<MultiPoly> coeffs_;
};

/// Σ_j c_j ∂^j p/∂x^j. D is nilpotent on p, so the result is exact once J ≥ deg_x p.
inline MultiPoly dseries_apply(const DOperatorSeries& op, const MultiPoly& p)
{
    const unsigned deg = p.degree_in("x");
    if (op.order() < deg)
        throw TruncationError("operator order " + std::to_string(op.order()) + " is below the x-degree " + std::to_string(deg));
    MultiPoly result(p.ring());
    MultiPoly derivative = p;
    for (std::size_t j = 0; j <= deg; ++j) {
        if (j > 0)
            derivative = poly_diff(derivative, "x");
        if (!op.coeffs()[j].is_zero())
            result += op.coeffs()[j] * derivative;
    }
    return result;
}

/// (λe^t(1-t) + μ)/(λe^t + μ) as a regular series in t, truncated at `order`.
inline TruncSeries kernel_ratio_series(const KernelSpec& kernel, std::size_t order, const VarSet& ring = standard_ring())
{
    kernel.validate();
    TruncSeries den = kernel_denominator(kernel, ring, order + 1);
    // numerator: λ e^t (1 - t) + μ
    TruncSeries num = series_mul(exp_linear(MultiPoly(ring, GaussRational(1)), order + 1) * kernel.lambda,
                                 binomial_power(MultiPoly(ring, GaussRational(-1)), 1, 1, order + 1));
    num.set_coeff(0, num.coeff(0) + MultiPoly(ring, kernel.mu));
    // λ+μ = 0: both vanish at t = 0 and the denominator has a simple zero.
    const std::size_t s = kernel.classical_branch() ? 1 : 0;
    const TruncSeries ratio = series_mul(shift_down(num, s), series_invert(shift_down(den, s)));
    return truncate(ratio, order);
}

/// v·(λe^D(1-D)+μ)/(λe^D+μ).
inline DOperatorSeries build_ratio_operator(const KernelSpec& kernel, std::size_t order, const VarSet& ring = standard_ring())
{
    if (kernel.v == 0) {
        kernel.validate();
        return DOperatorSeries::from_series(TruncSeries(ring, order));
    }
    return DOperatorSeries::from_series(kernel_ratio_series(kernel, order, ring) * GaussRational(kernel.v));
}

enum class TrigOperator { TanD, CotD };

/// z·tan(zt)·t and z·cot(zt)·t as series in t (both regular at t = 0).
inline TruncSeries trig_operator_series(TrigOperator kind, std::size_t order, const VarSet& ring = standard_ring())
{
    const MultiPoly z = MultiPoly::variable(ring, "z");
    const TruncSeries c = cos_series(z, order);
    if (kind == TrigOperator::TanD)
        return shift_up(scale(series_mul(sin_series(z, order), series_invert(c)), z), 1);
    // z t cot(zt) = cos(zt) · (zt / sin(zt))
    return series_mul(c, series_invert(sinc_series(z, order)));
}

inline DOperatorSeries build_trig_operator(TrigOperator kind, std::size_t order, const VarSet& ring = standard_ring())
{
    return DOperatorSeries::from_series(trig_operator_series(kind, order, ring));
}

/// (U'/U)(D)·D.
inline DOperatorSeries build_log_derivative_operator(const UFactory& u, std::size_t order, const VarSet& ring = standard_ring())
{
    return DOperatorSeries::from_series(shift_up(u.log_derivative(order, ring), 1));
}

inline std::map<std::string, std::string> family_params(const FamilySpec& spec)
{
    std::map<std::string, std::string> p{
        {"v", std::to_string(spec.kernel.v)},
        {"lambda", spec.kernel.lambda.str()},
        {"mu", spec.kernel.mu.str()},
        {"u", spec.u.name()},
        {"trig", std::string(to_string(spec.trig))},
    };
    if (spec.shift)
        p["shift"] = *spec.shift;
    return p;
}

/// Applies [xD + (U'/U)(D)D + v·ratio(D) ∓ trig(D)D - n] to polys[n] for every n
/// and requires zero. The trig term is -z tan(zD) D for the cosine kind and
/// +z cot(zD) D for the sine kind.
inline VerdictReport verify_ode(const FamilySpec& spec, std::span<const MultiPoly> polys)
{
    VerdictBuilder verdict("ode", family_params(spec));
    if (polys.empty())
        return verdict.finish();
    const VarSet& ring = polys.front().ring();
    const std::size_t order = polys.size() - 1;
    const DOperatorSeries log_op = build_log_derivative_operator(spec.u, order, ring);
    const DOperatorSeries ratio_op = build_ratio_operator(spec.kernel, order, ring);
    std::optional<DOperatorSeries> trig_op;
    if (spec.trig == Trig::Cos)
        trig_op = GaussRational(-1) * build_trig_operator(TrigOperator::TanD, order, ring);
    else if (spec.trig == Trig::Sin)
        trig_op = build_trig_operator(TrigOperator::CotD, order, ring);
    const MultiPoly x = MultiPoly::variable(ring, "x");
    for (std::size_t n = 0; n < polys.size(); ++n) {
        const MultiPoly& p = polys[n];
        MultiPoly total = x * poly_diff(p, "x");
        total += dseries_apply(log_op, p);
        total += dseries_apply(ratio_op, p);
        if (trig_op)
            total += dseries_apply(*trig_op, p);
        total -= p * GaussRational(static_cast<long>(n));
        verdict.check({static_cast<long>(n)}, total, MultiPoly(ring));
    }
    verdict.set_max_index(static_cast<long>(order));
    return verdict.finish();
}

inline VerdictReport verify_ode(const FamilySpec& spec, std::size_t max_n, const VarSet& ring = standard_ring())
{
    const auto polys = family_polys(spec, max_n, ring);
    return verify_ode(spec, std::span<const MultiPoly>(polys));
}

/// ∂P_n/∂x = n P_{n-1} for n = 1..max.
inline VerdictReport verify_lowering(const FamilySpec& spec, std::span<const MultiPoly> polys)
{
    VerdictBuilder verdict("lowering", family_params(spec));
    for (std::size_t n = 1; n < polys.size(); ++n)
        verdict.check({static_cast<long>(n)}, poly_diff(polys[n], "x"), polys[n - 1] * GaussRational(static_cast<long>(n)));
    verdict.set_max_index(polys.empty() ? 0 : static_cast<long>(polys.size() - 1));
    return verdict.finish();
}

inline VerdictReport verify_lowering(const FamilySpec& spec, std::size_t max_n, const VarSet& ring = standard_ring())
{
    const auto polys = family_polys(spec, max_n, ring);
    return verify_lowering(spec, std::span<const MultiPoly>(polys));
}

/// Result of pushing a family series through the raising multiplier.
struct RaisingResult {
    std::optional<TruncSeries> raised;   ///< multiplier · F, order N-1; empty on a structural failure
    std::optional<std::string> diagnostic;
};

/// Computes M·F with M = x + U'/U + (v/t)·ratio(t) ∓ trig term, where the
/// trig term is z·tan(zt) (cosine kind, subtracted) or z·cot(zt) (sine kind,
/// added). Everything is first multiplied by t so no Laurent object is formed;
/// the constant term of t·M·F must vanish for the division by t to exist.
inline RaisingResult raise_series(const FamilySpec& spec, const TruncSeries& family)
{
    const VarSet& ring = family.ring();
    const std::size_t order = family.order();
    const MultiPoly x = MultiPoly::variable(ring, "x");

    TruncSeries tm = shift_up(scale(family, x), 1);
    tm += shift_up(series_mul(spec.u.log_derivative(order, ring), family), 1);
    if (spec.kernel.v != 0)
        tm += series_mul(kernel_ratio_series(spec.kernel, order, ring), family) * GaussRational(spec.kernel.v);
    if (spec.trig == Trig::Cos)
        tm -= series_mul(trig_operator_series(TrigOperator::TanD, order, ring), family);
    else if (spec.trig == Trig::Sin)
        tm += series_mul(trig_operator_series(TrigOperator::CotD, order, ring), family);
    if (spec.shift)
        tm += shift_up(scale(family, MultiPoly::variable(ring, *spec.shift)), 1);

    if (!tm.coeff(0).is_zero())
        return {std::nullopt, "uncancelled 1/t pole: constant term of t*M*F is " + tm.coeff(0).str()};
    return {shift_down(tm, 1), std::nullopt};
}

/// P_1..P_{N-1} produced by the multiplier route, indexed so that result[k] = P_{k+1}.
inline std::vector<MultiPoly> raising_route_polys(const FamilySpec& spec, std::size_t max_n, const VarSet& ring = standard_ring())
{
    const TruncSeries family = family_series(spec, default_order(max_n), ring);
    const RaisingResult r = raise_series(spec, family);
    if (!r.raised)
        throw DomainError(*r.diagnostic);
    std::vector<MultiPoly> out;
    for (std::size_t n = 0; n + 1 <= max_n; ++n)
        out.push_back(extract_family(*r.raised, n));
    return out;
}

/// d/dt F = M·F coefficientwise up to t^{N-2}.
inline VerdictReport verify_raising_gf(const FamilySpec& spec, std::size_t order, const VarSet& ring = standard_ring())
{
    VerdictBuilder verdict("raising_gf", family_params(spec));
    if (order < 2)
        throw TruncationError("raising check needs order >= 2");
    const TruncSeries family = family_series(spec, order, ring);
    const RaisingResult r = raise_series(spec, family);
    if (!r.raised) {
        verdict.fail({0}, "structural", *r.diagnostic);
        return verdict.finish();
    }
    const TruncSeries derivative = series_derivative(family);
    for (std::size_t n = 0; n + 2 <= order; ++n)
        verdict.check({static_cast<long>(n)}, derivative.coeff(n), r.raised->coeff(n));
    verdict.set_max_index(static_cast<long>(order - 2));
    return verdict.finish();
}

} // namespace apb
