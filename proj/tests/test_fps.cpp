#include <gtest/gtest.h>

#include <random>

#include "apb/families.hpp"
#include "apb/fps.hpp"

using namespace apb;

namespace {

const VarSet& ring() { return standard_ring(); }
MultiPoly P(std::string_view s) { return parse_poly(ring(), s); }
GaussRational Q(long p, long q = 1) { return GaussRational(make_rational(p, q)); }

TruncSeries series_of(std::vector<std::string> coeffs)
{
    std::vector<MultiPoly> c;
    for (const auto& s : coeffs)
        c.push_back(P(s));
    return TruncSeries(ring(), std::move(c));
}

} // namespace

TEST(SeriesMul, Examples)
{
    EXPECT_EQ(series_mul(series_of({"1", "1", "0", "0"}), series_of({"1", "-1", "0", "0"})), series_of({"1", "0", "-1", "0"}));

    const TruncSeries unit = series_mul(exp_linear(P("x"), 6), exp_linear(P("-x"), 6));
    EXPECT_EQ(unit, TruncSeries::one(ring(), 6));

    const TruncSeries b = series_mul(apostol_kernel(KernelSpec{1, Q(1), Q(-1)}, 4), exp_linear(P("x"), 4));
    EXPECT_EQ(b.coeff(2), P("1/2*x^2 - 1/2*x + 1/12"));
}

TEST(SeriesMul, Mismatch)
{
    EXPECT_THROW(series_mul(TruncSeries::one(ring(), 3), TruncSeries::one(ring(), 4)), TruncationError);
    EXPECT_THROW(series_mul(TruncSeries::one(ring(), 3), TruncSeries::one(VarSet({"x"}), 3)), RingMismatchError);
}

TEST(SeriesInvert, Examples)
{
    EXPECT_EQ(series_invert(series_of({"1", "-1", "0", "0"})), series_of({"1", "1", "1", "1"}));

    const TruncSeries inv = series_invert(exp_linear(MultiPoly(ring(), GaussRational(1)), 8));
    for (unsigned n = 0; n <= 8; ++n) {
        const GaussRational expected((n % 2 == 0 ? 1 : -1) / factorial(n));
        EXPECT_EQ(inv.coeff(n), MultiPoly(ring(), expected)) << n;
    }

    EXPECT_EQ(series_invert(series_of({"2", "1", "0"})).coeff(1), P("-1/4"));
}

TEST(SeriesInvert, NonUnitsRejected)
{
    EXPECT_THROW(series_invert(series_of({"0", "1"})), DomainError);
    EXPECT_THROW(series_invert(series_of({"y", "1"})), DomainError);
}

TEST(SeriesInvert, RandomUnitsProperty)
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), e(0, 2);
    for (int s = 0; s < 50; ++s) {
        std::vector<MultiPoly> c;
        int a0 = num(rng);
        c.emplace_back(ring(), Q(a0 == 0 ? 1 : a0, den(rng)));
        for (int n = 1; n <= 6; ++n) {
            MultiPoly p(ring());
            p.add_term(Monomial::var(0, e(rng)) * Monomial::var(1, e(rng)), Q(num(rng), den(rng)));
            c.push_back(p);
        }
        const TruncSeries a(ring(), c);
        EXPECT_EQ(series_mul(a, series_invert(a)), TruncSeries::one(ring(), 6));
    }
}

TEST(SeriesExp, Examples)
{
    const TruncSeries e = series_exp(TruncSeries::monomial(P("x"), 1, 6));
    for (unsigned n = 0; n <= 6; ++n)
        EXPECT_EQ(e.coeff(n), poly_pow(P("x"), n) * GaussRational(1 / factorial(n)));

    const TruncSeries gh = series_exp(series_of({"0", "x", "y", "0", "0"}));
    EXPECT_EQ(extract_family(gh, 3), P("x^3 + 6*x*y"));

    EXPECT_EQ(series_exp(TruncSeries(ring(), 5)), TruncSeries::one(ring(), 5));
    EXPECT_THROW(series_exp(series_of({"1", "x"})), DomainError);
}

TEST(SeriesExp, DerivativeRecurrenceProperty)
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> num(-4, 4), e(0, 2);
    for (int s = 0; s < 20; ++s) {
        std::vector<MultiPoly> c{MultiPoly(ring())};
        for (int n = 1; n <= 7; ++n)
            c.push_back(MultiPoly::monomial(ring(), Q(num(rng), 3), Monomial::var(0, e(rng)) * Monomial::var(2, e(rng))));
        const TruncSeries a(ring(), c);
        const TruncSeries ea = series_exp(a);
        const TruncSeries lhs = series_derivative(ea);
        const TruncSeries rhs = series_mul(series_derivative(a), truncate(ea, 6));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Trig, Examples)
{
    const auto [c, s] = cos_sin_zt(8);
    EXPECT_EQ(c.coeff(2), P("-1/2*z^2"));
    EXPECT_EQ(s.coeff(1), P("z"));
    EXPECT_TRUE(c.coeff(1).is_zero());
    EXPECT_EQ(series_mul(c, c) + series_mul(s, s), TruncSeries::one(ring(), 8));
    EXPECT_EQ(scale(sinc_series(P("z"), 7), P("z")), shift_down(sin_series(P("z"), 8), 1));
}

TEST(Kernel, BernoulliBranch)
{
    const TruncSeries k = apostol_kernel(KernelSpec{1, Q(1), Q(-1)}, 4);
    EXPECT_EQ(k, series_of({"1", "-1/2", "1/12", "0", "-1/720"}));
}

TEST(Kernel, UnitBranch)
{
    // t/(2e^t) = (t/2) e^{-t}
    const TruncSeries k = apostol_kernel(KernelSpec{1, Q(2), Q(0)}, 4);
    EXPECT_EQ(k.coeff(1), P("1/2"));
    EXPECT_EQ(k.coeff(2), P("-1/2"));

    const TruncSeries k2 = apostol_kernel(KernelSpec{2, Q(1), Q(1)}, 6);
    EXPECT_TRUE(k2.coeff(0).is_zero());
    EXPECT_TRUE(k2.coeff(1).is_zero());
    EXPECT_EQ(k2.coeff(2), P("1/4"));
}

TEST(Kernel, InvalidSpecs)
{
    EXPECT_THROW(apostol_kernel(KernelSpec{1, Q(0), Q(0)}, 4), DomainError);
    EXPECT_THROW(apostol_kernel(KernelSpec{-1, Q(1), Q(1)}, 4), DomainError);
    EXPECT_EQ(apostol_kernel(KernelSpec{0, Q(3), Q(2)}, 4), TruncSeries::one(ring(), 4));
}

TEST(Kernel, LeadingZerosForUnitBranchProperty)
{
    const std::vector<std::pair<GaussRational, GaussRational>> samples{{Q(1), Q(1)}, {Q(3), Q(2)}, {Q(1, 2), Q(1, 3)}, {Q(2), Q(-1)}};
    for (const auto& [l, m] : samples) {
        for (int v = 1; v <= 3; ++v) {
            const TruncSeries s = series_mul(apostol_kernel(KernelSpec{v, l, m}, 8), exp_linear(P("x + y"), 8));
            for (int n = 0; n < v; ++n)
                EXPECT_TRUE(extract_family(s, static_cast<std::size_t>(n)).is_zero()) << v << " " << n;
            EXPECT_FALSE(extract_family(s, static_cast<std::size_t>(v)).is_zero());
        }
    }
}

TEST(Kernel, ReproducesBernoulliTable)
{
    const TruncSeries k = apostol_kernel(KernelSpec{1, Q(1), Q(-1)}, 18);
    const auto table = golden::bernoulli_numbers();
    for (unsigned n = 0; n <= 18; ++n)
        EXPECT_EQ(k.coeff(n), MultiPoly(ring(), table[n] * GaussRational(1 / factorial(n)))) << n;
}

TEST(Kernel, ScalingProperty)
{
    // ct/(λe^{ct}+μ) built from scaled primitives has coefficients c^n a_n.
    const std::vector<std::pair<GaussRational, GaussRational>> samples{{Q(1), Q(-1)}, {Q(3), Q(2)}, {Q(1, 2), Q(1, 3)}};
    for (const auto& [l, m] : samples) {
        const std::size_t order = 8;
        const TruncSeries base = apostol_kernel(KernelSpec{1, l, m}, order);
        for (long c : {2L, -1L}) {
            const MultiPoly cp(ring(), GaussRational(c));
            TruncSeries den = exp_linear(cp, order + 1) * l;
            den.set_coeff(0, den.coeff(0) + MultiPoly(ring(), m));
            TruncSeries scaled(ring(), order);
            if ((l + m).is_zero())
                scaled = series_invert(shift_down(den, 1)) * GaussRational(c);
            else
                scaled = shift_up(series_invert(truncate(den, order)), 1) * GaussRational(c);
            for (unsigned n = 0; n <= order; ++n)
                EXPECT_EQ(scaled.coeff(n), base.coeff(n) * pow(GaussRational(c), n)) << c << " " << n;
        }
    }
}

TEST(Extract, Examples)
{
    const auto [c, s] = cos_sin_zt(6);
    const TruncSeries base = series_mul(apostol_kernel(KernelSpec{1, Q(1), Q(-1)}, 6), exp_linear(P("x"), 6));
    EXPECT_EQ(extract_family(series_mul(base, c), 2), P("x^2 - x + 1/6 - z^2"));
    EXPECT_EQ(extract_family(series_mul(base, s), 1), P("z"));
    EXPECT_EQ(extract_family(base, 0), base.coeff(0));
    EXPECT_THROW(extract_family(base, 7), TruncationError);
}

TEST(Shift, DivisionByPowerOfT)
{
    EXPECT_EQ(shift_down(series_of({"0", "0", "x", "y"}), 2), series_of({"x", "y"}));
    EXPECT_THROW(shift_down(series_of({"0", "1", "x"}), 2), DomainError);
    EXPECT_EQ(shift_up(series_of({"1", "2", "3"}), 1), series_of({"0", "1", "2"}));
}
