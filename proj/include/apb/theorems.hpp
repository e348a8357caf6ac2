#pragma once

// Executable verification of the identities satisfied by the parametric
// Apostol-Bernoulli families. Every check compares exact polynomials; the
// families themselves always come from the series engine.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "apb/opcalc.hpp"

namespace apb {

struct KernelSample {
    GaussRational lambda;
    GaussRational mu;

    std::string branch() const { return (lambda + mu).is_zero() ? "lambda+mu=0" : "lambda+mu!=0"; }
};

/// Deterministic parameter draws for a given seed.
class SampleSet {
public:
    explicit SampleSet(std::uint64_t seed = 0) : seed_(seed)
    {
        auto q = [](long p, long d) { return GaussRational(make_rational(p, d)); };
        kernels_ = {{q(1, 1), q(-1, 1)}, {q(2, 1), q(-1, 1)}, {q(1, 1), q(1, 1)}, {q(3, 1), q(2, 1)}, {q(1, 2), q(1, 3)}};
    }

    std::uint64_t seed() const { return seed_; }
    const std::vector<KernelSample>& kernels() const { return kernels_; }

    /// `count` rationals p/q with 0 < |p| <= 9, 1 <= q <= 7, from a stream keyed by `tag`.
    std::vector<GaussRational> draws(std::string_view tag, std::size_t count) const
    {
        std::uint64_t h = 1469598103934665603ULL; // FNV-1a
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        std::mt19937_64 rng(seed_ ^ h);
        std::uniform_int_distribution<long> num(1, 9), den(1, 7), sign(0, 1);
        std::vector<GaussRational> out;
        for (std::size_t i = 0; i < count; ++i) {
            const long p = num(rng) * (sign(rng) == 0 ? 1 : -1);
            out.emplace_back(make_rational(p, den(rng)));
        }
        return out;
    }

private:
    std::uint64_t seed_;
    std::vector<KernelSample> kernels_;
};

/// U factories swept by the suite.
inline std::vector<UFactory> suite_factories()
{
    return {UFactory::one(), UFactory::gould_hopper(2), UFactory::hermite_appell(AppellFactor::Genocchi), UFactory::miller_lee(1),
            UFactory::trunc_exp(2)};
}

/// Reference values the golden checks compare against.
struct GoldenTables {
    std::vector<GaussRational> bernoulli_numbers = golden::bernoulli_numbers();
    std::vector<std::string> bernoulli_polynomials = golden::bernoulli_polynomials();
};

struct SuiteConfig {
    std::size_t max_n = 8;
    std::uint64_t seed = 0;
    int max_order = 2;     ///< bound on v, alpha, beta, delta
    unsigned max_m = 2;    ///< bound on derivative orders
    GoldenTables golden;
};

/// Memoized family members P_0..P_capacity keyed by FamilySpec::key().
/// Entries never move once created, so returned references stay valid.
class FamilyTable {
public:
    explicit FamilyTable(std::size_t capacity) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }

    const std::vector<MultiPoly>& polys(const FamilySpec& spec)
    {
        const std::string key = spec.key();
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, family_polys(spec, capacity_)).first;
            if (auto f = faults_.find(key); f != faults_.end())
                for (const auto& [n, delta] : f->second)
                    it->second.at(n) += delta;
        }
        return it->second;
    }

    /// Adds `delta` to P_n of `spec` (for fault-injection tests).
    void inject_fault(const FamilySpec& spec, std::size_t n, const MultiPoly& delta)
    {
        if (n > capacity_)
            throw TruncationError("fault index beyond table capacity");
        const std::string key = spec.key();
        faults_[key].emplace_back(n, delta);
        if (auto it = cache_.find(key); it != cache_.end())
            it->second.at(n) += delta;
    }

private:
    std::size_t capacity_;
    std::map<std::string, std::vector<MultiPoly>> cache_;
    std::map<std::string, std::vector<std::pair<std::size_t, MultiPoly>>> faults_;
};

struct SuiteContext {
    explicit SuiteContext(SuiteConfig c = {}) : config(std::move(c)), samples(config.seed), table(config.max_n + 2) {}

    SuiteConfig config;
    SampleSet samples;
    FamilyTable table;
};

namespace detail {

inline const VarSet& R() { return standard_ring(); }
inline MultiPoly var(std::string_view name) { return MultiPoly::variable(R(), name); }
inline GaussRational num(long n) { return GaussRational(n); }
inline GaussRational binom(std::size_t n, std::size_t k) { return GaussRational(binomial(static_cast<long>(n), static_cast<long>(k))); }

inline FamilySpec make_spec(const KernelSample& k, int v, const UFactory& u, Trig trig)
{
    return FamilySpec{KernelSpec{v, k.lambda, k.mu}, u, trig, std::nullopt};
}

inline std::map<std::string, std::string> params_of(const FamilySpec& spec, std::map<std::string, std::string> extra = {})
{
    auto p = family_params(spec);
    for (auto& [k, v] : extra)
        p[k] = std::move(v);
    return p;
}

inline std::string id(std::string_view selector, std::string_view name) { return std::string(selector) + "/" + std::string(name); }

inline std::vector<MultiPoly> substituted(const std::vector<MultiPoly>& polys, std::string_view var_name, const MultiPoly& by)
{
    std::vector<MultiPoly> out;
    out.reserve(polys.size());
    for (const auto& p : polys)
        out.push_back(poly_subst(p, var_name, by));
    return out;
}

inline std::vector<MultiPoly> powers(const MultiPoly& base, std::size_t max)
{
    std::vector<MultiPoly> out{MultiPoly(base.ring(), GaussRational(1))};
    for (std::size_t i = 1; i <= max; ++i)
        out.push_back(out.back() * base);
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Expansions over T_r(x,y) and U_r(y)

inline std::vector<VerdictReport> verify_expansion_thms(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    for (const auto& k : ctx.samples.kernels()) {
        for (int v = 0; v <= ctx.config.max_order; ++v) {
            for (const auto& u : suite_factories()) {
                const auto& T = ctx.table.polys(make_spec(KernelSample{num(1), num(-1)}, 0, u, Trig::None));
                const auto U = substituted(T, "x", MultiPoly(R()));
                for (Trig trig : {Trig::Cos, Trig::Sin}) {
                    const FamilySpec full = make_spec(k, v, u, trig);
                    const auto& P = ctx.table.polys(full);
                    const auto& plain = ctx.table.polys(make_spec(k, v, UFactory::one(), trig));
                    const auto plain0 = substituted(plain, "x", MultiPoly(R()));

                    VerdictBuilder over_t(id("thm3.1", to_string(trig)), params_of(full));
                    VerdictBuilder over_u(id("thm3.2", to_string(trig)), params_of(full));
                    for (std::size_t n = 0; n <= N; ++n) {
                        MultiPoly rt(R()), ru(R());
                        for (std::size_t r = 0; r <= n; ++r) {
                            rt += plain0[n - r] * T[r] * binom(n, r);
                            ru += U[r] * plain[n - r] * binom(n, r);
                        }
                        over_t.check({static_cast<long>(n)}, P[n], rt);
                        over_u.check({static_cast<long>(n)}, P[n], ru);
                    }
                    out.push_back(over_t.finish());
                    out.push_back(over_u.finish());
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shifts in x

inline std::vector<VerdictReport> verify_shift_thms(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    const MultiPoly x = var("x"), k = var("k");
    const auto kp = powers(k, N), xp = powers(x, N);
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 1; v <= ctx.config.max_order; ++v) {
            for (const auto& u : suite_factories()) {
                const FamilySpec cspec = make_spec(ks, v, u, Trig::Cos);
                const auto& P = ctx.table.polys(cspec);

                VerdictBuilder symbolic(id("thm3.3", "shift_k"), params_of(cspec));
                VerdictBuilder k_is_x(id("thm3.4", "shift_k_equals_x"), params_of(cspec));
                VerdictBuilder k_is_1(id("thm3.5", "shift_k_equals_1"), params_of(cspec));
                k_is_x.erratum("printed left side keeps the argument x+k after setting k=x; the verified left side is the member at 2x");
                k_is_1.erratum("printed left side keeps the argument x+k after setting k=1; the verified left side is the member at x+1");
                for (std::size_t n = 0; n <= N; ++n) {
                    MultiPoly rs(R()), rx(R()), r1(R());
                    for (std::size_t r = 0; r <= n; ++r) {
                        rs += P[n - r] * kp[r] * binom(n, r);
                        rx += P[n - r] * xp[r] * binom(n, r);
                        r1 += P[n - r] * binom(n, r);
                    }
                    const long idx = static_cast<long>(n);
                    symbolic.check({idx}, poly_subst(P[n], "x", x + k), rs);
                    k_is_x.check({idx}, poly_subst(P[n], "x", x * num(2)), rx);
                    k_is_1.check({idx}, poly_subst(P[n], "x", x + MultiPoly(R(), num(1))), r1);
                }
                out.push_back(symbolic.finish());
                out.push_back(k_is_x.finish());
                out.push_back(k_is_1.finish());

                // The same statement with k replaced by random rationals.
                VerdictBuilder sampled(id("thm3.3", "shift_k_sampled"), params_of(cspec, {{"k", "5 draws"}}), "sampled");
                const auto draws = ctx.samples.draws(cspec.key() + "/k", 5);
                for (std::size_t d = 0; d < draws.size(); ++d) {
                    for (std::size_t n = 0; n <= N; ++n) {
                        MultiPoly rhs(R());
                        for (std::size_t r = 0; r <= n; ++r)
                            rhs += P[n - r] * (pow(draws[d], static_cast<unsigned>(r)) * binom(n, r));
                        sampled.check({static_cast<long>(n), static_cast<long>(d)}, poly_subst(P[n], "x", x + MultiPoly(R(), draws[d])), rhs);
                    }
                }
                out.push_back(sampled.finish());

                // Sine kind against T_r(k,y).
                const FamilySpec sspec = make_spec(ks, v, u, Trig::Sin);
                const auto& S = ctx.table.polys(sspec);
                const auto& plain_s = ctx.table.polys(make_spec(ks, v, UFactory::one(), Trig::Sin));
                const auto Tk = substituted(ctx.table.polys(make_spec(KernelSample{num(1), num(-1)}, 0, u, Trig::None)), "x", k);
                VerdictBuilder sine(id("thm3.6", "sine_shift_T"), params_of(sspec));
                for (std::size_t n = 0; n <= N; ++n) {
                    MultiPoly rhs(R());
                    for (std::size_t r = 0; r <= n; ++r)
                        rhs += plain_s[n - r] * Tk[r] * binom(n, r);
                    sine.check({static_cast<long>(n)}, poly_subst(S[n], "x", x + k), rhs);
                }
                out.push_back(sine.finish());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Two-index Taylor shift and the double-series rearrangement

/// Σ_{j≤N} f(j)(x+y)^j/j! against Σ_{r+s≤N} f(r+s) x^s y^r/(s! r!).
inline VerdictReport verify_double_series_identity(std::string name, const std::function<GaussRational(std::size_t)>& f, std::size_t N)
{
    using namespace detail;
    VerdictBuilder verdict(id("thm3.7", "aux_double_series"), {{"f", std::move(name)}, {"truncation", std::to_string(N)}});
    const MultiPoly x = var("x"), y = var("y");
    for (std::size_t M = 0; M <= N; ++M) {
        MultiPoly lhs(R()), rhs(R());
        for (std::size_t j = 0; j <= M; ++j)
            lhs += poly_pow(x + y, static_cast<unsigned>(j)) * (f(j) / GaussRational(factorial(static_cast<unsigned>(j))));
        for (std::size_t r = 0; r <= M; ++r)
            for (std::size_t s = 0; r + s <= M; ++s)
                rhs += poly_pow(x, static_cast<unsigned>(s)) * poly_pow(y, static_cast<unsigned>(r)) *
                       (f(r + s) / GaussRational(factorial(static_cast<unsigned>(s)) * factorial(static_cast<unsigned>(r))));
        verdict.check({static_cast<long>(M)}, lhs, rhs);
    }
    return verdict.finish();
}

inline std::vector<VerdictReport> verify_two_index_shift(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    const MultiPoly x = var("x"), w = var("w");
    const auto dp = powers(w - x, N), wp = powers(w, N);
    const std::string index_note = "printed left side carries index n; comparing coefficients of t^n s^r gives index n+r";
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 1; v <= ctx.config.max_order; ++v) {
            for (const auto& u : suite_factories()) {
                const FamilySpec spec = make_spec(ks, v, u, Trig::Cos);
                const auto& P = ctx.table.polys(spec);
                const auto& Pz0 = ctx.table.polys(make_spec(ks, v, u, Trig::None));
                VerdictBuilder two(id("thm3.7", "two_index"), params_of(spec));
                VerdictBuilder remark(id("thm3.7", "z0_remark"), params_of(spec, {{"z", "0"}}));
                two.erratum(index_note);
                remark.erratum(index_note);
                for (std::size_t n = 0; n <= N; ++n) {
                    for (std::size_t r = 0; n + r <= N; ++r) {
                        MultiPoly rhs(R()), rhs0(R());
                        for (std::size_t l = 0; l <= n; ++l)
                            for (std::size_t m = 0; m <= r; ++m) {
                                const GaussRational c = binom(n, l) * binom(r, m);
                                rhs += dp[l + m] * P[n + r - l - m] * c;
                                rhs0 += wp[l + m] * Pz0[n + r - l - m] * c;
                            }
                        const std::vector<long> idx{static_cast<long>(n), static_cast<long>(r)};
                        two.check(idx, poly_subst(P[n + r], "x", w), rhs);
                        const MultiPoly at_z0 = poly_subst(P[n + r], "z", GaussRational(0));
                        remark.check(idx, poly_subst(at_z0, "x", w + x), rhs0);
                    }
                }
                two.set_max_index(static_cast<long>(N));
                remark.set_max_index(static_cast<long>(N));
                out.push_back(two.finish());
                out.push_back(remark.finish());
            }
        }
    }
    const auto B = ctx.config.golden.bernoulli_numbers;
    out.push_back(verify_double_series_identity("m", [](std::size_t m) { return GaussRational(static_cast<long>(m)); }, 6));
    out.push_back(verify_double_series_identity("m^2+1", [](std::size_t m) { return GaussRational(static_cast<long>(m * m + 1)); }, 6));
    out.push_back(verify_double_series_identity("B_m", [B](std::size_t m) { return m < B.size() ? B[m] : GaussRational(0); }, 6));
    return out;
}

// ---------------------------------------------------------------------------
// Order additivity

inline std::vector<VerdictReport> verify_order_additivity(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 0; v <= ctx.config.max_order; ++v) {
            std::vector<GaussRational> b;
            for (const auto& p : ctx.table.polys(make_spec(ks, v, UFactory::one(), Trig::None)))
                b.push_back(p.constant_term());
            for (int alpha = 0; alpha <= ctx.config.max_order; ++alpha) {
                for (const auto& u : suite_factories()) {
                    for (Trig trig : {Trig::Cos, Trig::Sin}) {
                        const FamilySpec sum = make_spec(ks, v + alpha, u, trig);
                        const auto& lhs = ctx.table.polys(sum);
                        const auto& part = ctx.table.polys(make_spec(ks, alpha, u, trig));
                        VerdictBuilder verdict(id("thm3.8", to_string(trig)), params_of(sum, {{"split", std::to_string(v) + "+" + std::to_string(alpha)}}));
                        for (std::size_t n = 0; n <= N; ++n) {
                            MultiPoly rhs(R());
                            for (std::size_t r = 0; r <= n; ++r)
                                rhs += part[n - r] * (b[r] * binom(n, r));
                            verdict.check({static_cast<long>(n)}, lhs[n], rhs);
                        }
                        out.push_back(verdict.finish());
                    }
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Splitting e^{(x+iz)t} into the cosine and sine kinds

inline std::vector<VerdictReport> verify_complex_split(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    const MultiPoly x = var("x"), z = var("z");
    const MultiPoly x_iz = x + z * GaussRational::i();
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 1; v <= ctx.config.max_order; ++v) {
            for (const auto& u : suite_factories()) {
                const FamilySpec none = make_spec(ks, v, u, Trig::None);
                const TruncSeries lhs_series = family_series(none, default_order(N), x_iz, z);
                const auto& C = ctx.table.polys(make_spec(ks, v, u, Trig::Cos));
                const auto& S = ctx.table.polys(make_spec(ks, v, u, Trig::Sin));
                VerdictBuilder split(id("thm3.9", "split"), params_of(none), "gaussian");
                VerdictBuilder z0(id("thm3.9", "z0_imaginary"), params_of(none, {{"z", "0"}}), "gaussian");
                const bool real_kernel = ks.lambda.is_real() && ks.mu.is_real();
                for (std::size_t n = 0; n <= N; ++n) {
                    const MultiPoly lhs = extract_family(lhs_series, n);
                    const long idx = static_cast<long>(n);
                    split.check({idx, 0}, lhs, C[n] + S[n] * GaussRational::i());
                    if (real_kernel) {
                        split.check({idx, 1}, real_part(lhs), C[n]);
                        split.check({idx, 2}, imag_part(lhs), S[n]);
                    }
                    z0.check({idx}, imag_part(poly_subst(lhs, "z", GaussRational(0))), MultiPoly(R()));
                }
                out.push_back(split.finish());
                out.push_back(z0.finish());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Double angle

inline std::vector<VerdictReport> verify_double_angle(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    const MultiPoly x = var("x"), z = var("z"), z2 = var("z") * num(2);
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 0; v <= ctx.config.max_order; ++v) {
            const auto& A = ctx.table.polys(make_spec(ks, v, UFactory::one(), Trig::None));
            const auto& s_plain = ctx.table.polys(make_spec(ks, v, UFactory::one(), Trig::Sin));
            for (int beta = 0; beta <= ctx.config.max_order; ++beta) {
                for (const auto& u : suite_factories()) {
                    const FamilySpec sspec = make_spec(ks, beta, u, Trig::Sin);
                    const auto S2 = substituted(ctx.table.polys(sspec), "z", z2);
                    const auto& Cb = ctx.table.polys(make_spec(ks, beta, u, Trig::Cos));
                    const auto params = params_of(sspec, {{"v", std::to_string(v)}, {"beta", std::to_string(beta)}});
                    VerdictBuilder verdict(id("thm3.10", "double_angle"), params);
                    verdict.erratum("printed right side uses index r on both factors; the Cauchy product pairs r with n-r");
                    for (std::size_t n = 0; n <= N; ++n) {
                        MultiPoly lhs(R()), rhs(R());
                        for (std::size_t r = 0; r <= n; ++r) {
                            lhs += A[n - r] * S2[r] * binom(n, r);
                            rhs += s_plain[r] * Cb[n - r] * binom(n, r);
                        }
                        verdict.check({static_cast<long>(n)}, lhs, rhs * num(2));
                    }
                    out.push_back(verdict.finish());

                    // Generating-function level.
                    const std::size_t order = default_order(N);
                    const TruncSeries plain_v = family_series(make_spec(ks, v, UFactory::one(), Trig::None), order, x, z);
                    const TruncSeries sin_v = family_series(make_spec(ks, v, UFactory::one(), Trig::Sin), order, x, z);
                    const TruncSeries lhs_gf = series_mul(plain_v, family_series(sspec, order, x, z2));
                    const TruncSeries rhs_gf = series_mul(sin_v, family_series(make_spec(ks, beta, u, Trig::Cos), order, x, z)) * num(2);
                    VerdictBuilder gf(id("thm3.10", "generating_function"), params);
                    for (std::size_t n = 0; n <= order; ++n)
                        gf.check({static_cast<long>(n)}, lhs_gf.coeff(n), rhs_gf.coeff(n));
                    out.push_back(gf.finish());
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partial derivatives

inline std::vector<VerdictReport> verify_partials(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 0; v <= ctx.config.max_order; ++v) {
            for (const auto& u : suite_factories()) {
                const FamilySpec cspec = make_spec(ks, v, u, Trig::Cos);
                const auto& C = ctx.table.polys(cspec);
                const auto& S = ctx.table.polys(make_spec(ks, v, u, Trig::Sin));
                VerdictBuilder verdict(id("thm4.1", "partials"), params_of(cspec, {{"trig", "cos+sin"}}));
                for (std::size_t n = 0; n <= N; ++n) {
                    const long i = static_cast<long>(n);
                    const GaussRational nn(i);
                    const MultiPoly zero(R());
                    const MultiPoly& c1 = n > 0 ? C[n - 1] : zero;
                    const MultiPoly& s1 = n > 0 ? S[n - 1] : zero;
                    const MultiPoly cx = poly_diff(C[n], "x"), sx = poly_diff(S[n], "x");
                    const MultiPoly cz = poly_diff(C[n], "z"), sz = poly_diff(S[n], "z");
                    verdict.check({i, 1}, cx, c1 * nn);
                    verdict.check({i, 2}, sx, s1 * nn);
                    verdict.check({i, 3}, cz, s1 * (-nn));
                    verdict.check({i, 4}, sz, c1 * nn);
                    verdict.check({i, 5}, cx, sz);
                    verdict.check({i, 6}, sx, -cz);
                }
                out.push_back(verdict.finish());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Derivatives of shifted sine members

inline std::vector<VerdictReport> verify_mixed_shift_derivative(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    const MultiPoly xa = var("x") + var("a"), zb = var("z") + var("b");
    std::vector<std::pair<MultiPoly, MultiPoly>> cs;
    for (std::size_t j = 0; j <= N; ++j)
        cs.push_back(cs_closed_form(j, "a", "b"));
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 1; v <= ctx.config.max_order; ++v) {
            for (const auto& u : suite_factories()) {
                const FamilySpec sspec = make_spec(ks, v, u, Trig::Sin);
                const auto& S = ctx.table.polys(sspec);
                const auto& C = ctx.table.polys(make_spec(ks, v, u, Trig::Cos));
                std::vector<MultiPoly> shifted;
                for (std::size_t n = 0; n <= N; ++n)
                    shifted.push_back(poly_subst(poly_subst(S[n], "x", xa), "z", zb));
                for (unsigned m = 1; m <= ctx.config.max_m; ++m) {
                    VerdictBuilder verdict(id("thm4.2", "shifted_sine_derivative"), params_of(sspec, {{"m", std::to_string(m)}}));
                    const GaussRational mf(factorial(m));
                    for (std::size_t n = 0; n <= N; ++n) {
                        MultiPoly rhs(R());
                        for (std::size_t r = m; r <= n; ++r)
                            rhs += (S[r - m] * cs[n - r].first + C[r - m] * cs[n - r].second) * (mf * binom(n, r) * binom(r, m));
                        verdict.check({static_cast<long>(n)}, poly_diff(shifted[n], "x", m), rhs);
                    }
                    out.push_back(verdict.finish());
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Splitting the kernel power inside an x-derivative

/// Runs over `kernels`; any μ = 0 sample throws DomainError.
inline std::vector<VerdictReport> verify_order_split_derivative(SuiteContext& ctx, const std::vector<KernelSample>& kernels)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    for (const auto& ks : kernels) {
        if (ks.mu.is_zero())
            throw DomainError("order split needs mu != 0");
        const GaussRational ratio = -(ks.lambda / ks.mu);
        const GaussRational neg_mu = -ks.mu;
        for (int v = 1; v <= ctx.config.max_order; ++v) {
            for (int delta = 0; delta <= v; ++delta) {
                std::vector<GaussRational> b;
                for (const auto& p : ctx.table.polys(make_spec(KernelSample{ratio, num(-1)}, delta, UFactory::one(), Trig::None)))
                    b.push_back(p.constant_term());
                const GaussRational scale = GaussRational(1) / pow(neg_mu, static_cast<unsigned>(delta));
                for (const auto& u : suite_factories()) {
                    for (Trig trig : {Trig::Cos, Trig::Sin}) {
                        const FamilySpec spec = make_spec(ks, v, u, trig);
                        const auto& P = ctx.table.polys(spec);
                        const auto& Q = ctx.table.polys(make_spec(ks, v - delta, u, trig));
                        for (unsigned m = 1; m <= ctx.config.max_m; ++m) {
                            VerdictBuilder verdict(id("thm4.3", to_string(trig)),
                                                   params_of(spec, {{"delta", std::to_string(delta)}, {"m", std::to_string(m)}}));
                            verdict.erratum("printed sum lacks the factor m! and writes the inner numbers with subscript mu; "
                                            "they are the order-delta numbers of the mu=-1 kernel at -lambda/mu");
                            const GaussRational mf(factorial(m));
                            for (std::size_t n = 0; n <= N; ++n) {
                                MultiPoly rhs(R());
                                for (std::size_t r = 0; r + m <= n; ++r)
                                    rhs += Q[n - r - m] * (mf * binom(n, r) * binom(n - r, m) * b[r]);
                                verdict.check({static_cast<long>(n)}, poly_diff(P[n], "x", m), rhs * scale);
                            }
                            out.push_back(verdict.finish());
                        }
                    }
                }
            }
        }
    }
    return out;
}

inline std::vector<VerdictReport> verify_order_split_derivative(SuiteContext& ctx)
{
    return verify_order_split_derivative(ctx, ctx.samples.kernels());
}

// ---------------------------------------------------------------------------
// Coupling with the Apostol-Genocchi family

inline std::vector<VerdictReport> verify_genocchi_coupling(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    const MultiPoly xk = var("x") + var("k"), k = var("k");
    for (const auto& ks : ctx.samples.kernels()) {
        for (int v = 0; v <= ctx.config.max_order; ++v) {
            const GaussRational two_v = pow(num(2), static_cast<unsigned>(v));
            std::vector<MultiPoly> G;
            for (const auto& p : ctx.table.polys(make_spec(ks, v, UFactory::one(), Trig::None)))
                G.push_back(p * two_v);
            for (int alpha = 0; alpha <= ctx.config.max_order; ++alpha) {
                for (const auto& u : suite_factories()) {
                    for (Trig trig : {Trig::Cos, Trig::Sin}) {
                        const FamilySpec sum = make_spec(ks, v + alpha, u, trig);
                        const auto shifted = substituted(ctx.table.polys(sum), "x", xk);
                        const auto at_k = substituted(ctx.table.polys(make_spec(ks, alpha, u, trig)), "x", k);
                        for (unsigned m = 0; m <= ctx.config.max_m; ++m) {
                            VerdictBuilder verdict(
                                id("thm4.4", to_string(trig)),
                                params_of(sum, {{"split", std::to_string(v) + "+" + std::to_string(alpha)}, {"m", std::to_string(m)}}));
                            verdict.erratum("printed right side evaluates the second factor at u; the factor split gives the argument k");
                            const GaussRational c = GaussRational(factorial(m)) / two_v;
                            for (std::size_t n = 0; n <= N; ++n) {
                                MultiPoly rhs(R());
                                for (std::size_t r = m; r <= n; ++r)
                                    rhs += G[r - m] * at_k[n - r] * (binom(n, r) * binom(r, m));
                                verdict.check({static_cast<long>(n)}, poly_diff(shifted[n], "k", m), rhs * c);
                            }
                            out.push_back(verdict.finish());
                        }
                    }
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classical identities of the Apostol-Bernoulli family

inline std::vector<GaussRational> intro_lambdas()
{
    return {GaussRational(1), GaussRational(2), GaussRational(3), GaussRational(make_rational(1, 2)), GaussRational(make_rational(5, 3))};
}

inline std::vector<VerdictReport> verify_intro_identities(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    const MultiPoly x = var("x"), y = var("y"), h = var("h");
    const auto xp = powers(x, N), hp = powers(h, N);
    auto apostol = [&](const GaussRational& l, int v) -> const std::vector<MultiPoly>& {
        return ctx.table.polys(make_spec(KernelSample{l, num(-1)}, v, UFactory::one(), Trig::None));
    };
    auto lp = [](const GaussRational& l) { return std::map<std::string, std::string>{{"lambda", l.str()}, {"mu", "-1"}}; };

    for (const auto& l : intro_lambdas()) {
        const auto& B = apostol(l, 1);

        VerdictBuilder addition(id("intro", "addition"), lp(l));
        addition.erratum("printed right side writes the shift as b; verified with a fresh symbol h");
        for (std::size_t n = 0; n <= N; ++n) {
            MultiPoly rhs(R());
            for (std::size_t k = 0; k <= n; ++k)
                rhs += B[k] * hp[n - k] * binom(n, k);
            addition.check({static_cast<long>(n)}, poly_subst(B[n], "x", x + h), rhs);
        }
        out.push_back(addition.finish());

        VerdictBuilder derivative(id("intro", "derivative"), lp(l));
        for (std::size_t n = 0; n <= N; ++n)
            for (std::size_t p = 0; p <= n; ++p)
                derivative.check({static_cast<long>(n), static_cast<long>(p)}, poly_diff(B[n], "x", static_cast<unsigned>(p)),
                                 B[n - p] * GaussRational(factorial(static_cast<unsigned>(n)) / factorial(static_cast<unsigned>(n - p))));
        out.push_back(derivative.finish());

        VerdictBuilder sums(id("intro", "sum_of_powers"), lp(l));
        for (std::size_t n = 0; n + 1 <= N && n <= 6; ++n) {
            const MultiPoly& b = B[n + 1];
            const GaussRational np1(static_cast<long>(n + 1));
            for (long m = 1; m <= 6; ++m) {
                GaussRational lhs(0), s(0);
                for (long k = 0; k < m; ++k)
                    lhs += pow(GaussRational(k), static_cast<unsigned>(n));
                for (long k = 1; k <= m; ++k)
                    s += poly_eval(b, {{"x", GaussRational(k)}});
                const GaussRational rhs = (l - GaussRational(1)) / np1 * s + (poly_eval(b, {{"x", GaussRational(m)}}) - b.constant_term()) / np1;
                sums.check({static_cast<long>(n), m}, lhs, rhs);
            }
        }
        out.push_back(sums.finish());

        for (int v = 0; v <= ctx.config.max_order + 1; ++v) {
            const auto& Bv = apostol(l, v);
            auto params = lp(l);
            params["v"] = std::to_string(v);

            VerdictBuilder expansion(id("intro", "number_expansion"), params);
            for (std::size_t n = 0; n <= N; ++n) {
                MultiPoly rhs(R());
                for (std::size_t k = 0; k <= n; ++k)
                    rhs += xp[n - k] * (Bv[k].constant_term() * binom(n, k));
                expansion.check({static_cast<long>(n)}, Bv[n], rhs);
                if (v == 0)
                    expansion.check({static_cast<long>(n), 0}, Bv[n], xp[n]);
            }
            out.push_back(expansion.finish());

            VerdictBuilder integral(id("intro", "integral"), params);
            const auto ab = ctx.samples.draws("intro/integral/" + l.str() + "/" + std::to_string(v), 4);
            for (std::size_t n = 0; n + 1 <= N; ++n) {
                const MultiPoly anti = poly_integrate(Bv[n], "x");
                for (std::size_t i = 0; i + 1 < ab.size(); i += 2) {
                    const GaussRational &a = ab[i], &b = ab[i + 1];
                    const GaussRational lhs = poly_eval(anti, {{"x", b}}) - poly_eval(anti, {{"x", a}});
                    const GaussRational rhs = (poly_eval(Bv[n + 1], {{"x", b}}) - poly_eval(Bv[n + 1], {{"x", a}})) / GaussRational(static_cast<long>(n + 1));
                    integral.check({static_cast<long>(n), static_cast<long>(i / 2)}, lhs, rhs);
                }
            }
            out.push_back(integral.finish());

            if (v >= 1) {
                const auto& Bv1 = apostol(l, v - 1);
                VerdictBuilder difference(id("intro", "difference"), params);
                for (std::size_t n = 1; n <= N; ++n) {
                    const MultiPoly lhs = poly_subst(Bv[n], "x", x + MultiPoly(R(), num(1))) * l - Bv[n];
                    difference.check({static_cast<long>(n)}, lhs, Bv1[n - 1] * GaussRational(static_cast<long>(n)));
                }
                out.push_back(difference.finish());

                VerdictBuilder lower(id("intro", "order_lowering"), params);
                for (std::size_t n = 0; n <= N; ++n) {
                    MultiPoly rhs(R());
                    for (std::size_t k = 0; k <= n; ++k)
                        rhs += B[k] * (Bv1[n - k].constant_term() * binom(n, k));
                    lower.check({static_cast<long>(n)}, Bv[n], rhs);
                }
                out.push_back(lower.finish());
            }

            for (int w = 0; w + v <= ctx.config.max_order + 1; ++w) {
                const auto& Bw = apostol(l, w);
                const auto& Bvw = apostol(l, v + w);
                auto p2 = params;
                p2["u"] = std::to_string(w);
                VerdictBuilder additivity(id("intro", "order_additivity"), p2);
                for (std::size_t n = 0; n <= N; ++n) {
                    MultiPoly rhs(R());
                    for (std::size_t k = 0; k <= n; ++k)
                        rhs += Bv[k] * poly_subst(Bw[n - k], "x", y) * binom(n, k);
                    additivity.check({static_cast<long>(n)}, poly_subst(Bvw[n], "x", x + y), rhs);
                }
                out.push_back(additivity.finish());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Golden tables

/// Sampled λ values for the closed-form table.
inline std::vector<GaussRational> closed_form_lambdas()
{
    return {GaussRational(2), GaussRational(3), GaussRational(make_rational(1, 2)), GaussRational(-1), GaussRational(make_rational(5, 3))};
}

inline std::vector<VerdictReport> verify_golden(SuiteContext& ctx)
{
    using namespace detail;
    std::vector<VerdictReport> out;
    const auto& gold = ctx.config.golden;

    VerdictBuilder numbers(id("golden", "bernoulli_numbers"), {{"n", "0.." + std::to_string(gold.bernoulli_numbers.size() - 1)}});
    const TruncSeries kernel = apostol_kernel(KernelSpec{1, num(1), num(-1)}, gold.bernoulli_numbers.size());
    for (std::size_t n = 0; n < gold.bernoulli_numbers.size(); ++n)
        numbers.check({static_cast<long>(n)}, extract_family(kernel, n).constant_term(), gold.bernoulli_numbers[n]);
    out.push_back(numbers.finish());

    VerdictBuilder polys(id("golden", "bernoulli_polynomials"), {{"n", "0.." + std::to_string(gold.bernoulli_polynomials.size() - 1)}});
    const auto& P = ctx.table.polys(make_spec(KernelSample{num(1), num(-1)}, 1, UFactory::one(), Trig::None));
    for (std::size_t n = 0; n < gold.bernoulli_polynomials.size() && n < P.size(); ++n)
        polys.check({static_cast<long>(n)}, P[n], parse_poly(R(), gold.bernoulli_polynomials[n]));
    out.push_back(polys.finish());

    for (const auto& l : closed_form_lambdas()) {
        VerdictBuilder closed(id("golden", "apostol_closed_forms"), {{"lambda", l.str()}, {"mu", "-1"}});
        closed.erratum("printed fourth closed form has a positive sign; the kernel gives -4λ(λ²+4λ+1)/(λ-1)⁴");
        const TruncSeries k = apostol_kernel(KernelSpec{1, l, num(-1)}, 7);
        for (std::size_t n = 0; n <= 5; ++n) {
            const GaussRational series_value = extract_family(k, n).constant_term();
            closed.check({static_cast<long>(n)}, apostol_bernoulli_number_closed(n, l), series_value);
            // The erratum must stay real: the printed sign has to disagree.
            const GaussRational printed = apostol_bernoulli_number_closed(n, l, apostol_closed_form_printed_sign(n));
            if ((n == 4) == (printed == series_value))
                closed.fail({static_cast<long>(n), 1}, "printed " + printed.str(), "series " + series_value.str());
        }
        out.push_back(closed.finish());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monomiality grid: lowering, differential equation, raising

inline std::vector<FamilySpec> monomiality_grid(const SuiteContext& ctx)
{
    std::vector<FamilySpec> grid;
    for (const auto& ks : ctx.samples.kernels())
        for (int v = 1; v <= 2; ++v)
            for (const auto& u : suite_factories())
                for (Trig trig : {Trig::Cos, Trig::Sin})
                    grid.push_back(detail::make_spec(ks, v, u, trig));
    return grid;
}

inline std::vector<VerdictReport> verify_lowering_grid(SuiteContext& ctx)
{
    std::vector<VerdictReport> out;
    for (const auto& spec : monomiality_grid(ctx)) {
        const auto& P = ctx.table.polys(spec);
        VerdictReport r = verify_lowering(spec, std::span<const MultiPoly>(P.data(), ctx.config.max_n + 1));
        r.identity_id = "lowering";
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<VerdictReport> verify_ode_grid(SuiteContext& ctx)
{
    std::vector<VerdictReport> out;
    for (const auto& spec : monomiality_grid(ctx)) {
        const auto& P = ctx.table.polys(spec);
        out.push_back(verify_ode(spec, std::span<const MultiPoly>(P.data(), ctx.config.max_n + 1)));
    }
    return out;
}

inline std::vector<VerdictReport> verify_raising_grid(SuiteContext& ctx)
{
    std::vector<VerdictReport> out;
    const std::size_t N = ctx.config.max_n;
    for (const auto& spec : monomiality_grid(ctx)) {
        VerdictReport gf = verify_raising_gf(spec, default_order(N));
        gf.identity_id = "raising/generating_function";
        out.push_back(std::move(gf));
        const auto& P = ctx.table.polys(spec);
        VerdictBuilder route("raising/route", family_params(spec));
        const auto raised = raising_route_polys(spec, N + 1);
        for (std::size_t n = 0; n < N; ++n)
            route.check({static_cast<long>(n + 1)}, raised[n], P[n + 1]);
        out.push_back(route.finish());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Suite driver

struct TraceEntry {
    std::string selector;
    std::string statement;
    std::string operation;
};

/// Which operation checks which statement.
inline const std::vector<TraceEntry>& traceability()
{
    static const std::vector<TraceEntry> t{
        {"thm3.1", "expansion of the T-family over T_r(x,y) with x=0 kernel members", "verify_expansion_thms"},
        {"thm3.2", "expansion of the T-family over U_r(y)", "verify_expansion_thms"},
        {"thm3.3", "implicit summation formula for the shift x -> x+k", "verify_shift_thms"},
        {"thm3.4", "shift remark with k=x", "verify_shift_thms"},
        {"thm3.5", "shift remark with k=1", "verify_shift_thms"},
        {"thm3.6", "sine kind shifted by k against T_r(k,y)", "verify_shift_thms"},
        {"thm3.7", "two-index Taylor shift in omega, double-series rearrangement, z=0 remark", "verify_two_index_shift"},
        {"thm3.8", "additivity in the kernel order", "verify_order_additivity"},
        {"thm3.9", "splitting e^{(x+iz)t} into cosine and sine kinds", "verify_complex_split"},
        {"thm3.10", "sine double-angle convolution", "verify_double_angle"},
        {"thm4.1", "first partial derivatives in x and z and their cross equalities", "verify_partials"},
        {"thm4.2", "m-th x-derivative of the sine kind shifted by (alpha, beta)", "verify_mixed_shift_derivative"},
        {"thm4.3", "m-th x-derivative with the kernel power split as delta + (v-delta)", "verify_order_split_derivative"},
        {"thm4.4", "m-th k-derivative coupled to Apostol-Genocchi members", "verify_genocchi_coupling"},
        {"intro", "classical Apostol-Bernoulli identities", "verify_intro_identities"},
        {"golden", "printed tables of numbers, polynomials and closed forms", "verify_golden"},
        {"lowering", "D_x lowers the index", "verify_lowering"},
        {"ode", "differential equation induced by raising and lowering", "verify_ode"},
        {"raising", "raising multiplier at the generating-function level", "verify_raising_gf"},
    };
    return t;
}

inline bool known_selector(std::string_view s)
{
    if (s == "all" || s == "thm3" || s == "thm4")
        return true;
    for (const auto& e : traceability())
        if (e.selector == s)
            return true;
    return false;
}

/// Selector group of a verdict id: the part before '/'.
inline std::string_view verdict_group(std::string_view identity_id) { return identity_id.substr(0, identity_id.find('/')); }

/// Whether a verdict group belongs to `selector`.
inline bool selector_covers(std::string_view selector, std::string_view group)
{
    if (selector == "all" || selector == group)
        return true;
    if (selector == "thm3" || selector == "thm4")
        return group.size() > selector.size() && group.substr(0, selector.size()) == selector && group[selector.size()] == '.';
    return false;
}

/// Runs every check whose selector matches. Unknown selectors throw UsageError.
inline std::vector<VerdictReport> run_suite(std::string_view selector, SuiteContext& ctx)
{
    if (!known_selector(selector))
        throw UsageError("unknown suite selector '" + std::string(selector) + "'");
    using Runner = std::vector<VerdictReport> (*)(SuiteContext&);
    const std::vector<std::pair<std::vector<std::string_view>, Runner>> runners{
        {{"golden"}, verify_golden},
        {{"intro"}, verify_intro_identities},
        {{"thm3.1", "thm3.2"}, verify_expansion_thms},
        {{"thm3.3", "thm3.4", "thm3.5", "thm3.6"}, verify_shift_thms},
        {{"thm3.7"}, verify_two_index_shift},
        {{"thm3.8"}, verify_order_additivity},
        {{"thm3.9"}, verify_complex_split},
        {{"thm3.10"}, verify_double_angle},
        {{"thm4.1"}, verify_partials},
        {{"thm4.2"}, verify_mixed_shift_derivative},
        {{"thm4.3"}, static_cast<Runner>(verify_order_split_derivative)},
        {{"thm4.4"}, verify_genocchi_coupling},
        {{"lowering"}, verify_lowering_grid},
        {{"ode"}, verify_ode_grid},
        {{"raising"}, verify_raising_grid},
    };
    std::vector<VerdictReport> out;
    for (const auto& [groups, run] : runners) {
        if (std::none_of(groups.begin(), groups.end(), [&](std::string_view g) { return selector_covers(selector, g); }))
            continue;
        for (auto& r : run(ctx))
            if (selector_covers(selector, verdict_group(r.identity_id)))
                out.push_back(std::move(r));
    }
    return out;
}

inline bool all_passed(const std::vector<VerdictReport>& reports)
{
    for (const auto& r : reports)
        if (!r.passed)
            return false;
    return true;
}

} // namespace apb
