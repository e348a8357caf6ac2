// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "apb/cli.hpp"

using namespace apb;

namespace {

const VarSet& ring() { return standard_ring(); }
MultiPoly P(std::string_view s) { return parse_poly(ring(), s); }
GaussRational Q(long p, long q = 1) { return GaussRational(make_rational(p, q)); }

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// Bernoulli numbers from Σ_{k≤n} C(n+1,k) B_k = 0, independent of the series engine.
std::vector<GaussRational> recurrence_bernoulli(std::size_t n_max)
{
    std::vector<GaussRational> b{GaussRational(1)};
    for (std::size_t n = 1; n <= n_max; ++n) {
        GaussRational s(0);
        for (std::size_t k = 0; k < n; ++k)
            s += GaussRational(binomial(static_cast<long>(n + 1), static_cast<long>(k))) * b[k];
        b.push_back(-s / GaussRational(static_cast<long>(n + 1)));
    }
    return b;
}

std::vector<FamilySpec> monomiality_grid()
{
    std::vector<FamilySpec> grid;
    for (const auto& [l, m] : std::vector<std::pair<GaussRational, GaussRational>>{{Q(1), Q(-1)}, {Q(2), Q(-1)}, {Q(1), Q(1)}, {Q(3), Q(2)}})
        for (int v = 1; v <= 2; ++v)
            for (const auto& u : suite_factories())
                for (Trig t : {Trig::Cos, Trig::Sin})
                    grid.push_back(FamilySpec{KernelSpec{v, l, m}, u, t, std::nullopt});
    return grid;
}

Outcome golden_numbers()
{
    Outcome o;
    const auto printed = golden::bernoulli_numbers();
    o.require(printed.size() == 19, "table must list B0..B18");
    for (std::size_t n = 0; n < printed.size(); ++n)
        o.require(bernoulli_number(n) == printed[n], "B" + std::to_string(n) + " = " + bernoulli_number(n).str() + ", printed " + printed[n].str());
    return o;
}

Outcome golden_closed_forms()
{
    Outcome o;
    for (const auto& l : closed_form_lambdas()) {
        const TruncSeries k = apostol_kernel(KernelSpec{1, l, GaussRational(-1)}, 7);
        for (std::size_t n = 0; n <= 5; ++n)
            o.require(apostol_bernoulli_number_closed(n, l) == extract_family(k, n).constant_term(),
                      "n=" + std::to_string(n) + " lambda=" + l.str());
    }
    return o;
}

Outcome golden_polynomials()
{
    Outcome o;
    const auto printed = golden::bernoulli_polynomials();
    o.require(printed.size() == 5, "table must list B0(x)..B4(x)");
    for (std::size_t n = 0; n < printed.size(); ++n)
        o.require(bernoulli_poly(n) == P(printed[n]), "B" + std::to_string(n) + "(x)");
    return o;
}

Outcome identity_suite()
{
    Outcome o;
    std::ostringstream out, err;
    const int code = run_cli({"verify", "--suite", "all", "--max-n", "8", "--seed", "0"}, out, err);
    o.require(code == ExitOk, "exit code " + std::to_string(code));
    const auto doc = nlohmann::json::parse(out.str());
    o.require(doc["passed"].get<bool>(), "suite reported failures");

    std::set<std::string> noted, groups;
    std::set<std::string> sum_lambdas;
    for (const auto& v : doc["verdicts"]) {
        const std::string id = v["identity_id"];
        groups.insert(id.substr(0, id.find('/')));
        if (!v["erratum_note"].is_null())
            noted.insert(id.substr(0, id.find('/')));
        if (id == "intro/sum_of_powers" && v["passed"].get<bool>() && v["max_index"].get<long>() >= 6)
            sum_lambdas.insert(v["params"]["lambda"].get<std::string>());
    }
    for (const auto& e : traceability())
        o.require(groups.count(e.selector) == 1, "no verdicts for " + e.selector);
    for (const char* g : {"thm3.7", "thm3.10", "thm4.3", "thm4.4"})
        o.require(noted.count(g) == 1, std::string("missing erratum note for ") + g);
    for (const char* l : {"2", "3", "1/2", "1"})
        o.require(sum_lambdas.count(l) == 1, std::string("sum of powers not covered at lambda ") + l);
    return o;
}

Outcome monomiality()
{
    Outcome o;
    for (const auto& spec : monomiality_grid()) {
        o.require(verify_lowering(spec, 8).passed, "lowering " + spec.key());
        o.require(verify_ode(spec, 8).passed, "ode " + spec.key());
        o.require(verify_raising_gf(spec, default_order(8)).passed, "raising " + spec.key());
        const auto route = raising_route_polys(spec, 8);
        const auto direct = family_polys(spec, 8);
        for (std::size_t n = 0; n < 8; ++n)
            o.require(route[n] == direct[n + 1], "raising route " + spec.key() + " n=" + std::to_string(n + 1));
    }
    return o;
}

Outcome cs_oracle()
{
    Outcome o;
    const std::size_t N = 12;
    const TruncSeries ex = exp_linear(P("x"), N);
    const TruncSeries c = series_mul(ex, cos_series(P("y"), N));
    const TruncSeries s = series_mul(ex, sin_series(P("y"), N));
    for (std::size_t n = 0; n <= N; ++n) {
        const auto [cn, sn] = cs_closed_form(n);
        o.require(cn == extract_family(c, n) && sn == extract_family(s, n), "n=" + std::to_string(n));
    }
    return o;
}

Outcome degeneracy_ladder()
{
    Outcome o;
    const std::size_t N = 10;
    const auto b = recurrence_bernoulli(N);
    const MultiPoly x = P("x");
    const SampleSet samples(0);
    for (const auto& ks : samples.kernels())
        for (const auto& u : suite_factories())
            for (Trig t : {Trig::Cos, Trig::Sin}) {
                const FamilySpec spec{KernelSpec{1, ks.lambda, ks.mu}, u, t, std::nullopt};
                const auto full = family_polys(spec, N);
                const auto none = family_polys(FamilySpec{spec.kernel, u, Trig::None, std::nullopt}, N);
                for (std::size_t n = 0; n <= N; ++n)
                    o.require(poly_subst(full[n], "z", GaussRational(0)) == (t == Trig::Cos ? none[n] : MultiPoly(ring())),
                              "z=0 " + spec.key() + " n=" + std::to_string(n));
            }
    for (const auto& l : closed_form_lambdas()) {
        const auto fam = family_polys(FamilySpec{KernelSpec{1, l, GaussRational(-1)}, UFactory::one(), Trig::None, std::nullopt}, N);
        // λ·B_n(x+1) - B_n(x) = n x^{n-1} with B_0 = 0 pins the λ ≠ 1 family down.
        for (std::size_t n = 0; n <= N; ++n) {
            o.require(fam[n] == apostol_bernoulli_poly(n, 1, l), "mu=-1 lambda=" + l.str());
            const MultiPoly lhs = poly_subst(fam[n], "x", x + P("1")) * l - fam[n];
            o.require(lhs == (n == 0 ? MultiPoly(ring()) : poly_pow(x, static_cast<unsigned>(n - 1)) * GaussRational(static_cast<long>(n))),
                      "difference lambda=" + l.str() + " n=" + std::to_string(n));
        }
    }
    for (std::size_t n = 0; n <= N; ++n) {
        MultiPoly classical(ring());
        for (std::size_t k = 0; k <= n; ++k)
            classical += poly_pow(x, static_cast<unsigned>(n - k)) * (GaussRational(binomial(static_cast<long>(n), static_cast<long>(k))) * b[k]);
        o.require(bernoulli_poly(n) == classical, "lambda=1 n=" + std::to_string(n));
        o.require(family_poly(apostol_spec(0, Q(3)), n) == poly_pow(x, static_cast<unsigned>(n)), "v=0 n=" + std::to_string(n));
    }
    return o;
}

Outcome fault_injection()
{
    Outcome o;
    auto first_failure = [](const std::vector<VerdictReport>& rs, const std::string& id) -> std::optional<std::vector<long>> {
        for (const auto& r : rs)
            if (r.identity_id == id && !r.passed)
                return r.first_failure->index;
        return std::nullopt;
    };

    {
        SuiteConfig c;
        c.golden.bernoulli_numbers[12] = c.golden.bernoulli_numbers[12] + Q(1, 1000);
        SuiteContext ctx(c);
        const auto at = first_failure(run_suite("golden", ctx), "golden/bernoulli_numbers");
        o.require(at && at->front() == 12, "corrupted B12 not localized");
    }
    {
        SuiteConfig c;
        c.golden.bernoulli_polynomials[3] = "x^3 - 3/2*x^2 + 1/2*x + 1/1000";
        SuiteContext ctx(c);
        const auto at = first_failure(run_suite("golden", ctx), "golden/bernoulli_polynomials");
        o.require(at && at->front() == 3, "corrupted B3(x) not localized");
    }
    {
        SuiteContext ctx;
        const FamilySpec worked{KernelSpec{1, Q(1), Q(-1)}, UFactory::one(), Trig::Cos, std::nullopt};
        ctx.table.inject_fault(worked, 5, P("1/1000*x"));
        const auto reports = run_suite("lowering", ctx);
        std::size_t failed = 0;
        for (const auto& r : reports)
            if (!r.passed) {
                ++failed;
                o.require(r.params == family_params(worked), "unimplicated lowering verdict failed");
                o.require(r.first_failure->index == std::vector<long>{5}, "corrupted P5 localized at wrong index");
            }
        o.require(failed == 1, "corrupted P5 produced " + std::to_string(failed) + " failing lowering verdicts");
    }
    return o;
}

Outcome complex_split()
{
    Outcome o;
    SuiteContext ctx;
    std::set<std::string> factories;
    for (const auto& r : run_suite("thm3.9", ctx)) {
        o.require(r.passed, r.identity_id + " " + r.params.at("u"));
        o.require(r.mode == "gaussian", "mode " + r.mode);
        o.require(r.max_index == 8, "swept to " + std::to_string(r.max_index));
        factories.insert(r.params.at("u"));
    }
    o.require(factories.count("one") && factories.count("gould-hopper(2)"), "needs at least two U factories");
    // Imaginary part at z = 0, built directly.
    const FamilySpec gh{KernelSpec{2, Q(3), Q(2)}, UFactory::gould_hopper(2), Trig::None, std::nullopt};
    const TruncSeries s = family_series(gh, default_order(8), P("x") + P("z") * GaussRational::i(), P("z"));
    for (std::size_t n = 0; n <= 8; ++n)
        o.require(imag_part(poly_subst(extract_family(s, n), "z", GaussRational(0))).is_zero(), "imaginary part at z=0");
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "golden Bernoulli numbers B0..B18", 1, golden_numbers},
        {2, "closed-form Apostol-Bernoulli numbers vs kernel", 1, golden_closed_forms},
        {3, "golden Bernoulli polynomials B0(x)..B4(x)", 1, golden_polynomials},
        {4, "identity suite: verify --suite all --max-n 8 --seed 0", 120, identity_suite},
        {5, "monomiality: lowering, ode and raising over the grid", 60, monomiality},
        {6, "C_n/S_n closed forms vs series, n <= 12", 1, cs_oracle},
        {7, "degeneracy ladder, n <= 10", 60, degeneracy_ladder},
        {8, "fault injection: B12, P5, B3(x)", 60, fault_injection},
        {9, "complex split with Gaussian scalars, n <= 8", 60, complex_split},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && s >= c.budget_s) {
            o.ok = false;
            o.detail = "over time budget";
        }
        all = all && o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed << std::setprecision(2) << s << " s / "
                  << std::setprecision(0) << c.budget_s << " s)" << (o.ok ? "" : ": " + o.detail) << std::endl;
    }
    return all ? 0 : 1;
}
