#pragma once

// Command-line front end: `table`, `eval` and `verify`.
// Exit codes: 0 success, 1 failing verdicts, 2 usage error, 3 domain error.

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apb/theorems.hpp"

namespace apb {

enum ExitCode : int { ExitOk = 0, ExitFailed = 1, ExitUsage = 2, ExitDomain = 3 };

inline const std::vector<std::string>& cli_families()
{
    static const std::vector<std::string> f{"bernoulli-number", "bernoulli-poly", "apostol-bernoulli-closed", "apostol-bernoulli-number", "param",
                                            "param-c", "param-s", "genocchi", "cs-closed", "t-poly"};
    return f;
}

// ---------------------------------------------------------------------------
// LaTeX rendering

namespace latex {

inline std::string rational(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

inline std::string scalar(const GaussRational& g)
{
    if (g.is_real())
        return rational(g.re());
    std::string im = abs(g.im()) == 1 ? "i" : rational(abs(g.im())) + "i";
    if (sgn(g.re()) == 0)
        return (sgn(g.im()) < 0 ? "-" : "") + im;
    return rational(g.re()) + (sgn(g.im()) < 0 ? "-" : "+") + im;
}

inline std::string monomial(const VarSet& ring, Monomial m)
{
    std::string out;
    for (std::size_t s = 0; s < ring.size(); ++s) {
        const unsigned e = m.exponent(s);
        if (e == 0)
            continue;
        out += ring.name(s);
        if (e > 1)
            out += "^{" + std::to_string(e) + "}";
    }
    return out;
}

inline std::string poly(const MultiPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        const std::string mono = monomial(p.ring(), m);
        bool negative = false;
        std::string body;
        if (c.is_real()) {
            negative = sgn(c.re()) < 0;
            const Rational mag = abs(c.re());
            body = mono.empty() ? rational(mag) : (mag == 1 ? "" : rational(mag)) + mono;
        } else {
            body = "\\left(" + scalar(c) + "\\right)" + mono;
        }
        if (out.empty())
            out = negative ? "-" + body : body;
        else
            out += (negative ? "-" : "+") + body;
    }
    return out;
}

/// Descending polynomial in λ from low-first integer coefficients.
inline std::string lambda_poly(const std::vector<long>& coeffs)
{
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        const long c = coeffs[i];
        if (c == 0)
            continue;
        std::string term;
        if (i == 0)
            term = std::to_string(std::labs(c));
        else
            term = (std::labs(c) == 1 ? "" : std::to_string(std::labs(c))) + "\\lambda" + (i > 1 ? "^{" + std::to_string(i) + "}" : "");
        out += out.empty() ? (c < 0 ? "-" + term : term) : (c < 0 ? "-" : "+") + term;
    }
    return out;
}

/// The n-th closed-form Apostol-Bernoulli number as a LaTeX expression in λ.
inline std::string closed_form(std::size_t n)
{
    if (n == 0)
        return "0";
    if (n == 1)
        return "\\frac{1}{\\lambda-1}";
    const ClosedForm& f = apostol_closed_forms().at(n);
    std::string num = std::to_string(n) + "\\lambda";
    if (f.numerator.size() > 1)
        num += "(" + lambda_poly(f.numerator) + ")";
    return std::string(f.sign < 0 ? "-" : "") + "\\frac{" + num + "}{(\\lambda-1)^{" + std::to_string(n) + "}}";
}

} // namespace latex

// ---------------------------------------------------------------------------
// Configuration

struct CliFamily {
    std::string name = "param";
    int v = 1;
    int alpha = 0;
    int delta = 0;
    int m_param = 2;
    std::string lambda = "1";
    std::optional<std::string> lambda_flag;
    std::string mu = "-1";
    std::string u = "one";
    std::string appell = "one";
    bool reciprocal = false;
};

namespace cli_detail {

inline GaussRational parse_flag(const std::string& flag, const std::string& text)
{
    try {
        return GaussRational::parse(text);
    } catch (const Error& e) {
        throw UsageError("--" + flag + ": " + e.what());
    } catch (const std::exception&) {
        throw UsageError("--" + flag + ": cannot parse '" + text + "'");
    }
}

inline UFactory factory_of(const CliFamily& f)
{
    const AppellFactor a = f.appell == "genocchi" ? AppellFactor::Genocchi : AppellFactor::One;
    return u_factory(f.u, f.m_param, a, f.reciprocal);
}

inline Trig trig_of(const std::string& family)
{
    if (family == "param-c")
        return Trig::Cos;
    if (family == "param-s")
        return Trig::Sin;
    return Trig::None;
}

inline bool is_number_family(const std::string& family)
{
    return family == "bernoulli-number" || family == "apostol-bernoulli-closed" || family == "apostol-bernoulli-number";
}

/// Variables an evaluation point must bind.
inline std::vector<std::string> required_vars(const CliFamily& f)
{
    if (is_number_family(f.name))
        return {};
    if (f.name == "bernoulli-poly" || f.name == "genocchi")
        return {"x"};
    if (f.name == "cs-closed")
        return {"x", "y"};
    std::vector<std::string> vars{"x"};
    if (f.u != "one" && f.u != "miller-lee")
        vars.emplace_back("y");
    if (trig_of(f.name) != Trig::None)
        vars.emplace_back("z");
    return vars;
}

/// Exact values of one table row.
struct Row {
    std::size_t n;
    std::vector<MultiPoly> values;
};

inline std::vector<std::string> value_columns(const CliFamily& f)
{
    if (f.name == "cs-closed")
        return {"C", "S"};
    if (f.name == "apostol-bernoulli-closed")
        return {"closed form", "value"};
    return {"value"};
}

inline MultiPoly constant(const GaussRational& g) { return MultiPoly(standard_ring(), g); }

inline std::vector<Row> compute(const CliFamily& f, std::size_t lo, std::size_t hi)
{
    const GaussRational lambda = parse_flag("lambda", f.lambda);
    const GaussRational mu = parse_flag("mu", f.mu);
    const int order = f.v + f.alpha;
    std::vector<Row> rows;
    auto derive = [&](MultiPoly p) { return f.delta > 0 ? poly_diff(p, "x", static_cast<unsigned>(f.delta)) : p; };

    if (f.name == "bernoulli-number") {
        const TruncSeries k = apostol_kernel(KernelSpec{1, GaussRational(1), GaussRational(-1)}, hi);
        for (std::size_t n = lo; n <= hi; ++n)
            rows.push_back({n, {constant(extract_family(k, n).constant_term())}});
    } else if (f.name == "apostol-bernoulli-closed") {
        for (std::size_t n = lo; n <= hi; ++n)
            rows.push_back({n, {constant(apostol_bernoulli_number_closed(n, lambda))}});
    } else if (f.name == "apostol-bernoulli-number") {
        const TruncSeries k = apostol_kernel(KernelSpec{order, lambda, mu}, hi);
        for (std::size_t n = lo; n <= hi; ++n)
            rows.push_back({n, {constant(extract_family(k, n).constant_term())}});
    } else if (f.name == "cs-closed") {
        for (std::size_t n = lo; n <= hi; ++n) {
            auto [c, s] = cs_closed_form(n);
            rows.push_back({n, {c, s}});
        }
    } else {
        FamilySpec spec{KernelSpec{order, lambda, mu}, UFactory::one(), Trig::None, std::nullopt};
        if (f.name == "bernoulli-poly") {
            spec.kernel = KernelSpec{1, GaussRational(1), GaussRational(-1)};
        } else if (f.name == "genocchi") {
            spec.kernel.v = order;
        } else if (f.name == "t-poly") {
            spec.kernel = KernelSpec{0, GaussRational(1), GaussRational(-1)};
            spec.u = factory_of(f);
        } else {
            spec.u = factory_of(f);
            spec.trig = trig_of(f.name);
        }
        const auto polys = family_polys(spec, hi);
        const GaussRational scale = f.name == "genocchi" ? pow(GaussRational(2), static_cast<unsigned>(order)) : GaussRational(1);
        for (std::size_t n = lo; n <= hi; ++n)
            rows.push_back({n, {derive(polys[n] * scale)}});
    }
    return rows;
}

inline std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

inline std::string value_text(const MultiPoly& p, bool numeric)
{
    return numeric ? p.constant_term().str() : p.str();
}

inline nlohmann::ordered_json family_json(const CliFamily& f)
{
    nlohmann::ordered_json j;
    j["family"] = f.name;
    j["v"] = f.v;
    j["alpha"] = f.alpha;
    j["delta"] = f.delta;
    j["lambda"] = GaussRational::parse(f.lambda).str();
    j["mu"] = GaussRational::parse(f.mu).str();
    j["u"] = f.u;
    j["m_param"] = f.m_param;
    return j;
}

/// Note printed under tables where λ = 1, μ = -1 falls back to the Bernoulli branch.
inline std::optional<std::string> footnote(const CliFamily& f)
{
    if (f.name != "apostol-bernoulli-number" || GaussRational::parse(f.lambda) != GaussRational(1) ||
        GaussRational::parse(f.mu) != GaussRational(-1))
        return std::nullopt;
    return "lambda = 1, mu = -1: classical Bernoulli numbers of order v; the closed forms have a pole here";
}

inline int table(const CliFamily& f, std::size_t n, const std::string& format, std::ostream& out)
{
    const auto note = footnote(f);
    const bool numeric = is_number_family(f.name);
    const bool closed = f.name == "apostol-bernoulli-closed";
    // The symbolic closed forms need no λ; a value column appears once λ is given.
    const bool closed_values = closed && f.lambda_flag.has_value();
    if (closed && n > 5)
        throw DomainError("closed forms exist only for n <= 5");
    std::vector<Row> rows;
    if (!closed || closed_values)
        rows = compute(f, 0, n);

    auto columns = value_columns(f);
    if (closed && !closed_values)
        columns.pop_back();

    if (format == "json") {
        nlohmann::ordered_json j = family_json(f);
        if (closed && !closed_values)
            j.erase("lambda");
        j["rows"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i <= n; ++i) {
            nlohmann::ordered_json r;
            r["n"] = i;
            if (closed)
                r["closed_form"] = latex::closed_form(i);
            if (!rows.empty()) {
                const Row& row = rows[i];
                if (row.values.size() == 2) {
                    r["C"] = row.values[0].str();
                    r["S"] = row.values[1].str();
                } else {
                    r["value"] = value_text(row.values[0], numeric);
                }
            }
            j["rows"].push_back(r);
        }
        if (note)
            j["note"] = *note;
        out << j.dump(2) << "\n";
        return ExitOk;
    }

    if (format == "latex") {
        out << "\\begin{tabular}{r" << std::string(columns.size(), 'l') << "}\n\\hline\n$n$";
        for (const auto& c : columns)
            out << " & " << c;
        out << " \\\\\n\\hline\n";
        for (std::size_t i = 0; i <= n; ++i) {
            out << i;
            if (closed)
                out << " & $" << latex::closed_form(i) << "$";
            if (!rows.empty())
                for (const auto& v : rows[i].values)
                    out << " & $" << latex::poly(v) << "$";
            out << " \\\\\n";
        }
        out << "\\hline\n\\end{tabular}\n";
        if (note)
            out << "\\par\\footnotesize " << *note << "\n";
        return ExitOk;
    }

    const bool csv = format == "csv";
    if (csv) {
        out << "n";
        for (const auto& c : columns)
            out << "," << csv_cell(c);
        out << "\n";
    }
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::string> cells;
        if (closed)
            cells.push_back(latex::closed_form(i));
        if (!rows.empty())
            for (const auto& v : rows[i].values)
                cells.push_back(value_text(v, numeric));
        out << i;
        for (const auto& c : cells)
            out << (csv ? "," + csv_cell(c) : "\t" + c);
        out << "\n";
    }
    if (note)
        out << "# " << *note << "\n";
    return ExitOk;
}

inline int eval(const CliFamily& f, std::size_t n, const Assignment& point, const std::string& format, std::ostream& out)
{
    for (const auto& v : required_vars(f))
        if (!point.count(v))
            throw UsageError("family '" + f.name + "' needs --" + v);
    if (f.name == "apostol-bernoulli-closed" && !f.lambda_flag)
        throw UsageError("family 'apostol-bernoulli-closed' needs --lambda");
    if (f.name == "apostol-bernoulli-closed" && n > 5)
        throw DomainError("closed forms exist only for n <= 5");
    const Row row = compute(f, n, n).front();
    std::vector<GaussRational> values;
    for (const auto& p : row.values)
        values.push_back(poly_eval(p, point));
    if (format == "json") {
        nlohmann::ordered_json j = family_json(f);
        j["n"] = n;
        nlohmann::ordered_json at = nlohmann::ordered_json::object();
        for (const auto& [k, v] : point)
            at[k] = v.str();
        j["point"] = at;
        if (values.size() == 2) {
            j["C"] = values[0].str();
            j["S"] = values[1].str();
        } else {
            j["value"] = values[0].str();
        }
        out << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < values.size(); ++i)
            out << (values.size() == 2 ? (i == 0 ? "C\t" : "S\t") : "") << values[i].str() << "\n";
    }
    return ExitOk;
}

inline bool verdict_less(const VerdictReport& a, const VerdictReport& b)
{
    if (a.identity_id != b.identity_id)
        return a.identity_id < b.identity_id;
    return a.params < b.params;
}

inline int verify(const std::string& suite, const SuiteConfig& config, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    SuiteContext ctx(config);
    std::vector<VerdictReport> reports = run_suite(suite, ctx);
    std::stable_sort(reports.begin(), reports.end(), verdict_less);
    const auto failed = static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.passed; }));

    nlohmann::ordered_json j;
    j["schema_version"] = verdict_schema_version;
    j["suite"] = suite;
    j["seed"] = config.seed;
    j["max_n"] = config.max_n;
    j["passed"] = failed == 0;
    j["counts"] = {{"total", reports.size()}, {"passed", reports.size() - failed}, {"failed", failed}};
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& e : traceability())
        if (selector_covers(suite, e.selector))
            trace.push_back({{"selector", e.selector}, {"statement", e.statement}, {"operation", e.operation}});
    j["traceability"] = trace;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const auto& r : reports)
        if (failed == 0 || !r.passed)
            verdicts.push_back(to_json(r));
    j["verdicts"] = verdicts;
    out << j.dump(1) << "\n";

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "verify: " << reports.size() - failed << "/" << reports.size() << " verdicts passed in " << std::fixed << std::setprecision(2)
        << seconds << " s\n";
    return failed == 0 ? ExitOk : ExitFailed;
}

} // namespace cli_detail

/// Runs the command line `args` (without the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Parametric Apostol-Bernoulli families: tables, evaluation and identity verification", "apb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "apb 1.0");

    CliFamily fam;
    std::size_t n = 5, max_n = 8;
    std::string format = "plain", suite = "all";
    std::uint64_t seed = 0;
    std::optional<std::string> x, y, z;
    int order_bound = 2, m_bound = 2;

    auto add_family_options = [&](CLI::App* sub) {
        sub->add_option("--family", fam.name, "Family to emit")->check(CLI::IsMember(cli_families()))->capture_default_str();
        sub->add_option("--n", n, "Largest index (table) or the index (eval)")->capture_default_str();
        sub->add_option("--v", fam.v, "Kernel order")->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_option("--alpha", fam.alpha, "Extra kernel order, giving order v+alpha")->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_option("--delta", fam.delta, "Apply the delta-th x-derivative to every member")->check(CLI::NonNegativeNumber)->capture_default_str();
        sub->add_option("--m-param", fam.m_param, "Parameter m of the U factory")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--lambda", fam.lambda_flag, "Kernel lambda as p/q");
        sub->add_option("--mu", fam.mu, "Kernel mu as p/q")->capture_default_str();
        sub->add_option("--u", fam.u, "U factory")->check(CLI::IsMember({"one", "gould-hopper", "hermite-appell", "miller-lee", "trunc-exp"}))->capture_default_str();
        sub->add_option("--appell", fam.appell, "Appell factor of hermite-appell")->check(CLI::IsMember({"one", "genocchi"}))->capture_default_str();
        sub->add_flag("--reciprocal-miller-lee", fam.reciprocal, "Use 1/(1-yt)^(m+1) for miller-lee");
    };

    CLI::App* table = app.add_subcommand("table", "Emit rows n = 0..N of a family");
    add_family_options(table);
    table->add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "csv", "json", "latex"}))->capture_default_str();

    CLI::App* eval = app.add_subcommand("eval", "Evaluate P_n at an exact point");
    add_family_options(eval);
    eval->add_option("--x", x, "x as p/q");
    eval->add_option("--y", y, "y as p/q");
    eval->add_option("--z", z, "z as p/q");
    eval->add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "json"}))->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "Run the identity verification suite and print JSON verdicts");
    verify->add_option("--suite", suite, "Selector: all, intro, golden, thm3, thm4, thm3.1..thm3.10, thm4.1..thm4.4, ode, raising, lowering")
        ->capture_default_str();
    verify->add_option("--max-n", max_n, "Largest swept index")->check(CLI::Range(1, 40))->capture_default_str();
    verify->add_option("--seed", seed, "Seed of the sampled parameters")->capture_default_str();
    verify->add_option("--alpha", order_bound, "Bound on the orders v, alpha, beta, delta")->check(CLI::Range(0, 4))->capture_default_str();
    verify->add_option("--m-param", m_bound, "Bound on derivative orders m")->check(CLI::Range(0, 4))->capture_default_str();
    verify->add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForVersion&) {
        out << "apb 1.0\n";
        return ExitOk;
    } catch (const CLI::Success&) {
        out << app.help();
        return ExitOk;
    } catch (const CLI::ParseError& e) {
        err << "apb: " << e.what() << "\n";
        return ExitUsage;
    }

    try {
        if (fam.lambda_flag)
            fam.lambda = *fam.lambda_flag;
        cli_detail::parse_flag("lambda", fam.lambda);
        cli_detail::parse_flag("mu", fam.mu);
        if (table->parsed())
            return cli_detail::table(fam, n, format, out);
        if (eval->parsed()) {
            Assignment point;
            if (x)
                point["x"] = cli_detail::parse_flag("x", *x);
            if (y)
                point["y"] = cli_detail::parse_flag("y", *y);
            if (z)
                point["z"] = cli_detail::parse_flag("z", *z);
            return cli_detail::eval(fam, n, point, format, out);
        }
        SuiteConfig config;
        config.max_n = max_n;
        config.seed = seed;
        config.max_order = order_bound;
        config.max_m = static_cast<unsigned>(m_bound);
        return cli_detail::verify(suite, config, out, err);
    } catch (const UsageError& e) {
        err << "apb: usage: " << e.what() << "\n";
        return ExitUsage;
    } catch (const VariableError& e) {
        err << "apb: usage: " << e.what() << "\n";
        return ExitUsage;
    } catch (const Error& e) {
        err << "apb: domain: " << e.what() << "\n";
        return ExitDomain;
    }
}

} // namespace apb
