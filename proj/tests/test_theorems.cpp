#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "apb/theorems.hpp"

using namespace apb;

namespace {

const VarSet& ring() { return standard_ring(); }
MultiPoly P(std::string_view s) { return parse_poly(ring(), s); }
GaussRational Q(long p, long q = 1) { return GaussRational(make_rational(p, q)); }

SuiteContext small_context(std::size_t max_n = 5)
{
    SuiteConfig c;
    c.max_n = max_n;
    return SuiteContext(c);
}

const FamilySpec worked_cos{KernelSpec{1, GaussRational(1), GaussRational(-1)}, UFactory::one(), Trig::Cos, std::nullopt};

std::vector<const VerdictReport*> failures(const std::vector<VerdictReport>& rs)
{
    std::vector<const VerdictReport*> out;
    for (const auto& r : rs)
        if (!r.passed)
            out.push_back(&r);
    return out;
}

} // namespace

TEST(Samples, DeterministicPerSeedAndTag)
{
    const SampleSet a(0), b(0), c(7);
    EXPECT_EQ(a.draws("k", 5), b.draws("k", 5));
    EXPECT_NE(a.draws("k", 5), a.draws("other", 5));
    EXPECT_NE(a.draws("k", 5), c.draws("k", 5));
    for (const auto& q : a.draws("k", 50))
        EXPECT_FALSE(q.is_zero());
    EXPECT_EQ(a.kernels().size(), 5u);
    EXPECT_EQ(a.kernels()[0].branch(), "lambda+mu=0");
    EXPECT_EQ(a.kernels()[3].branch(), "lambda+mu!=0");
}

TEST(Expansion, GouldHopperExample)
{
    const FamilySpec gh{KernelSpec{1, Q(1), Q(-1)}, UFactory::gould_hopper(2), Trig::Cos, std::nullopt};
    EXPECT_EQ(family_poly(gh, 2), P("x^2 - x + 1/6 - z^2 + 2*y"));
}

TEST(DoubleSeries, BruteForce)
{
    const auto r = verify_double_series_identity("m", [](std::size_t m) { return GaussRational(static_cast<long>(m)); }, 4);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.max_index, 4);
    EXPECT_TRUE(verify_double_series_identity("2^m", [](std::size_t m) { return pow(Q(2), static_cast<unsigned>(m)); }, 5).passed);
}

TEST(Suite, EveryGroupPassesAtSmallBound)
{
    for (const auto& e : traceability()) {
        SuiteContext ctx = small_context(5);
        const auto reports = run_suite(e.selector, ctx);
        EXPECT_FALSE(reports.empty()) << e.selector;
        for (const auto& r : reports) {
            EXPECT_TRUE(r.passed) << r.identity_id << " " << nlohmann::json(to_json(r)).dump();
            EXPECT_EQ(verdict_group(r.identity_id), e.selector);
        }
    }
}

TEST(Suite, UnknownSelector)
{
    SuiteContext ctx = small_context();
    EXPECT_THROW(run_suite("bogus", ctx), UsageError);
    EXPECT_THROW(run_suite("thm3.11", ctx), UsageError);
}

TEST(Suite, ChapterSelectorsCollectTheirMembers)
{
    SuiteContext ctx = small_context(3);
    std::set<std::string> groups;
    for (const auto& r : run_suite("thm4", ctx))
        groups.insert(std::string(verdict_group(r.identity_id)));
    EXPECT_EQ(groups, (std::set<std::string>{"thm4.1", "thm4.2", "thm4.3", "thm4.4"}));
}

TEST(Suite, ErratumNotesWhereDocumented)
{
    SuiteContext ctx = small_context(3);
    std::set<std::string> with_notes;
    for (const auto& sel : {"thm3.4", "thm3.5", "thm3.7", "thm3.10", "thm4.3", "thm4.4", "golden"})
        for (const auto& r : run_suite(sel, ctx))
            if (r.erratum_note) {
                with_notes.insert(std::string(verdict_group(r.identity_id)));
                // Notes describe the discrepancy without citing numbered statements.
                EXPECT_FALSE(std::regex_search(*r.erratum_note, std::regex(R"(\(\d+\.\d+\))"))) << *r.erratum_note;
            }
    EXPECT_EQ(with_notes, (std::set<std::string>{"thm3.4", "thm3.5", "thm3.7", "thm3.10", "thm4.3", "thm4.4", "golden"}));

    for (const auto& r : run_suite("thm3.1", ctx))
        EXPECT_FALSE(r.erratum_note);
}

TEST(Suite, GaussianModeFlag)
{
    SuiteContext ctx = small_context(4);
    const auto reports = run_suite("thm3.9", ctx);
    ASSERT_FALSE(reports.empty());
    for (const auto& r : reports)
        EXPECT_EQ(r.mode, "gaussian");
}

TEST(Suite, DeterministicReports)
{
    SuiteContext a = small_context(4), b = small_context(4);
    const auto ra = run_suite("thm3.3", a), rb = run_suite("thm3.3", b);
    ASSERT_EQ(ra.size(), rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i)
        EXPECT_EQ(to_json(ra[i]).dump(), to_json(rb[i]).dump());
}

TEST(Suite, SymbolicAndSampledAgree)
{
    SuiteContext ctx = small_context(5);
    std::size_t symbolic = 0, sampled = 0;
    for (const auto& r : run_suite("thm3.3", ctx)) {
        EXPECT_TRUE(r.passed);
        (r.mode == "sampled" ? sampled : symbolic) += 1;
    }
    EXPECT_EQ(symbolic, sampled);

    // A corrupted member breaks both forms at the same index.
    SuiteContext bad = small_context(5);
    bad.table.inject_fault(worked_cos, 3, P("1/1000*x"));
    std::map<std::string, long> first;
    for (const auto& r : run_suite("thm3.3", bad))
        if (!r.passed) {
            EXPECT_EQ(r.params.at("lambda"), "1");
            first[r.mode] = r.first_failure->index.front();
        }
    EXPECT_EQ(first, (std::map<std::string, long>{{"sampled", 3}, {"symbolic", 3}}));
}

TEST(FaultInjection, LocalizesCorruptedMember)
{
    SuiteContext ctx = small_context(6);
    ctx.table.inject_fault(worked_cos, 5, P("1/1000*x"));
    const auto reports = run_suite("lowering", ctx);
    const auto bad = failures(reports);
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0]->params, family_params(worked_cos));
    EXPECT_EQ(bad[0]->first_failure->index, std::vector<long>{5});
}

TEST(FaultInjection, OnlyImplicatedVerdictsFail)
{
    SuiteContext ctx = small_context(5);
    const FamilySpec gh{KernelSpec{2, Q(3), Q(2)}, UFactory::gould_hopper(2), Trig::Sin, std::nullopt};
    ctx.table.inject_fault(gh, 4, P("z"));
    for (const auto& r : run_suite("thm4.1", ctx)) {
        const bool implicated = r.params.at("lambda") == "3" && r.params.at("v") == "2" && r.params.at("u") == gh.u.name();
        EXPECT_EQ(r.passed, !implicated) << nlohmann::json(to_json(r)).dump();
        if (!r.passed)
            EXPECT_EQ(r.first_failure->index.front(), 4);
    }
}

TEST(FaultInjection, GoldenTables)
{
    SuiteConfig c;
    c.max_n = 4;
    c.golden.bernoulli_numbers[12] += GaussRational(make_rational(1, 1000));
    c.golden.bernoulli_polynomials[3] = "x^3 - 3/2*x^2 + 1/2*x + 1/1000";
    SuiteContext ctx(c);
    std::map<std::string, long> first;
    for (const auto& r : run_suite("golden", ctx))
        if (!r.passed)
            first[r.identity_id] = r.first_failure->index.front();
    EXPECT_EQ(first, (std::map<std::string, long>{{"golden/bernoulli_numbers", 12}, {"golden/bernoulli_polynomials", 3}}));
}

TEST(Traceability, OneOperationPerSelector)
{
    std::set<std::string> selectors;
    for (const auto& e : traceability()) {
        EXPECT_TRUE(selectors.insert(e.selector).second) << e.selector;
        EXPECT_FALSE(e.operation.empty());
        EXPECT_TRUE(known_selector(e.selector));
    }
    for (int i = 1; i <= 10; ++i)
        EXPECT_TRUE(selectors.count("thm3." + std::to_string(i))) << i;
    for (int i = 1; i <= 4; ++i)
        EXPECT_TRUE(selectors.count("thm4." + std::to_string(i))) << i;
}

TEST(OrderSplit, RequiresNonzeroMu)
{
    SuiteContext ctx = small_context(3);
    EXPECT_THROW(verify_order_split_derivative(ctx, {KernelSample{Q(2), Q(0)}}), DomainError);
    EXPECT_FALSE(verify_order_split_derivative(ctx, {KernelSample{Q(1), Q(1)}}).empty());
}
