#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apb/exactq.hpp"

namespace apb {

struct FailureSite {
    std::vector<long> index;
    std::string lhs;
    std::string rhs;
};

/// Outcome of one identity check over a swept index range.
struct VerdictReport {
    std::string identity_id;
    std::map<std::string, std::string> params;
    long max_index = 0;
    bool passed = true;
    std::optional<FailureSite> first_failure;
    std::optional<std::string> erratum_note;
    std::string mode = "symbolic"; ///< symbolic | sampled | gaussian
};

inline constexpr int verdict_schema_version = 1;

inline nlohmann::ordered_json to_json(const VerdictReport& r)
{
    nlohmann::ordered_json j;
    j["identity_id"] = r.identity_id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params)
        params[k] = v;
    j["params"] = params;
    j["max_index"] = r.max_index;
    j["mode"] = r.mode;
    j["passed"] = r.passed;
    j["erratum_note"] = r.erratum_note ? nlohmann::ordered_json(*r.erratum_note) : nlohmann::ordered_json(nullptr);
    if (r.first_failure) {
        j["first_failure"] = {{"index", r.first_failure->index}, {"lhs", r.first_failure->lhs}, {"rhs", r.first_failure->rhs}};
    } else {
        j["first_failure"] = nullptr;
    }
    return j;
}

/// Accumulates comparisons in sweep order; the first mismatch is kept.
class VerdictBuilder {
public:
    VerdictBuilder(std::string id, std::map<std::string, std::string> params, std::string mode = "symbolic")
    {
        report_.identity_id = std::move(id);
        report_.params = std::move(params);
        report_.mode = std::move(mode);
    }

    VerdictBuilder& erratum(std::string note)
    {
        report_.erratum_note = std::move(note);
        return *this;
    }

    /// Records lhs == rhs at `index`; returns whether it held.
    bool check(std::vector<long> index, const MultiPoly& lhs, const MultiPoly& rhs)
    {
        if (!index.empty())
            report_.max_index = std::max(report_.max_index, index.front());
        if (lhs == rhs)
            return true;
        fail(std::move(index), lhs.str(), rhs.str());
        return false;
    }

    bool check(std::vector<long> index, const GaussRational& lhs, const GaussRational& rhs)
    {
        if (!index.empty())
            report_.max_index = std::max(report_.max_index, index.front());
        if (lhs == rhs)
            return true;
        fail(std::move(index), lhs.str(), rhs.str());
        return false;
    }

    /// A failure that is not a coefficient mismatch (e.g. an uncancelled pole).
    void fail(std::vector<long> index, std::string lhs, std::string rhs)
    {
        if (!report_.first_failure)
            report_.first_failure = FailureSite{std::move(index), std::move(lhs), std::move(rhs)};
        report_.passed = false;
    }

    void set_max_index(long n) { report_.max_index = n; }

    VerdictReport finish() const { return report_; }

private:
    VerdictReport report_;
};

} // namespace apb
