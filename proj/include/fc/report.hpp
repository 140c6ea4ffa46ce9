#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fc/rint.hpp"

namespace fc {

// Ordered from best to worst; combining takes the worst.
enum class Verdict { certified, estimated, not_reached, failed };

const char* to_string(Verdict v);
Verdict parse_verdict(const std::string& s);
Verdict combine(Verdict a, Verdict b);
int exit_code(Verdict v);

struct Check {
    std::string name;
    bool passed;
    std::string detail;
    bool gating = true;  // non-gating checks are reported but never change the verdict
};

struct ClaimReport {
    std::string claim_id;
    std::string gamma;
    std::string mode = "certified";
    Verdict verdict = Verdict::not_reached;
    std::vector<std::pair<std::string, Interval>> enclosures;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::size_t segments_checked = 0;
    std::string worst_segment;
    double wall_seconds = 0;

    void enclose(const std::string& label, const Interval& v) { enclosures.emplace_back(label, v); }
    // records a check and folds it into the verdict (failed when not passed)
    bool check(const std::string& name, bool passed, const std::string& detail = "");
    void inform(const std::string& name, bool passed, const std::string& detail = "");
    const Check* first_failure() const;
    std::optional<Interval> find(const std::string& label) const;
};

inline constexpr const char* report_schema = "fc-report/1";

std::string to_json(const ClaimReport& r);
ClaimReport from_json(const std::string& text);

// Writes <dir>/<claim_id>-<UTC timestamp>.json without overwriting; returns the path.
std::string write_report(const ClaimReport& r, const std::string& dir);
// <dir>/<stem>-<UTC timestamp><ext>, never overwriting
std::string write_artifact(const std::string& dir, const std::string& stem, const std::string& ext,
                           const std::string& content);
std::optional<ClaimReport> load_latest(const std::string& dir, const std::string& claim_id);

std::string format_interval(const Interval& v);

}  // namespace fc
