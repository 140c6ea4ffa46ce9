#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fc/rint.hpp"

namespace fc {

enum class CaseTag { b1_tail, b2_case1, b2_case2, b2_case3, b2_case4, b2_case5, b2_case6, b3_local };

const char* to_string(CaseTag t);
CaseTag parse_case_tag(const std::string& s);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Interval enclose() const { return Interval(double(num)) / Interval(double(den)); }
    bool operator<(const Rational& o) const;
    bool operator==(const Rational& o) const;
};

struct SegmentPlan {
    CaseTag tag = CaseTag::b2_case1;
    Rational eta1, eta2;
    std::string target;  // decimal literal

    Interval target_enclosure() const { return parse_decimal(target); }
    std::string describe() const;
};

struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One segment per line: tag eta1_num eta1_den eta2_num eta2_den target.
// Blank lines and '#' comments are ignored.
std::vector<SegmentPlan> parse_manifest(const std::string& text);
std::vector<SegmentPlan> load_manifest(const std::string& path);
std::string format_manifest(const std::vector<SegmentPlan>& plan);

void validate(const SegmentPlan& seg);

std::string data_path(const std::string& name);

// "bundled" (data/segments.manifest), "smoke" (data/smoke.manifest), or a path.
std::vector<SegmentPlan> resolve_manifest(const std::string& spec);

// Halves of a segment (exact rational midpoint).
std::pair<SegmentPlan, SegmentPlan> bisect(const SegmentPlan& seg);

}  // namespace fc
