#include "fc/manifest.hpp"

#include <array>
#include <fstream>
#include <numeric>
#include <sstream>

namespace fc {

namespace {

constexpr std::array<std::pair<CaseTag, const char*>, 8> tag_names{{
    {CaseTag::b1_tail, "B1-tail"},
    {CaseTag::b2_case1, "B2-case1"},
    {CaseTag::b2_case2, "B2-case2"},
    {CaseTag::b2_case3, "B2-case3"},
    {CaseTag::b2_case4, "B2-case4"},
    {CaseTag::b2_case5, "B2-case5"},
    {CaseTag::b2_case6, "B2-case6"},
    {CaseTag::b3_local, "B3-local"},
}};

// a/b < c/d with positive denominators; products fit in 128 bits
int compare(const Rational& x, const Rational& y) {
    __int128 l = (__int128)x.num * y.den, r = (__int128)y.num * x.den;
    return l < r ? -1 : (l > r ? 1 : 0);
}

Rational reduce(__int128 n, __int128 d) {
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    if (d > INT64_MAX || n > INT64_MAX || n < INT64_MIN)
        throw ManifestError("rational overflow while bisecting");
    return {static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}

}  // namespace

const char* to_string(CaseTag t) {
    for (auto& [k, v] : tag_names)
        if (k == t) return v;
    return "?";
}

CaseTag parse_case_tag(const std::string& s) {
    for (auto& [k, v] : tag_names)
        if (s == v) return k;
    throw ManifestError("unknown case tag: " + s);
}

bool Rational::operator<(const Rational& o) const { return compare(*this, o) < 0; }
bool Rational::operator==(const Rational& o) const { return compare(*this, o) == 0; }

std::string SegmentPlan::describe() const {
    std::ostringstream os;
    os << to_string(tag) << " [" << eta1.num << "/" << eta1.den << ", " << eta2.num << "/"
       << eta2.den << "]";
    return os.str();
}

void validate(const SegmentPlan& seg) {
    if (seg.eta1.den <= 0 || seg.eta2.den <= 0) throw ManifestError("non-positive denominator: " + seg.describe());
    Rational zero{0, 1}, half{1, 2}, cap{101, 200};
    if (seg.eta1 < zero || !(seg.eta1 < seg.eta2))
        throw ManifestError("need 0 <= eta1 < eta2: " + seg.describe());
    const Rational& top = seg.tag == CaseTag::b3_local ? cap : half;
    if (top < seg.eta2) throw ManifestError("eta2 above the case limit: " + seg.describe());
    if (seg.tag != CaseTag::b1_tail && !(zero < seg.eta1))
        throw ManifestError("eta1 must be positive: " + seg.describe());
    Interval t = seg.target_enclosure();
    bool want_negative = seg.tag != CaseTag::b3_local && seg.tag != CaseTag::b1_tail;
    if (want_negative && !(t.hi() < 0)) throw ManifestError("target must be negative: " + seg.describe());
}

std::vector<SegmentPlan> parse_manifest(const std::string& text) {
    std::vector<SegmentPlan> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        SegmentPlan seg;
        std::string extra;
        if (!(ls >> seg.eta1.num >> seg.eta1.den >> seg.eta2.num >> seg.eta2.den >> seg.target) ||
            (ls >> extra))
            throw ManifestError("malformed manifest line " + std::to_string(lineno));
        seg.tag = parse_case_tag(tag);
        validate(seg);
        out.push_back(seg);
    }
    return out;
}

std::vector<SegmentPlan> load_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ManifestError("cannot open manifest " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_manifest(ss.str());
}

std::string format_manifest(const std::vector<SegmentPlan>& plan) {
    std::ostringstream os;
    for (const auto& s : plan)
        os << to_string(s.tag) << ' ' << s.eta1.num << ' ' << s.eta1.den << ' ' << s.eta2.num << ' '
           << s.eta2.den << ' ' << s.target << '\n';
    return os.str();
}

std::string data_path(const std::string& name) {
    if (const char* d = std::getenv("FC_DATA")) return std::string(d) + "/" + name;
    return std::string(FC_DATA_DIR) + "/" + name;
}

std::vector<SegmentPlan> resolve_manifest(const std::string& spec) {
    if (spec == "bundled") return load_manifest(data_path("segments.manifest"));
    if (spec == "smoke") return load_manifest(data_path("smoke.manifest"));
    return load_manifest(spec);
}

std::pair<SegmentPlan, SegmentPlan> bisect(const SegmentPlan& seg) {
    __int128 n = (__int128)seg.eta1.num * seg.eta2.den + (__int128)seg.eta2.num * seg.eta1.den;
    __int128 d = (__int128)2 * seg.eta1.den * seg.eta2.den;
    Rational m = reduce(n, d);
    SegmentPlan a = seg, b = seg;
    a.eta2 = m;
    b.eta1 = m;
    return {a, b};
}

}  // namespace fc
