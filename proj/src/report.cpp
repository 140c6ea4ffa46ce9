#include "fc/report.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fc {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::estimated: return "estimated";
        case Verdict::not_reached: return "not_reached";
        case Verdict::failed: return "failed";
    }
    return "?";
}

Verdict parse_verdict(const std::string& s) {
    for (Verdict v : {Verdict::certified, Verdict::estimated, Verdict::not_reached, Verdict::failed})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown verdict: " + s);
}

Verdict combine(Verdict a, Verdict b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::certified:
        case Verdict::estimated: return 0;
        case Verdict::failed: return 1;
        case Verdict::not_reached: return 2;
    }
    return 1;
}

bool ClaimReport::check(const std::string& name, bool passed, const std::string& detail) {
    checks.push_back({name, passed, detail});
    if (!passed) verdict = combine(verdict, Verdict::failed);
    return passed;
}

void ClaimReport::inform(const std::string& name, bool passed, const std::string& detail) {
    checks.push_back({name, passed, detail, false});
}

const Check* ClaimReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed && c.gating) return &c;
    return nullptr;
}

std::optional<Interval> ClaimReport::find(const std::string& label) const {
    for (const auto& [k, v] : enclosures)
        if (k == label) return v;
    return std::nullopt;
}

std::string format_interval(const Interval& v) { return "[" + render(v.lo()) + ", " + render(v.hi()) + "]"; }

std::string to_json(const ClaimReport& r) {
    ordered_json j;
    j["schema"] = report_schema;
    j["claim_id"] = r.claim_id;
    j["gamma"] = r.gamma;
    j["mode"] = r.mode;
    j["verdict"] = to_string(r.verdict);
    j["enclosures"] = ordered_json::array();
    for (const auto& [label, v] : r.enclosures)
        j["enclosures"].push_back({{"label", label}, {"value", {render(v.lo()), render(v.hi())}}});
    j["checks"] = ordered_json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"gating", c.gating}});
    j["notes"] = r.notes;
    j["segments_checked"] = r.segments_checked;
    j["worst_segment"] = r.worst_segment;
    j["wall_seconds"] = r.wall_seconds;
    return j.dump(2) + "\n";
}

ClaimReport from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    if (j.value("schema", "") != report_schema) throw std::runtime_error("unexpected report schema");
    ClaimReport r;
    r.claim_id = j.at("claim_id").get<std::string>();
    r.gamma = j.at("gamma").get<std::string>();
    r.mode = j.value("mode", "certified");
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    for (const auto& e : j.at("enclosures")) {
        auto v = e.at("value");
        r.enclosures.emplace_back(e.at("label").get<std::string>(),
                                  Interval(std::stod(v[0].get<std::string>()), std::stod(v[1].get<std::string>())));
    }
    for (const auto& c : j.value("checks", ordered_json::array()))
        r.checks.push_back({c.at("name"), c.at("passed"), c.at("detail"), c.value("gating", true)});
    r.notes = j.value("notes", std::vector<std::string>{});
    r.segments_checked = j.at("segments_checked").get<std::size_t>();
    r.worst_segment = j.at("worst_segment").get<std::string>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
}

namespace {

std::string utc_stamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%S", &tm);
    auto us = std::chrono::duration_cast<std::chrono::microseconds>(now.time_since_epoch()).count() % 1000000;
    char full[48];
    std::snprintf(full, sizeof full, "%s.%06lldZ", buf, static_cast<long long>(us));
    return full;
}

}  // namespace

std::string write_artifact(const std::string& dir, const std::string& stem, const std::string& ext,
                           const std::string& content) {
    fs::create_directories(dir);
    std::string base = (fs::path(dir) / (stem + "-" + utc_stamp())).string();
    std::string path = base + ext;
    for (int k = 1; fs::exists(path); ++k) path = base + "-" + std::to_string(k) + ext;
    std::ofstream f(path, std::ios::out | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
    return path;
}

std::string write_report(const ClaimReport& r, const std::string& dir) {
    return write_artifact(dir, r.claim_id, ".json", to_json(r));
}

std::optional<ClaimReport> load_latest(const std::string& dir, const std::string& claim_id) {
    if (!fs::is_directory(dir)) return std::nullopt;
    std::string best;
    std::string prefix = claim_id + "-";
    for (const auto& e : fs::directory_iterator(dir)) {
        std::string name = e.path().filename().string();
        if (name.rfind(prefix, 0) != 0 || e.path().extension() != ".json") continue;
        // the stamp starts with a digit; keeps "claim-b2" from matching "claim-b2x"
        if (name.size() <= prefix.size() || !std::isdigit(static_cast<unsigned char>(name[prefix.size()])))
            continue;
        if (name > best) best = name;
    }
    if (best.empty()) return std::nullopt;
    std::ifstream f(fs::path(dir) / best);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

}  // namespace fc
