#include <string>

#include "doctest.h"
#include "golden_cases.hpp"
#include "lpwan/regulation.hpp"

using namespace lpwan::regulation;

namespace {

std::string data_path(const std::string& file) {
    return std::string(LPWAN_TEST_DATA_DIR) + "/schedules/" + file;
}

const RuleVerdict* find_item(const ComplianceReport& report, const std::string& rule) {
    for (const auto& it : report.items)
        if (it.rule == rule) return &it;
    return nullptr;
}

}  // namespace

TEST_CASE("golden schedules reproduce their pinned verdicts") {
    const auto& profiles = builtin_profiles();
    for (const auto& c : golden::cases()) {
        CAPTURE(c.file);
        const auto schedule = schedule_from_file(data_path(c.file));
        const auto report = check_schedule(find_profile(profiles, c.region), schedule);
        CHECK(report.overall == c.overall);
        for (const auto& expect : c.rules) {
            CAPTURE(expect.rule);
            const auto* item = find_item(report, expect.rule);
            REQUIRE(item != nullptr);
            CHECK(item->verdict == expect.verdict);
        }
    }
}

TEST_CASE("the empty schedule passes in every region") {
    const auto schedule = schedule_from_file(data_path("empty.json"));
    for (const auto& profile : builtin_profiles()) {
        CAPTURE(profile.region_id);
        const auto report = check_schedule(profile, schedule);
        CHECK(report.overall == Verdict::Pass);
        for (const auto& item : report.items) {
            CAPTURE(item.rule);
            CHECK(item.verdict != Verdict::Fail);
            CHECK(item.verdict != Verdict::Indeterminate);
        }
    }
}

TEST_CASE("reports serialise all verdict fields") {
    const auto schedule = schedule_from_file(data_path("eu_overlap_indeterminate.json"));
    const auto report = check_schedule(find_profile(builtin_profiles(), "EU"), schedule);
    const auto j = report_to_json(report);
    CHECK(j["region"] == "EU");
    CHECK(j["overall"] == "indeterminate");
    REQUIRE(j["items"].is_array());
    bool saw_measured = false, saw_null = false;
    for (const auto& item : j["items"]) {
        REQUIRE(item.contains("rule"));
        REQUIRE(item.contains("verdict"));
        REQUIRE(item.contains("governing"));
        if (item["measured"].is_number()) saw_measured = true;
        if (item["measured"].is_null()) saw_null = true;
    }
    CHECK(saw_measured);
    CHECK(saw_null);
}
