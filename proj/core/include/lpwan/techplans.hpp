#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lpwan::techplans {

enum class Technology { LoRa, Sigfox };

std::string_view to_string(Technology t);
Technology technology_from_string(std::string_view name);  // case-insensitive

// Canonical plan-region keys: "EU", "US/CA", "CN", "IN".  Accepts common
// aliases ("us", "ca", "usca") case-insensitively.
std::string canonical_region(std::string_view region);

// One row of a published channel plan: identical channels grouped together.
struct ChannelGroup {
    int channels = 0;
    double bandwidth_khz = 0.0;
    std::string modulation;
    double per_channel_bps = 0.0;
};

struct ChannelPlan {
    Technology technology{};
    std::string region;
    std::vector<ChannelGroup> groups;
    double total_bps = 0.0;  // published aggregate uplink capacity
    std::string note;        // set when the aggregate disagrees with the groups

    int channel_count() const;
    double groups_total_bps() const;  // sum of channels x per-channel capacity
    void validate() const;
};

// Empirical rural coverage anchor a technology scales from.
struct CoverageAnchor {
    Technology technology{};
    double base_radius_km = 0.0;
    double base_power_dbm = 0.0;
    double base_frequency_mhz = 0.0;
};

// Regional transmit power and carrier used for radius scaling.
struct RegionConditions {
    std::string region;
    double power_dbm = 0.0;
    double frequency_mhz = 0.0;
};

// One full density-estimation row: plan, duty, coverage and the derived
// node/traffic densities.
struct DensityEstimate {
    Technology technology{};
    std::string region;
    double duty_cycle = 0.0;
    int channels = 0;
    double radius_km = 0.0;
    double capacity_bps = 0.0;
    double node_density = 0.0;     // devices per km^2
    double traffic_density = 0.0;  // bps per km^2
    std::string note;
};

// Built-in plans: LoRa x {EU, US/CA, CN, IN} and Sigfox x {EU, US/CA}.
const std::vector<ChannelPlan>& builtin_plans();
const ChannelPlan& builtin_plan(Technology technology, std::string_view region);

// Band-wide regulatory duty limit applications must respect.  Throws
// NotAvailableError for untabulated pairs rather than guessing.
double regulatory_duty(Technology technology, std::string_view region);

const CoverageAnchor& coverage_anchor(Technology technology);
const RegionConditions& region_conditions(std::string_view region);

// Anchor-scaled rural coverage radius for the pair.  Always the computed
// value; disagreements with the published radius table are reported via
// radius_discrepancy_note, never folded back into the number.
double estimate_radius(Technology technology, std::string_view region);
std::string radius_discrepancy_note(Technology technology, std::string_view region);

DensityEstimate density_estimate(Technology technology, std::string_view region);
std::vector<DensityEstimate> density_table();  // all six tabulated rows

std::string density_table_csv(std::span<const DensityEstimate> rows);
ChannelPlan plan_from_json(const nlohmann::json& j);
nlohmann::ordered_json plan_to_json(const ChannelPlan& plan);
nlohmann::ordered_json estimate_to_json(const DensityEstimate& row);

}  // namespace lpwan::techplans
