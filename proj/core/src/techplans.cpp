#include "lpwan/techplans.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpwan/capacity.hpp"
#include "lpwan/errors.hpp"
#include "lpwan/propagation.hpp"
#include "lpwan/textio.hpp"

namespace lpwan::techplans {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(Technology t) {
    return t == Technology::LoRa ? "LoRa" : "Sigfox";
}

Technology technology_from_string(std::string_view name) {
    const std::string n = lower(name);
    if (n == "lora") return Technology::LoRa;
    if (n == "sigfox") return Technology::Sigfox;
    throw NotAvailableError("unknown technology '" + std::string(name) + "'");
}

std::string canonical_region(std::string_view region) {
    const std::string r = lower(region);
    if (r == "eu" || r == "europe") return "EU";
    if (r == "us" || r == "ca" || r == "usca" || r == "us/ca") return "US/CA";
    if (r == "cn" || r == "china") return "CN";
    if (r == "in" || r == "india") return "IN";
    std::string out(region);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

int ChannelPlan::channel_count() const {
    int total = 0;
    for (const auto& g : groups) total += g.channels;
    return total;
}

double ChannelPlan::groups_total_bps() const {
    std::vector<capacity::ChannelGroupCapacity> groups_caps;
    groups_caps.reserve(groups.size());
    for (const auto& g : groups) groups_caps.push_back({g.channels, g.per_channel_bps});
    return capacity::aggregate_capacity(groups_caps);
}

void ChannelPlan::validate() const {
    if (region.empty()) throw ValidationError("channel plan: region is empty");
    if (groups.empty()) throw ValidationError("channel plan " + region + ": no channel groups");
    for (const auto& g : groups) {
        if (g.channels < 1)
            throw ValidationError("channel plan " + region + ": group with no channels");
        if (!(g.per_channel_bps > 0.0))
            throw ValidationError("channel plan " + region + ": non-positive channel capacity");
        if (!(g.bandwidth_khz > 0.0))
            throw ValidationError("channel plan " + region + ": non-positive bandwidth");
    }
    if (!(total_bps > 0.0))
        throw ValidationError("channel plan " + region + ": non-positive total capacity");
    const double implied = groups_total_bps();
    if (std::abs(implied - total_bps) > 1e-6 * std::max(implied, total_bps) && note.empty())
        throw ValidationError("channel plan " + region +
                              ": total capacity disagrees with the groups and carries no note");
}

const std::vector<ChannelPlan>& builtin_plans() {
    static const std::vector<ChannelPlan> plans = [] {
        std::vector<ChannelPlan> v;
        v.push_back({Technology::LoRa, "EU",
                     {{7, 125, "CSS", 5470}, {1, 250, "CSS", 11000}, {1, 125, "FSK", 50000}},
                     99290.0,
                     ""});
        v.push_back({Technology::LoRa, "US/CA",
                     {{64, 125, "CSS", 5470}, {8, 500, "CSS", 12500}},
                     450080.0,
                     ""});
        v.push_back({Technology::LoRa, "CN", {{6, 125, "CSS", 5470}}, 32820.0, ""});
        v.push_back({Technology::LoRa, "IN", {{3, 125, "CSS", 5470}}, 16410.0, ""});
        v.push_back({Technology::Sigfox, "EU", {{360, 0.1, "D-BPSK", 100}}, 36000.0, ""});
        // The published Sigfox US/CA aggregate (60 kbps) does not equal
        // 360 channels x 600 bps; the downstream density table chains from
        // the published total, so it is kept and the mismatch is flagged.
        v.push_back({Technology::Sigfox, "US/CA",
                     {{360, 0.6, "D-BPSK", 600}},
                     60000.0,
                     "published aggregate 60000 bps does not match the 216000 bps implied by "
                     "360 channels at 600 bps; the published total is used"});
        for (const auto& p : v) p.validate();
        return v;
    }();
    return plans;
}

const ChannelPlan& builtin_plan(Technology technology, std::string_view region) {
    const std::string key = canonical_region(region);
    for (const auto& p : builtin_plans())
        if (p.technology == technology && p.region == key) return p;
    throw NotAvailableError("no built-in " + std::string(to_string(technology)) +
                            " channel plan for region '" + key + "'");
}

double regulatory_duty(Technology technology, std::string_view region) {
    const std::string key = canonical_region(region);
    if (technology == Technology::LoRa) {
        if (key == "EU" || key == "IN") return 0.01;
        if (key == "CN") return 0.001;
        if (key == "US/CA") return 1.0;
    } else {
        if (key == "EU") return 4e-6;
        if (key == "US/CA") return 3e-6;
    }
    throw NotAvailableError("no tabulated duty cycle for " + std::string(to_string(technology)) +
                            " in region '" + key + "'");
}

const CoverageAnchor& coverage_anchor(Technology technology) {
    // Rural European anchors: 10 km for LoRa, 20 km for Sigfox, both taken
    // at the European 16 dBm / 868 MHz operating point.
    static const CoverageAnchor lora{Technology::LoRa, 10.0, 16.0, 868.0};
    static const CoverageAnchor sigfox{Technology::Sigfox, 20.0, 16.0, 868.0};
    return technology == Technology::LoRa ? lora : sigfox;
}

const RegionConditions& region_conditions(std::string_view region) {
    static const std::vector<RegionConditions> rows = {
        {"EU", 16.0, 868.0},
        {"US/CA", 30.0, 915.0},
        {"CN", 12.5, 780.0},
        {"IN", 30.0, 866.0},
    };
    const std::string key = canonical_region(region);
    for (const auto& r : rows)
        if (r.region == key) return r;
    throw NotAvailableError("no tabulated radio conditions for region '" + key + "'");
}

double estimate_radius(Technology technology, std::string_view region) {
    const CoverageAnchor& anchor = coverage_anchor(technology);
    const RegionConditions& cond = region_conditions(region);
    const propagation::RangeAnchor base{anchor.base_radius_km, anchor.base_power_dbm,
                                        anchor.base_frequency_mhz};
    return propagation::scale_range(base, cond.power_dbm, cond.frequency_mhz);
}

namespace {

// Published rural-coverage radii (km), kept for cross-checking only.
double published_radius(Technology technology, const std::string& region) {
    if (technology == Technology::LoRa) {
        if (region == "EU") return 10.0;
        if (region == "US/CA") return 47.5;
        if (region == "CN") return 7.4;
        if (region == "IN") return 50.2;
    } else {
        if (region == "EU") return 20.0;
        if (region == "US/CA") return 95.0;
        if (region == "CN") return 100.4;
        if (region == "IN") return 14.8;
    }
    return 0.0;
}

}  // namespace

std::string radius_discrepancy_note(Technology technology, std::string_view region) {
    const std::string key = canonical_region(region);
    const double computed = estimate_radius(technology, key);
    const double published = published_radius(technology, key);
    if (published <= 0.0) return "";
    if (std::abs(computed - published) <= 0.02 * published) return "";
    std::ostringstream out;
    out.precision(1);
    out << std::fixed << "anchor-scaled radius is " << computed << " km but the published table "
        << "prints " << published << " km";
    if (technology == Technology::Sigfox && (key == "CN" || key == "IN"))
        out << "; the published Sigfox China/India cells appear swapped";
    return out.str();
}

DensityEstimate density_estimate(Technology technology, std::string_view region) {
    const ChannelPlan& plan = builtin_plan(technology, region);
    DensityEstimate row;
    row.technology = technology;
    row.region = plan.region;
    row.duty_cycle = regulatory_duty(technology, plan.region);
    row.channels = plan.channel_count();
    row.radius_km = estimate_radius(technology, plan.region);
    row.capacity_bps = plan.total_bps;
    row.node_density = capacity::node_density(row.channels, row.duty_cycle, row.radius_km);
    row.traffic_density = capacity::traffic_density(row.capacity_bps, row.radius_km);
    row.note = plan.note;
    return row;
}

std::vector<DensityEstimate> density_table() {
    std::vector<DensityEstimate> rows;
    rows.reserve(builtin_plans().size());
    for (const auto& p : builtin_plans()) rows.push_back(density_estimate(p.technology, p.region));
    return rows;
}

std::string density_table_csv(std::span<const DensityEstimate> rows) {
    std::string out = "technology,region,alpha,channels,d_km,c_bps,n_rho,c_rho\n";
    for (const auto& r : rows) {
        out += std::string(to_string(r.technology)) + "," + r.region + "," +
               shortest(r.duty_cycle) + "," + std::to_string(r.channels) + "," +
               shortest(r.radius_km) + "," + shortest(r.capacity_bps) + "," +
               shortest(r.node_density) + "," + shortest(r.traffic_density) + "\n";
    }
    return out;
}

ChannelPlan plan_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("channel plan: expected a JSON object");
    ChannelPlan plan;
    if (!j.contains("technology")) throw ParseError("channel plan: missing field 'technology'");
    plan.technology = technology_from_string(j["technology"].get<std::string>());
    if (!j.contains("region")) throw ParseError("channel plan: missing field 'region'");
    plan.region = canonical_region(j["region"].get<std::string>());
    if (!j.contains("groups")) throw ParseError("channel plan: missing field 'groups'");
    for (const auto& g : j["groups"]) {
        ChannelGroup group;
        if (!g.contains("channels") || !g.contains("per_channel_bps") ||
            !g.contains("bandwidth_khz"))
            throw ParseError("channel plan group: requires channels, bandwidth_khz and "
                             "per_channel_bps");
        group.channels = g["channels"].get<int>();
        group.bandwidth_khz = g["bandwidth_khz"].get<double>();
        group.modulation = g.value("modulation", std::string{});
        group.per_channel_bps = g["per_channel_bps"].get<double>();
        plan.groups.push_back(std::move(group));
    }
    plan.note = j.value("note", std::string{});
    if (j.contains("total_bps")) {
        plan.total_bps = j["total_bps"].get<double>();
        const double implied = plan.groups_total_bps();
        if (std::abs(implied - plan.total_bps) > 1e-6 * std::max(implied, plan.total_bps) &&
            plan.note.empty())
            plan.note = "declared total " + shortest(plan.total_bps) +
                        " bps does not match the groups total " + shortest(implied) + " bps";
    } else {
        plan.total_bps = plan.groups_total_bps();
    }
    plan.validate();
    return plan;
}

nlohmann::ordered_json plan_to_json(const ChannelPlan& plan) {
    nlohmann::ordered_json out;
    out["technology"] = to_string(plan.technology);
    out["region"] = plan.region;
    out["groups"] = nlohmann::json::array();
    for (const auto& g : plan.groups) {
        nlohmann::ordered_json group;
        group["channels"] = g.channels;
        group["bandwidth_khz"] = g.bandwidth_khz;
        group["modulation"] = g.modulation;
        group["per_channel_bps"] = g.per_channel_bps;
        out["groups"].push_back(std::move(group));
    }
    out["total_bps"] = plan.total_bps;
    if (!plan.note.empty()) out["note"] = plan.note;
    return out;
}

nlohmann::ordered_json estimate_to_json(const DensityEstimate& row) {
    nlohmann::ordered_json out;
    out["technology"] = to_string(row.technology);
    out["region"] = row.region;
    out["alpha"] = row.duty_cycle;
    out["channels"] = row.channels;
    out["d_km"] = row.radius_km;
    out["c_bps"] = row.capacity_bps;
    out["n_rho"] = row.node_density;
    out["c_rho"] = row.traffic_density;
    if (!row.note.empty()) out["note"] = row.note;
    return out;
}

}  // namespace lpwan::techplans
