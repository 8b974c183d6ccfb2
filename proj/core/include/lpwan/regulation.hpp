#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lpwan/units.hpp"

namespace lpwan::regulation {

enum class Verdict { Pass, Fail, NotApplicable, Indeterminate };
std::string_view to_string(Verdict v);

// One transmit-power limit.  At most one condition is set; a tier with no
// condition is the unconditional default for the whole market.
struct PowerTier {
    double limit_dbm = 0.0;
    std::optional<FreqInterval> sub_band;        // applies inside this sub-band
    std::optional<int> channel_count_above;      // applies when channels > this
};

// Matches an emission bandwidth against a printed rule column such as
// "BW < 250 kHz" (below), "250 kHz < BW < 500 kHz" (above+below) or
// "otherwise" relative to a strict upper bound (at_least).
struct BwSelector {
    std::optional<hz_t> above_hz;     // strict >
    std::optional<hz_t> at_least_hz;  // >=
    std::optional<hz_t> below_hz;     // strict <

    bool matches(hz_t bw) const {
        if (above_hz && !(bw > *above_hz)) return false;
        if (at_least_hz && !(bw >= *at_least_hz)) return false;
        if (below_hz && !(bw < *below_hz)) return false;
        return true;
    }
    std::string describe() const;
};

// Duty-cycle budget for one sub-band, enforced over every sliding window of
// the given period.  The optional transmit-on limits ride along because the
// printed tables state them per market next to the duty budgets.
struct DutyRule {
    FreqInterval sub_band;
    double max_duty = 0.0;  // fraction in (0, 1]
    usec_t period_us = 0;
    std::optional<double> max_on_single_s;     // single transmission
    std::optional<double> max_on_dialogue_s;   // transmission dialogue
    std::optional<double> cumulative_s_per_hour;
    std::optional<hz_t> cumulative_granularity_hz;  // spectrum slice width
};

// Per-channel duty budget selected by the channel's bandwidth class.
struct ChannelDutyRule {
    BwSelector bandwidth;
    double max_duty = 0.0;
    usec_t period_us = 0;
};

struct HoppingTier {
    BwSelector bandwidth;
    int min_channels = 0;
};

struct HoppingRule {
    std::vector<HoppingTier> tiers;
    hz_t max_hop_bandwidth_hz = 0;
};

// Limits tied to one carrier-sense variant (or variant-independent when the
// market defines no variants).
struct PoliteVariantLimits {
    std::optional<double> min_listen_window_us;
    std::optional<double> min_off_ms;
    double min_off_if_tx_on_above_ms = 0.0;  // off-time required only after
                                             // transmissions longer than this
    std::optional<double> max_continuous_on_s;
    std::optional<double> max_cumulative_s_per_hour;
};

struct PoliteRule {
    bool lbt = false;
    bool afa = false;
    std::optional<double> carrier_sense_dbm;  // absent = not defined
    std::optional<PoliteVariantLimits> common;
    std::optional<PoliteVariantLimits> short_sense;
    std::optional<PoliteVariantLimits> long_sense;
};

struct RegionProfile {
    std::string region_id;
    std::vector<FreqInterval> bands;
    std::vector<PowerTier> power_tiers;
    std::optional<HoppingRule> hopping;
    std::vector<DutyRule> band_duty_rules;
    std::vector<ChannelDutyRule> channel_duty_rules;
    std::optional<PoliteRule> polite;
    double spurious_limit_dbuv = 0.0;  // dBuV/m at 3 m, informational

    void validate() const;  // throws ValidationError
};

struct TransmissionEvent {
    usec_t start_us = 0;
    usec_t duration_us = 0;
    hz_t center_hz = 0;     // on the 1 kHz grid
    hz_t bandwidth_hz = 0;
    double power_dbm = 0.0;
};

// Convenience constructor in engineering units.
TransmissionEvent make_event(double start_s, double duration_s, double center_mhz,
                             double bandwidth_khz, double power_dbm);

enum class SenseVariant { Short, Long };

struct TransmissionSchedule {
    std::vector<TransmissionEvent> events;        // sorted by start time
    int device_channel_count = 1;                 // channels the device hops over
    std::optional<SenseVariant> sense_variant;    // claimed carrier-sense class
    bool dialogue = false;                        // transmissions form dialogues

    void validate() const;  // throws ValidationError
};

struct RuleVerdict {
    std::string rule;
    Verdict verdict = Verdict::NotApplicable;
    std::optional<double> measured;
    std::optional<double> limit;
    std::string unit;
    bool governing = true;  // false for a broader rule shadowed by a narrower one
    std::string detail;
};

struct ComplianceReport {
    std::string region_id;
    Verdict overall = Verdict::Pass;
    std::vector<RuleVerdict> items;
};

// The built-in regulatory dataset: US, EU, CN, JP, IN, BR, CA.
const std::vector<RegionProfile>& builtin_profiles();

// Decode profiles from a JSON document ({"profiles": [...]} or a bare array).
// An empty document yields an empty list.
std::vector<RegionProfile> load_profiles(const nlohmann::json& doc);
std::vector<RegionProfile> load_profiles_file(const std::string& path);

// Case-insensitive profile lookup; throws NotAvailableError when absent.
const RegionProfile& find_profile(std::span<const RegionProfile> profiles,
                                  std::string_view region_id);

// Transmit-power limit for a carrier and hopping-channel count.  The most
// permissive matching conditional tier beats the unconditional default.
// Throws DomainError when the frequency is outside every band.
double applicable_power_limit(const RegionProfile& profile, double frequency_mhz,
                              int channel_count);

// Maximum on-air fraction over every sliding window of `window_s`, counting
// events whose centre lies in `sub_band`; straddling events count pro rata.
double duty_cycle(std::span<const TransmissionEvent> events, double window_s,
                  const FreqInterval& sub_band);

// Evaluate every rule of the profile against the schedule.  Violations are
// verdicts, never exceptions.
ComplianceReport check_schedule(const RegionProfile& profile,
                                const TransmissionSchedule& schedule);

// JSON codecs.  Schemas are documented in the README; serialisation is
// deterministic (stable key order, shortest round-trip numbers).
RegionProfile profile_from_json(const nlohmann::json& j);
nlohmann::ordered_json profile_to_json(const RegionProfile& profile);
TransmissionSchedule schedule_from_json(const nlohmann::json& j);
TransmissionSchedule schedule_from_file(const std::string& path);
nlohmann::ordered_json schedule_to_json(const TransmissionSchedule& schedule);
nlohmann::ordered_json report_to_json(const ComplianceReport& report);

}  // namespace lpwan::regulation
