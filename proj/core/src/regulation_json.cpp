#include <fstream>
#include <sstream>

#include "builtin_data.hpp"
#include "lpwan/errors.hpp"
#include "lpwan/regulation.hpp"

namespace lpwan::regulation {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& require(const json& j, const char* key, const char* what) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string(what) + ": missing field '" + key + "'");
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
    return j.get<double>();
}

double number_field(const json& j, const char* key, const char* what) {
    return number(require(j, key, what), what);
}

std::optional<double> opt_number(const json& j, const char* key, const char* what) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return number(*it, what);
}

FreqInterval interval_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(std::string(what) + ": expected [lo_mhz, hi_mhz]");
    return FreqInterval::from_mhz(number(j[0], what), number(j[1], what));
}

ordered_json interval_to_json(const FreqInterval& iv) {
    return ordered_json::array({iv.lo_mhz(), iv.hi_mhz()});
}

BwSelector selector_from_json(const json& j, const char* what) {
    BwSelector sel;
    if (const auto v = opt_number(j, "bw_khz_above", what)) sel.above_hz = hz_from_khz(*v);
    if (const auto v = opt_number(j, "bw_khz_at_least", what)) sel.at_least_hz = hz_from_khz(*v);
    if (const auto v = opt_number(j, "bw_khz_below", what)) sel.below_hz = hz_from_khz(*v);
    return sel;
}

void selector_to_json(ordered_json& out, const BwSelector& sel) {
    if (sel.above_hz) out["bw_khz_above"] = khz_from_hz(*sel.above_hz);
    if (sel.at_least_hz) out["bw_khz_at_least"] = khz_from_hz(*sel.at_least_hz);
    if (sel.below_hz) out["bw_khz_below"] = khz_from_hz(*sel.below_hz);
}

PoliteVariantLimits variant_from_json(const json& j, const char* what) {
    PoliteVariantLimits v;
    v.min_listen_window_us = opt_number(j, "min_listen_window_us", what);
    v.min_off_ms = opt_number(j, "min_off_ms", what);
    if (const auto t = opt_number(j, "min_off_if_tx_on_above_ms", what))
        v.min_off_if_tx_on_above_ms = *t;
    v.max_continuous_on_s = opt_number(j, "max_continuous_on_s", what);
    v.max_cumulative_s_per_hour = opt_number(j, "max_cumulative_s_per_hour", what);
    return v;
}

ordered_json variant_to_json(const PoliteVariantLimits& v) {
    ordered_json out = ordered_json::object();
    if (v.min_listen_window_us) out["min_listen_window_us"] = *v.min_listen_window_us;
    if (v.min_off_ms) out["min_off_ms"] = *v.min_off_ms;
    if (v.min_off_if_tx_on_above_ms != 0.0)
        out["min_off_if_tx_on_above_ms"] = v.min_off_if_tx_on_above_ms;
    if (v.max_continuous_on_s) out["max_continuous_on_s"] = *v.max_continuous_on_s;
    if (v.max_cumulative_s_per_hour)
        out["max_cumulative_s_per_hour"] = *v.max_cumulative_s_per_hour;
    return out;
}

}  // namespace

RegionProfile profile_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("profile: expected a JSON object");
    RegionProfile p;
    p.region_id = require(j, "region_id", "profile").get<std::string>();
    const std::string what = "profile " + p.region_id;
    const char* w = what.c_str();

    for (const auto& b : require(j, "bands_mhz", w))
        p.bands.push_back(interval_from_json(b, w));

    for (const auto& t : require(j, "power_tiers", w)) {
        PowerTier tier;
        tier.limit_dbm = number_field(t, "limit_dbm", w);
        if (t.contains("sub_band_mhz")) tier.sub_band = interval_from_json(t["sub_band_mhz"], w);
        if (const auto n = opt_number(t, "channel_count_above", w))
            tier.channel_count_above = static_cast<int>(*n);
        p.power_tiers.push_back(tier);
    }

    if (const auto it = j.find("hopping"); it != j.end() && !it->is_null()) {
        HoppingRule h;
        for (const auto& t : require(*it, "tiers", w)) {
            HoppingTier tier;
            tier.bandwidth = selector_from_json(t, w);
            tier.min_channels = static_cast<int>(number_field(t, "min_channels", w));
            h.tiers.push_back(tier);
        }
        h.max_hop_bandwidth_hz = hz_from_khz(number_field(*it, "max_hop_bandwidth_khz", w));
        p.hopping = std::move(h);
    }

    if (const auto it = j.find("band_duty_rules"); it != j.end()) {
        for (const auto& r : *it) {
            DutyRule rule;
            rule.sub_band = interval_from_json(require(r, "band_mhz", w), w);
            rule.max_duty = number_field(r, "max_duty_percent", w) / 100.0;
            rule.period_us = usec_from_s(number_field(r, "period_s", w));
            if (const auto c = r.find("max_continuous_on_s"); c != r.end() && !c->is_null()) {
                rule.max_on_single_s = opt_number(*c, "single", w);
                rule.max_on_dialogue_s = opt_number(*c, "dialogue", w);
            }
            if (const auto c = r.find("max_cumulative_on"); c != r.end() && !c->is_null()) {
                rule.cumulative_s_per_hour = number_field(*c, "seconds_per_hour", w);
                if (const auto g = opt_number(*c, "granularity_khz", w))
                    rule.cumulative_granularity_hz = hz_from_khz(*g);
            }
            p.band_duty_rules.push_back(rule);
        }
    }

    if (const auto it = j.find("channel_duty_rules"); it != j.end()) {
        for (const auto& r : *it) {
            ChannelDutyRule rule;
            rule.bandwidth = selector_from_json(r, w);
            rule.max_duty = number_field(r, "max_duty_percent", w) / 100.0;
            rule.period_us = usec_from_s(number_field(r, "period_s", w));
            p.channel_duty_rules.push_back(rule);
        }
    }

    if (const auto it = j.find("polite"); it != j.end() && !it->is_null()) {
        PoliteRule polite;
        if (const auto m = it->find("methods"); m != it->end()) {
            for (const auto& method : *m) {
                const std::string name = method.get<std::string>();
                if (name == "LBT") polite.lbt = true;
                else if (name == "AFA") polite.afa = true;
                else throw ParseError(what + ": unknown polite method '" + name + "'");
            }
        }
        polite.carrier_sense_dbm = opt_number(*it, "carrier_sense_dbm", w);
        if (const auto c = it->find("common"); c != it->end() && !c->is_null())
            polite.common = variant_from_json(*c, w);
        if (const auto c = it->find("short_sense"); c != it->end() && !c->is_null())
            polite.short_sense = variant_from_json(*c, w);
        if (const auto c = it->find("long_sense"); c != it->end() && !c->is_null())
            polite.long_sense = variant_from_json(*c, w);
        p.polite = std::move(polite);
    }

    p.spurious_limit_dbuv = number_field(j, "spurious_limit_dbuv_m_3m", w);
    p.validate();
    return p;
}

ordered_json profile_to_json(const RegionProfile& p) {
    ordered_json out;
    out["region_id"] = p.region_id;
    out["bands_mhz"] = json::array();
    for (const auto& b : p.bands) out["bands_mhz"].push_back(interval_to_json(b));
    out["power_tiers"] = json::array();
    for (const auto& t : p.power_tiers) {
        ordered_json tier;
        tier["limit_dbm"] = t.limit_dbm;
        if (t.sub_band) tier["sub_band_mhz"] = interval_to_json(*t.sub_band);
        if (t.channel_count_above) tier["channel_count_above"] = *t.channel_count_above;
        out["power_tiers"].push_back(std::move(tier));
    }
    if (p.hopping) {
        ordered_json h;
        h["tiers"] = json::array();
        for (const auto& t : p.hopping->tiers) {
            ordered_json tier = ordered_json::object();
            selector_to_json(tier, t.bandwidth);
            tier["min_channels"] = t.min_channels;
            h["tiers"].push_back(std::move(tier));
        }
        h["max_hop_bandwidth_khz"] = khz_from_hz(p.hopping->max_hop_bandwidth_hz);
        out["hopping"] = std::move(h);
    }
    if (!p.band_duty_rules.empty()) {
        out["band_duty_rules"] = json::array();
        for (const auto& r : p.band_duty_rules) {
            ordered_json rule;
            rule["band_mhz"] = interval_to_json(r.sub_band);
            rule["max_duty_percent"] = r.max_duty * 100.0;
            rule["period_s"] = s_from_usec(r.period_us);
            if (r.max_on_single_s || r.max_on_dialogue_s) {
                ordered_json c = ordered_json::object();
                if (r.max_on_single_s) c["single"] = *r.max_on_single_s;
                if (r.max_on_dialogue_s) c["dialogue"] = *r.max_on_dialogue_s;
                rule["max_continuous_on_s"] = std::move(c);
            }
            if (r.cumulative_s_per_hour) {
                ordered_json c;
                c["seconds_per_hour"] = *r.cumulative_s_per_hour;
                if (r.cumulative_granularity_hz)
                    c["granularity_khz"] = khz_from_hz(*r.cumulative_granularity_hz);
                rule["max_cumulative_on"] = std::move(c);
            }
            out["band_duty_rules"].push_back(std::move(rule));
        }
    }
    if (!p.channel_duty_rules.empty()) {
        out["channel_duty_rules"] = json::array();
        for (const auto& r : p.channel_duty_rules) {
            ordered_json rule = ordered_json::object();
            selector_to_json(rule, r.bandwidth);
            rule["max_duty_percent"] = r.max_duty * 100.0;
            rule["period_s"] = s_from_usec(r.period_us);
            out["channel_duty_rules"].push_back(std::move(rule));
        }
    }
    if (p.polite) {
        ordered_json polite;
        polite["methods"] = json::array();
        if (p.polite->lbt) polite["methods"].push_back("LBT");
        if (p.polite->afa) polite["methods"].push_back("AFA");
        if (p.polite->carrier_sense_dbm) polite["carrier_sense_dbm"] = *p.polite->carrier_sense_dbm;
        if (p.polite->common) polite["common"] = variant_to_json(*p.polite->common);
        if (p.polite->short_sense) polite["short_sense"] = variant_to_json(*p.polite->short_sense);
        if (p.polite->long_sense) polite["long_sense"] = variant_to_json(*p.polite->long_sense);
        out["polite"] = std::move(polite);
    }
    out["spurious_limit_dbuv_m_3m"] = p.spurious_limit_dbuv;
    return out;
}

std::vector<RegionProfile> load_profiles(const json& doc) {
    const json* list = &doc;
    if (doc.is_object()) {
        const auto it = doc.find("profiles");
        if (it == doc.end()) {
            if (doc.empty()) return {};
            throw ParseError("profiles: expected a 'profiles' array or a bare array");
        }
        list = &*it;
    } else if (doc.is_null()) {
        return {};
    }
    if (!list->is_array()) throw ParseError("profiles: expected an array");
    std::vector<RegionProfile> out;
    out.reserve(list->size());
    for (const auto& j : *list) out.push_back(profile_from_json(j));
    return out;
}

std::vector<RegionProfile> load_profiles_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profile file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return load_profiles(doc);
}

const std::vector<RegionProfile>& builtin_profiles() {
    static const std::vector<RegionProfile> profiles =
        load_profiles(json::parse(data::region_profiles_json()));
    return profiles;
}

TransmissionSchedule schedule_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("schedule: expected a JSON object");
    TransmissionSchedule s;
    if (const auto n = opt_number(j, "channel_count", "schedule"))
        s.device_channel_count = static_cast<int>(*n);
    if (const auto it = j.find("dialogue"); it != j.end() && !it->is_null())
        s.dialogue = it->get<bool>();
    if (const auto it = j.find("sense_variant"); it != j.end() && !it->is_null()) {
        const std::string v = it->get<std::string>();
        if (v == "short") s.sense_variant = SenseVariant::Short;
        else if (v == "long") s.sense_variant = SenseVariant::Long;
        else throw ParseError("schedule: sense_variant must be 'short' or 'long'");
    }
    for (const auto& e : require(j, "events", "schedule")) {
        s.events.push_back(make_event(number_field(e, "start_s", "schedule event"),
                                      number_field(e, "duration_s", "schedule event"),
                                      number_field(e, "center_mhz", "schedule event"),
                                      number_field(e, "bandwidth_khz", "schedule event"),
                                      number_field(e, "power_dbm", "schedule event")));
    }
    s.validate();
    return s;
}

TransmissionSchedule schedule_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open schedule file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return schedule_from_json(doc);
}

ordered_json schedule_to_json(const TransmissionSchedule& s) {
    ordered_json out;
    out["channel_count"] = s.device_channel_count;
    if (s.sense_variant)
        out["sense_variant"] = *s.sense_variant == SenseVariant::Short ? "short" : "long";
    if (s.dialogue) out["dialogue"] = true;
    out["events"] = json::array();
    for (const auto& e : s.events) {
        ordered_json ev;
        ev["start_s"] = s_from_usec(e.start_us);
        ev["duration_s"] = s_from_usec(e.duration_us);
        ev["center_mhz"] = mhz_from_hz(e.center_hz);
        ev["bandwidth_khz"] = khz_from_hz(e.bandwidth_hz);
        ev["power_dbm"] = e.power_dbm;
        out["events"].push_back(std::move(ev));
    }
    return out;
}

ordered_json report_to_json(const ComplianceReport& r) {
    ordered_json out;
    out["region"] = r.region_id;
    out["overall"] = to_string(r.overall);
    out["items"] = json::array();
    for (const auto& item : r.items) {
        ordered_json j;
        j["rule"] = item.rule;
        j["verdict"] = to_string(item.verdict);
        j["measured"] = item.measured ? json(*item.measured) : json(nullptr);
        j["limit"] = item.limit ? json(*item.limit) : json(nullptr);
        j["unit"] = item.unit;
        j["governing"] = item.governing;
        j["detail"] = item.detail;
        out["items"].push_back(std::move(j));
    }
    return out;
}

}  // namespace lpwan::regulation
