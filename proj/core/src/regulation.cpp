#include "lpwan/regulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "lpwan/errors.hpp"

namespace lpwan::regulation {

namespace {

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list args;
    va_start(args, f);
    vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

std::string BwSelector::describe() const {
    std::string out;
    if (above_hz) out += fmt("%gkHz<", khz_from_hz(*above_hz));
    if (at_least_hz) out += fmt("%gkHz<=", khz_from_hz(*at_least_hz));
    out += "bw";
    if (below_hz) out += fmt("<%gkHz", khz_from_hz(*below_hz));
    return out;
}

TransmissionEvent make_event(double start_s, double duration_s, double center_mhz,
                             double bandwidth_khz, double power_dbm) {
    TransmissionEvent e;
    e.start_us = usec_from_s(start_s);
    e.duration_us = usec_from_s(duration_s);
    e.center_hz = center_hz_from_mhz(center_mhz);
    e.bandwidth_hz = hz_from_khz(bandwidth_khz);
    e.power_dbm = power_dbm;
    return e;
}

// ---------------------------------------------------------------------------
// validation

void RegionProfile::validate() const {
    if (region_id.empty()) throw ValidationError("profile: region_id is empty");
    if (bands.empty()) throw ValidationError("profile " + region_id + ": no bands");
    const FreqInterval sub_ghz = FreqInterval::from_mhz(300.0, 1000.0);
    for (const auto& b : bands) {
        if (b.lo >= b.hi)
            throw ValidationError("profile " + region_id + ": band interval is empty");
        if (!sub_ghz.contains_interval(b))
            throw ValidationError("profile " + region_id + ": band outside 300-1000 MHz");
    }
    auto inside_some_band = [&](const FreqInterval& iv) {
        return std::any_of(bands.begin(), bands.end(),
                           [&](const FreqInterval& b) { return b.contains_interval(iv); });
    };
    if (power_tiers.empty()) throw ValidationError("profile " + region_id + ": no power tiers");
    for (const auto& t : power_tiers) {
        if (t.limit_dbm < -30.0 || t.limit_dbm > 36.0)
            throw ValidationError("profile " + region_id + ": power limit outside [-30, 36] dBm");
        if (t.sub_band && t.channel_count_above)
            throw ValidationError("profile " + region_id + ": power tier with two conditions");
        if (t.sub_band && !inside_some_band(*t.sub_band))
            throw ValidationError("profile " + region_id + ": power tier sub-band outside bands");
    }
    for (const auto& r : band_duty_rules) {
        if (!(r.max_duty > 0.0) || r.max_duty > 1.0)
            throw ValidationError("profile " + region_id + ": duty fraction outside (0, 1]");
        if (r.period_us <= 0)
            throw ValidationError("profile " + region_id + ": duty period must be positive");
        if (!inside_some_band(r.sub_band))
            throw ValidationError("profile " + region_id + ": duty sub-band outside bands");
    }
    for (const auto& r : channel_duty_rules) {
        if (!(r.max_duty > 0.0) || r.max_duty > 1.0)
            throw ValidationError("profile " + region_id + ": channel duty outside (0, 1]");
        if (r.period_us <= 0)
            throw ValidationError("profile " + region_id + ": channel duty period must be positive");
        if (r.bandwidth.below_hz && *r.bandwidth.below_hz > 500000)
            throw ValidationError("profile " + region_id + ": channel duty class above 500 kHz");
    }
    if (hopping) {
        if (hopping->max_hop_bandwidth_hz <= 0)
            throw ValidationError("profile " + region_id + ": hop bandwidth must be positive");
        for (const auto& t : hopping->tiers)
            if (t.min_channels < 1)
                throw ValidationError("profile " + region_id + ": hopping tier needs >= 1 channel");
    }
    if (spurious_limit_dbuv <= 0.0)
        throw ValidationError("profile " + region_id + ": spurious limit must be positive");
}

void TransmissionSchedule::validate() const {
    if (device_channel_count < 1)
        throw ValidationError("schedule: channel count must be >= 1");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.duration_us <= 0) throw ValidationError(fmt("schedule: event %zu has no duration", i));
        if (e.bandwidth_hz <= 0)
            throw ValidationError(fmt("schedule: event %zu has no bandwidth", i));
        if (e.center_hz <= 0)
            throw ValidationError(fmt("schedule: event %zu has no centre frequency", i));
        if (!std::isfinite(e.power_dbm))
            throw ValidationError(fmt("schedule: event %zu has non-finite power", i));
        if (i > 0 && events[i - 1].start_us > e.start_us)
            throw ValidationError("schedule: events must be sorted by start time");
    }
    // No two events on the same centre frequency may overlap in time.
    std::map<hz_t, usec_t> last_end;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        auto [it, fresh] = last_end.try_emplace(e.center_hz, e.start_us + e.duration_us);
        if (!fresh) {
            if (e.start_us < it->second)
                throw ValidationError(fmt("schedule: overlapping events on %.3f MHz",
                                          mhz_from_hz(e.center_hz)));
            it->second = e.start_us + e.duration_us;
        }
    }
}

// ---------------------------------------------------------------------------
// sliding-window accounting

namespace {

struct OnInterval {
    usec_t s, e;
};

// Maximum total on-air time inside any window of the given length.  The
// window content is piecewise linear in the window start, so the maximum is
// attained where an event edge meets a window edge; all four candidate
// families are evaluated.  Straddling events contribute pro rata by
// construction of the overlap.
usec_t max_window_on(const std::vector<OnInterval>& iv, usec_t window) {
    if (iv.empty() || window <= 0) return 0;
    std::vector<usec_t> candidates;
    candidates.reserve(iv.size() * 4);
    for (const auto& [s, e] : iv) {
        candidates.push_back(s);
        candidates.push_back(e);
        candidates.push_back(s - window);
        candidates.push_back(e - window);
    }
    usec_t best = 0;
    for (const usec_t t : candidates) {
        usec_t total = 0;
        for (const auto& [s, e] : iv) {
            const usec_t lo = std::max(s, t);
            const usec_t hi = std::min(e, t + window);
            if (hi > lo) total += hi - lo;
        }
        best = std::max(best, total);
    }
    return best;
}

std::vector<OnInterval> on_intervals(std::span<const TransmissionEvent> events) {
    std::vector<OnInterval> iv;
    iv.reserve(events.size());
    for (const auto& e : events) iv.push_back({e.start_us, e.start_us + e.duration_us});
    return iv;
}

}  // namespace

double duty_cycle(std::span<const TransmissionEvent> events, double window_s,
                  const FreqInterval& sub_band) {
    const usec_t window = usec_from_s(window_s);
    if (window <= 0) throw DomainError("duty_cycle: window must be positive");
    std::vector<OnInterval> iv;
    for (const auto& e : events)
        if (sub_band.contains(e.center_hz)) iv.push_back({e.start_us, e.start_us + e.duration_us});
    return static_cast<double>(max_window_on(iv, window)) / static_cast<double>(window);
}

// ---------------------------------------------------------------------------
// profile queries

const RegionProfile& find_profile(std::span<const RegionProfile> profiles,
                                  std::string_view region_id) {
    const std::string want = lower(region_id);
    for (const auto& p : profiles)
        if (lower(p.region_id) == want) return p;
    throw NotAvailableError("no profile for region '" + std::string(region_id) + "'");
}

namespace {

bool in_any_band(const RegionProfile& p, hz_t f) {
    return std::any_of(p.bands.begin(), p.bands.end(),
                       [&](const FreqInterval& b) { return b.contains(f); });
}

double power_limit_at(const RegionProfile& p, hz_t f, int channel_count) {
    if (!in_any_band(p, f))
        throw DomainError(fmt("power limit: %.3f MHz is outside every %s band", mhz_from_hz(f),
                              p.region_id.c_str()));
    bool have_conditional = false;
    double best_conditional = -std::numeric_limits<double>::infinity();
    bool have_default = false;
    double best_default = -std::numeric_limits<double>::infinity();
    for (const auto& t : p.power_tiers) {
        if (t.sub_band) {
            if (t.sub_band->contains(f)) {
                have_conditional = true;
                best_conditional = std::max(best_conditional, t.limit_dbm);
            }
        } else if (t.channel_count_above) {
            if (channel_count > *t.channel_count_above) {
                have_conditional = true;
                best_conditional = std::max(best_conditional, t.limit_dbm);
            }
        } else {
            have_default = true;
            best_default = std::max(best_default, t.limit_dbm);
        }
    }
    if (have_conditional) return best_conditional;
    if (have_default) return best_default;
    throw DomainError("power limit: no applicable tier in profile " + p.region_id);
}

}  // namespace

double applicable_power_limit(const RegionProfile& profile, double frequency_mhz,
                              int channel_count) {
    return power_limit_at(profile, center_hz_from_mhz(frequency_mhz), channel_count);
}

// ---------------------------------------------------------------------------
// compliance engine

namespace {

constexpr usec_t kHour = static_cast<usec_t>(3600) * 1000000;

}  // namespace

ComplianceReport check_schedule(const RegionProfile& profile,
                                const TransmissionSchedule& schedule) {
    profile.validate();
    schedule.validate();

    std::vector<RuleVerdict> items;
    auto add = [&](RuleVerdict v) { items.push_back(std::move(v)); };

    std::vector<const TransmissionEvent*> in_band;
    std::size_t out_of_band = 0;
    double worst_oob_mhz = 0.0;
    for (const auto& e : schedule.events) {
        if (in_any_band(profile, e.center_hz)) {
            in_band.push_back(&e);
        } else {
            ++out_of_band;
            worst_oob_mhz = mhz_from_hz(e.center_hz);
        }
    }

    // --- band membership -----------------------------------------------------
    {
        RuleVerdict v;
        v.rule = "in_band";
        v.unit = "events";
        v.measured = static_cast<double>(out_of_band);
        v.limit = 0.0;
        if (schedule.events.empty()) {
            v.verdict = Verdict::NotApplicable;
            v.detail = "no events";
        } else if (out_of_band == 0) {
            v.verdict = Verdict::Pass;
            v.detail = "all centre frequencies inside the allocated bands";
        } else {
            v.verdict = Verdict::Fail;
            v.detail = fmt("%zu event(s) outside the allocated bands, e.g. %.3f MHz", out_of_band,
                           worst_oob_mhz);
        }
        add(std::move(v));
    }

    // --- transmit power ------------------------------------------------------
    {
        RuleVerdict v;
        v.rule = "power_limit";
        v.unit = "dBm";
        if (in_band.empty()) {
            v.verdict = Verdict::NotApplicable;
            v.detail = "no in-band events";
        } else {
            double worst_margin = -std::numeric_limits<double>::infinity();
            const TransmissionEvent* worst = nullptr;
            double worst_limit = 0.0;
            for (const auto* e : in_band) {
                const double limit = power_limit_at(profile, e->center_hz,
                                                    schedule.device_channel_count);
                const double margin = e->power_dbm - limit;
                if (margin > worst_margin) {
                    worst_margin = margin;
                    worst = e;
                    worst_limit = limit;
                }
            }
            v.measured = worst->power_dbm;
            v.limit = worst_limit;
            if (worst_margin > 1e-9) {
                v.verdict = Verdict::Fail;
                v.detail = fmt("%.6g dBm at %.3f MHz exceeds the %.6g dBm tier", worst->power_dbm,
                               mhz_from_hz(worst->center_hz), worst_limit);
            } else {
                v.verdict = Verdict::Pass;
                v.detail = fmt("highest power %.6g dBm within the %.6g dBm tier", worst->power_dbm,
                               worst_limit);
            }
        }
        add(std::move(v));
    }

    // --- hopping rules -------------------------------------------------------
    if (profile.hopping) {
        const bool hopper = schedule.device_channel_count >= 2;
        {
            RuleVerdict v;
            v.rule = "hop_bandwidth";
            v.unit = "kHz";
            v.limit = khz_from_hz(profile.hopping->max_hop_bandwidth_hz);
            if (!hopper || in_band.empty()) {
                v.verdict = Verdict::NotApplicable;
                v.detail = hopper ? "no in-band events" : "single-channel device";
            } else {
                hz_t worst_bw = 0;
                for (const auto* e : in_band) worst_bw = std::max(worst_bw, e->bandwidth_hz);
                v.measured = khz_from_hz(worst_bw);
                v.verdict = worst_bw <= profile.hopping->max_hop_bandwidth_hz ? Verdict::Pass
                                                                             : Verdict::Fail;
                v.detail = fmt("widest hopping channel %.6g kHz", khz_from_hz(worst_bw));
            }
            add(std::move(v));
        }
        for (const auto& tier : profile.hopping->tiers) {
            RuleVerdict v;
            v.rule = "hopping_channels[" + tier.bandwidth.describe() + "]";
            v.unit = "channels";
            v.limit = static_cast<double>(tier.min_channels);
            const bool used = hopper &&
                              std::any_of(in_band.begin(), in_band.end(), [&](const auto* e) {
                                  return tier.bandwidth.matches(e->bandwidth_hz);
                              });
            if (!used) {
                v.verdict = Verdict::NotApplicable;
                v.detail = hopper ? "no events in this bandwidth class" : "single-channel device";
            } else {
                v.measured = static_cast<double>(schedule.device_channel_count);
                v.verdict = schedule.device_channel_count >= tier.min_channels ? Verdict::Pass
                                                                               : Verdict::Fail;
                v.detail = fmt("device hops over %d channel(s), minimum %d",
                               schedule.device_channel_count, tier.min_channels);
            }
            add(std::move(v));
        }
    }

    // --- band duty cycles ----------------------------------------------------
    // Overlapping sub-band rules are all evaluated; each event is attributed
    // to the narrowest sub-band containing it, and a broader rule that
    // governs no event of its own is reported as non-governing.
    if (!profile.band_duty_rules.empty()) {
        std::vector<char> governs(profile.band_duty_rules.size(), 0);
        std::size_t gap_events = 0;
        double gap_mhz = 0.0;
        for (const auto* e : in_band) {
            std::size_t best = profile.band_duty_rules.size();
            hz_t best_width = std::numeric_limits<hz_t>::max();
            for (std::size_t i = 0; i < profile.band_duty_rules.size(); ++i) {
                const auto& r = profile.band_duty_rules[i];
                if (r.sub_band.contains(e->center_hz) && r.sub_band.width() < best_width) {
                    best = i;
                    best_width = r.sub_band.width();
                }
            }
            if (best == profile.band_duty_rules.size()) {
                ++gap_events;
                gap_mhz = mhz_from_hz(e->center_hz);
            } else {
                governs[best] = 1;
            }
        }
        for (std::size_t i = 0; i < profile.band_duty_rules.size(); ++i) {
            const auto& r = profile.band_duty_rules[i];
            std::vector<OnInterval> iv;
            for (const auto* e : in_band)
                if (r.sub_band.contains(e->center_hz))
                    iv.push_back({e->start_us, e->start_us + e->duration_us});
            RuleVerdict v;
            v.rule = fmt("band_duty[%.1f-%.1fMHz]", r.sub_band.lo_mhz(), r.sub_band.hi_mhz());
            v.unit = "fraction";
            v.limit = r.max_duty;
            v.governing = governs[i] != 0;
            if (iv.empty()) {
                v.verdict = Verdict::NotApplicable;
                v.governing = true;
                v.detail = "no events in this sub-band";
            } else {
                const usec_t on = max_window_on(iv, r.period_us);
                const double duty = static_cast<double>(on) / static_cast<double>(r.period_us);
                v.measured = duty;
                const bool ok = static_cast<double>(on) <=
                                r.max_duty * static_cast<double>(r.period_us);
                v.verdict = ok ? Verdict::Pass : Verdict::Fail;
                v.detail = fmt("worst window %.6g s on air over %.6g s%s",
                               static_cast<double>(on) / 1e6,
                               static_cast<double>(r.period_us) / 1e6,
                               v.governing ? "" : " (shadowed by a narrower sub-band)");
            }
            add(std::move(v));
        }
        if (gap_events > 0) {
            RuleVerdict v;
            v.rule = "band_duty_gap";
            v.unit = "events";
            v.measured = static_cast<double>(gap_events);
            v.verdict = Verdict::Indeterminate;
            v.detail = fmt("%zu in-band event(s) fall in spectrum with no duty rule, e.g. "
                           "%.3f MHz; no budget can be attributed",
                           gap_events, gap_mhz);
            add(std::move(v));
        }
    }

    // --- maximum continuous transmission (duty-rule form) --------------------
    for (const auto& r : profile.band_duty_rules) {
        const std::optional<double> limit =
            schedule.dialogue ? r.max_on_dialogue_s : r.max_on_single_s;
        if (!limit) continue;
        RuleVerdict v;
        v.rule = fmt("continuous_on[%.1f-%.1fMHz]", r.sub_band.lo_mhz(), r.sub_band.hi_mhz());
        v.unit = "s";
        v.limit = *limit;
        usec_t worst = 0;
        bool any = false;
        for (const auto* e : in_band)
            if (r.sub_band.contains(e->center_hz)) {
                any = true;
                worst = std::max(worst, e->duration_us);
            }
        if (!any) {
            v.verdict = Verdict::NotApplicable;
            v.detail = "no events in this sub-band";
        } else {
            v.measured = static_cast<double>(worst) / 1e6;
            const bool ok = static_cast<double>(worst) <= *limit * 1e6;
            v.verdict = ok ? Verdict::Pass : Verdict::Fail;
            v.detail = fmt("longest %s transmission %.6g s",
                           schedule.dialogue ? "dialogue" : "single", *v.measured);
        }
        add(std::move(v));
    }

    // --- cumulative on-time per spectrum slice -------------------------------
    // The printed budgets are market-wide ("100 s per hour over 200 kHz"), so
    // distinct (granularity, budget) combinations are evaluated once across
    // all bands, slices anchored at each band's lower edge.  An event counts
    // toward every slice its occupied bandwidth intersects.
    {
        std::vector<std::pair<hz_t, double>> combos;
        for (const auto& r : profile.band_duty_rules) {
            if (!r.cumulative_s_per_hour || !r.cumulative_granularity_hz) continue;
            const std::pair<hz_t, double> combo{*r.cumulative_granularity_hz,
                                                *r.cumulative_s_per_hour};
            if (std::find(combos.begin(), combos.end(), combo) == combos.end())
                combos.push_back(combo);
        }
        for (const auto& [gran, budget_s] : combos) {
            RuleVerdict v;
            v.rule = fmt("cumulative_on[%gkHz]", khz_from_hz(gran));
            v.unit = "s";
            v.limit = budget_s;
            if (in_band.empty()) {
                v.verdict = Verdict::NotApplicable;
                v.detail = "no in-band events";
                add(std::move(v));
                continue;
            }
            usec_t worst = 0;
            double worst_lo_mhz = 0.0;
            for (const auto& band : profile.bands) {
                for (hz_t lo = band.lo; lo < band.hi; lo += gran) {
                    const hz_t hi = std::min(lo + gran, band.hi);
                    std::vector<OnInterval> iv;
                    for (const auto* e : in_band) {
                        // occupied spectrum [centre - bw/2, centre + bw/2],
                        // compared doubled to stay in integers
                        if (2 * e->center_hz - e->bandwidth_hz < 2 * hi &&
                            2 * e->center_hz + e->bandwidth_hz > 2 * lo)
                            iv.push_back({e->start_us, e->start_us + e->duration_us});
                    }
                    const usec_t on = max_window_on(iv, kHour);
                    if (on > worst) {
                        worst = on;
                        worst_lo_mhz = mhz_from_hz(lo);
                    }
                }
            }
            v.measured = static_cast<double>(worst) / 1e6;
            const bool ok = static_cast<double>(worst) <= budget_s * 1e6;
            v.verdict = ok ? Verdict::Pass : Verdict::Fail;
            v.detail = fmt("worst slice starts at %.3f MHz with %.6g s on air per hour",
                           worst_lo_mhz, *v.measured);
            add(std::move(v));
        }
    }

    // --- per-channel duty cycles --------------------------------------------
    if (!profile.channel_duty_rules.empty()) {
        // channels are identified by (centre, bandwidth)
        std::map<std::pair<hz_t, hz_t>, std::vector<OnInterval>> channels;
        for (const auto* e : in_band)
            channels[{e->center_hz, e->bandwidth_hz}].push_back(
                {e->start_us, e->start_us + e->duration_us});
        for (const auto& r : profile.channel_duty_rules) {
            RuleVerdict v;
            v.rule = "channel_duty[" + r.bandwidth.describe() + "]";
            v.unit = "fraction";
            v.limit = r.max_duty;
            double worst_duty = -1.0;
            hz_t worst_center = 0;
            for (auto& [key, iv] : channels) {
                if (!r.bandwidth.matches(key.second)) continue;
                const usec_t on = max_window_on(iv, r.period_us);
                const double duty = static_cast<double>(on) / static_cast<double>(r.period_us);
                if (duty > worst_duty) {
                    worst_duty = duty;
                    worst_center = key.first;
                }
            }
            if (worst_duty < 0.0) {
                v.verdict = Verdict::NotApplicable;
                v.detail = "no channels in this bandwidth class";
            } else {
                v.measured = worst_duty;
                const bool ok = worst_duty <= r.max_duty;
                v.verdict = ok ? Verdict::Pass : Verdict::Fail;
                v.detail = fmt("worst channel %.3f MHz at %.6g%% of the %.6g s window",
                               mhz_from_hz(worst_center), worst_duty * 100.0,
                               static_cast<double>(r.period_us) / 1e6);
            }
            add(std::move(v));
        }
    }

    // --- polite spectrum access ---------------------------------------------
    if (profile.polite) {
        const auto& polite = *profile.polite;
        const bool has_variants = polite.short_sense || polite.long_sense;
        std::vector<std::pair<std::string, const PoliteVariantLimits*>> active;
        if (polite.common) active.emplace_back("", &*polite.common);
        if (has_variants) {
            if (!schedule.sense_variant) {
                RuleVerdict v;
                v.rule = "polite_variant";
                v.verdict = schedule.events.empty() ? Verdict::NotApplicable
                                                    : Verdict::Indeterminate;
                v.detail = "market defines short/long carrier-sense variants but the schedule "
                           "does not declare one";
                add(std::move(v));
            } else if (*schedule.sense_variant == SenseVariant::Short && polite.short_sense) {
                active.emplace_back("[scs]", &*polite.short_sense);
            } else if (*schedule.sense_variant == SenseVariant::Long && polite.long_sense) {
                active.emplace_back("[lcs]", &*polite.long_sense);
            }
        }
        for (const auto& [tag, limits] : active) {
            if (limits->min_listen_window_us) {
                RuleVerdict v;
                v.rule = "listen_window" + tag;
                v.unit = "us";
                v.limit = *limits->min_listen_window_us;
                v.verdict = Verdict::NotApplicable;
                v.detail = "listen-before-talk timing cannot be evidenced from schedule data";
                add(std::move(v));
            }
            if (limits->min_off_ms) {
                RuleVerdict v;
                v.rule = "min_off_time" + tag;
                v.unit = "ms";
                v.limit = *limits->min_off_ms;
                // gaps between consecutive events on the same channel
                std::map<std::pair<hz_t, hz_t>, const TransmissionEvent*> prev;
                usec_t min_gap = std::numeric_limits<usec_t>::max();
                bool any = false;
                for (const auto* e : in_band) {
                    auto [it, fresh] = prev.try_emplace({e->center_hz, e->bandwidth_hz}, e);
                    if (!fresh) {
                        const TransmissionEvent* last = it->second;
                        const bool applies =
                            static_cast<double>(last->duration_us) >
                            limits->min_off_if_tx_on_above_ms * 1e3;
                        if (applies) {
                            any = true;
                            min_gap = std::min(min_gap,
                                               e->start_us - (last->start_us + last->duration_us));
                        }
                        it->second = e;
                    }
                }
                if (!any) {
                    v.verdict = Verdict::NotApplicable;
                    v.detail = "no consecutive same-channel transmissions under this rule";
                } else {
                    v.measured = static_cast<double>(min_gap) / 1e3;
                    const bool ok = static_cast<double>(min_gap) >= *limits->min_off_ms * 1e3;
                    v.verdict = ok ? Verdict::Pass : Verdict::Fail;
                    v.detail = fmt("shortest pause between same-channel transmissions %.6g ms",
                                   *v.measured);
                }
                add(std::move(v));
            }
            if (limits->max_continuous_on_s) {
                RuleVerdict v;
                v.rule = "polite_continuous_on" + tag;
                v.unit = "s";
                v.limit = *limits->max_continuous_on_s;
                if (in_band.empty()) {
                    v.verdict = Verdict::NotApplicable;
                    v.detail = "no in-band events";
                } else {
                    usec_t worst = 0;
                    for (const auto* e : in_band) worst = std::max(worst, e->duration_us);
                    v.measured = static_cast<double>(worst) / 1e6;
                    const bool ok =
                        static_cast<double>(worst) <= *limits->max_continuous_on_s * 1e6;
                    v.verdict = ok ? Verdict::Pass : Verdict::Fail;
                    v.detail = fmt("longest transmission %.6g s", *v.measured);
                }
                add(std::move(v));
            }
            if (limits->max_cumulative_s_per_hour) {
                RuleVerdict v;
                v.rule = "polite_cumulative_on" + tag;
                v.unit = "s";
                v.limit = *limits->max_cumulative_s_per_hour;
                if (in_band.empty()) {
                    v.verdict = Verdict::NotApplicable;
                    v.detail = "no in-band events";
                } else {
                    const usec_t on = max_window_on(on_intervals(schedule.events), kHour);
                    v.measured = static_cast<double>(on) / 1e6;
                    const bool ok =
                        static_cast<double>(on) <= *limits->max_cumulative_s_per_hour * 1e6;
                    v.verdict = ok ? Verdict::Pass : Verdict::Fail;
                    v.detail = fmt("worst hour carries %.6g s of transmission", *v.measured);
                }
                add(std::move(v));
            }
        }
        {
            RuleVerdict v;
            v.rule = "carrier_sense";
            v.unit = "dBm";
            v.verdict = Verdict::NotApplicable;
            if (polite.carrier_sense_dbm) {
                v.limit = *polite.carrier_sense_dbm;
                v.detail = "sense threshold cannot be evidenced from schedule data";
            } else {
                v.detail = "no sense threshold defined for this market";
            }
            add(std::move(v));
        }
    }

    // --- spurious emissions (informational) ---------------------------------
    {
        RuleVerdict v;
        v.rule = "spurious_emission";
        v.unit = "dBuV/m";
        v.limit = profile.spurious_limit_dbuv;
        v.verdict = Verdict::NotApplicable;
        v.detail = "field-strength limit at 3 m; not derivable from schedule data";
        add(std::move(v));
    }

    ComplianceReport report;
    report.region_id = profile.region_id;
    report.items = std::move(items);
    bool governing_fail = false, shadowed_fail = false, indeterminate = false;
    for (const auto& item : report.items) {
        if (item.verdict == Verdict::Fail) {
            (item.governing ? governing_fail : shadowed_fail) = true;
        } else if (item.verdict == Verdict::Indeterminate) {
            indeterminate = true;
        }
    }
    if (governing_fail)
        report.overall = Verdict::Fail;
    else if (indeterminate || shadowed_fail)
        report.overall = Verdict::Indeterminate;
    else
        report.overall = Verdict::Pass;
    return report;
}

}  // namespace lpwan::regulation
