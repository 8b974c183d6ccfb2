#include "lpwan/propagation.hpp"

#include <cmath>
#include <numbers>

#include "lpwan/errors.hpp"
#include "lpwan/units.hpp"

namespace lpwan::propagation {

void LinkBudget::validate() const {
    if (frequency_mhz <= 0.0) throw DomainError("link budget: frequency must be positive");
    if (tx_power_dbm <= rx_sensitivity_dbm)
        throw DomainError("link budget: tx power must exceed rx sensitivity");
}

void ChannelSpec::validate() const {
    if (bandwidth_hz <= 0.0) throw DomainError("channel spec: bandwidth must be positive");
    if (snr_linear < 0.0) throw DomainError("channel spec: snr must be a non-negative linear ratio");
}

double shannon_capacity(const ChannelSpec& channel) {
    channel.validate();
    // log1p keeps precision at the tiny SNRs these links actually run at
    return channel.bandwidth_hz * std::log1p(channel.snr_linear) * std::numbers::log2e;
}

double fspl_db(double distance_km, double frequency_mhz) {
    if (distance_km <= 0.0) throw DomainError("fspl: distance must be positive");
    if (frequency_mhz <= 0.0) throw DomainError("fspl: frequency must be positive");
    const double d_m = distance_km * 1e3;
    const double f_hz = frequency_mhz * 1e6;
    // 20*log10(4*pi*d*f/c); the familiar 32.45 + 20log10(d_km) + 20log10(f_MHz)
    // is this expression with the constant rounded.
    return 20.0 * std::log10(4.0 * M_PI * d_m * f_hz / kSpeedOfLight);
}

double max_range(const LinkBudget& link) {
    link.validate();
    const double budget_db = link.tx_power_dbm - link.rx_sensitivity_dbm;
    const double f_hz = link.frequency_mhz * 1e6;
    // Invert fspl_db: d = (c / (4*pi*f)) * 10^(budget/20), in km.
    return kSpeedOfLight / (4.0 * M_PI * f_hz) * std::pow(10.0, budget_db / 20.0) / 1e3;
}

double scale_range(const RangeAnchor& base, double target_power_dbm, double target_frequency_mhz) {
    if (base.distance_km <= 0.0) throw DomainError("scale_range: base distance must be positive");
    if (base.frequency_mhz <= 0.0 || target_frequency_mhz <= 0.0)
        throw DomainError("scale_range: frequencies must be positive");
    return base.distance_km * std::pow(10.0, (target_power_dbm - base.power_dbm) / 20.0) *
           (base.frequency_mhz / target_frequency_mhz);
}

}  // namespace lpwan::propagation
