#pragma once

namespace lpwan::propagation {

// A one-way radio link: transmit power, receiver sensitivity, carrier.
struct LinkBudget {
    double tx_power_dbm = 0.0;
    double rx_sensitivity_dbm = 0.0;
    double frequency_mhz = 0.0;

    // Throws DomainError unless frequency > 0 and tx power exceeds sensitivity.
    void validate() const;
};

// A physical channel: occupied bandwidth and operating signal-to-noise ratio.
struct ChannelSpec {
    double bandwidth_hz = 0.0;
    double snr_linear = 0.0;  // linear power ratio, >= 0

    void validate() const;
};

// Shannon capacity B * log2(1 + S/N) in bit/s.
double shannon_capacity(const ChannelSpec& channel);

// Free-space path loss in dB for an isotropic link (0 dBi antenna gains).
double fspl_db(double distance_km, double frequency_mhz);

// Largest distance at which free-space loss still closes the link budget.
double max_range(const LinkBudget& link);

// A reference deployment radius achieved at a given power and carrier.
struct RangeAnchor {
    double distance_km = 0.0;
    double power_dbm = 0.0;
    double frequency_mhz = 0.0;
};

// Rescale a known free-space radius to a different power and carrier:
// d' = d * 10^((p' - p)/20) * (f / f').
double scale_range(const RangeAnchor& base, double target_power_dbm, double target_frequency_mhz);

}  // namespace lpwan::propagation
