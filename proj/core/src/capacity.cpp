#include "lpwan/capacity.hpp"

#include <cmath>

#include "lpwan/errors.hpp"

namespace lpwan::capacity {

namespace {
double disc_area(double radius_km) { return M_PI * radius_km * radius_km; }
}  // namespace

double node_density(int channels, double duty_cycle, double radius_km) {
    if (channels < 1) throw DomainError("node_density: channel count must be >= 1");
    if (!(duty_cycle > 0.0) || duty_cycle > 1.0)
        throw DomainError("node_density: duty cycle must lie in (0, 1]");
    if (!(radius_km > 0.0)) throw DomainError("node_density: radius must be positive");
    return channels / duty_cycle / disc_area(radius_km);
}

double traffic_density(double aggregate_bps, double radius_km) {
    if (aggregate_bps < 0.0) throw DomainError("traffic_density: capacity must be non-negative");
    if (!(radius_km > 0.0)) throw DomainError("traffic_density: radius must be positive");
    return aggregate_bps / disc_area(radius_km);
}

double aggregate_capacity(std::span<const ChannelGroupCapacity> groups) {
    double total = 0.0;
    for (const auto& g : groups) {
        if (g.count < 0) throw DomainError("aggregate_capacity: group count must be >= 0");
        if (g.capacity_bps < 0.0)
            throw DomainError("aggregate_capacity: channel capacity must be >= 0");
        total += static_cast<double>(g.count) * g.capacity_bps;
    }
    return total;
}

double distance_cdf(double distance, double side) {
    if (!(side > 0.0)) throw DomainError("distance_cdf: square side must be positive");
    if (distance < 0.0 || distance > side)
        throw DomainError("distance_cdf: distance must lie in [0, side]");
    const double t = distance / side;
    return M_PI * t * t - (8.0 / 3.0) * t * t * t + 0.5 * t * t * t * t;
}

double expected_concurrent_transmitters(double distance, double side, ConcurrentFormula formula) {
    const double cdf = distance_cdf(distance, side);
    if (cdf <= 0.0)
        throw DomainError("expected_concurrent_transmitters: zero collision probability");
    switch (formula) {
        case ConcurrentFormula::Paper:
            return (1.0 - cdf) / cdf;
        case ConcurrentFormula::Geometric:
            return 1.0 / cdf;
    }
    throw DomainError("expected_concurrent_transmitters: unknown formula");
}

double asymptotic_channel_density(double distance_km) {
    if (!(distance_km > 0.0))
        throw DomainError("asymptotic_channel_density: distance must be positive");
    return 1.0 / disc_area(distance_km);
}

}  // namespace lpwan::capacity
