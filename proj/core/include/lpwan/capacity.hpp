#pragma once

#include <span>
#include <utility>

namespace lpwan::capacity {

// Devices per km^2 supportable by r channels at duty cycle alpha within a
// cell of radius d: n = (1/(pi d^2)) * (r / alpha).
double node_density(int channels, double duty_cycle, double radius_km);

// Aggregate throughput per km^2 for a cell of radius d: C / (pi d^2).
double traffic_density(double aggregate_bps, double radius_km);

// One group of identical channels inside a channel plan.
struct ChannelGroupCapacity {
    int count = 0;
    double capacity_bps = 0.0;
};

// Sum of count_i * capacity_i over all groups.
double aggregate_capacity(std::span<const ChannelGroupCapacity> groups);

// Probability that two points drawn uniformly in an h x h square are closer
// than d, on the branch 0 <= d <= h:
//   F(d) = pi (d/h)^2 - (8/3)(d/h)^3 + (1/2)(d/h)^4.
double distance_cdf(double distance, double side);

// Two published forms for the expected number of transmitters an interferer
// competes with inside the square:
//   Paper:     (1 - F(d)) / F(d)
//   Geometric: 1 / F(d)    (the mean of the geometric trial count)
// They differ by exactly one.
enum class ConcurrentFormula { Paper, Geometric };
double expected_concurrent_transmitters(double distance, double side, ConcurrentFormula formula);

// Large-field limit of concurrent transmitters per unit area: 1 / (pi d^2).
double asymptotic_channel_density(double distance_km);

}  // namespace lpwan::capacity
