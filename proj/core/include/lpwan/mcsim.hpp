#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace lpwan::mcsim {

// Stateless counter-based generator (SplitMix64 finalizer over seed and
// counter).  Sample k of any stream is a pure function of (seed, k), so
// results are reproducible bit-for-bit no matter how the index range is
// partitioned across threads.  This generator family is part of the module
// contract; golden tests pin its output.
std::uint64_t counter_value(std::uint64_t seed, std::uint64_t counter);

// Uniform double in [0, 1) from the top 53 bits of counter_value.
double uniform01(std::uint64_t seed, std::uint64_t counter);

enum class AdmissionMode { PaperLiteral, AcceptedOnly };

struct SimConfig {
    double side = 1.0;        // h: square field edge, km
    double exclusion = 0.0;   // d: pairwise exclusion distance, km
    std::uint64_t n = 0;      // samples (cdf/mean) or stream length (admission)
    std::uint64_t seed = 0;   // 64-bit stream key
    AdmissionMode mode = AdmissionMode::PaperLiteral;

    void validate() const;  // throws DomainError on bad geometry or n == 0
};

struct SimResult {
    double estimate = 0.0;
    double standard_error = 0.0;  // 0 when undefined (single sample)
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string mode;                      // "cdf", "mean", "paper-literal", "accepted-only"
    std::optional<double> density;         // admission only: admitted / h^2
    bool saturation_warning = false;       // admission only: stream ended too early
};

// P(pair distance <= query) estimated from n uniform pairs; binomial standard
// error sqrt(p(1-p)/n).  `threads` <= 0 picks a hardware default; the result
// is independent of the choice.
SimResult empirical_distance_cdf(const SimConfig& config, double query, int threads = 0);

// Same stream evaluated at many query distances in one pass.
std::vector<SimResult> empirical_distance_cdf_curve(const SimConfig& config,
                                                    std::span<const double> queries,
                                                    int threads = 0);

// Mean pairwise distance of n uniform pairs, with sample standard error.
SimResult mean_pair_distance(const SimConfig& config, int threads = 0);

// Sequential admission: points arrive uniformly at random; a point is kept
// when it is farther than d from every point checked so far.
//   paper-literal: checked set = all previously arrived points
//   accepted-only: checked set = previously admitted points only
// estimate = admitted count; density = admitted / h^2.
SimResult simulate_admission(const SimConfig& config);

// Default admission stream length: ceil(20 / F(min(d, h))) draws, enough to
// cover the geometric tail of the admission process.
std::uint64_t suggested_stream_length(double side, double exclusion);

// {estimate, se, n, seed, mode} plus admission extras when present.
nlohmann::ordered_json to_json(const SimResult& result);

}  // namespace lpwan::mcsim
