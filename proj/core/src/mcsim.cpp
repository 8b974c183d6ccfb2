#include "lpwan/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <unordered_map>

#include "lpwan/capacity.hpp"
#include "lpwan/errors.hpp"

namespace lpwan::mcsim {

std::uint64_t counter_value(std::uint64_t seed, std::uint64_t counter) {
    // SplitMix64: state = seed + counter * golden gamma, then the finalizer.
    std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(counter_value(seed, counter) >> 11) * 0x1.0p-53;
}

void SimConfig::validate() const {
    if (!(side > 0.0)) throw DomainError("sim config: side must be positive");
    if (!(exclusion > 0.0)) throw DomainError("sim config: exclusion distance must be positive");
    if (n == 0) throw DomainError("sim config: sample count must be >= 1");
}

namespace {

// Distance of pair `i` of the stream keyed by `seed`, field edge `h`.
// Each pair consumes counters 4i..4i+3.
double pair_distance(std::uint64_t seed, std::uint64_t i, double h) {
    const double x1 = uniform01(seed, 4 * i) * h;
    const double y1 = uniform01(seed, 4 * i + 1) * h;
    const double x2 = uniform01(seed, 4 * i + 2) * h;
    const double y2 = uniform01(seed, 4 * i + 3) * h;
    const double dx = x1 - x2;
    const double dy = y1 - y2;
    return std::sqrt(dx * dx + dy * dy);
}

// Deterministic parallel reduction: the index range is cut into fixed-size
// chunks, each chunk is reduced serially, and chunk results are combined in
// chunk order.  The thread count only affects who computes a chunk, never
// the result.
constexpr std::uint64_t kChunk = 1 << 16;

template <typename Partial, typename ChunkFn, typename CombineFn>
Partial chunked_reduce(std::uint64_t n, int threads, Partial init, ChunkFn chunk_fn,
                       CombineFn combine) {
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    std::vector<Partial> partial(chunks, init);
    if (threads == 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c)
            partial[c] = chunk_fn(c * kChunk, std::min(n, (c + 1) * kChunk));
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                partial[c] = chunk_fn(c * kChunk, std::min(n, (c + 1) * kChunk));
            }
        };
        std::vector<std::thread> pool;
        const int nthreads = static_cast<int>(std::min<std::uint64_t>(threads, chunks));
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    Partial total = init;
    for (std::uint64_t c = 0; c < chunks; ++c) total = combine(total, partial[c]);
    return total;
}

}  // namespace

SimResult empirical_distance_cdf(const SimConfig& config, double query, int threads) {
    config.validate();
    if (query < 0.0 || query > config.side * std::numbers::sqrt2 * (1.0 + 1e-12))
        throw DomainError("empirical cdf: query outside [0, h*sqrt(2)]");
    const auto hits = chunked_reduce<std::uint64_t>(
        config.n, threads, 0,
        [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t count = 0;
            for (std::uint64_t i = lo; i < hi; ++i)
                if (pair_distance(config.seed, i, config.side) <= query) ++count;
            return count;
        },
        [](std::uint64_t a, std::uint64_t b) { return a + b; });
    const double p = static_cast<double>(hits) / static_cast<double>(config.n);
    SimResult r;
    r.estimate = p;
    r.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(config.n));
    r.n = config.n;
    r.seed = config.seed;
    r.mode = "cdf";
    return r;
}

std::vector<SimResult> empirical_distance_cdf_curve(const SimConfig& config,
                                                    std::span<const double> queries, int threads) {
    config.validate();
    std::vector<double> sorted(queries.begin(), queries.end());
    std::sort(sorted.begin(), sorted.end());
    using Counts = std::vector<std::uint64_t>;
    const auto hits = chunked_reduce<Counts>(
        config.n, threads, Counts(sorted.size(), 0),
        [&](std::uint64_t lo, std::uint64_t hi) {
            Counts count(sorted.size(), 0);
            for (std::uint64_t i = lo; i < hi; ++i) {
                const double w = pair_distance(config.seed, i, config.side);
                // index of the first query >= w; every query from there on counts
                const auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
                for (std::size_t q = it - sorted.begin(); q < sorted.size(); ++q) ++count[q];
            }
            return count;
        },
        [](Counts a, const Counts& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            return a;
        });
    std::vector<SimResult> out;
    out.reserve(queries.size());
    for (std::size_t q = 0; q < sorted.size(); ++q) {
        const double p = static_cast<double>(hits[q]) / static_cast<double>(config.n);
        SimResult r;
        r.estimate = p;
        r.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(config.n));
        r.n = config.n;
        r.seed = config.seed;
        r.mode = "cdf";
        out.push_back(std::move(r));
    }
    return out;
}

SimResult mean_pair_distance(const SimConfig& config, int threads) {
    config.validate();
    struct Moments {
        double sum = 0.0, sumsq = 0.0;
    };
    const auto m = chunked_reduce<Moments>(
        config.n, threads, {},
        [&](std::uint64_t lo, std::uint64_t hi) {
            Moments part;
            for (std::uint64_t i = lo; i < hi; ++i) {
                const double w = pair_distance(config.seed, i, config.side);
                part.sum += w;
                part.sumsq += w * w;
            }
            return part;
        },
        [](Moments a, const Moments& b) {
            a.sum += b.sum;
            a.sumsq += b.sumsq;
            return a;
        });
    const double n = static_cast<double>(config.n);
    SimResult r;
    r.estimate = m.sum / n;
    if (config.n > 1) {
        const double var = std::max(0.0, (m.sumsq - n * r.estimate * r.estimate) / (n - 1.0));
        r.standard_error = std::sqrt(var / n);
    } else {
        r.standard_error = 0.0;  // undefined for a single sample
    }
    r.n = config.n;
    r.seed = config.seed;
    r.mode = "mean";
    return r;
}

namespace {

// Uniform-grid index over the field with cell edge >= d, so that any point
// within distance d of a cell lies in its 3x3 neighbourhood.
class NeighbourGrid {
  public:
    NeighbourGrid(double side, double radius) {
        dim_ = static_cast<int>(std::floor(side / std::max(radius, side / 4096.0)));
        dim_ = std::clamp(dim_, 1, 4096);
        cell_ = side / dim_;  // cell_ >= radius by construction
    }

    void insert(double x, double y, std::uint32_t id) {
        cells_[key(x, y)].push_back(id);
    }

    template <typename Fn>
    bool any_neighbour(double x, double y, Fn within) const {
        const int cx = coord(x), cy = coord(y);
        for (int gx = std::max(0, cx - 1); gx <= std::min(dim_ - 1, cx + 1); ++gx)
            for (int gy = std::max(0, cy - 1); gy <= std::min(dim_ - 1, cy + 1); ++gy) {
                const auto it = cells_.find(static_cast<std::uint64_t>(gx) * dim_ + gy);
                if (it == cells_.end()) continue;
                for (std::uint32_t id : it->second)
                    if (within(id)) return true;
            }
        return false;
    }

  private:
    int coord(double v) const {
        return std::clamp(static_cast<int>(v / cell_), 0, dim_ - 1);
    }
    std::uint64_t key(double x, double y) const {
        return static_cast<std::uint64_t>(coord(x)) * dim_ + coord(y);
    }

    int dim_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

}  // namespace

SimResult simulate_admission(const SimConfig& config) {
    config.validate();
    if (config.n > (1ull << 31))
        throw DomainError("simulate_admission: stream too long");
    const double h = config.side;
    const double d2 = config.exclusion * config.exclusion;
    std::vector<double> xs, ys;
    xs.reserve(config.n);
    ys.reserve(config.n);
    NeighbourGrid grid(h, std::min(config.exclusion, h));
    std::uint64_t admitted = 0;
    std::uint64_t last_admitted_index = 0;
    for (std::uint64_t i = 0; i < config.n; ++i) {
        const double x = uniform01(config.seed, 2 * i) * h;
        const double y = uniform01(config.seed, 2 * i + 1) * h;
        const bool blocked = grid.any_neighbour(x, y, [&](std::uint32_t id) {
            const double dx = xs[id] - x, dy = ys[id] - y;
            return dx * dx + dy * dy <= d2;
        });
        if (!blocked) {
            ++admitted;
            last_admitted_index = i;
        }
        // paper-literal checks every arrival, so every arrival enters the
        // grid; accepted-only only remembers admitted points.
        if (config.mode == AdmissionMode::PaperLiteral || !blocked) {
            xs.push_back(x);
            ys.push_back(y);
            grid.insert(x, y, static_cast<std::uint32_t>(xs.size() - 1));
        }
    }
    SimResult r;
    r.estimate = static_cast<double>(admitted);
    r.standard_error = 0.0;
    r.n = config.n;
    r.seed = config.seed;
    r.mode = config.mode == AdmissionMode::PaperLiteral ? "paper-literal" : "accepted-only";
    r.density = static_cast<double>(admitted) / (h * h);
    // If admissions were still happening in the final tenth of the stream the
    // process has not saturated and the count underestimates the packing.
    r.saturation_warning = config.n >= 10 && last_admitted_index + 1 > config.n - config.n / 10;
    return r;
}

std::uint64_t suggested_stream_length(double side, double exclusion) {
    if (!(side > 0.0) || !(exclusion > 0.0))
        throw DomainError("suggested_stream_length: side and exclusion must be positive");
    const double f = capacity::distance_cdf(std::min(exclusion, side), side);
    return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(20.0 / f)));
}

nlohmann::ordered_json to_json(const SimResult& result) {
    nlohmann::ordered_json j;
    j["estimate"] = result.estimate;
    j["se"] = result.standard_error;
    j["n"] = result.n;
    j["seed"] = result.seed;
    j["mode"] = result.mode;
    if (result.density) {
        j["density"] = *result.density;
        j["saturation_warning"] = result.saturation_warning;
    }
    return j;
}

}  // namespace lpwan::mcsim
