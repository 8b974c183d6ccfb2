#pragma once

#include <cmath>
#include <cstdint>

namespace lpwan {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Decibel helpers. All power ratios are linear unless a name says dB.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

// Internal fixed-point representations: frequencies are held in integer Hz
// with channel centre frequencies snapped to a 1 kHz grid, and times are held
// in integer microseconds.  Interval endpoints are compared exactly, with
// closed-lower / open-upper semantics, so boundary cases never depend on
// floating-point rounding.
using hz_t = std::int64_t;
using usec_t = std::int64_t;

// Centre frequency given in MHz -> Hz on the 1 kHz grid.
inline hz_t center_hz_from_mhz(double mhz) {
    return static_cast<hz_t>(std::llround(mhz * 1e3)) * 1000;
}

// Bandwidth given in kHz -> Hz (1 Hz resolution; ultra-narrowband channels
// can be fractions of a kHz).
inline hz_t hz_from_khz(double khz) { return static_cast<hz_t>(std::llround(khz * 1e3)); }

inline double mhz_from_hz(hz_t hz) { return static_cast<double>(hz) / 1e6; }
inline double khz_from_hz(hz_t hz) { return static_cast<double>(hz) / 1e3; }

inline usec_t usec_from_s(double seconds) {
    return static_cast<usec_t>(std::llround(seconds * 1e6));
}
inline double s_from_usec(usec_t us) { return static_cast<double>(us) / 1e6; }

// Half-open frequency interval [lo, hi) in Hz.
struct FreqInterval {
    hz_t lo = 0;
    hz_t hi = 0;

    static FreqInterval from_mhz(double lo_mhz, double hi_mhz) {
        return {center_hz_from_mhz(lo_mhz), center_hz_from_mhz(hi_mhz)};
    }
    bool contains(hz_t f) const { return f >= lo && f < hi; }
    bool contains_interval(const FreqInterval& other) const {
        return other.lo >= lo && other.hi <= hi;
    }
    bool overlaps(hz_t a, hz_t b) const { return a < hi && b > lo; }
    hz_t width() const { return hi - lo; }
    double lo_mhz() const { return mhz_from_hz(lo); }
    double hi_mhz() const { return mhz_from_hz(hi); }
};

inline bool operator==(const FreqInterval& a, const FreqInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

}  // namespace lpwan
