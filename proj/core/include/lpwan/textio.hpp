#pragma once

#include <charconv>
#include <string>

namespace lpwan {

// Shortest decimal representation that round-trips to the same double.
// Infinities come out as "inf"/"-inf", which CSV emitters rely on.
inline std::string shortest(double value) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace lpwan
