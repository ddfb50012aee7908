#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wsn {

using NodeId = std::uint16_t;
using SimTime = std::uint64_t;  // 1 tick = 1 ms of simulated time

inline constexpr NodeId kBroadcastId = 0xFFFF;

// Raised when a scenario file or parameter set violates its contract.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an event is scheduled before the current clock.
struct ClockViolation : std::logic_error {
    explicit ClockViolation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace wsn
