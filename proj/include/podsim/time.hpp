#pragma once

#include <cstdint>

namespace podsim {

// Simulation time is integer microseconds from simulation start. All clock
// arithmetic is integer; fractional quantities live in Frac (see frac.hpp).
using SimTime = std::int64_t;

constexpr SimTime kUsPerMs = 1'000;
constexpr SimTime kUsPerSec = 1'000'000;

// CFS bandwidth-control scheduling period.
constexpr SimTime kDefaultPeriodUs = 100 * kUsPerMs;

// 1000 millicores = one core; a millicore is 1 ms of CPU time per second.
using Millicores = std::int64_t;

constexpr Millicores kMilliPerCore = 1'000;

inline double to_seconds(SimTime t) { return static_cast<double>(t) / kUsPerSec; }
inline double to_ms(SimTime t) { return static_cast<double>(t) / kUsPerMs; }

}  // namespace podsim
