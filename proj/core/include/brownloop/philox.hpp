#pragma once

// Counter-based Philox4x32-10 generator. Every draw is a pure function of
// (key, counter), so parallel schedules cannot change results.

#include <array>
#include <cstdint>

namespace brownloop {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

/// Key from a 64-bit seed.
PhiloxKey philox_key(std::uint64_t seed);

/// Uniform in (0, 1) from two 32-bit words (52-bit midpoints, never 0 or 1).
double uniform_open(std::uint32_t hi, std::uint32_t lo);

/// Two independent standard normals from one block (Box-Muller).
std::array<double, 2> normal_pair(const PhiloxCounter& block);

}  // namespace brownloop
