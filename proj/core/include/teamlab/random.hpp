#pragma once

#include <cstdint>
#include <random>

namespace teamlab {

/// Independent generator for work item `stream` under a run-level seed. Streams are
/// derived from (seed, stream) only, so results never depend on scheduling order.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace teamlab
