#pragma once

#include <cstdint>
#include <random>

namespace shufflelab {

/// 64-bit finalizer of splitmix64; used to derive child seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Child seed for (master_seed, stream_index). Frozen: changing it changes
/// every recorded Monte Carlo result.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

/// Deterministic random stream. The engine is mt19937_64 (fully specified by
/// the standard); integer and real draws are implemented here rather than with
/// std distributions so that output is identical across standard libraries.
/// Single owner; never share one stream between threads.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace shufflelab
