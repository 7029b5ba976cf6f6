#include "shufflelab/rng.hpp"

namespace shufflelab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) noexcept {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_index));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : engine_(stream_seed(master_seed, stream_index)) {}

// Lemire's nearly-divisionless method.
std::uint64_t RngStream::below(std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace shufflelab
