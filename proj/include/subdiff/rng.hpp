#pragma once

#include <cstdint>
#include <random>

namespace subdiff {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream seeds are derived per path, never per worker:
///   seed(master, tag, index) = splitmix64(splitmix64(master ^ splitmix64(tag)) + index)
/// so a run is bit-reproducible for any worker count.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(tag)) + index);
}

/// Tags separating the independent randomness sources of one path.
enum class StreamTag : std::uint64_t {
  diffusion = 0x44494646,    // Brownian increments and bridge uniforms
  subordinator = 0x53554244, // clock increments
  auxiliary = 0x41555821,
};

inline Rng make_stream(std::uint64_t master, StreamTag tag, std::uint64_t index) {
  return Rng(stream_seed(master, static_cast<std::uint64_t>(tag), index));
}

}  // namespace subdiff
