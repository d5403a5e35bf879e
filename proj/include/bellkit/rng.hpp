#pragma once

// Counter-based random numbers (Philox4x32-10).
//
// Reproducibility contract: a draw is a pure function of (seed, stream,
// counter), so distinct runs/contexts get hash-derived streams instead of a
// shared sequential state, and parallel or reordered execution cannot change
// the numbers. Uses only fixed-width integer ops; the u64 -> double
// conversion is the usual 53-bit scaling. Output is host-independent.

#include <array>
#include <cstdint>

namespace bellkit {

// One Philox4x32 block, 10 rounds.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// SplitMix64 finalizer; the building block for stream derivation.
std::uint64_t mix64(std::uint64_t x);

// stream = hash(seed, id). Chain calls to derive sub-streams.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t id);

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform double in [0,1) with 53 random bits.
  double next_unit();

  // Unbiased uniform integer in [0, n), n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_ = 0;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;  // forces refill on first draw
};

}  // namespace bellkit
