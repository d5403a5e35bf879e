#include "bellkit/rng.hpp"

#include "bellkit/errors.hpp"

namespace bellkit {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         const std::array<std::uint32_t, 2>& k) {
  std::uint64_t p0 = std::uint64_t(kPhiloxM0) * c[0];
  std::uint64_t p1 = std::uint64_t(kPhiloxM1) * c[2];
  std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
  std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    philox_round(counter, key);
  }
  return counter;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t id) {
  return mix64(mix64(seed) ^ id);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
      stream_lo_(std::uint32_t(stream)),
      stream_hi_(std::uint32_t(stream >> 32)) {}

void RngStream::refill() {
  std::array<std::uint32_t, 4> ctr = {std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                      stream_lo_, stream_hi_};
  buf_ = philox4x32(ctr, key_);
  ++block_;
  pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
  if (pos_ >= 4) refill();
  return buf_[pos_++];
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t lo = next_u32();
  std::uint64_t hi = next_u32();
  return lo | (hi << 32);
}

double RngStream::next_unit() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("below(0)");
  if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % n;
  }
}

}  // namespace bellkit
