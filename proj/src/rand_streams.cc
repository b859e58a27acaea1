#include "mgs/rand_streams.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mgs {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kRootSalt = 0x6A09E667F3BCC909ULL;
constexpr std::uint64_t kLabelSalt = 0xBB67AE8584CAA73BULL;
constexpr std::uint64_t kCounterSalt = 0x3C6EF372FE94F82BULL;

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

// Pelle Evensen's rrmxmx; passes PractRand on sequential counters.
std::uint64_t mix64(std::uint64_t x) {
  x ^= rotl(x, 49) ^ rotl(x, 24);
  x *= 0x9FB21C651E98DF25ULL;
  x ^= x >> 28;
  x *= 0x9FB21C651E98DF25ULL;
  return x ^ (x >> 28);
}

RandomStream::RandomStream(std::uint64_t master_seed)
    : master_seed_(master_seed), key_(mix64(master_seed ^ kRootSalt)) {}

RandomStream RandomStream::derive(std::uint64_t label) const {
  RandomStream child;
  child.master_seed_ = master_seed_;
  // Non-commutative chaining: the label is mixed before it meets the key and
  // the key is rotated, so [a, b] and [b, a] land on different digests.
  child.key_ = mix64(rotl(key_, 17) ^ mix64(label * kGolden + kLabelSalt));
  child.depth_ = depth_ + 1;
  return child;
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t c = counter_++;
  return mix64(key_ ^ mix64(c * kGolden + kCounterSalt));
}

double RandomStream::next_open01() {
  // 53-bit grid shifted by half a step: never 0, never 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double uniform(RandomStream& stream, double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("uniform: invalid interval (" + std::to_string(lo) + ", " +
                                std::to_string(hi) + ")");
  }
  for (;;) {
    const double v = lo + (hi - lo) * stream.next_open01();
    if (v > lo && v < hi) return v;
  }
}

}  // namespace mgs
