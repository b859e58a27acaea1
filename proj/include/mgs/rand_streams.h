#pragma once

#include <cstdint>

namespace mgs {

// Counter-based splittable stream. The output sequence is a pure function of
// (master seed, derivation path); the path is kept as a 64-bit digest so
// streams stay trivially copyable.
class RandomStream {
 public:
  RandomStream() = default;
  explicit RandomStream(std::uint64_t master_seed);

  // Child stream for `label`. Depends only on this stream's path, never on
  // how many values have been drawn from it.
  [[nodiscard]] RandomStream derive(std::uint64_t label) const;

  // Next raw 64-bit value.
  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double next_open01();

  [[nodiscard]] std::uint64_t master_seed() const { return master_seed_; }
  [[nodiscard]] std::uint64_t path_digest() const { return key_; }
  [[nodiscard]] std::uint32_t depth() const { return depth_; }
  [[nodiscard]] std::uint64_t draws() const { return counter_; }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t master_seed_ = 0;
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  std::uint32_t depth_ = 0;
};

// Uniform on (lo, hi), endpoints excluded. Throws std::invalid_argument
// unless lo < hi.
double uniform(RandomStream& stream, double lo, double hi);

// 64-bit finalizer used for path hashing; exposed for direction-key hashing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace mgs
