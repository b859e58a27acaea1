#pragma once

#include <cstdint>

#include "mgs/rand_streams.h"

namespace mgs {

// Direction on the unit sphere. Construction normalizes; a zero or
// non-finite input throws std::invalid_argument.
class UnitVector {
 public:
  UnitVector() = default;  // (0, 0, 1)
  UnitVector(double x, double y, double z);

  // Coplanar lift used for planar angles: (sin t, 0, cos t) in the x-z plane.
  static UnitVector from_planar_angle(double theta);

  [[nodiscard]] double x() const { return x_; }
  [[nodiscard]] double y() const { return y_; }
  [[nodiscard]] double z() const { return z_; }

  UnitVector operator-() const;

  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  struct Unchecked {};
  UnitVector(double x, double y, double z, Unchecked) : x_(x), y_(y), z_(z) {}
  friend class Frame;

  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 1.0;
};

// Canonical representative of the antipodal pair {r, -r}, with r = sign * rep.
struct DirectionKey {
  UnitVector rep;
  int sign = 1;

  friend bool operator==(const DirectionKey&, const DirectionKey&) = default;
};

// Inner product clamped to [-1, 1].
double dot(const UnitVector& a, const UnitVector& b);

DirectionKey canonical_key(const UnitVector& r);

// Stable 64-bit hash of the key representative quantized to a 1e-12 grid.
std::uint64_t direction_hash(const DirectionKey& key);

// Right-handed orthonormal frame (e1, e2, axis) built around `axis`.
class Frame {
 public:
  explicit Frame(const UnitVector& axis);

  // Point with polar cosine `cos_theta` about the axis and azimuth `phi`.
  [[nodiscard]] UnitVector at(double cos_theta, double phi) const;

  [[nodiscard]] const UnitVector& axis() const { return axis_; }
  [[nodiscard]] const UnitVector& e1() const { return e1_; }
  [[nodiscard]] const UnitVector& e2() const { return e2_; }

 private:
  UnitVector e1_, e2_, axis_;
};

// Uniform in solid angle over the whole sphere.
UnitVector sample_sphere(RandomStream& stream);

// Uniform in solid angle over {R : R.n > 0}; boundary draws are resampled.
UnitVector sample_hemisphere(const UnitVector& n, RandomStream& stream);
UnitVector sample_hemisphere(const Frame& frame, RandomStream& stream);

}  // namespace mgs
