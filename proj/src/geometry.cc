#include "mgs/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mgs {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kKeyGrid = 1e12;

// True if (z, y, x) of a is lexicographically greater than that of b = -a.
// Since b = -a this reduces to the sign of the first nonzero of (z, y, x);
// an all-zero vector cannot occur for a normalized input.
bool is_upper(const UnitVector& a) {
  if (a.z() != 0.0) return a.z() > 0.0;
  if (a.y() != 0.0) return a.y() > 0.0;
  return a.x() > 0.0;
}

}  // namespace

UnitVector::UnitVector(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(n) || n == 0.0) {
    throw std::invalid_argument("UnitVector: cannot normalize zero or non-finite vector");
  }
  x_ = x / n;
  y_ = y / n;
  z_ = z / n;
}

UnitVector UnitVector::from_planar_angle(double theta) {
  return UnitVector(std::sin(theta), 0.0, std::cos(theta));
}

UnitVector UnitVector::operator-() const { return UnitVector(-x_, -y_, -z_, Unchecked{}); }

double dot(const UnitVector& a, const UnitVector& b) {
  const double d = a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  return std::clamp(d, -1.0, 1.0);
}

DirectionKey canonical_key(const UnitVector& r) {
  if (is_upper(r)) return {r, +1};
  return {-r, -1};
}

std::uint64_t direction_hash(const DirectionKey& key) {
  const auto q = [](double c) {
    // Fold -0 and +0 onto one grid point.
    return static_cast<std::uint64_t>(std::llround(c * kKeyGrid));
  };
  std::uint64_t h = mix64(q(key.rep.x()) ^ 0x243F6A8885A308D3ULL);
  h = mix64(h ^ q(key.rep.y()));
  h = mix64(h ^ q(key.rep.z()));
  return h;
}

Frame::Frame(const UnitVector& axis) : axis_(axis) {
  // Pick the coordinate axis least aligned with `axis` as a helper.
  const double ax = std::abs(axis.x()), ay = std::abs(axis.y()), az = std::abs(axis.z());
  double hx = 0, hy = 0, hz = 0;
  if (ax <= ay && ax <= az) {
    hx = 1;
  } else if (ay <= az) {
    hy = 1;
  } else {
    hz = 1;
  }
  // e1 = normalize(h - (h.axis) axis); e2 = axis x e1.
  const double p = hx * axis.x() + hy * axis.y() + hz * axis.z();
  e1_ = UnitVector(hx - p * axis.x(), hy - p * axis.y(), hz - p * axis.z());
  e2_ = UnitVector(axis.y() * e1_.z() - axis.z() * e1_.y(), axis.z() * e1_.x() - axis.x() * e1_.z(),
                   axis.x() * e1_.y() - axis.y() * e1_.x());
}

UnitVector Frame::at(double cos_theta, double phi) const {
  const double s = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double c1 = s * std::cos(phi), c2 = s * std::sin(phi);
  return UnitVector(c1 * e1_.x() + c2 * e2_.x() + cos_theta * axis_.x(),
                    c1 * e1_.y() + c2 * e2_.y() + cos_theta * axis_.y(),
                    c1 * e1_.z() + c2 * e2_.z() + cos_theta * axis_.z());
}

UnitVector sample_sphere(RandomStream& stream) {
  const double cos_theta = uniform(stream, -1.0, 1.0);
  const double phi = kTwoPi * stream.next_open01();
  const double s = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return UnitVector(s * std::cos(phi), s * std::sin(phi), cos_theta);
}

UnitVector sample_hemisphere(const Frame& frame, RandomStream& stream) {
  for (;;) {
    const double cos_theta = stream.next_open01();
    const double phi = kTwoPi * stream.next_open01();
    const UnitVector r = frame.at(cos_theta, phi);
    if (dot(r, frame.axis()) > 0.0) return r;
  }
}

UnitVector sample_hemisphere(const UnitVector& n, RandomStream& stream) {
  return sample_hemisphere(Frame(n), stream);
}

}  // namespace mgs
