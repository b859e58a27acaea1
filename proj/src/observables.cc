#include "mgs/observables.h"

#include <cmath>
#include <stdexcept>

namespace mgs {

Decomposition decompose(double a, double d, std::complex<double> b) {
  Decomposition out;
  out.g0 = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  out.g = std::sqrt(half_diff * half_diff + std::norm(b));
  if (out.g > kDegenerateG) {
    // b = g (r1 - i r2) for the standard tau2, so r2 = -Im b / g.
    out.r = UnitVector(b.real() / out.g, -b.imag() / out.g, half_diff / out.g);
  }
  return out;
}

Observable::Observable(double a, double d, std::complex<double> b)
    : a_(a), d_(d), b_(b), dec_(decompose(a, d, b)) {}

Observable Observable::from_decomposition(double g0, double g, const UnitVector& r) {
  // tau(r) = [[r3, r1 - i r2], [r1 + i r2, -r3]].
  return {g0 + g * r.z(), g0 - g * r.z(), {g * r.x(), -g * r.y()}};
}

Observable Observable::operator+(const Observable& other) const {
  return {a_ + other.a_, d_ + other.d_, b_ + other.b_};
}

Observable multiply_compatible(const Observable& lhs, const Observable& rhs, double tol) {
  using C = std::complex<double>;
  const C a1 = lhs.a(), d1 = lhs.d(), b1 = lhs.b(), c1 = std::conj(lhs.b());
  const C a2 = rhs.a(), d2 = rhs.d(), b2 = rhs.b(), c2 = std::conj(rhs.b());
  const C p11 = a1 * a2 + b1 * c2, p12 = a1 * b2 + b1 * d2;
  const C p22 = c1 * b2 + d1 * d2;
  const C q12 = a2 * b1 + b2 * d1;  // (rhs * lhs)_12
  const C q11 = a2 * a1 + b2 * c1;
  if (std::abs(p12 - q12) > tol || std::abs(p11 - q11) > tol) {
    throw std::invalid_argument("multiply_compatible: observables do not commute");
  }
  return {p11.real(), p22.real(), p12};
}

std::vector<double> spectrum(const Observable& obs) {
  const Decomposition& dec = obs.decomposition();
  if (!dec.r) return {dec.g0};
  return {dec.g0 + dec.g, dec.g0 - dec.g};
}

}  // namespace mgs
