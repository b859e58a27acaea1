#pragma once

#include <complex>
#include <concepts>
#include <optional>
#include <vector>

#include "mgs/geometry.h"

namespace mgs {

// Below this g an observable is treated as a multiple of the identity.
inline constexpr double kDegenerateG = 1e-12;

struct Decomposition {
  double g0 = 0.0;
  double g = 0.0;
  std::optional<UnitVector> r;  // absent when g <= kDegenerateG
};

// Decomposes the Hermitian matrix [[a, b], [conj(b), d]] as g0*I + g*tau(r).
Decomposition decompose(double a, double d, std::complex<double> b);

// Hermitian 2x2 observable [[a, b], [conj(b), d]] with its decomposition cached.
class Observable {
 public:
  Observable(double a, double d, std::complex<double> b);

  static Observable identity() { return {1.0, 1.0, 0.0}; }
  // g0*I + g*tau(r).
  static Observable from_decomposition(double g0, double g, const UnitVector& r);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double d() const { return d_; }
  [[nodiscard]] std::complex<double> b() const { return b_; }
  [[nodiscard]] const Decomposition& decomposition() const { return dec_; }

  Observable operator+(const Observable& other) const;

 private:
  double a_, d_;
  std::complex<double> b_;
  Decomposition dec_;
};

// Product of two commuting observables (the result is Hermitian only then).
// Throws std::invalid_argument when the commutator exceeds `tol`.
Observable multiply_compatible(const Observable& lhs, const Observable& rhs, double tol = 1e-9);

// An elementary state seen through its outcome function f: r -> {+1, -1}.
template <class F>
concept ElementaryStateFunction = requires(F f, const UnitVector& r) {
  { f(r) } -> std::convertible_to<int>;
};

// Value of the elementary state on `obs`: g0 + g * f(r(obs)). Nonlinear in obs
// across different r.
template <ElementaryStateFunction F>
double evaluate(const Observable& obs, F&& state) {
  const Decomposition& dec = obs.decomposition();
  if (!dec.r) return dec.g0;
  return dec.g0 + dec.g * static_cast<double>(state(*dec.r));
}

// {g0 + g, g0 - g}, or {g0} when g vanishes. Sorted descending.
std::vector<double> spectrum(const Observable& obs);

}  // namespace mgs
