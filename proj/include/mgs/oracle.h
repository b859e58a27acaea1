#pragma once

#include <cmath>
#include <stdexcept>

#include "mgs/geometry.h"

namespace mgs::oracle {

// Closed-form normalizations of the layer measures.
inline constexpr double kSingleNormalization = 1.0 / (2.0 * 3.14159265358979323846);
inline constexpr double kPairNormalization = 1.0 / (4.0 * 3.14159265358979323846);

// Product Gauss-Legendre rule over (cos theta, phi) on the sphere, with the
// cos-theta axis split at the analytic breakpoints of the step integrands.
// Every integral is evaluated at `nodes` and 2*`nodes` per piece; the finer
// value is returned if the two agree within `tolerance`.
struct QuadratureSpec {
  int nodes = 24;
  double tolerance = 1e-9;
};

class QuadratureNonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// P(j | n, r) = (1 + j r.n) / 2.
double p_single(const UnitVector& n, const UnitVector& r, int j);

// P(j1, j2 | r1, r2) = (1 - j1 j2 r1.r2) / 4.
double p_singlet(const UnitVector& r1, const UnitVector& r2, int j1, int j2);

// E(r1, r2) = -(r1.r2) / 4 for spin-1/2 outcomes +-1/2.
double correlation(const UnitVector& r1, const UnitVector& r2);

// M = |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')|.
template <class E, class Dir>
double chsh_M(E&& corr, const Dir& a, const Dir& b, const Dir& a_prime, const Dir& b_prime) {
  return std::abs(corr(a, b) - corr(a, b_prime)) + std::abs(corr(a_prime, b) + corr(a_prime, b_prime));
}

// Probability that more than k layers are passive: 2^-k.
double p_tail(int k);

// Step-function integral over the unit sphere
//   I = int dR  Theta(sign R.axis) [Theta(R.r + eps - 1/2) + Theta(R.r - eps - 1/2)].
double active_integral(const UnitVector& r, const UnitVector& axis, int sign, double eps,
                       const QuadratureSpec& quad = {});

// Passive-layer integral over the hemisphere about n:
//   int dR Theta(R.n) [chi(|R.r + eps| <= 1/2) + chi(|R.r - eps| <= 1/2)].
double passive_integral_hemisphere(const UnitVector& n, const UnitVector& r, double eps,
                                   const QuadratureSpec& quad = {});

// Same passive integrand over the whole sphere (two-particle measure).
double passive_integral_sphere(const UnitVector& r, double eps, const QuadratureSpec& quad = {});

// Density in eps of "active layer is k with outcome j" for the spin-up
// ensemble about n measured along r.
double p_layer_single(const UnitVector& n, const UnitVector& r, double eps, int j, int k,
                      const QuadratureSpec& quad = {});

// Two-particle counterpart: depends on the outcomes only through j1*j2.
double p_layer_pair(const UnitVector& r1, const UnitVector& r2, double eps, int j1, int j2, int k,
                    const QuadratureSpec& quad = {});

// int deps p_layer_single over (-1/2, 1/2).
double layer_mass_single(const UnitVector& n, const UnitVector& r, int j, int k,
                         const QuadratureSpec& quad = {});
double layer_mass_pair(const UnitVector& r1, const UnitVector& r2, int j1, int j2, int k,
                       const QuadratureSpec& quad = {});

// Marginals sum_{k <= k_max} int deps p_layer; converge to p_single / p_singlet.
double p_single_from_layers(const UnitVector& n, const UnitVector& r, int j, int k_max = 64,
                            const QuadratureSpec& quad = {});
double p_singlet_from_layers(const UnitVector& r1, const UnitVector& r2, int j1, int j2,
                             int k_max = 64, const QuadratureSpec& quad = {});

// Normalization N re-derived by quadrature from "first layer active" plus
// "first layer passive" at fixed eps: N = 1 / (active/2 + passive/2).
double derive_single_normalization(const UnitVector& n, const UnitVector& r, double eps,
                                   const QuadratureSpec& quad = {});
double derive_pair_normalization(const UnitVector& r1, const UnitVector& r2, double eps,
                                 const QuadratureSpec& quad = {});

}  // namespace mgs::oracle
