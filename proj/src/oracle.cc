#include "mgs/oracle.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

namespace mgs::oracle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x.push_back(z);
    rule.w.push_back(w);
    if (z != 0.0) {
      rule.x.push_back(-z);
      rule.w.push_back(w);
    }
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

// Gauss-Legendre on [lo, hi] split at `cuts`. Each piece is mapped through
// u = mid + half * (3t - t^3)/2, which flattens square-root behavior at the
// piece ends (the step boundaries and the cap-tangency points).
template <class F>
double integrate_pieces(F&& f, double lo, double hi, std::vector<double> cuts, int n) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> edges{lo};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > lo && c < hi) edges.push_back(c);
  }
  edges.push_back(hi);
  const GaussRule& rule = gauss_legendre(n);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    double piece = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = rule.x[i];
      const double tau = 0.5 * (3.0 * t - t * t * t);
      const double jac = 1.5 * (1.0 - t * t);
      piece += rule.w[i] * jac * f(mid + half * tau);
    }
    total += half * piece;
  }
  return total;
}

template <class Eval>
double converged(Eval&& eval, const QuadratureSpec& quad, const char* what) {
  if (quad.nodes < 2) throw std::invalid_argument("QuadratureSpec: nodes must be >= 2");
  const double coarse = eval(quad.nodes);
  const double fine = eval(2 * quad.nodes);
  if (std::abs(fine - coarse) > quad.tolerance) {
    throw QuadratureNonConvergence(std::string(what) + ": |I(2n) - I(n)| = " +
                                   std::to_string(std::abs(fine - coarse)) + " exceeds tolerance");
  }
  return fine;
}

// Azimuthal measure of {phi : sign (A + B cos phi) > 0} over [0, 2 pi).
// The phi axis is split at the roots +-phi0; the integrand is constant on
// each piece, so one Gauss node per piece is exact.
double azimuthal_measure(double a, double b, int sign) {
  double phi0;  // positive region of A + B cos phi is |phi| < phi0
  if (b <= 1e-300) {
    phi0 = a > 0.0 ? kPi : 0.0;
  } else {
    const double x = -a / b;
    phi0 = x >= 1.0 ? 0.0 : (x <= -1.0 ? kPi : std::acos(x));
  }
  const double pieces[3][2] = {{0.0, phi0}, {phi0, kTwoPi - phi0}, {kTwoPi - phi0, kTwoPi}};
  double total = 0.0;
  for (const auto& piece : pieces) {
    const double len = piece[1] - piece[0];
    if (len <= 0.0) continue;
    const double phi = 0.5 * (piece[0] + piece[1]);
    if (sign * (a + b * std::cos(phi)) > 0.0) total += len;
  }
  return total;
}

// Geometry of the step integrands in coordinates with polar axis r:
// u = R.r and R.axis = u c + sqrt(1 - u^2) s cos phi.
struct CapGeometry {
  double c;
  double s;

  CapGeometry(const UnitVector& r, const UnitVector& axis)
      : c(dot(r, axis)), s(std::sqrt(std::max(0.0, 1.0 - c * c))) {}

  [[nodiscard]] double h(double u, int sign) const {
    return azimuthal_measure(u * c, std::sqrt(std::max(0.0, 1.0 - u * u)) * s, sign);
  }
  [[nodiscard]] std::vector<double> u_cuts() const { return {-s, 0.0, s}; }
};

double active_integral_n(const CapGeometry& g, int sign, double eps, int n) {
  const auto h = [&](double u) { return g.h(u, sign); };
  return integrate_pieces(h, 0.5 - eps, 1.0, g.u_cuts(), n) +
         integrate_pieces(h, 0.5 + eps, 1.0, g.u_cuts(), n);
}

// Breakpoints in eps where a step threshold 1/2 -+ eps crosses a u cut.
std::vector<double> eps_cuts(const CapGeometry& g) {
  std::vector<double> cuts;
  for (double u : g.u_cuts()) {
    cuts.push_back(0.5 - u);
    cuts.push_back(u - 0.5);
  }
  return cuts;
}

double eps_integrated_active(const CapGeometry& g, int sign, int n) {
  const auto inner = [&](double eps) { return active_integral_n(g, sign, eps, n); };
  return integrate_pieces(inner, -0.5, 0.5, eps_cuts(g), n);
}

void check_sign(int j, const char* what) {
  if (j != 1 && j != -1) throw std::invalid_argument(std::string(what) + ": outcome must be +1 or -1");
}

void check_layer_args(double eps, int k, const char* what) {
  if (!(std::abs(eps) < 0.5)) throw std::invalid_argument(std::string(what) + ": |eps| must be < 1/2");
  if (k < 1) throw std::invalid_argument(std::string(what) + ": k must be >= 1");
}

}  // namespace

double p_single(const UnitVector& n, const UnitVector& r, int j) {
  check_sign(j, "p_single");
  return 0.5 * (1.0 + j * dot(r, n));
}

double p_singlet(const UnitVector& r1, const UnitVector& r2, int j1, int j2) {
  check_sign(j1, "p_singlet");
  check_sign(j2, "p_singlet");
  return 0.25 * (1.0 - j1 * j2 * dot(r1, r2));
}

double correlation(const UnitVector& r1, const UnitVector& r2) { return -0.25 * dot(r1, r2); }

double p_tail(int k) {
  if (k < 0) throw std::invalid_argument("p_tail: k must be >= 0");
  return std::ldexp(1.0, -k);
}

double active_integral(const UnitVector& r, const UnitVector& axis, int sign, double eps,
                       const QuadratureSpec& quad) {
  check_sign(sign, "active_integral");
  const CapGeometry g(r, axis);
  return converged([&](int n) { return active_integral_n(g, sign, eps, n); }, quad,
                   "active_integral");
}

double passive_integral_hemisphere(const UnitVector& n, const UnitVector& r, double eps,
                                   const QuadratureSpec& quad) {
  const CapGeometry g(r, n);
  const auto h = [&](double u) { return g.h(u, +1); };
  return converged(
      [&](int nodes) {
        return integrate_pieces(h, std::max(-1.0, -0.5 - eps), std::min(1.0, 0.5 - eps),
                                g.u_cuts(), nodes) +
               integrate_pieces(h, std::max(-1.0, -0.5 + eps), std::min(1.0, 0.5 + eps),
                                g.u_cuts(), nodes);
      },
      quad, "passive_integral_hemisphere");
}

double passive_integral_sphere(const UnitVector& r, double eps, const QuadratureSpec& quad) {
  // No azimuthal restriction: reuse the cap machinery with an axis along r
  // and both outcome signs.
  const CapGeometry g(r, r);
  const auto h = [&](double u) { return g.h(u, +1) + g.h(u, -1); };
  return converged(
      [&](int nodes) {
        return integrate_pieces(h, std::max(-1.0, -0.5 - eps), std::min(1.0, 0.5 - eps),
                                g.u_cuts(), nodes) +
               integrate_pieces(h, std::max(-1.0, -0.5 + eps), std::min(1.0, 0.5 + eps),
                                g.u_cuts(), nodes);
      },
      quad, "passive_integral_sphere");
}

double p_layer_single(const UnitVector& n, const UnitVector& r, double eps, int j, int k,
                      const QuadratureSpec& quad) {
  check_sign(j, "p_layer_single");
  check_layer_args(eps, k, "p_layer_single");
  return kSingleNormalization * std::ldexp(1.0, -k) * active_integral(r, n, j, eps, quad);
}

double p_layer_pair(const UnitVector& r1, const UnitVector& r2, double eps, int j1, int j2, int k,
                    const QuadratureSpec& quad) {
  check_sign(j1, "p_layer_pair");
  check_sign(j2, "p_layer_pair");
  check_layer_args(eps, k, "p_layer_pair");
  return kPairNormalization * std::ldexp(1.0, -k) * active_integral(r1, r2, -j1 * j2, eps, quad);
}

double layer_mass_single(const UnitVector& n, const UnitVector& r, int j, int k,
                         const QuadratureSpec& quad) {
  check_sign(j, "layer_mass_single");
  check_layer_args(0.0, k, "layer_mass_single");
  const CapGeometry g(r, n);
  const double i = converged([&](int nodes) { return eps_integrated_active(g, j, nodes); }, quad,
                             "layer_mass_single");
  return kSingleNormalization * std::ldexp(1.0, -k) * i;
}

double layer_mass_pair(const UnitVector& r1, const UnitVector& r2, int j1, int j2, int k,
                       const QuadratureSpec& quad) {
  check_sign(j1, "layer_mass_pair");
  check_sign(j2, "layer_mass_pair");
  check_layer_args(0.0, k, "layer_mass_pair");
  const CapGeometry g(r1, r2);
  const double i = converged([&](int nodes) { return eps_integrated_active(g, -j1 * j2, nodes); },
                             quad, "layer_mass_pair");
  return kPairNormalization * std::ldexp(1.0, -k) * i;
}

double p_single_from_layers(const UnitVector& n, const UnitVector& r, int j, int k_max,
                            const QuadratureSpec& quad) {
  // The layer index enters only through 2^-k, so one eps-integral serves all k.
  const double first = layer_mass_single(n, r, j, 1, quad);
  double total = 0.0;
  for (int k = 1; k <= k_max; ++k) total += first * std::ldexp(1.0, -(k - 1));
  return total;
}

double p_singlet_from_layers(const UnitVector& r1, const UnitVector& r2, int j1, int j2,
                             int k_max, const QuadratureSpec& quad) {
  const double first = layer_mass_pair(r1, r2, j1, j2, 1, quad);
  double total = 0.0;
  for (int k = 1; k <= k_max; ++k) total += first * std::ldexp(1.0, -(k - 1));
  return total;
}

double derive_single_normalization(const UnitVector& n, const UnitVector& r, double eps,
                                   const QuadratureSpec& quad) {
  check_layer_args(eps, 1, "derive_single_normalization");
  const double active = active_integral(r, n, +1, eps, quad) + active_integral(r, n, -1, eps, quad);
  const double passive = passive_integral_hemisphere(n, r, eps, quad);
  return 1.0 / (0.5 * active + 0.5 * passive);
}

double derive_pair_normalization(const UnitVector& r1, const UnitVector& r2, double eps,
                                 const QuadratureSpec& quad) {
  check_layer_args(eps, 1, "derive_pair_normalization");
  double active = 0.0;
  for (int j1 : {+1, -1}) {
    for (int j2 : {+1, -1}) active += active_integral(r1, r2, -j1 * j2, eps, quad);
  }
  const double passive = passive_integral_sphere(r1, eps, quad);
  return 1.0 / (0.5 * active + 0.5 * passive);
}

}  // namespace mgs::oracle
