#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mgs/geometry.h"
#include "mgs/rand_streams.h"

namespace mgs {

inline constexpr int kDefaultKMax = 64;

// Stream labels below a particle stream: particle / layer k / {orientation, epsilon}.
inline constexpr std::uint64_t kOrientationLabel = 0;
inline constexpr std::uint64_t kEpsilonLabel = 1;

struct Layer {
  int index = 1;  // 1 = uppermost
  UnitVector orientation;
};

// Gray-coloring law: darkness at r is r.R (+1 black north pole, -1 white south).
double gray_density(const Layer& layer, const UnitVector& r);

// Reads of layer data, attributed to the particle whose view issued them.
struct AccessAudit {
  std::array<std::uint64_t, 2> epsilon_reads{};
  std::array<std::uint64_t, 2> orientation_reads{};
};

struct ActiveLayer {
  int k = 0;
  int j = 0;
  friend bool operator==(const ActiveLayer&, const ActiveLayer&) = default;
};

class NoActiveLayer : public std::runtime_error {
 public:
  explicit NoActiveLayer(int k_max);
  [[nodiscard]] int k_max() const { return k_max_; }

 private:
  int k_max_;
};

// Multilayer gray sphere. Orientations and epsilon values are pure functions
// of the particle stream and are materialized lazily (orientations in layer
// order, epsilon per direction key) into a cache shared by all views of the
// same store. A view is either direct or the mirror image used for the
// second particle of a singlet pair: R2 = -R1 and eps2(r) = eps1(-r).
//
// Not thread-safe: an Mgs and its views belong to one trial executor.
class Mgs {
 public:
  // A hemisphere frame about n restricts layer orientations to {R : R.n > 0};
  // without it orientations cover the whole sphere.
  Mgs(const RandomStream& particle_stream, int k_max,
      std::optional<Frame> hemisphere = std::nullopt);
  Mgs(const RandomStream& particle_stream, int k_max, const UnitVector& hemisphere_axis);

  // Hand-built state with fixed orientations (k_max = orientations.size()).
  // Epsilon values not pinned via pin_epsilon are drawn from the stream.
  static Mgs with_orientations(std::vector<UnitVector> orientations,
                               const RandomStream& particle_stream);

  // Fixes eps^(k)(r) = value (and therefore eps^(k)(-r) = -value) as seen
  // through this view. Throws unless |value| < 1/2 and the key is unset.
  void pin_epsilon(int k, const UnitVector& r, double value);

  [[nodiscard]] int k_max() const;
  [[nodiscard]] std::uint64_t master_seed() const;
  [[nodiscard]] bool mirrored() const { return mirrored_; }
  // 1 for a direct view, 2 for the mirror view.
  [[nodiscard]] int particle() const { return mirrored_ ? 2 : 1; }

  UnitVector orientation(int k);
  Layer layer(int k) { return {k, orientation(k)}; }
  double epsilon(int k, const UnitVector& r);

  [[nodiscard]] Mgs mirror_view() const;
  [[nodiscard]] const AccessAudit& audit() const;

 private:
  struct Store;
  Mgs(std::shared_ptr<Store> store, bool mirrored) : store_(std::move(store)), mirrored_(mirrored) {}

  std::shared_ptr<Store> store_;
  bool mirrored_ = false;
};

// Uppermost layer k with |R(k).probe + eps(k)(probe)| > 1/2; ties at exactly
// 1/2 are passive. j is the sign of R(k).outcome (+1 only if strictly positive).
// Empty when no layer up to k_max is active.
std::optional<ActiveLayer> find_active_layer(Mgs& mgs, const UnitVector& probe,
                                             const UnitVector& outcome);

inline std::optional<ActiveLayer> find_active_layer(Mgs& mgs, const UnitVector& r) {
  return find_active_layer(mgs, r, r);
}

// Throws NoActiveLayer.
ActiveLayer active_layer(Mgs& mgs, const UnitVector& r);

// ESS color at r: +1 black, -1 white. Throws NoActiveLayer.
int ess_outcome(Mgs& mgs, const UnitVector& r);

}  // namespace mgs
