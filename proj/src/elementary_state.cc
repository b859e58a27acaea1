#include "mgs/elementary_state.h"

#include <cmath>
#include <string>

#include <boost/container/small_vector.hpp>

namespace mgs {

struct Mgs::Store {
  struct EpsilonEntry {
    int k;
    std::uint64_t key_hash;
    double value;  // eps at the key representative
  };

  RandomStream stream;
  int k_max = kDefaultKMax;
  std::optional<Frame> hemisphere;
  boost::container::small_vector<UnitVector, 4> orientations;  // prefix of layers 1..size()
  boost::container::small_vector<EpsilonEntry, 4> epsilon_cache;
  AccessAudit audit;

  const UnitVector& orientation(int k) {
    while (static_cast<int>(orientations.size()) < k) {
      const int next = static_cast<int>(orientations.size()) + 1;
      RandomStream s = stream.derive(static_cast<std::uint64_t>(next)).derive(kOrientationLabel);
      orientations.push_back(hemisphere ? sample_hemisphere(*hemisphere, s) : sample_sphere(s));
    }
    return orientations[static_cast<std::size_t>(k - 1)];
  }

  EpsilonEntry* find(int k, std::uint64_t h) {
    for (auto& e : epsilon_cache) {
      if (e.k == k && e.key_hash == h) return &e;
    }
    return nullptr;
  }

  double epsilon(int k, const UnitVector& r) {
    const DirectionKey key = canonical_key(r);
    const std::uint64_t h = direction_hash(key);
    if (const EpsilonEntry* e = find(k, h)) return key.sign * e->value;
    RandomStream s =
        stream.derive(static_cast<std::uint64_t>(k)).derive(kEpsilonLabel).derive(h);
    const double u = uniform(s, -0.5, 0.5);
    epsilon_cache.push_back({k, h, u});
    return key.sign * u;
  }
};

NoActiveLayer::NoActiveLayer(int k_max)
    : std::runtime_error("no active layer among the first " + std::to_string(k_max) + " layers"),
      k_max_(k_max) {}

double gray_density(const Layer& layer, const UnitVector& r) { return dot(r, layer.orientation); }

Mgs::Mgs(const RandomStream& particle_stream, int k_max, std::optional<Frame> hemisphere)
    : store_(std::make_shared<Store>()) {
  if (k_max < 1) throw std::invalid_argument("Mgs: k_max must be >= 1");
  store_->stream = particle_stream;
  store_->k_max = k_max;
  store_->hemisphere = hemisphere;
}

Mgs::Mgs(const RandomStream& particle_stream, int k_max, const UnitVector& hemisphere_axis)
    : Mgs(particle_stream, k_max, Frame(hemisphere_axis)) {}

Mgs Mgs::with_orientations(std::vector<UnitVector> orientations,
                           const RandomStream& particle_stream) {
  if (orientations.empty()) throw std::invalid_argument("Mgs: at least one layer is required");
  Mgs mgs(particle_stream, static_cast<int>(orientations.size()));
  mgs.store_->orientations.assign(orientations.begin(), orientations.end());
  return mgs;
}

void Mgs::pin_epsilon(int k, const UnitVector& r, double value) {
  if (k < 1 || k > k_max()) throw std::out_of_range("pin_epsilon: layer index out of range");
  if (!(std::abs(value) < 0.5)) throw std::invalid_argument("pin_epsilon: |value| must be < 1/2");
  const UnitVector stored_dir = mirrored_ ? -r : r;
  const DirectionKey key = canonical_key(stored_dir);
  const std::uint64_t h = direction_hash(key);
  if (store_->find(k, h)) throw std::logic_error("pin_epsilon: value already drawn for this key");
  store_->epsilon_cache.push_back({k, h, key.sign * value});
}

int Mgs::k_max() const { return store_->k_max; }

std::uint64_t Mgs::master_seed() const { return store_->stream.master_seed(); }

UnitVector Mgs::orientation(int k) {
  if (k < 1 || k > store_->k_max) throw std::out_of_range("Mgs: layer index out of range");
  ++store_->audit.orientation_reads[static_cast<std::size_t>(particle() - 1)];
  const UnitVector& r = store_->orientation(k);
  return mirrored_ ? -r : r;
}

double Mgs::epsilon(int k, const UnitVector& r) {
  if (k < 1 || k > store_->k_max) throw std::out_of_range("Mgs: layer index out of range");
  ++store_->audit.epsilon_reads[static_cast<std::size_t>(particle() - 1)];
  return mirrored_ ? store_->epsilon(k, -r) : store_->epsilon(k, r);
}

Mgs Mgs::mirror_view() const { return Mgs(store_, !mirrored_); }

const AccessAudit& Mgs::audit() const { return store_->audit; }

std::optional<ActiveLayer> find_active_layer(Mgs& mgs, const UnitVector& probe,
                                             const UnitVector& outcome) {
  const int k_max = mgs.k_max();
  for (int k = 1; k <= k_max; ++k) {
    const UnitVector orientation = mgs.orientation(k);
    const double shifted = dot(orientation, probe) + mgs.epsilon(k, probe);
    if (std::abs(shifted) > 0.5) {
      const int j = dot(orientation, outcome) > 0.0 ? +1 : -1;
      return ActiveLayer{k, j};
    }
  }
  return std::nullopt;
}

ActiveLayer active_layer(Mgs& mgs, const UnitVector& r) {
  if (auto hit = find_active_layer(mgs, r)) return *hit;
  throw NoActiveLayer(mgs.k_max());
}

int ess_outcome(Mgs& mgs, const UnitVector& r) { return active_layer(mgs, r).j; }

}  // namespace mgs
