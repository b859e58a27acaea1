#include "mgs/ensembles.h"

#include <stdexcept>

namespace mgs {

SpinUpEnsemble::SpinUpEnsemble(const UnitVector& n, int k_max, const RandomStream& root)
    : n_(n), frame_(n), k_max_(k_max), root_(root) {
  if (k_max < 1) throw std::invalid_argument("SpinUpEnsemble: k_max must be >= 1");
}

Mgs SpinUpEnsemble::generate(std::uint64_t trial) const {
  return Mgs(root_.derive(trial).derive(kFirstParticleLabel), k_max_, frame_);
}

SingletEnsemble::SingletEnsemble(int k_max, const RandomStream& root)
    : k_max_(k_max), root_(root) {
  if (k_max < 1) throw std::invalid_argument("SingletEnsemble: k_max must be >= 1");
}

MgsPair SingletEnsemble::generate(std::uint64_t trial) const {
  Mgs first(root_.derive(trial).derive(kFirstParticleLabel), k_max_);
  Mgs second = first.mirror_view();
  return {std::move(first), std::move(second)};
}

Mgs generate_spin_up(const SpinUpEnsemble& ens, std::uint64_t trial) { return ens.generate(trial); }

MgsPair generate_singlet(const SingletEnsemble& ens, std::uint64_t trial) {
  return ens.generate(trial);
}

}  // namespace mgs
