#pragma once

#include <cstdint>

#include "mgs/elementary_state.h"
#include "mgs/geometry.h"
#include "mgs/rand_streams.h"

namespace mgs {

// Stream path of an elementary state: root / trial / particle / layer / {orientation, epsilon}.
inline constexpr std::uint64_t kFirstParticleLabel = 1;

// Spin +1/2 along n: every layer orientation lies in the open hemisphere about n.
class SpinUpEnsemble {
 public:
  SpinUpEnsemble(const UnitVector& n, int k_max, const RandomStream& root);

  [[nodiscard]] Mgs generate(std::uint64_t trial) const;

  [[nodiscard]] const UnitVector& n() const { return n_; }
  [[nodiscard]] int k_max() const { return k_max_; }

 private:
  UnitVector n_;
  Frame frame_;
  int k_max_;
  RandomStream root_;
};

// Singlet pair: particle 2 is the mirror image of particle 1 and carries no
// randomness of its own.
struct MgsPair {
  Mgs first;
  Mgs second;
};

class SingletEnsemble {
 public:
  SingletEnsemble(int k_max, const RandomStream& root);

  [[nodiscard]] MgsPair generate(std::uint64_t trial) const;

  [[nodiscard]] int k_max() const { return k_max_; }

 private:
  int k_max_;
  RandomStream root_;
};

Mgs generate_spin_up(const SpinUpEnsemble& ens, std::uint64_t trial);
MgsPair generate_singlet(const SingletEnsemble& ens, std::uint64_t trial);

}  // namespace mgs
