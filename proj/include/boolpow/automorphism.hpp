// Automorphisms of a filtered power in normal form: a point-fixing
// homeomorphism psi followed by a locally constant labelling k of the
// punctured space by automorphisms of A,
//   phi(f)(x) = k(x)(f(psi^-1(x))).
#pragma once

#include <optional>
#include <vector>

#include "boolpow/power.hpp"

namespace boolpow {

using AutLabeling = TailMap<Perm>;

class PowerAutomorphism {
 public:
  PowerAutomorphism() = default;
  static PowerAutomorphism identity(const PowerContext& ctx);
  // NotExtendable or PointNotFixed unless psi extends to 2^omega fixing
  // every distinguished point.
  static PowerAutomorphism from_homeo(const PowerContext& ctx, const EPHomeo& psi);
  // TailLabelViolation unless every tail label of branch i fixes e_i.
  static PowerAutomorphism from_labeling(const PowerContext& ctx, const AutLabeling& k);

  const PowerContext& context() const { return map_.domain(); }
  const EPHomeo& homeo() const { return map_.homeo(); }         // h-projection
  const AutLabeling& labeling() const { return map_.labeling(); }  // p-projection
  const PowerMap& as_map() const { return map_; }
  bool in_kernel() const { return homeo().is_identity(); }

  PowerElement apply(const PowerElement& f) const { return map_.apply(f); }
  PowerAutomorphism inverse() const;
  bool operator==(const PowerAutomorphism& o) const { return map_ == o.map_; }

  friend PowerAutomorphism compose(const PowerAutomorphism& a, const PowerAutomorphism& b);

 private:
  PowerMap map_;
};

PowerAutomorphism compose(const PowerAutomorphism& a, const PowerAutomorphism& b);

// Labels of a kernel labelling that are not the identity, as sets.
std::vector<std::pair<Perm, TailClopen>> label_fibers(const AutLabeling& k);

// alpha on c, identity elsewhere. IllegalTriple unless alpha fixes e_i for
// every point i that c accumulates at.
PowerAutomorphism characteristic(const PowerContext& ctx, const TailClopen& c, const Perm& alpha);

// One characteristic factor per non-identity label; the supports are
// disjoint and the product in any order is from_labeling(k).
std::vector<PowerAutomorphism> decompose_kernel(const PowerContext& ctx, const AutLabeling& k);

struct KernelFactorPair {
  PowerAutomorphism sigma, tau;  // chi = sigma . tau^-1
  int construction = 0;          // 1: c compact; 2: c accumulates at the point
};

// For a single-point power and alpha fixing e_1: sigma, tau whose label
// fibers over the stabilizer of e_1 all accumulate at the point.
KernelFactorPair kernel_factor_pair(const PowerContext& ctx, const TailClopen& c, const Perm& alpha);

// True when every stabilizer label has a fiber accumulating at x_1.
bool fibers_accumulate(const PowerContext& ctx, const PowerAutomorphism& phi);

struct StabilizerReport {
  bool fixes_all = false;
  std::vector<int> violated;  // a tuple a with phi(f_a) != f_a
  std::optional<PowerAutomorphism> kappa, gamma;  // phi = kappa . gamma
  bool gamma_preserves_blocks = false;
  bool kappa_restricted = false;  // labels fix e_i on b_i, identity beyond n
  std::size_t tested = 0;
};

// The test elements f_a take value a_i on block b_i, with a_i = e_i for the
// blocks around the points.
std::vector<PowerElement> block_test_elements(const PowerContext& ctx, const std::vector<Clopen>& blocks,
                                              std::vector<std::vector<int>>* tuples = nullptr,
                                              std::size_t limit = 1u << 16);

StabilizerReport verify_stabilizer_containment(const PowerAutomorphism& phi,
                                               const std::vector<Clopen>& blocks);

}  // namespace boolpow
