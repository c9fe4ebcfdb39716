// Good partitions of the punctured space and the factorization of a
// point-fixing homeomorphism into three pointwise block stabilizers.
//
// A clopen of the punctured space is good when it and its complement both
// accumulate at every distinguished point.
#pragma once

#include <optional>
#include <vector>

#include "boolpow/automorphism.hpp"
#include "boolpow/homeo.hpp"

namespace boolpow {

struct GoodPartition {
  PointContext ctx;
  std::vector<TailClopen> blocks;  // n + 2 good blocks
};

// Block t takes cells t+1, t+1+(n+2), ... of every branch; the off-branch
// region joins block 0. NoPoints for a context without points.
GoodPartition good_partition(const PointContext& ctx);

// Pairwise disjoint, covering, every block good.
bool is_good_partition(const GoodPartition& p);

struct StabilizerFactors {
  EPHomeo sigma1, sigma2, sigma3;  // sigma = sigma3 . sigma2 . sigma1
  TailClopen f;                    // tau1 image of (c u d) n sigma^-1(b), inside d
  bool fixes_b_first = false, fixes_c_second = false, fixes_b_third = false;
  bool product_exact = false;
  bool product_sampled = false;  // agreement on sample points up to depth 48
  bool verified() const {
    return fixes_b_first && fixes_c_second && fixes_b_third && product_exact && product_sampled;
  }
};

// sigma with sigma1, sigma3 fixing b pointwise and sigma2 fixing c pointwise.
// PreconditionNotGood unless b, c, d are good, partition the punctured space,
// sigma fixes every point and d \ sigma^-1(b) is good.
StabilizerFactors stabilizer_factor(const EPHomeo& sigma, const TailClopen& b, const TailClopen& c,
                                    const TailClopen& d);

struct PigeonholeReport {
  int i = -1, j = -1;  // factors fix blocks i, j, i pointwise
  // failures[k]: blocks i < n+1 for which the last block minus sigma^-1(b_i)
  // misses point k as a limit; never more than one
  std::vector<std::vector<int>> failures;
  StabilizerFactors factors;
  bool setwise_in_E = false;  // each factor also fixes its block setwise
  bool verified() const;
};

PigeonholeReport pigeonhole_factor(const EPHomeo& sigma, const GoodPartition& partition);

// sigma(x) and rhs(x) agree on every sample point, compared on prefixes of
// length `depth`. The samples are u v^omega for short words u, v.
bool agree_on_samples(const EPHomeo& lhs, const EPHomeo& rhs, std::size_t depth = 48);
std::vector<Point> sample_points(const PointContext& ctx);

struct GrowthReport {
  int depth = 0;
  std::size_t cells = 0;
  std::vector<std::size_t> sizes;  // |E^1|, |E^2|, ...
  std::optional<int> stabilized_at;  // first t with |E^t| = |E^(t+1)|
  bool monotone() const;
};

// Word balls of E = generators, their inverses and the identity, acting on
// the cylinders of length `depth`. InvalidArgument when a generator does not
// permute those cylinders; SizeBudgetExceeded when a ball outgrows `budget`.
GrowthReport bergman_growth(const PointContext& ctx, const std::vector<EPHomeo>& generators, int depth,
                            int steps, std::size_t budget = 1u << 20);
GrowthReport bergman_growth(const std::vector<PowerAutomorphism>& generators, int depth, int steps,
                            std::size_t budget = 1u << 20);

}  // namespace boolpow
