// Filtered Boolean powers of a finite algebra over the Cantor space.
//
// An element is a finite prefix partition of 2^omega labelled by carrier
// elements; the cell containing the distinguished point x_i must carry the
// filter idempotent e_i.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "boolpow/algebra.hpp"
#include "boolpow/homeo.hpp"

namespace boolpow {

struct PowerContext {
  std::shared_ptr<const FiniteAlgebra> algebra;
  PointContext points;
  std::vector<int> filters;  // e_i for point i

  // Checks that every filter is an idempotent.
  static PowerContext make(FiniteAlgebra a, PointContext points, std::vector<int> filters);
  static PowerContext make(std::shared_ptr<const FiniteAlgebra> a, PointContext points,
                           std::vector<int> filters);

  const FiniteAlgebra& alg() const { return *algebra; }
  int size() const { return points.size(); }
  bool operator==(const PowerContext& o) const;
};

class PowerElement {
 public:
  using Cells = std::map<std::string, int>;

  PowerElement() = default;
  // cells must be a complete prefix code; FilterViolation when the cell of
  // some x_i is not labelled e_i.
  static PowerElement make(const PowerContext& ctx, const Cells& cells);
  static PowerElement constant(const PowerContext& ctx, int a);

  const PowerContext& context() const { return ctx_; }
  const Cells& cells() const { return cells_; }
  int at(const Point& p) const;
  int at_word(const std::string& w) const;  // label of the cell containing w
  std::size_t depth() const;                // longest cell word

  bool operator==(const PowerElement& o) const { return ctx_ == o.ctx_ && cells_ == o.cells_; }
  bool operator<(const PowerElement& o) const { return cells_ < o.cells_; }

 private:
  PowerContext ctx_;
  Cells cells_;
};

// The cells of the common refinement with the label of each input there.
std::vector<std::pair<std::string, std::vector<int>>> common_refinement(
    const std::vector<const PowerElement::Cells*>& parts);

PowerElement apply_operation(const PowerContext& ctx, std::size_t op,
                             const std::vector<PowerElement>& args);

// Where two elements agree; always contains every x_i.
Clopen equalizer(const PowerElement& f, const PowerElement& g);

// The kernel of the projection onto a clopen support.
struct PowerCongruence {
  PowerContext ctx;
  Clopen support;
  static PowerCongruence make(const PowerContext& ctx, const Clopen& support);
  bool operator==(const PowerCongruence& o) const { return ctx == o.ctx && support == o.support; }
};

PowerCongruence principal_congruence(const PowerElement& f, const PowerElement& g);
PowerCongruence congruence_meet(const PowerCongruence& a, const PowerCongruence& b);
PowerCongruence congruence_join(const PowerCongruence& a, const PowerCongruence& b);
bool related(const PowerCongruence& t, const PowerElement& f, const PowerElement& g);

// Restriction of a power to a clopen b, re-encoded over a fresh copy of the
// Cantor space: the cylinder from[j] of b is carried onto to[j].
struct Restriction {
  PowerContext source, target;
  Clopen domain;
  std::vector<std::string> from, to;
  std::vector<int> kept;  // source indices of the points retained, in order
  PowerElement apply(const PowerElement& f) const;
};

Restriction restrict_power(const PowerContext& ctx, const Clopen& b);

// Two single-point powers glued side by side: the first lives on 0X, the
// second on 1X, both points carry the shared filter.
PowerContext glued_context(const PowerContext& d1, const PowerContext& d2);
PowerElement product_iso(const PowerElement& f1, const PowerElement& f2);
std::pair<PowerElement, PowerElement> product_split(const PowerElement& f, const PowerContext& d1,
                                                    const PowerContext& d2);

// An isomorphism between powers of the same algebra:
//   f -> g,  g(y) = k(y)(f(h^-1(y)))  on the punctured space of the target.
class PowerMap {
 public:
  PowerMap() = default;
  // Labels must be automorphisms; near each target point they must carry
  // the source filter onto the target filter (TailLabelViolation).
  static PowerMap make(const PowerContext& dom, const PowerContext& cod, EPHomeo h, TailMap<Perm> k);
  static PowerMap identity(const PowerContext& ctx);

  const PowerContext& domain() const { return dom_; }
  const PowerContext& codomain() const { return cod_; }
  const EPHomeo& homeo() const { return h_; }
  const TailMap<Perm>& labeling() const { return k_; }

  PowerElement apply(const PowerElement& f) const;
  PowerMap inverse() const;
  bool operator==(const PowerMap& o) const;

  friend PowerMap compose(const PowerMap& outer, const PowerMap& inner);

 private:
  PowerContext dom_, cod_;
  EPHomeo h_;
  TailMap<Perm> k_;
};

PowerMap compose(const PowerMap& outer, const PowerMap& inner);

// f -> alpha . f . h^-1 between two single-point restrictions.
// Without h the canonical transport between the two point contexts is used.
PowerMap restriction_iso(const Restriction& r1, const Restriction& r2, const Perm& alpha,
                         const std::optional<EPHomeo>& h = std::nullopt);

struct Reduction {
  PowerContext reduced;
  PowerMap witness;              // original -> reduced
  std::vector<int> class_of;     // original point -> reduced point
  std::vector<int> representative;  // reduced point -> original point
  std::vector<Perm> alpha;       // alpha[i](e_i) = filter of class_of[i]
};

// Keeps one point per Aut A-orbit of filters; identity witness when the
// filters already lie in distinct orbits.
Reduction reduce_idempotents(const PowerContext& ctx);

struct GeneratedSubalgebra {
  FiniteAlgebra algebra;               // on the closure, indexed as `tuples`
  std::vector<std::string> cells;      // common refinement of the generators
  std::vector<std::vector<int>> tuples;
  std::vector<int> generators;         // index of each generator in `tuples`
  std::vector<int> projection(std::size_t cell) const;
  PowerElement element(const PowerContext& ctx, std::size_t i) const;
};

GeneratedSubalgebra generated_subalgebra(const std::vector<PowerElement>& elems,
                                         std::size_t budget = 1u << 12);

// Every element whose cells all have length `depth`, optionally capped.
std::vector<PowerElement> enumerate_elements(const PowerContext& ctx, int depth,
                                             std::size_t limit = 1u << 20);

// The element restricted to the punctured space, and back.
TailMap<int> to_punctured(const PowerElement& f);
PowerElement from_punctured(const PowerContext& ctx, const TailMap<int>& t);

}  // namespace boolpow
