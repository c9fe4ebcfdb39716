// Embeddings between finite powers A^u -> A^v and into a filtered power D,
// kept symbolically: every coordinate (or every cell of X) is either
// alpha(a_j) for an automorphism alpha, or a constant idempotent.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "boolpow/homeo.hpp"
#include "boolpow/power.hpp"

namespace boolpow {

struct Coord {
  bool is_aut = true;
  Perm aut;     // is_aut
  int src = 0;  // is_aut
  int idem = 0; // !is_aut

  static Coord of(Perm a, int j) { return Coord{true, std::move(a), j, 0}; }
  static Coord constant(int e) { return Coord{false, {}, 0, e}; }
  int eval(const std::vector<int>& a) const { return is_aut ? aut[a[src]] : idem; }
  bool operator==(const Coord&) const = default;
};

// Outer coordinate read through an inner map.
Coord compose_coord(const Coord& outer, const std::vector<Coord>& inner);

class PowerEmbedding {
 public:
  PowerEmbedding() = default;
  // NotEmbedding unless every aut is an automorphism, every constant an
  // idempotent and the sources cover [u].
  static PowerEmbedding make(const FiniteAlgebra& a, int u, std::vector<Coord> coords);
  static PowerEmbedding identity(const FiniteAlgebra& a, int u);
  // Repeats a_j mult[j] times in order, then each idempotent idem_mult[t]
  // times (idempotents in increasing order).
  static PowerEmbedding block(const FiniteAlgebra& a, const std::vector<int>& mult,
                              const std::vector<int>& idem_mult);

  int u() const { return u_; }
  int v() const { return static_cast<int>(coords_.size()); }
  const std::vector<Coord>& coords() const { return coords_; }
  std::vector<int> apply(const std::vector<int>& a) const;
  bool operator==(const PowerEmbedding&) const = default;

  // Only for u == v with every coordinate an automorphism: NotBijective otherwise.
  PowerEmbedding inverse() const;

 private:
  friend PowerEmbedding compose(const PowerEmbedding& outer, const PowerEmbedding& inner);
  static PowerEmbedding raw(int u, std::vector<Coord> coords);
  int u_ = 0;
  std::vector<Coord> coords_;
};

// outer . inner
PowerEmbedding compose(const PowerEmbedding& outer, const PowerEmbedding& inner);

// Reads a homomorphism A^u -> A^v off its values, coordinate by coordinate.
// NotEmbedding when some coordinate is neither alpha(a_j) nor a constant
// idempotent, or when the result is not injective.
PowerEmbedding embedding_from_function(const FiniteAlgebra& a, int u, int v,
                                       const std::function<std::vector<int>(const std::vector<int>&)>& f);

struct NormalForm {
  std::vector<int> p;  // copies of a_j
  std::vector<int> q;  // copies of each idempotent, indexed like a.idempotents()
  std::vector<int> order;   // order[t]: original coordinate placed at position t
  PowerEmbedding block;     // the block-form embedding
  PowerEmbedding rearrange; // automorphism of A^v with emb = rearrange . block
};

NormalForm normalize_embedding(const FiniteAlgebra& a, const PowerEmbedding& emb);

std::vector<PowerEmbedding> enumerate_embeddings(const FiniteAlgebra& a, int u, int v);

struct JointEmbedding {
  int m = 0;
  PowerEmbedding first, second;
};
JointEmbedding jep(const FiniteAlgebra& a, int u, int w);

struct Amalgam {
  int m = 0;
  PowerEmbedding phi2, psi2;  // phi2 . phi == psi2 . psi
};
Amalgam amalgamate(const FiniteAlgebra& a, const PowerEmbedding& phi, const PowerEmbedding& psi);

// An embedding A^u -> D: a clopen partition of 2^omega, each piece with a
// coordinate formula. Every point lies in a constant piece carrying its filter.
class BPEmbedding {
 public:
  struct Piece {
    Clopen region;
    Coord coord;
  };

  BPEmbedding() = default;
  static BPEmbedding make(const PowerContext& ctx, int u, std::vector<Piece> pieces);

  const PowerContext& context() const { return ctx_; }
  int u() const { return u_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  // Number of pieces reading some coordinate.
  std::size_t cell_count() const;

  PowerElement apply(const std::vector<int>& a) const;
  std::optional<std::vector<int>> preimage(const PowerElement& f) const;
  // Equal coordinate formulas wherever two pieces overlap.
  bool same_map(const BPEmbedding& o) const;

  // Image under a point-fixing homeomorphism of 2^omega.
  BPEmbedding push_forward(const EPHomeo& h) const;

 private:
  PowerContext ctx_;
  int u_ = 0;
  std::vector<Piece> pieces_;
};

// psi . phi; pieces reading a constant coordinate of phi become constant.
BPEmbedding compose(const BPEmbedding& psi, const PowerEmbedding& phi);

// phi: u -> v with u <= v, psi: A^u -> D. Returns psi2: A^v -> D with
// psi2 . phi == psi, checked on every tuple when |A|^u <= check_limit.
BPEmbedding extend_weak_homogeneity(const PowerEmbedding& phi, const BPEmbedding& psi,
                                    std::size_t check_limit = 1u << 12);

// phi with chi . phi == psi, when the image of psi lies inside the image of chi.
std::optional<PowerEmbedding> factor_through(const BPEmbedding& chi, const BPEmbedding& psi);

struct LimitChain {
  PowerContext ctx;
  EPHomeo shift;                       // stages are level embeddings pushed by shift
  std::vector<int> levels;             // prefix length used by each stage
  std::vector<BPEmbedding> stages;     // A^{k_t} -> D
  std::vector<PowerEmbedding> links;   // A^{k_t} -> A^{k_{t+1}}

  BPEmbedding at_level(int level) const;
};

// A^{k} -> A^{k'} between the level embeddings at levels lo <= hi.
PowerEmbedding level_link(const PowerContext& ctx, int lo, int hi);

// Embedding by the cells of length `level`; a cell holding points is
// constant with their common filter. NotRepresentable when a cell holds
// points with different filters or no cell is free of points.
BPEmbedding level_embedding(const PowerContext& ctx, int level);
// Least level at which level_embedding exists.
int first_level(const PowerContext& ctx);
// Stage t (1-based) uses level max(t, first_level).
LimitChain limit_chain(const PowerContext& ctx, int depth);
LimitChain push_forward(const LimitChain& c, const EPHomeo& h);

struct BackForthStep {
  bool forth = true;
  int stage = 0;              // stage covered by this step
  BPEmbedding left, right;    // partial isomorphism right . left^-1
  PowerEmbedding link;        // old arity -> new arity
};

struct BackForthTrace {
  std::vector<BackForthStep> steps;
  bool verified = false;
};

// Alternately covers stage t of the first chain (forth) and stage t of the
// second (back), t = 1..rounds, starting from stage 1 of both.
// SizeBudgetExceeded when an image would need a stage past level 14.
BackForthTrace back_and_forth(const LimitChain& c1, const LimitChain& c2, int rounds);

}  // namespace boolpow
