// Free algebras of finite rank in the variety generated by A, as clones of
// term operations A^k -> A, and their split along the tuples that generate
// proper subalgebras.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "boolpow/algebra.hpp"
#include "boolpow/fraisse.hpp"

namespace boolpow {

// Values are indexed by encode_tuple over A^k (lexicographic order).
struct TermFunction {
  int k = 0;
  std::vector<int> table;
  std::optional<Term> witness;  // filled on request, see FreeAlgebraRep::witness

  int at(const std::vector<int>& a, int n) const { return table[static_cast<std::size_t>(encode_tuple(n, a))]; }
};

struct FreeAlgebraRep {
  FiniteAlgebra algebra;
  int k = 0;
  std::vector<TermFunction> elements;  // projections first
  std::map<std::vector<int>, std::size_t> index;  // table -> element
  Closure closure;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> find(const std::vector<int>& table) const;
  // A term in x_0..x_{k-1} whose term operation is element i.
  Term witness(std::size_t i) const { return closure.term(i); }
};

// Closure of the projections under the basic operations. SizeBudgetExceeded
// when |A|^(|A|^k) exceeds `budget`.
FreeAlgebraRep clone_generate(const FiniteAlgebra& a, int k, std::size_t budget = 1u << 16);

// Lexicographically least member of each Aut A orbit on A^k, in order.
std::vector<std::vector<int>> transversal_R(const FiniteAlgebra& a, int k);
// Members of R generating a proper subalgebra.
std::vector<std::vector<int>> compute_Sk(const FiniteAlgebra& a, int k);
// f with f = e on S_k. NotIdempotentOnSk unless e takes idempotent values there.
std::vector<std::size_t> theta_class(const FreeAlgebraRep& f, std::size_t e);

struct DecompositionReport {
  std::size_t free_size = 0;
  std::size_t r_size = 0, s_size = 0;
  int exponent = 0;                  // |R \ S_k|
  std::size_t first_factor = 0;      // |F_k restricted to R \ S_k|
  std::size_t second_factor = 0;     // |F_k restricted to S_k|
  bool restriction_injective = false;
  bool first_is_full_power = false;  // first factor = A^{R \ S_k}
  bool is_product = false;           // F_k = first x second
  bool verified() const { return restriction_injective && first_is_full_power && is_product; }
};
DecompositionReport verify_Fk_decomposition(const FreeAlgebraRep& f);

struct TruncationWitness {
  std::vector<int> filters;              // distinct values of e on S_k, increasing
  std::vector<std::vector<int>> free_tuples;  // R \ S_k in order
  BPEmbedding embedding;                 // A^{|R \ S_k|} -> D
  std::vector<std::size_t> members;      // theta class of e
  bool verified = false;
  PowerElement image(const FreeAlgebraRep& f, std::size_t member) const;
};

// The theta class of e, carried onto the image of an embedding into the
// filtered power whose filters are the values of e on S_k. PatternMismatch
// when `filters` is given and differs from those values.
TruncationWitness theta_class_is_power_truncation(const FreeAlgebraRep& f, std::size_t e,
                                                  const std::vector<int>& filters = {});

struct SplitReport {
  int identity = 0;  // e
  std::size_t op = 0;  // loop or ring addition
  std::vector<std::size_t> normal, complement;  // N_k and H_k as element indices
  std::vector<std::size_t> y_generators;
  bool trivial_intersection = false;
  bool product_is_everything = false;
  bool verified() const { return trivial_intersection && product_is_everything; }
};

// NotLoopOrRing unless some binary operation is a loop with an identity.
SplitReport loop_ring_split(const FreeAlgebraRep& f);

}  // namespace boolpow
