// Finite algebras given by operation tables, and the decision procedures
// the rest of the library relies on.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boolpow/error.hpp"

namespace boolpow {

using Perm = std::vector<int>;  // a self-map of the carrier, by images

struct Operation {
  std::string name;
  int arity = 0;
  std::vector<int> table;  // row-major, first argument most significant
  bool operator==(const Operation&) const = default;
};

class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  // Validates table sizes and entries.
  FiniteAlgebra(int carrier, std::vector<Operation> ops);

  int size() const { return size_; }
  const std::vector<Operation>& ops() const { return ops_; }
  const Operation& op(std::size_t i) const { return ops_.at(i); }
  int op_index(const std::string& name) const;  // -1 when absent

  int apply(std::size_t op, std::span<const int> args) const;
  int apply(std::size_t op, std::initializer_list<int> args) const {
    return apply(op, std::span<const int>(args.begin(), args.size()));
  }

  // Same signature and same tables.
  bool operator==(const FiniteAlgebra& o) const = default;

 private:
  int size_ = 0;
  std::vector<Operation> ops_;
};

// Terms over the operation symbols of an algebra.
struct Term {
  int op = -1;   // -1 for a variable
  int var = 0;   // variable index when op == -1
  std::vector<Term> args;

  static Term variable(int i) { return Term{-1, i, {}}; }
  bool operator==(const Term&) const = default;
};

int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> vars);
std::string render_term(const FiniteAlgebra& a, const Term& t,
                        const std::vector<std::string>& var_names = {"x", "y", "z"});
std::size_t term_depth(const Term& t);

// Closure of a set of tuples (each of the same length) under the basic
// operations applied coordinatewise. Every element carries a witness term in
// the generators.
struct Closure {
  std::vector<std::vector<int>> elems;
  // witness[i] = {op, arg element indices}; op == -1 marks generator number arg[0]
  std::vector<std::pair<int, std::vector<int>>> witness;
  bool stopped = false;  // the stop predicate fired on the last element
  Term term(std::size_t i) const;
};

Closure close_tuples(const FiniteAlgebra& a, const std::vector<std::vector<int>>& gens,
                     std::size_t budget,
                     const std::function<bool(const std::vector<int>&)>& stop = {});

std::optional<Term> find_malcev_term(const FiniteAlgebra& a, std::size_t budget = 1u << 16);
bool is_malcev_term(const FiniteAlgebra& a, const Term& t);

// Congruence as a block labelling of the carrier (labels by first appearance).
struct AlgCongruence {
  std::vector<int> block;
  bool related(int x, int y) const { return block.at(x) == block.at(y); }
  int num_blocks() const;
  bool is_full() const { return num_blocks() <= 1; }
  bool operator==(const AlgCongruence&) const = default;
};

AlgCongruence principal_congruence(const FiniteAlgebra& a, int x, int y);
AlgCongruence generated_congruence(const FiniteAlgebra& a,
                                   const std::vector<std::pair<int, int>>& pairs);
bool is_simple(const FiniteAlgebra& a);
bool is_abelian(const FiniteAlgebra& a, std::size_t malcev_budget = 1u << 16);

std::vector<int> idempotents(const FiniteAlgebra& a);
std::vector<int> subuniverse_generated(const FiniteAlgebra& a, const std::vector<int>& gens);
// Nonempty subuniverses, sorted; the whole carrier is included.
std::vector<std::vector<int>> subalgebras(const FiniteAlgebra& a, std::size_t budget = 1u << 20);
std::vector<Perm> automorphisms(const FiniteAlgebra& a);
bool is_automorphism(const FiniteAlgebra& a, const Perm& p);
Perm perm_compose(const Perm& outer, const Perm& inner);  // outer after inner
Perm perm_inverse(const Perm& p);
Perm perm_identity(int n);

// Carrier of A^k is encoded in base |A| with coordinate 0 most significant.
FiniteAlgebra direct_power(const FiniteAlgebra& a, int k);
std::vector<int> decode_tuple(int n, int k, std::int64_t code);
std::int64_t encode_tuple(int n, std::span<const int> tuple);

// Built-in algebras by name: "gf2-ring", "gf2-idempotent-reduct",
// "gf4-idempotent-reduct", "cyclic-group <k>", "zero-ring <k>".
FiniteAlgebra builtin_algebra(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace boolpow
