#include <set>

#include "boolpow/algebra.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace boolpow;

namespace {

bool abelian_by_brute_force(const FiniteAlgebra& a) {
  int n = a.size();
  FiniteAlgebra sq = direct_power(a, 2);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 1; x < n; ++x) pairs.emplace_back(0, x * n + x);
  auto part = oracle::least_congruence(sq, pairs);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((part[0] == part[x * n + y]) != (x == y)) return false;
  return true;
}

FiniteAlgebra meet_semilattice() {
  return FiniteAlgebra(2, {Operation{"meet", 2, {0, 0, 0, 1}}});
}

}  // namespace

TEST_CASE("tables are validated") {
  CHECK_THROWS_AS(FiniteAlgebra(2, {Operation{"f", 2, {0, 1, 1}}}), Error);
  CHECK_THROWS_AS(FiniteAlgebra(2, {Operation{"f", 1, {0, 2}}}), Error);
  CHECK_THROWS_AS(FiniteAlgebra(0, {}), Error);
  try {
    FiniteAlgebra(2, {Operation{"f", 1, {0, 5}}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfRange);
  }
  auto a = builtin_algebra("gf2-ring");
  CHECK_THROWS_AS(a.apply(0, {1}), Error);
}

TEST_CASE("idempotent reduct of GF(2) has the expected profile") {
  auto a = builtin_algebra("gf2-idempotent-reduct");
  auto m = find_malcev_term(a);
  REQUIRE(m);
  CHECK(is_malcev_term(a, *m));
  CHECK(is_simple(a));
  CHECK_FALSE(is_abelian(a));
  CHECK_FALSE(abelian_by_brute_force(a));
  CHECK(idempotents(a) == std::vector<int>{0, 1});
  CHECK(automorphisms(a) == std::vector<Perm>{{0, 1}});
  auto subs = subalgebras(a);
  CHECK(subs == std::vector<std::vector<int>>{{0}, {0, 1}, {1}});
}

TEST_CASE("Mal'cev terms for groups and rings come from the cheap shapes") {
  for (const char* name : {"cyclic-group 5", "gf2-ring", "zero-ring 3"}) {
    auto a = builtin_algebra(name);
    auto m = find_malcev_term(a);
    REQUIRE(m);
    CHECK(is_malcev_term(a, *m));
    CHECK(term_depth(*m) <= 3);
  }
}

TEST_CASE("semilattice has no Mal'cev term") {
  auto s = meet_semilattice();
  CHECK_FALSE(find_malcev_term(s).has_value());
  CHECK_THROWS_AS(is_abelian(s), Error);
}

TEST_CASE("Mal'cev search by closure finds a term when no basic shape fits") {
  // x - y + z on Z3 hidden behind a binary operation f(x,y) = 2x + 2y.
  std::vector<int> t;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) t.push_back((2 * x + 2 * y) % 3);
  FiniteAlgebra a(3, {Operation{"f", 2, t}});
  auto m = find_malcev_term(a);
  REQUIRE(m);
  CHECK(is_malcev_term(a, *m));
}

TEST_CASE("principal congruences agree with brute force") {
  for (const char* name : {"gf2-idempotent-reduct", "gf4-idempotent-reduct", "cyclic-group 4",
                           "cyclic-group 6", "zero-ring 4"}) {
    auto a = builtin_algebra(name);
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < a.size(); ++y) {
        auto c = principal_congruence(a, x, y);
        auto o = oracle::least_congruence(a, {{x, y}});
        CHECK(oracle::same_partition(c.block, o));
      }
  }
}

TEST_CASE("simplicity and abelianness against brute force") {
  struct Row {
    const char* name;
    bool simple;
    bool abelian;
  };
  for (auto r : {Row{"gf2-ring", true, false}, Row{"gf2-idempotent-reduct", true, false},
                 Row{"gf4-idempotent-reduct", true, false}, Row{"cyclic-group 3", true, true},
                 Row{"cyclic-group 4", false, true}, Row{"zero-ring 2", true, true}}) {
    auto a = builtin_algebra(r.name);
    CAPTURE(r.name);
    CHECK(is_simple(a) == r.simple);
    CHECK(is_abelian(a) == r.abelian);
    if (a.size() <= 3) CHECK(abelian_by_brute_force(a) == r.abelian);
  }
}

TEST_CASE("GF(4) reduct: Frobenius automorphism and subalgebras") {
  auto a = builtin_algebra("gf4-idempotent-reduct");
  CHECK(automorphisms(a) == std::vector<Perm>{{0, 1, 2, 3}, {0, 1, 3, 2}});
  CHECK(idempotents(a) == std::vector<int>{0, 1});
  auto subs = subalgebras(a);
  auto oracle_subs = oracle::closed_subsets(a);
  CHECK(std::set<std::vector<int>>(subs.begin(), subs.end()) == oracle_subs);
}

TEST_CASE("automorphisms and subalgebras against brute force") {
  for (const char* name : {"cyclic-group 5", "cyclic-group 6", "zero-ring 4", "gf2-ring"}) {
    auto a = builtin_algebra(name);
    auto auts = automorphisms(a);
    CHECK(std::set<Perm>(auts.begin(), auts.end()) == oracle::all_automorphisms(a));
    auto subs = subalgebras(a);
    CHECK(std::set<std::vector<int>>(subs.begin(), subs.end()) == oracle::closed_subsets(a));
  }
}

TEST_CASE("generator-driven subalgebra enumeration above eight elements") {
  auto a = builtin_algebra("cyclic-group 12");
  auto subs = subalgebras(a);
  CHECK(subs.size() == 6);  // one subgroup per divisor of 12
  auto z = builtin_algebra("zero-ring 9");
  CHECK(subalgebras(z).size() == 3);
}

TEST_CASE("direct powers evaluate coordinatewise") {
  auto a = builtin_algebra("gf2-idempotent-reduct");
  auto p = direct_power(a, 3);
  CHECK(p.size() == 8);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      auto tx = decode_tuple(2, 3, x), ty = decode_tuple(2, 3, y);
      std::vector<int> expect(3);
      for (int i = 0; i < 3; ++i) expect[i] = a.apply(1, {tx[i], ty[i]});
      CHECK(p.apply(1, {x, y}) == encode_tuple(2, expect));
    }
  CHECK(idempotents(p).size() == 8);
}

TEST_CASE("terms render and evaluate") {
  auto a = builtin_algebra("gf2-ring");
  Term t{0, 0, {Term::variable(0), Term{2, 0, {Term::variable(1), Term::variable(2)}}}};
  CHECK(render_term(a, t) == "add(x,mul(y,z))");
  int v[3] = {1, 1, 1};
  CHECK(eval_term(a, t, v) == 0);
}
