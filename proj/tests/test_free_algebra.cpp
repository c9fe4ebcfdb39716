#include <set>

#include "boolpow/free_algebra.hpp"
#include "doctest.h"

using namespace boolpow;

namespace {

FiniteAlgebra reduct2() { return builtin_algebra("gf2-idempotent-reduct"); }
FiniteAlgebra gf4() { return builtin_algebra("gf4-idempotent-reduct"); }
FiniteAlgebra ring2() { return builtin_algebra("gf2-ring"); }

template <class F>
void expect_error(Errc code, F&& f) {
  try {
    f();
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

std::vector<std::vector<int>> all_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= n;
  for (std::int64_t c = 0; c < total; ++c) out.push_back(decode_tuple(n, k, c));
  return out;
}

// Naive fixed point: apply every operation to every argument list until
// nothing new appears.
std::set<std::vector<int>> naive_clone(const FiniteAlgebra& a, int k) {
  auto pts = all_tuples(a.size(), k);
  std::set<std::vector<int>> cur;
  for (int i = 0; i < k; ++i) {
    std::vector<int> t;
    for (const auto& p : pts) t.push_back(p[i]);
    cur.insert(t);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> list(cur.begin(), cur.end());
    for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
      int r = a.op(oi).arity;
      std::size_t combos = 1;
      for (int q = 0; q < r; ++q) combos *= list.size();
      for (std::size_t c = 0; c < combos; ++c) {
        std::vector<int> t(pts.size());
        for (std::size_t x = 0; x < pts.size(); ++x) {
          std::vector<int> args;
          std::size_t rest = c;
          for (int q = 0; q < r; ++q) {
            args.push_back(list[rest % list.size()][x]);
            rest /= list.size();
          }
          t[x] = a.apply(oi, args);
        }
        grew |= cur.insert(t).second;
      }
    }
  }
  return cur;
}

// Orbit representatives counted by Burnside: average number of fixed tuples.
std::size_t burnside(const FiniteAlgebra& a, int k) {
  auto auts = automorphisms(a);
  std::size_t total = 0;
  for (const auto& g : auts) {
    int fixed = 0;
    for (int x = 0; x < a.size(); ++x) fixed += g[x] == x;
    std::size_t p = 1;
    for (int i = 0; i < k; ++i) p *= static_cast<std::size_t>(fixed);
    total += p;
  }
  return total / auts.size();
}

}  // namespace

TEST_CASE("clone generation agrees with a naive fixed point") {
  for (auto [a, k] : std::vector<std::pair<FiniteAlgebra, int>>{
           {reduct2(), 1}, {reduct2(), 2}, {reduct2(), 3}, {ring2(), 1}, {ring2(), 2}, {gf4(), 1}}) {
    auto f = clone_generate(a, k);
    auto oracle = naive_clone(a, k);
    CHECK(f.size() == oracle.size());
    for (const auto& t : f.elements) CHECK(oracle.count(t.table));
    for (int i = 0; i < k; ++i)
      for (const auto& p : all_tuples(a.size(), k)) CHECK(f.elements[i].at(p, a.size()) == p[i]);
  }
}

TEST_CASE("free algebra sizes") {
  // idempotent minority + meet on {0,1}: only the constant tuples are proper
  CHECK(clone_generate(reduct2(), 1).size() == 1);
  CHECK(clone_generate(reduct2(), 2).size() == 4);
  CHECK(clone_generate(reduct2(), 3).size() == 64);
  // GF(2) without constants: the functions vanishing at 0
  CHECK(clone_generate(ring2(), 1).size() == 2);
  CHECK(clone_generate(ring2(), 2).size() == 8);
  CHECK(clone_generate(gf4(), 1).size() == 4);
}

TEST_CASE("witness terms evaluate to their tables") {
  auto a = reduct2();
  auto f = clone_generate(a, 3);
  for (std::size_t i = 0; i < f.size(); i += 7) {
    auto t = f.witness(i);
    for (const auto& p : all_tuples(2, 3)) CHECK(eval_term(a, t, p) == f.elements[i].at(p, 2));
  }
}

TEST_CASE("budgets") {
  expect_error(Errc::SizeBudgetExceeded, [] { clone_generate(reduct2(), 3, 10); });
  expect_error(Errc::SizeBudgetExceeded, [] { clone_generate(gf4(), 2); });
  expect_error(Errc::SizeBudgetExceeded, [] { clone_generate(gf4(), 7); });
  expect_error(Errc::InvalidArgument, [] { clone_generate(gf4(), 0); });
}

TEST_CASE("orbit transversal") {
  CHECK(transversal_R(gf4(), 1) == std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(transversal_R(reduct2(), 2).size() == 4);
  for (int k = 1; k <= 4; ++k) CHECK(transversal_R(gf4(), k).size() == burnside(gf4(), k));
  // prefixes of R_{k+1} are exactly R_k
  auto r2 = transversal_R(gf4(), 2);
  std::set<std::vector<int>> pre;
  for (const auto& t : transversal_R(gf4(), 3)) pre.insert({t[0], t[1]});
  CHECK(pre == std::set<std::vector<int>>(r2.begin(), r2.end()));
}

TEST_CASE("proper tuples") {
  CHECK(compute_Sk(reduct2(), 1) == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(compute_Sk(reduct2(), 2) == std::vector<std::vector<int>>{{0, 0}, {1, 1}});
  CHECK(compute_Sk(ring2(), 1) == std::vector<std::vector<int>>{{0}});
  CHECK(compute_Sk(ring2(), 2) == std::vector<std::vector<int>>{{0, 0}});
  CHECK(compute_Sk(gf4(), 1) == std::vector<std::vector<int>>{{0}, {1}});
  // restriction of F_k to a tuple is the subalgebra it generates
  for (auto [a, k] : std::vector<std::pair<FiniteAlgebra, int>>{{reduct2(), 3}, {ring2(), 3}, {gf4(), 1}}) {
    auto f = clone_generate(a, k);
    for (const auto& p : all_tuples(a.size(), k)) {
      std::set<int> vals;
      for (const auto& t : f.elements) vals.insert(t.at(p, a.size()));
      auto sub = subuniverse_generated(a, p);
      CHECK(vals == std::set<int>(sub.begin(), sub.end()));
    }
  }
}

TEST_CASE("F_k splits over the proper tuples") {
  for (auto [a, k] : std::vector<std::pair<FiniteAlgebra, int>>{
           {reduct2(), 1}, {reduct2(), 2}, {reduct2(), 3}, {ring2(), 1}, {ring2(), 2}, {ring2(), 3}, {gf4(), 1}}) {
    auto f = clone_generate(a, k);
    auto rep = verify_Fk_decomposition(f);
    CHECK(rep.verified());
    CHECK(rep.r_size == rep.s_size + static_cast<std::size_t>(rep.exponent));
  }
  auto rep = verify_Fk_decomposition(clone_generate(reduct2(), 3));
  CHECK(rep.exponent == 6);
  CHECK(rep.second_factor == 1);
  CHECK(rep.first_factor == 64);
}

TEST_CASE("theta classes") {
  auto f = clone_generate(reduct2(), 2);
  auto cls = theta_class(f, 0);
  CHECK(cls.size() == 4);

  auto g = clone_generate(ring2(), 2);
  CHECK(theta_class(g, 0).size() == 8);

  // gf4 rank 1: every term is idempotent-valued at 0 and 1
  auto h = clone_generate(gf4(), 1);
  CHECK(theta_class(h, 0).size() == 4);

  // every class of an idempotent-valued e is a subalgebra
  auto a = reduct2();
  auto f3 = clone_generate(a, 3);
  for (std::size_t e = 0; e < f3.size(); e += 9) {
    auto cls = theta_class(f3, e);
    std::set<std::size_t> in(cls.begin(), cls.end());
    for (auto x : cls)
      for (auto y : cls) {
        std::vector<int> t(8);
        for (std::size_t c = 0; c < 8; ++c)
          t[c] = a.apply(1, {f3.elements[x].table[c], f3.elements[y].table[c]});
        auto hit = f3.find(t);
        REQUIRE(hit.has_value());
        CHECK(in.count(*hit));
      }
  }
}

TEST_CASE("theta classes as truncated powers") {
  auto f = clone_generate(reduct2(), 2);
  auto w = theta_class_is_power_truncation(f, 0);
  CHECK(w.verified);
  CHECK(w.filters == std::vector<int>{0, 1});
  CHECK(w.free_tuples == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(w.members.size() == 4);
  std::set<PowerElement> images;
  for (auto i : w.members) images.insert(w.image(f, i));
  CHECK(images.size() == 4);
  for (const auto& im : images) CHECK(w.embedding.preimage(im).has_value());

  auto f3 = clone_generate(reduct2(), 3);
  CHECK(theta_class_is_power_truncation(f3, 1).verified);

  auto r = clone_generate(ring2(), 2);
  auto wr = theta_class_is_power_truncation(r, 0, {0});
  CHECK(wr.verified);
  CHECK(wr.free_tuples.size() == 3);

  auto g1 = clone_generate(gf4(), 1);
  auto wg = theta_class_is_power_truncation(g1, 0);
  CHECK(wg.verified);
  CHECK(wg.filters == std::vector<int>{0, 1});
  CHECK(wg.members.size() == 4);

  expect_error(Errc::PatternMismatch, [&] { theta_class_is_power_truncation(f, 0, {0}); });
}

TEST_CASE("theta class requires idempotent values on S_k") {
  // cyclic group: S_k is the identity tuple, every term sends it to 0
  auto c = builtin_algebra("cyclic-group 3");
  auto f = clone_generate(c, 1);
  CHECK(compute_Sk(c, 1) == std::vector<std::vector<int>>{{0}});
  CHECK(theta_class(f, 0).size() == f.size());
  // in Z_4 the projection takes the value 2 on the proper tuple (2)
  auto f4 = clone_generate(builtin_algebra("cyclic-group 4"), 1);
  expect_error(Errc::NotIdempotentOnSk, [&] { theta_class(f4, 0); });
}

TEST_CASE("loop split") {
  auto f = clone_generate(ring2(), 2);
  auto rep = loop_ring_split(f);
  CHECK(rep.verified());
  CHECK(rep.identity == 0);
  CHECK(rep.normal.size() == 8);
  CHECK(rep.complement.size() == 1);
  for (int k = 1; k <= 3; ++k) CHECK(loop_ring_split(clone_generate(ring2(), k)).verified());

  auto c = builtin_algebra("cyclic-group 3");
  auto g = clone_generate(c, 2);
  auto rg = loop_ring_split(g);
  CHECK(rg.verified());
  CHECK(rg.normal.size() * rg.complement.size() == g.size());

  expect_error(Errc::NotLoopOrRing, [] { loop_ring_split(clone_generate(reduct2(), 2)); });
}
