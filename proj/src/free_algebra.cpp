#include "boolpow/free_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace boolpow {

namespace {

std::vector<std::vector<int>> all_tuples(int n, int k) {
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= n;
  std::vector<std::vector<int>> out;
  for (std::int64_t c = 0; c < total; ++c) out.push_back(decode_tuple(n, k, c));
  return out;
}

bool generates_proper(const FiniteAlgebra& a, const std::vector<int>& t) {
  return static_cast<int>(subuniverse_generated(a, t).size()) < a.size();
}

std::vector<int> restrict_to(const FreeAlgebraRep& f, std::size_t i, const std::vector<std::vector<int>>& pts) {
  std::vector<int> out;
  for (const auto& p : pts) out.push_back(f.elements[i].at(p, f.algebra.size()));
  return out;
}

}  // namespace

std::optional<std::size_t> FreeAlgebraRep::find(const std::vector<int>& table) const {
  auto it = index.find(table);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

FreeAlgebraRep clone_generate(const FiniteAlgebra& a, int k, std::size_t budget) {
  require(k >= 1, Errc::InvalidArgument, "rank must be positive");
  double width = 1;
  for (int i = 0; i < k; ++i) width *= a.size();
  require(width <= 4096, Errc::SizeBudgetExceeded, "A^k has too many tuples to tabulate");
  // |A|^(|A|^k) bounds the number of k-ary operations
  require(width * std::log2(static_cast<double>(a.size())) <= std::log2(static_cast<double>(budget)),
          Errc::SizeBudgetExceeded, "too many k-ary operations on A to close under the budget");
  auto pts = all_tuples(a.size(), k);
  std::vector<std::vector<int>> gens(k);
  for (int i = 0; i < k; ++i)
    for (const auto& p : pts) gens[i].push_back(p[i]);
  FreeAlgebraRep rep;
  rep.algebra = a;
  rep.k = k;
  try {
    rep.closure = close_tuples(a, gens, budget);
  } catch (const Error& e) {
    if (e.code() == Errc::SearchBudgetExceeded)
      fail(Errc::SizeBudgetExceeded, "free algebra has more than " + std::to_string(budget) + " elements");
    throw;
  }
  for (std::size_t i = 0; i < rep.closure.elems.size(); ++i) {
    rep.index.emplace(rep.closure.elems[i], i);
    rep.elements.push_back(TermFunction{k, rep.closure.elems[i], std::nullopt});
  }
  return rep;
}

std::vector<std::vector<int>> transversal_R(const FiniteAlgebra& a, int k) {
  auto auts = automorphisms(a);
  std::vector<std::vector<int>> out;
  for (const auto& t : all_tuples(a.size(), k)) {
    bool least = true;
    for (const auto& g : auts) {
      std::vector<int> img;
      for (int x : t) img.push_back(g[x]);
      if (img < t) {
        least = false;
        break;
      }
    }
    if (least) out.push_back(t);
  }
  return out;
}

std::vector<std::vector<int>> compute_Sk(const FiniteAlgebra& a, int k) {
  std::vector<std::vector<int>> out;
  for (const auto& t : transversal_R(a, k))
    if (generates_proper(a, t)) out.push_back(t);
  return out;
}

std::vector<std::size_t> theta_class(const FreeAlgebraRep& f, std::size_t e) {
  require(e < f.size(), Errc::OutOfRange, "element index out of range");
  auto s = compute_Sk(f.algebra, f.k);
  auto es = idempotents(f.algebra);
  auto pattern = restrict_to(f, e, s);
  for (int v : pattern)
    require(std::find(es.begin(), es.end(), v) != es.end(), Errc::NotIdempotentOnSk,
            "e takes the non-idempotent value " + std::to_string(v) + " on S_k");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (restrict_to(f, i, s) == pattern) out.push_back(i);
  return out;
}

DecompositionReport verify_Fk_decomposition(const FreeAlgebraRep& f) {
  auto r = transversal_R(f.algebra, f.k);
  std::vector<std::vector<int>> s, rest;
  for (const auto& t : r) (generates_proper(f.algebra, t) ? s : rest).push_back(t);
  DecompositionReport rep;
  rep.free_size = f.size();
  rep.r_size = r.size();
  rep.s_size = s.size();
  rep.exponent = static_cast<int>(rest.size());
  std::set<std::vector<int>> whole, first, second;
  for (std::size_t i = 0; i < f.size(); ++i) {
    whole.insert(restrict_to(f, i, r));
    first.insert(restrict_to(f, i, rest));
    second.insert(restrict_to(f, i, s));
  }
  rep.first_factor = first.size();
  rep.second_factor = second.size();
  rep.restriction_injective = whole.size() == f.size();
  double full = 1;
  for (int i = 0; i < rep.exponent; ++i) full *= f.algebra.size();
  rep.first_is_full_power = static_cast<double>(first.size()) == full;
  rep.is_product = rep.restriction_injective && first.size() * second.size() == f.size();
  return rep;
}

PowerElement TruncationWitness::image(const FreeAlgebraRep& f, std::size_t member) const {
  std::vector<int> t;
  for (const auto& p : free_tuples) t.push_back(f.elements[member].at(p, f.algebra.size()));
  return embedding.apply(t);
}

TruncationWitness theta_class_is_power_truncation(const FreeAlgebraRep& f, std::size_t e,
                                                  const std::vector<int>& filters) {
  TruncationWitness w;
  w.members = theta_class(f, e);
  const FiniteAlgebra& a = f.algebra;
  std::vector<std::vector<int>> s;
  for (const auto& t : transversal_R(a, f.k)) (generates_proper(a, t) ? s : w.free_tuples).push_back(t);
  std::set<int> vals;
  for (int v : restrict_to(f, e, s)) vals.insert(v);
  w.filters.assign(vals.begin(), vals.end());
  if (!filters.empty()) {
    std::set<int> want(filters.begin(), filters.end());
    require(want == vals, Errc::PatternMismatch, "filters do not match the values of e on S_k");
  }
  int n = static_cast<int>(w.filters.size());
  int m = static_cast<int>(w.free_tuples.size());
  if (m == 0) {
    w.verified = w.members.size() == 1 && w.members.front() == e;
    return w;
  }
  // x_i = 1^(i-1) 0^omega sits in 1^(i-1)0; the free cells chain through 1^n
  auto ctx = PowerContext::make(a, PointContext::standard(n), w.filters);
  std::vector<BPEmbedding::Piece> pieces;
  for (int i = 0; i < n; ++i)
    pieces.push_back({Clopen::from_words({std::string(i, '1') + "0"}), Coord::constant(w.filters[i])});
  std::string stem(n, '1');
  for (int j = 0; j < m; ++j) {
    std::string cell = stem + std::string(j, '1') + (j + 1 < m ? "0" : "");
    pieces.push_back({Clopen::from_words({cell}), Coord::of(perm_identity(a.size()), j)});
  }
  w.embedding = BPEmbedding::make(ctx, m, std::move(pieces));

  std::set<std::size_t> members(w.members.begin(), w.members.end());
  std::map<PowerElement, std::size_t> images;
  for (auto i : w.members) images.emplace(w.image(f, i), i);
  double full = 1;
  for (int j = 0; j < m; ++j) full *= a.size();
  bool ok = images.size() == w.members.size() && static_cast<double>(images.size()) == full;
  // closed under the operations, and carried onto the pointwise operations of D
  std::vector<std::size_t> mem(w.members.begin(), w.members.end());
  for (std::size_t oi = 0; oi < a.ops().size() && ok; ++oi) {
    int r = a.op(oi).arity;
    for (std::size_t round = 0; round < std::min<std::size_t>(mem.size() * 4, 2000) && ok; ++round) {
      std::vector<std::size_t> args;
      for (int q = 0; q < r; ++q) args.push_back(mem[(round * 31 + static_cast<std::size_t>(q) * 17 + round / mem.size()) % mem.size()]);
      std::vector<int> table(f.elements[0].table.size());
      for (std::size_t c = 0; c < table.size(); ++c) {
        std::vector<int> xs;
        for (auto i : args) xs.push_back(f.elements[i].table[c]);
        table[c] = a.apply(oi, xs);
      }
      auto hit = f.find(table);
      if (!hit || !members.count(*hit)) {
        ok = false;
        break;
      }
      std::vector<PowerElement> ims;
      for (auto i : args) ims.push_back(w.image(f, i));
      ok = apply_operation(ctx, oi, ims) == w.image(f, *hit);
    }
  }
  w.verified = ok;
  return w;
}

SplitReport loop_ring_split(const FreeAlgebraRep& f) {
  const FiniteAlgebra& a = f.algebra;
  const int n = a.size();
  SplitReport rep;
  bool found = false;
  for (std::size_t oi = 0; oi < a.ops().size() && !found; ++oi) {
    if (a.op(oi).arity != 2) continue;
    for (int e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = a.apply(oi, {e, x}) == x && a.apply(oi, {x, e}) == x;
      for (int x = 0; x < n && ok; ++x) {
        std::set<int> row, col;
        for (int y = 0; y < n; ++y) {
          row.insert(a.apply(oi, {x, y}));
          col.insert(a.apply(oi, {y, x}));
        }
        ok = static_cast<int>(row.size()) == n && static_cast<int>(col.size()) == n;
      }
      if (ok) {
        found = true;
        rep.identity = e;
        rep.op = oi;
      }
    }
  }
  require(found, Errc::NotLoopOrRing, "no binary operation forms a loop with an identity");
  const int e = rep.identity;
  auto pts = all_tuples(n, f.k);
  std::vector<bool> proper;
  for (const auto& p : pts) proper.push_back(generates_proper(a, p));

  for (std::size_t i = 0; i < f.size(); ++i) {
    bool in_n = true;
    for (std::size_t c = 0; c < pts.size() && in_n; ++c) in_n = !proper[c] || f.elements[i].table[c] == e;
    if (in_n) rep.normal.push_back(i);
  }
  std::vector<std::vector<int>> ys(f.k);
  for (int i = 0; i < f.k; ++i) {
    for (std::size_t c = 0; c < pts.size(); ++c) ys[i].push_back(proper[c] ? pts[c][i] : e);
    auto hit = f.find(ys[i]);
    require(hit.has_value(), Errc::VerificationFailure, "y_" + std::to_string(i + 1) + " is not a term operation");
    rep.y_generators.push_back(*hit);
  }
  auto h = close_tuples(a, ys, f.size() + 1);
  for (const auto& t : h.elems) {
    auto hit = f.find(t);
    require(hit.has_value(), Errc::VerificationFailure, "H_k leaves F_k");
    rep.complement.push_back(*hit);
  }
  std::sort(rep.complement.begin(), rep.complement.end());

  std::vector<std::size_t> meet;
  std::set_intersection(rep.normal.begin(), rep.normal.end(), rep.complement.begin(), rep.complement.end(),
                        std::back_inserter(meet));
  rep.trivial_intersection =
      meet.size() == 1 && f.elements[meet[0]].table == std::vector<int>(pts.size(), e);
  std::set<std::size_t> products;
  for (auto x : rep.normal)
    for (auto y : rep.complement) {
      std::vector<int> t(pts.size());
      for (std::size_t c = 0; c < pts.size(); ++c)
        t[c] = a.apply(rep.op, {f.elements[x].table[c], f.elements[y].table[c]});
      if (auto hit = f.find(t)) products.insert(*hit);
    }
  rep.product_is_everything = products.size() == f.size();
  return rep;
}

}  // namespace boolpow
