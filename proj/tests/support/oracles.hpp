// Independent reference computations used to cross-check the library.
// These deliberately take the slow, obvious route.
#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "boolpow/algebra.hpp"

namespace oracle {

using boolpow::FiniteAlgebra;

// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> go = [&](int i, int maxb) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      rgs[i] = b;
      go(i + 1, std::max(maxb, b));
    }
  };
  if (n == 0) return {{}};
  rgs[0] = 0;
  go(1, 0);
  return out;
}

inline bool compatible(const FiniteAlgebra& a, const std::vector<int>& part) {
  int n = a.size();
  for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
    int r = a.op(oi).arity;
    std::int64_t total = 1;
    for (int i = 0; i < r; ++i) total *= n;
    for (std::int64_t c1 = 0; c1 < total; ++c1)
      for (std::int64_t c2 = 0; c2 < total; ++c2) {
        auto x = boolpow::decode_tuple(n, r, c1), y = boolpow::decode_tuple(n, r, c2);
        bool rel = true;
        for (int i = 0; i < r; ++i) rel &= part[x[i]] == part[y[i]];
        if (rel && part[a.apply(oi, x)] != part[a.apply(oi, y)]) return false;
      }
  }
  return true;
}

// Least congruence containing the given pairs, by scanning every partition.
inline std::vector<int> least_congruence(const FiniteAlgebra& a,
                                         const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> best;
  int best_blocks = -1;
  for (const auto& p : all_partitions(a.size())) {
    bool ok = true;
    for (auto [x, y] : pairs) ok &= p[x] == p[y];
    if (!ok || !compatible(a, p)) continue;
    int blocks = *std::max_element(p.begin(), p.end()) + 1;
    if (blocks > best_blocks) best = p, best_blocks = blocks;
  }
  return best;
}

inline bool same_partition(const std::vector<int>& p, const std::vector<int>& q) {
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if ((p[i] == p[j]) != (q[i] == q[j])) return false;
  return true;
}

// Closed subsets by testing every subset against every table entry.
inline std::set<std::vector<int>> closed_subsets(const FiniteAlgebra& a) {
  int n = a.size();
  std::set<std::vector<int>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    bool closed = true;
    for (std::size_t oi = 0; oi < a.ops().size() && closed; ++oi) {
      int r = a.op(oi).arity;
      std::int64_t total = 1;
      for (int i = 0; i < r; ++i) total *= n;
      for (std::int64_t c = 0; c < total && closed; ++c) {
        auto x = boolpow::decode_tuple(n, r, c);
        bool inside = true;
        for (int v : x) inside &= (mask >> v & 1) != 0;
        if (inside && !(mask >> a.op(oi).table[c] & 1)) closed = false;
      }
    }
    if (!closed) continue;
    std::vector<int> s;
    for (int x = 0; x < n; ++x)
      if (mask >> x & 1) s.push_back(x);
    out.insert(s);
  }
  return out;
}

// Bijections of the carrier commuting with every operation, by brute force.
inline std::set<boolpow::Perm> all_automorphisms(const FiniteAlgebra& a) {
  boolpow::Perm p = boolpow::perm_identity(a.size());
  std::set<boolpow::Perm> out;
  do {
    if (boolpow::is_automorphism(a, p)) out.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace oracle
