#include "boolpow/algebra.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace boolpow {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::DegenerateCarrier: return "DegenerateCarrier";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case Errc::NoMalcevTerm: return "NoMalcevTerm";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NotGood: return "NotGood";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::OverlappingDomains: return "OverlappingDomains";
    case Errc::NotBijective: return "NotBijective";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::EmptyOrFull: return "EmptyOrFull";
    case Errc::FilterViolation: return "FilterViolation";
    case Errc::EmptyRestriction: return "EmptyRestriction";
    case Errc::NotAutomorphism: return "NotAutomorphism";
    case Errc::IdempotentMismatch: return "IdempotentMismatch";
    case Errc::PointMismatch: return "PointMismatch";
    case Errc::PointNotFixed: return "PointNotFixed";
    case Errc::NotExtendable: return "NotExtendable";
    case Errc::TailLabelViolation: return "TailLabelViolation";
    case Errc::IllegalTriple: return "IllegalTriple";
    case Errc::NotSinglePoint: return "NotSinglePoint";
    case Errc::NotStabilizing: return "NotStabilizing";
    case Errc::OrbitCollision: return "OrbitCollision";
    case Errc::NotEmbedding: return "NotEmbedding";
    case Errc::SourceMismatch: return "SourceMismatch";
    case Errc::ArityOrder: return "ArityOrder";
    case Errc::ExtensionFailure: return "ExtensionFailure";
    case Errc::NotIdempotentOnSk: return "NotIdempotentOnSk";
    case Errc::PatternMismatch: return "PatternMismatch";
    case Errc::NotLoopOrRing: return "NotLoopOrRing";
    case Errc::PreconditionNotGood: return "PreconditionNotGood";
    case Errc::TypeWitnessFailure: return "TypeWitnessFailure";
    case Errc::EmptyGeneratorSet: return "EmptyGeneratorSet";
    case Errc::ParseError: return "ParseError";
    case Errc::VerificationFailure: return "VerificationFailure";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NoPoints: return "NoPoints";
  }
  return "Unknown";
}

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

FiniteAlgebra::FiniteAlgebra(int carrier, std::vector<Operation> ops)
    : size_(carrier), ops_(std::move(ops)) {
  require(carrier >= 1, Errc::DegenerateCarrier, "carrier must be nonempty");
  for (const auto& o : ops_) {
    require(o.arity >= 0, Errc::ArityMismatch, "negative arity for " + o.name);
    require(o.arity <= 8, Errc::ArityMismatch, "arity too large for " + o.name);
    require(static_cast<std::int64_t>(o.table.size()) == ipow(carrier, o.arity),
            Errc::ArityMismatch, "table size of " + o.name + " does not match arity");
    for (int v : o.table)
      require(v >= 0 && v < carrier, Errc::OutOfRange, "table entry out of range in " + o.name);
  }
}

int FiniteAlgebra::op_index(const std::string& name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

int FiniteAlgebra::apply(std::size_t op, std::span<const int> args) const {
  const Operation& o = ops_.at(op);
  require(static_cast<int>(args.size()) == o.arity, Errc::ArityMismatch, "wrong argument count");
  std::size_t idx = 0;
  for (int a : args) {
    require(a >= 0 && a < size_, Errc::OutOfRange, "argument out of range");
    idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a);
  }
  return o.table[idx];
}

int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> vars) {
  if (t.op < 0) {
    require(t.var >= 0 && t.var < static_cast<int>(vars.size()), Errc::ArityMismatch,
            "term variable outside the supplied assignment");
    return vars[t.var];
  }
  std::vector<int> vals;
  vals.reserve(t.args.size());
  for (const auto& s : t.args) vals.push_back(eval_term(a, s, vars));
  return a.apply(static_cast<std::size_t>(t.op), vals);
}

std::string render_term(const FiniteAlgebra& a, const Term& t,
                        const std::vector<std::string>& names) {
  if (t.op < 0) {
    if (t.var < static_cast<int>(names.size())) return names[t.var];
    return "x" + std::to_string(t.var);
  }
  std::string s = a.op(t.op).name;
  if (t.args.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += render_term(a, t.args[i], names);
  }
  return s + ")";
}

std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& s : t.args) d = std::max(d, term_depth(s) + 1);
  return t.op >= 0 && t.args.empty() ? 1 : d;
}

Term Closure::term(std::size_t i) const {
  const auto& [op, args] = witness.at(i);
  if (op < 0) return Term::variable(args.at(0));
  Term t;
  t.op = op;
  for (int j : args) t.args.push_back(term(static_cast<std::size_t>(j)));
  return t;
}

Closure close_tuples(const FiniteAlgebra& a, const std::vector<std::vector<int>>& gens,
                     std::size_t budget,
                     const std::function<bool(const std::vector<int>&)>& stop) {
  Closure out;
  std::unordered_map<std::vector<int>, int, VecHash> index;
  std::size_t width = gens.empty() ? 1 : gens.front().size();
  auto add = [&](std::vector<int> v, int op, std::vector<int> args) -> bool {
    if (index.count(v)) return false;
    if (out.elems.size() >= budget)
      fail(Errc::SearchBudgetExceeded, "closure exceeded budget of " + std::to_string(budget));
    index.emplace(v, static_cast<int>(out.elems.size()));
    out.elems.push_back(std::move(v));
    out.witness.emplace_back(op, std::move(args));
    if (stop && stop(out.elems.back())) {
      out.stopped = true;
      return true;
    }
    return false;
  };
  for (std::size_t g = 0; g < gens.size(); ++g) {
    require(gens[g].size() == width, Errc::ArityMismatch, "generator tuples differ in length");
    if (add(gens[g], -1, {static_cast<int>(g)})) return out;
  }
  std::size_t lo = 0;
  bool first = true;
  while (true) {
    std::size_t hi = out.elems.size();
    if (!first && lo == hi) break;
    for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
      int r = a.op(oi).arity;
      if (r == 0) {
        if (first && add(std::vector<int>(width, a.op(oi).table[0]), static_cast<int>(oi), {}))
          return out;
        continue;
      }
      if (hi == 0) continue;
      std::vector<int> args(r);
      std::vector<int> vals(r);
      std::vector<int> res(width);
      // split by the position p of the first argument drawn from [lo, hi)
      for (int p = 0; p < r; ++p) {
        if (lo == hi) break;
        std::vector<std::size_t> from(r), to(r);
        for (int q = 0; q < r; ++q) {
          if (q < p) from[q] = 0, to[q] = lo;
          else if (q == p) from[q] = lo, to[q] = hi;
          else from[q] = 0, to[q] = hi;
        }
        bool empty = false;
        for (int q = 0; q < r; ++q) empty |= from[q] >= to[q];
        if (empty) continue;
        std::vector<std::size_t> cur(from);
        while (true) {
          for (int q = 0; q < r; ++q) args[q] = static_cast<int>(cur[q]);
          for (std::size_t c = 0; c < width; ++c) {
            for (int q = 0; q < r; ++q) vals[q] = out.elems[cur[q]][c];
            res[c] = a.apply(oi, vals);
          }
          if (!index.count(res) && add(res, static_cast<int>(oi), args)) return out;
          int q = r - 1;
          while (q >= 0 && ++cur[q] == to[q]) {
            cur[q] = from[q];
            --q;
          }
          if (q < 0) break;
        }
      }
    }
    first = false;
    lo = hi;
  }
  return out;
}

bool is_malcev_term(const FiniteAlgebra& a, const Term& t) {
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) {
      int v1[3] = {x, x, y};
      int v2[3] = {y, x, x};
      if (eval_term(a, t, v1) != y || eval_term(a, t, v2) != y) return false;
    }
  return true;
}

std::optional<Term> find_malcev_term(const FiniteAlgebra& a, std::size_t budget) {
  // Cheap candidates first: a basic ternary operation, or the group/ring shapes
  // b(x, b(u(y), z)) and b(b(x, u(y)), z).
  auto X = Term::variable(0), Y = Term::variable(1), Z = Term::variable(2);
  for (std::size_t i = 0; i < a.ops().size(); ++i)
    if (a.op(i).arity == 3) {
      Term t{static_cast<int>(i), 0, {X, Y, Z}};
      if (is_malcev_term(a, t)) return t;
    }
  for (std::size_t b = 0; b < a.ops().size(); ++b) {
    if (a.op(b).arity != 2) continue;
    for (std::size_t u = 0; u < a.ops().size(); ++u) {
      if (a.op(u).arity != 1) continue;
      int bi = static_cast<int>(b), ui = static_cast<int>(u);
      Term uy{ui, 0, {Y}};
      Term t1{bi, 0, {X, Term{bi, 0, {uy, Z}}}};
      if (is_malcev_term(a, t1)) return t1;
      Term t2{bi, 0, {Term{bi, 0, {X, uy}}, Z}};
      if (is_malcev_term(a, t2)) return t2;
    }
  }
  // Breadth-first closure of the projections, restricted to the argument
  // triples (x,x,y) and (y,x,x).
  std::vector<std::array<int, 3>> pts;
  std::set<std::array<int, 3>> seen;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      for (auto t : {std::array<int, 3>{x, x, y}, std::array<int, 3>{y, x, x}})
        if (seen.insert(t).second) pts.push_back(t);
  std::vector<std::vector<int>> gens(3, std::vector<int>(pts.size()));
  std::vector<int> target(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (int j = 0; j < 3; ++j) gens[j][k] = pts[k][j];
    target[k] = pts[k][0] == pts[k][1] ? pts[k][2] : pts[k][0];
  }
  Closure c = close_tuples(a, gens, budget, [&](const std::vector<int>& v) { return v == target; });
  if (!c.stopped) return std::nullopt;
  return c.term(c.elems.size() - 1);
}

int AlgCongruence::num_blocks() const {
  int m = -1;
  for (int b : block) m = std::max(m, b);
  return m + 1;
}

namespace {

std::vector<std::vector<int>> unary_translations(const FiniteAlgebra& a) {
  std::set<std::vector<int>> out;
  int n = a.size();
  for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
    int r = a.op(oi).arity;
    if (r == 0) continue;
    std::int64_t others = ipow(n, r - 1);
    std::vector<int> args(r);
    for (int pos = 0; pos < r; ++pos)
      for (std::int64_t code = 0; code < others; ++code) {
        std::int64_t c = code;
        for (int q = r - 1; q >= 0; --q) {
          if (q == pos) continue;
          args[q] = static_cast<int>(c % n);
          c /= n;
        }
        std::vector<int> t(n);
        for (int u = 0; u < n; ++u) {
          args[pos] = u;
          t[u] = a.apply(oi, args);
        }
        out.insert(std::move(t));
      }
  }
  return {out.begin(), out.end()};
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x), y = find(y);
    if (x == y) return false;
    p[std::max(x, y)] = std::min(x, y);
    return true;
  }
};

}  // namespace

AlgCongruence generated_congruence(const FiniteAlgebra& a,
                                   const std::vector<std::pair<int, int>>& pairs) {
  int n = a.size();
  auto trans = unary_translations(a);
  UnionFind uf(n);
  std::vector<std::pair<int, int>> work;
  for (auto [x, y] : pairs) {
    require(x >= 0 && x < n && y >= 0 && y < n, Errc::OutOfRange, "pair outside carrier");
    if (uf.unite(x, y)) work.emplace_back(x, y);
  }
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (const auto& t : trans)
      if (uf.unite(t[x], t[y])) work.emplace_back(t[x], t[y]);
  }
  AlgCongruence c;
  c.block.assign(n, -1);
  std::map<int, int> label;
  for (int x = 0; x < n; ++x) {
    int r = uf.find(x);
    auto it = label.find(r);
    if (it == label.end()) it = label.emplace(r, static_cast<int>(label.size())).first;
    c.block[x] = it->second;
  }
  return c;
}

AlgCongruence principal_congruence(const FiniteAlgebra& a, int x, int y) {
  return generated_congruence(a, {{x, y}});
}

bool is_simple(const FiniteAlgebra& a) {
  if (a.size() < 2) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = x + 1; y < a.size(); ++y)
      if (!principal_congruence(a, x, y).is_full()) return false;
  return true;
}

bool is_abelian(const FiniteAlgebra& a, std::size_t malcev_budget) {
  if (!find_malcev_term(a, malcev_budget))
    fail(Errc::NoMalcevTerm, "abelian test needs a Mal'cev term");
  int n = a.size();
  FiniteAlgebra sq = direct_power(a, 2);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 1; x < n; ++x) pairs.emplace_back(0, x * n + x);
  AlgCongruence c = generated_congruence(sq, pairs);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (c.related(0, x * n + y) != (x == y)) return false;
  return true;
}

std::vector<int> idempotents(const FiniteAlgebra& a) {
  std::vector<int> out;
  for (int e = 0; e < a.size(); ++e) {
    bool ok = true;
    for (std::size_t oi = 0; oi < a.ops().size() && ok; ++oi) {
      std::vector<int> args(a.op(oi).arity, e);
      ok = a.apply(oi, args) == e;
    }
    if (ok) out.push_back(e);
  }
  return out;
}

std::vector<int> subuniverse_generated(const FiniteAlgebra& a, const std::vector<int>& gens) {
  std::vector<std::vector<int>> g;
  for (int x : gens) g.push_back({x});
  Closure c = close_tuples(a, g, static_cast<std::size_t>(a.size()) + 1);
  std::vector<int> out;
  for (const auto& v : c.elems) out.push_back(v[0]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> subalgebras(const FiniteAlgebra& a, std::size_t budget) {
  int n = a.size();
  std::set<std::vector<int>> found;
  auto keep = [&](std::vector<int> s) {
    if (s.empty()) return false;
    if (found.size() >= budget && !found.count(s))
      fail(Errc::SearchBudgetExceeded, "too many subalgebras");
    return found.insert(std::move(s)).second;
  };
  if (n <= 8) {
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> g;
      for (int x = 0; x < n; ++x)
        if (mask >> x & 1) g.push_back(x);
      keep(subuniverse_generated(a, g));
    }
  } else {
    // Every subuniverse is reached by adding generators one at a time.
    std::vector<std::vector<int>> queue;
    for (int x = 0; x < n; ++x) {
      auto s = subuniverse_generated(a, {x});
      if (keep(s)) queue.push_back(s);
    }
    while (!queue.empty()) {
      auto s = queue.back();
      queue.pop_back();
      for (int x = 0; x < n; ++x) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        auto g = s;
        g.push_back(x);
        auto t = subuniverse_generated(a, g);
        if (keep(t)) queue.push_back(t);
      }
    }
  }
  return {found.begin(), found.end()};
}

bool is_automorphism(const FiniteAlgebra& a, const Perm& p) {
  int n = a.size();
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
    int r = a.op(oi).arity;
    std::int64_t total = ipow(n, r);
    std::vector<int> args(r), img(r);
    for (std::int64_t code = 0; code < total; ++code) {
      std::int64_t c = code;
      for (int q = r - 1; q >= 0; --q) {
        args[q] = static_cast<int>(c % n);
        img[q] = p[args[q]];
        c /= n;
      }
      if (a.apply(oi, img) != p[a.op(oi).table[code]]) return false;
    }
  }
  return true;
}

std::vector<Perm> automorphisms(const FiniteAlgebra& a) {
  int n = a.size();
  std::vector<Perm> out;
  Perm p(n, -1);
  std::vector<char> used(n, 0);
  // entries whose arguments and value all lie in [0, k] with some argument or the value equal to k
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> checks(n);
  for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
    int r = a.op(oi).arity;
    std::int64_t total = ipow(n, r);
    for (std::int64_t code = 0; code < total; ++code) {
      int m = a.op(oi).table[code];
      std::int64_t c = code;
      for (int q = 0; q < r; ++q) {
        m = std::max(m, static_cast<int>(c % n));
        c /= n;
      }
      checks[m].emplace_back(oi, code);
    }
  }
  std::function<void(int)> go = [&](int k) {
    if (k == n) {
      out.push_back(p);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      p[k] = v;
      bool ok = true;
      for (auto [oi, code] : checks[k]) {
        int r = a.op(oi).arity;
        std::vector<int> img(r);
        std::int64_t c = code;
        for (int q = r - 1; q >= 0; --q) {
          img[q] = p[c % n];
          c /= n;
        }
        if (a.apply(oi, img) != p[a.op(oi).table[code]]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[v] = 1;
        go(k + 1);
        used[v] = 0;
      }
      p[k] = -1;
    }
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

Perm perm_compose(const Perm& outer, const Perm& inner) {
  Perm r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer.at(inner[i]);
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r.at(p[i]) = static_cast<int>(i);
  return r;
}

Perm perm_identity(int n) {
  Perm r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

std::vector<int> decode_tuple(int n, int k, std::int64_t code) {
  std::vector<int> t(k);
  for (int q = k - 1; q >= 0; --q) {
    t[q] = static_cast<int>(code % n);
    code /= n;
  }
  return t;
}

std::int64_t encode_tuple(int n, std::span<const int> tuple) {
  std::int64_t c = 0;
  for (int x : tuple) c = c * n + x;
  return c;
}

FiniteAlgebra direct_power(const FiniteAlgebra& a, int k) {
  require(k >= 1, Errc::OutOfRange, "power exponent must be positive");
  int n = a.size();
  std::int64_t N = ipow(n, k);
  require(N <= (1 << 16), Errc::SizeBudgetExceeded, "direct power too large");
  std::vector<Operation> ops;
  for (const auto& o : a.ops()) {
    Operation p{o.name, o.arity, {}};
    std::int64_t total = ipow(N, o.arity);
    require(total <= (1 << 24), Errc::SizeBudgetExceeded, "direct power table too large");
    p.table.resize(static_cast<std::size_t>(total));
    std::vector<std::vector<int>> args(o.arity);
    std::vector<int> vals(o.arity), res(k);
    std::size_t oi = static_cast<std::size_t>(&o - a.ops().data());
    for (std::int64_t code = 0; code < total; ++code) {
      std::int64_t c = code;
      for (int q = o.arity - 1; q >= 0; --q) {
        args[q] = decode_tuple(n, k, c % N);
        c /= N;
      }
      for (int j = 0; j < k; ++j) {
        for (int q = 0; q < o.arity; ++q) vals[q] = args[q][j];
        res[j] = a.apply(oi, vals);
      }
      p.table[code] = static_cast<int>(encode_tuple(n, res));
    }
    ops.push_back(std::move(p));
  }
  return FiniteAlgebra(static_cast<int>(N), std::move(ops));
}

namespace {

Operation table_op(const std::string& name, int n, int arity,
                   const std::function<int(const std::vector<int>&)>& f) {
  Operation o{name, arity, {}};
  std::int64_t total = ipow(n, arity);
  for (std::int64_t code = 0; code < total; ++code) o.table.push_back(f(decode_tuple(n, arity, code)));
  return o;
}

int gf4_mul(int x, int y) {
  if (x == 0 || y == 0) return 0;
  static const int lg[4] = {0, 0, 1, 2};
  static const int ex[3] = {1, 2, 3};
  return ex[(lg[x] + lg[y]) % 3];
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"gf2-ring", "gf2-idempotent-reduct", "gf4-idempotent-reduct", "cyclic-group <k>",
          "zero-ring <k>"};
}

FiniteAlgebra builtin_algebra(const std::string& name) {
  auto param = [&](const std::string& stem) -> std::optional<int> {
    if (name.rfind(stem, 0) != 0 || name.size() <= stem.size() + 1) return std::nullopt;
    char sep = name[stem.size()];
    if (sep != ' ' && sep != ':' && sep != '-') return std::nullopt;
    try {
      return std::stoi(name.substr(stem.size() + 1));
    } catch (...) {
      fail(Errc::ParseError, "bad parameter in builtin name '" + name + "'");
    }
  };
  if (name == "gf2-ring") {
    return FiniteAlgebra(2, {table_op("add", 2, 2, [](auto& v) { return v[0] ^ v[1]; }),
                             table_op("neg", 2, 1, [](auto& v) { return v[0]; }),
                             table_op("mul", 2, 2, [](auto& v) { return v[0] & v[1]; }),
                             table_op("zero", 2, 0, [](auto&) { return 0; })});
  }
  if (name == "gf2-idempotent-reduct") {
    return FiniteAlgebra(2, {table_op("m", 2, 3, [](auto& v) { return v[0] ^ v[1] ^ v[2]; }),
                             table_op("mul", 2, 2, [](auto& v) { return v[0] & v[1]; })});
  }
  if (name == "gf4-idempotent-reduct") {
    return FiniteAlgebra(4, {table_op("m", 4, 3, [](auto& v) { return v[0] ^ v[1] ^ v[2]; }),
                             table_op("mul", 4, 2, [](auto& v) { return gf4_mul(v[0], v[1]); })});
  }
  if (auto k = param("cyclic-group")) {
    int n = *k;
    require(n >= 1, Errc::DegenerateCarrier, "cyclic group order must be positive");
    return FiniteAlgebra(n, {table_op("mul", n, 2, [n](auto& v) { return (v[0] + v[1]) % n; }),
                             table_op("inv", n, 1, [n](auto& v) { return (n - v[0]) % n; }),
                             table_op("e", n, 0, [](auto&) { return 0; })});
  }
  if (auto k = param("zero-ring")) {
    int n = *k;
    require(n >= 1, Errc::DegenerateCarrier, "ring order must be positive");
    return FiniteAlgebra(n, {table_op("add", n, 2, [n](auto& v) { return (v[0] + v[1]) % n; }),
                             table_op("neg", n, 1, [n](auto& v) { return (n - v[0]) % n; }),
                             table_op("mul", n, 2, [](auto&) { return 0; }),
                             table_op("zero", n, 0, [](auto&) { return 0; })});
  }
  fail(Errc::InvalidArgument, "unknown builtin algebra '" + name + "'");
}

}  // namespace boolpow
