// Acceptance suite: one PASS/FAIL line per criterion. A criterion passes
// when its checks report zero failures inside its time limit.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "boolpow/automorphism.hpp"
#include "boolpow/factorization.hpp"
#include "boolpow/fraisse.hpp"
#include "boolpow/free_algebra.hpp"
#include "boolpow/io.hpp"
#include "boolpow/sampling.hpp"
#include "support/oracles.hpp"
#include "support/probes.hpp"

using namespace boolpow;

namespace {

// Time limits in seconds.
constexpr double kLimitAlgebra = 1.0;
constexpr double kLimitCongruence = 30.0;
constexpr double kLimitAmalgamation = 60.0;
constexpr double kLimitHomogeneity = 60.0;
constexpr double kLimitSemidirect = 60.0;
constexpr double kLimitIsomorphisms = 30.0;
constexpr double kLimitFreeAlgebra = 120.0;
constexpr double kLimitOrbits = 60.0;
constexpr double kLimitTwoEnds = 10.0;
constexpr double kLimitFactorization = 120.0;
constexpr double kLimitKernel = 60.0;
constexpr double kLimitStabilizer = 60.0;

const Perm kFrob{0, 1, 3, 2};

struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

std::vector<std::vector<int>> all_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= n;
  for (std::int64_t c = 0; c < total; ++c) out.push_back(decode_tuple(n, k, c));
  return out;
}

bool is_member(const TailClopen& c, const Point& p) {
  return oracle::raw_member(c.context(), c.threshold(), c.exceptional(), c.tail_words(), p);
}

// ---- 1 -------------------------------------------------------------------

// A^2 with coordinatewise tables, pairs encoded as x * n + y.
FiniteAlgebra square(const FiniteAlgebra& a) {
  int n = a.size();
  std::vector<Operation> ops;
  for (const auto& op : a.ops()) {
    Operation sq{op.name, op.arity, {}};
    for (const auto& args : all_tuples(n * n, op.arity)) {
      std::vector<int> xs, ys;
      for (int v : args) xs.push_back(v / n), ys.push_back(v % n);
      sq.table.push_back(op.table[encode_tuple(n, xs)] * n + op.table[encode_tuple(n, ys)]);
    }
    ops.push_back(std::move(sq));
  }
  return FiniteAlgebra(n * n, std::move(ops));
}

void algebra_hypotheses(Tally& t) {
  auto a = builtin_algebra("gf2-idempotent-reduct");
  t.expect(is_simple(a), "is_simple");
  t.expect(!is_abelian(a), "is_abelian");
  t.expect(idempotents(a) == std::vector<int>{0, 1}, "idempotents");
  t.expect(automorphisms(a).size() == 1, "|Aut|");
  std::set<std::vector<int>> proper;
  for (const auto& s : subalgebras(a))
    if (static_cast<int>(s.size()) < a.size()) proper.insert(s);
  t.expect(proper == std::set<std::vector<int>>{{0}, {1}}, "proper subalgebras");

  // simple: only the two trivial partitions are compatible
  int compatible = 0;
  for (const auto& p : oracle::all_partitions(a.size())) compatible += oracle::compatible(a, p);
  t.expect(compatible == 2, "brute-force simplicity");
  // abelian iff the diagonal is a block of the congruence of A^2 it generates
  auto sq = square(a);
  std::vector<std::pair<int, int>> diag;
  for (int x = 1; x < a.size(); ++x) diag.emplace_back(0, x * a.size() + x);
  auto cong = oracle::least_congruence(sq, diag);
  bool diagonal_block = true;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) diagonal_block &= (cong[0] == cong[x * a.size() + y]) == (x == y);
  t.expect(!diagonal_block, "brute-force abelianness");
  auto subs = oracle::closed_subsets(a);
  t.expect(subs.size() == 3 && subs.count({0}) && subs.count({1}), "brute-force subalgebras");
  t.expect(oracle::all_automorphisms(a).size() == 1, "brute-force automorphisms");
}

// ---- 2 -------------------------------------------------------------------

void congruence_correspondence(Tally& t) {
  auto a = builtin_algebra("gf2-idempotent-reduct");
  for (auto [pts, filters] : {std::pair{PointContext::standard(1), std::vector<int>{0}},
                              std::pair{PointContext::standard(2), std::vector<int>{0, 1}}}) {
    auto ctx = PowerContext::make(a, pts, filters);
    auto elems = enumerate_elements(ctx, 2);
    auto sub = generated_subalgebra(elems);
    t.expect(sub.tuples.size() == elems.size(), "depth-2 elements form a subalgebra");
    std::vector<PowerElement> members;
    for (std::size_t i = 0; i < sub.tuples.size(); ++i) members.push_back(sub.element(ctx, i));
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        auto brute = oracle::least_congruence(sub.algebra, {{static_cast<int>(x), static_cast<int>(y)}});
        auto theta = principal_congruence(members[x], members[y]);
        bool same = true;
        for (std::size_t u = 0; u < members.size(); ++u)
          for (std::size_t v = 0; v < members.size(); ++v)
            same &= (brute[u] == brute[v]) == related(theta, members[u], members[v]);
        t.expect(same, "principal congruence of pair " + std::to_string(x) + "," + std::to_string(y));
      }
  }
}

// ---- 3 -------------------------------------------------------------------

void amalgamation(Tally& t) {
  auto a = builtin_algebra("gf2-idempotent-reduct");
  for (int u = 1; u <= 3; ++u) {
    std::vector<PowerEmbedding> embs;
    for (int v = u; v <= 3; ++v)
      for (auto& e : enumerate_embeddings(a, u, v)) embs.push_back(std::move(e));
    auto ts = all_tuples(a.size(), u);
    for (const auto& f : embs)
      for (const auto& g : embs) {
        auto r = amalgamate(a, f, g);
        bool ok = r.phi2.u() == f.v() && r.psi2.u() == g.v() && r.phi2.v() == r.m && r.psi2.v() == r.m;
        for (const auto& x : ts) ok &= r.phi2.apply(f.apply(x)) == r.psi2.apply(g.apply(x));
        t.expect(ok, "amalgamation square at u = " + std::to_string(u));
      }
  }
}

// ---- 4 -------------------------------------------------------------------

// A random BPEmbedding A^u -> D reading coordinates on the cells of one level.
BPEmbedding random_bp(const PowerContext& ctx, int u, int level, Rng& rng) {
  auto auts = automorphisms(ctx.alg());
  auto es = idempotents(ctx.alg());
  auto cells = level_embedding(ctx, level);
  while (true) {
    std::vector<BPEmbedding::Piece> pieces;
    for (const auto& pc : cells.pieces()) {
      Coord c = pc.coord;
      if (c.is_aut) {
        if (uniform_int(rng, 0, 3) > 0)
          c = Coord::of(auts[uniform_int(rng, 0, static_cast<int>(auts.size()) - 1)], uniform_int(rng, 0, u - 1));
        else
          c = Coord::constant(es[uniform_int(rng, 0, static_cast<int>(es.size()) - 1)]);
      }
      pieces.push_back({pc.region, c});
    }
    try {
      return BPEmbedding::make(ctx, u, pieces);
    } catch (const Error& e) {
      if (e.code() != Errc::NotEmbedding) throw;
    }
  }
}

void weak_homogeneity(Tally& t) {
  auto a = builtin_algebra("gf2-idempotent-reduct");
  auto ctx = PowerContext::make(a, PointContext::standard(2), {0, 1});
  Rng rng(404);
  for (int u = 1; u <= 3; ++u)
    for (int v = u; v <= 3; ++v)
      for (const auto& phi : enumerate_embeddings(a, u, v))
        for (int r = 0; r < 20; ++r) {
          int level = u == 3 ? 3 + r % 2 : 2 + r % 3;
          auto psi = random_bp(ctx, u, level, rng);
          auto ext = extend_weak_homogeneity(phi, psi);
          bool ok = ext.u() == v;
          for (const auto& x : all_tuples(a.size(), u)) ok &= ext.apply(phi.apply(x)) == psi.apply(x);
          // the extension is injective on all of A^v
          std::set<PowerElement> image;
          for (const auto& y : all_tuples(a.size(), v)) image.insert(ext.apply(y));
          ok &= image.size() == all_tuples(a.size(), v).size();
          t.expect(ok, "extension along a " + std::to_string(u) + "->" + std::to_string(v) + " embedding");
        }
}

// ---- 5 -------------------------------------------------------------------

AutLabeling random_kernel(const PowerContext& ctx, Rng& rng, int factors) {
  auto auts = automorphisms(ctx.alg());
  auto acc = PowerAutomorphism::identity(ctx);
  for (int r = 0; r < factors; ++r) {
    auto c = random_tail_clopen(ctx.points, rng);
    const Perm& al = auts[uniform_int(rng, 0, static_cast<int>(auts.size()) - 1)];
    bool legal = true;
    for (int i : c.raw_type().in) legal &= al[ctx.filters[i]] == ctx.filters[i];
    if (legal) acc = compose(acc, characteristic(ctx, c, al));
  }
  return acc.labeling();
}

PowerAutomorphism random_automorphism(const PowerContext& ctx, Rng& rng) {
  return compose(PowerAutomorphism::from_labeling(ctx, random_kernel(ctx, rng, 3)),
                 PowerAutomorphism::from_homeo(ctx, random_homeo(ctx.points, rng, 2)));
}

void semidirect(Tally& t) {
  auto ctx = PowerContext::make(builtin_algebra("gf4-idempotent-reduct"), PointContext::standard(2), {0, 1});
  Rng rng(505);
  auto id = PowerAutomorphism::identity(ctx);
  for (int r = 0; r < 100; ++r) {
    auto x = random_automorphism(ctx, rng), y = random_automorphism(ctx, rng), z = random_automorphism(ctx, rng);
    t.expect(compose(compose(x, y), z) == compose(x, compose(y, z)), "associativity");
    t.expect(compose(x, x.inverse()) == id && compose(x.inverse(), x) == id, "inverse law");
    t.expect(compose(x, id) == x && compose(id, x) == x, "identity law");
    t.expect(compose(x, y).homeo() == compose(x.homeo(), y.homeo()), "h is a homomorphism");
    auto psi = random_homeo(ctx.points, rng, 2);
    t.expect(PowerAutomorphism::from_homeo(ctx, psi).homeo() == psi, "section identity");
    auto k1 = random_kernel(ctx, rng, 2), k2 = random_kernel(ctx, rng, 2);
    auto kk = compose(PowerAutomorphism::from_labeling(ctx, k1), PowerAutomorphism::from_labeling(ctx, k2));
    t.expect(kk.in_kernel() && kk.labeling() == AutLabeling::combine(k1, k2, [](const Perm& p, const Perm& q) {
               return perm_compose(p, q);
             }),
             "p is a homomorphism on the kernel");
  }

  // p is injective: kernel labellings constant on depth-3 cells act differently
  // on the element that is 2 on every free depth-4 cell
  std::vector<std::string> words;
  oracle::all_words(3, words);
  std::vector<std::string> cells3;
  for (const auto& w : words)
    if (w.size() == 3) cells3.push_back(w);
  PowerElement::Cells probe_cells;
  std::vector<std::string> words4;
  oracle::all_words(4, words4);
  for (const auto& w : words4) {
    if (w.size() != 4) continue;
    int label = 2;
    for (int i = 0; i < ctx.size(); ++i)
      if (ctx.points.point(i).has_prefix(w)) label = ctx.filters[i];
    probe_cells[w] = label;
  }
  auto probe = PowerElement::make(ctx, probe_cells);
  std::set<PowerElement> images;
  for (int mask = 0; mask < (1 << cells3.size()); ++mask) {
    auto k = PowerAutomorphism::identity(ctx);
    for (std::size_t c = 0; c < cells3.size(); ++c)
      if (mask >> c & 1)
        k = compose(k, characteristic(ctx, TailClopen::from_clopen(ctx.points, Clopen::from_words({cells3[c]})), kFrob));
    images.insert(k.apply(probe));
  }
  t.expect(images.size() == (std::size_t{1} << cells3.size()), "p is injective on depth-3 labellings");

  // apply preserves every operation on all depth-2 argument lists
  auto elems = enumerate_elements(ctx, 2);
  for (int r = 0; r < 4; ++r) {
    auto phi = random_automorphism(ctx, rng);
    std::vector<PowerElement> imgs;
    for (const auto& f : elems) imgs.push_back(phi.apply(f));
    for (std::size_t oi = 0; oi < ctx.alg().ops().size(); ++oi) {
      int ar = ctx.alg().op(oi).arity;
      bool ok = true;
      for (const auto& pick : all_tuples(static_cast<int>(elems.size()), ar)) {
        std::vector<PowerElement> args, mapped;
        for (int q : pick) args.push_back(elems[q]), mapped.push_back(imgs[q]);
        ok &= phi.apply(apply_operation(ctx, oi, args)) == apply_operation(ctx, oi, mapped);
      }
      t.expect(ok, "operation " + ctx.alg().op(oi).name + " preserved");
    }
    t.expect(std::set<PowerElement>(imgs.begin(), imgs.end()).size() == elems.size(), "apply is injective");
  }
}

// ---- 6 -------------------------------------------------------------------

// Exhaustive homomorphism check of m over all argument lists from elems.
bool exhaustive_hom(const std::function<PowerElement(const PowerElement&)>& m, const PowerContext& dom,
                    const PowerContext& cod, const std::vector<PowerElement>& elems) {
  std::vector<PowerElement> imgs;
  for (const auto& f : elems) imgs.push_back(m(f));
  for (std::size_t oi = 0; oi < dom.alg().ops().size(); ++oi)
    for (const auto& pick : all_tuples(static_cast<int>(elems.size()), dom.alg().op(oi).arity)) {
      std::vector<PowerElement> args, mapped;
      for (int q : pick) args.push_back(elems[q]), mapped.push_back(imgs[q]);
      if (!(m(apply_operation(dom, oi, args)) == apply_operation(cod, oi, mapped))) return false;
    }
  return true;
}

void isomorphisms(Tally& t) {
  auto ring = builtin_algebra("gf2-ring");
  auto d = PowerContext::make(ring, PointContext::standard(1), {0});
  auto glued = glued_context(d, d);
  auto side = enumerate_elements(d, 2);
  auto all3 = enumerate_elements(glued, 3);
  std::set<PowerElement> images;
  for (const auto& f1 : side)
    for (const auto& f2 : side) images.insert(product_iso(f1, f2));
  t.expect(images.size() == side.size() * side.size(), "product_iso injective");
  t.expect(images == std::set<PowerElement>(all3.begin(), all3.end()), "product_iso onto depth 3");
  bool hom = true;
  for (std::size_t oi = 0; oi < ring.ops().size(); ++oi)
    for (const auto& pick : all_tuples(static_cast<int>(side.size()), 2 * ring.op(oi).arity)) {
      std::vector<PowerElement> a1, a2, glued_args;
      int ar = ring.op(oi).arity;
      for (int q = 0; q < ar; ++q) {
        a1.push_back(side[pick[q]]);
        a2.push_back(side[pick[ar + q]]);
        glued_args.push_back(product_iso(a1.back(), a2.back()));
      }
      hom &= product_iso(apply_operation(d, oi, a1), apply_operation(d, oi, a2)) ==
             apply_operation(glued, oi, glued_args);
    }
  t.expect(hom, "product_iso homomorphism");

  auto two = PowerContext::make(ring, PointContext::standard(2), {0, 0});
  auto red = reduce_idempotents(two);
  t.expect(red.reduced.size() == 1, "filters (0,0) reduce to one point");
  auto elems = enumerate_elements(two, 3);
  auto inv = red.witness.inverse();
  std::set<PowerElement> reds;
  bool back = true;
  for (const auto& f : elems) {
    auto g = red.witness.apply(f);
    reds.insert(g);
    back &= inv.apply(g) == f;
  }
  t.expect(reds.size() == elems.size() && back, "reduction witness bijective on depth 3");
  t.expect(exhaustive_hom([&](const PowerElement& f) { return red.witness.apply(f); }, two, red.reduced, elems),
           "reduction witness homomorphism");
  Rng rng(606);
  bool onto = true;
  for (int r = 0; r < 50; ++r) {
    auto g = random_element(red.reduced, rng, 4);
    onto &= red.witness.apply(inv.apply(g)) == g;
  }
  t.expect(onto, "reduction witness onto");
}

// ---- 7 -------------------------------------------------------------------

// Naive fixed point of the projections under every operation.
std::size_t naive_clone_size(const FiniteAlgebra& a, int k) {
  auto pts = all_tuples(a.size(), k);
  std::set<std::vector<int>> cur;
  for (int i = 0; i < k; ++i) {
    std::vector<int> col;
    for (const auto& p : pts) col.push_back(p[i]);
    cur.insert(col);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> list(cur.begin(), cur.end());
    for (std::size_t oi = 0; oi < a.ops().size(); ++oi)
      for (const auto& pick : all_tuples(static_cast<int>(list.size()), a.op(oi).arity)) {
        std::vector<int> col(pts.size());
        for (std::size_t x = 0; x < pts.size(); ++x) {
          std::vector<int> args;
          for (int q : pick) args.push_back(list[q][x]);
          col[x] = a.apply(oi, args);
        }
        grew |= cur.insert(col).second;
      }
  }
  return cur.size();
}

void free_algebra(Tally& t) {
  for (const char* name : {"gf2-idempotent-reduct", "gf2-ring"}) {
    auto a = builtin_algebra(name);
    auto es = idempotents(a);
    for (int k = 1; k <= 3; ++k) {
      std::string tag = std::string(name) + " k=" + std::to_string(k);
      auto f = clone_generate(a, k);
      t.expect(f.size() == naive_clone_size(a, k), "free algebra size " + tag);
      t.expect(verify_Fk_decomposition(f).verified(), "decomposition " + tag);
      auto s = compute_Sk(a, k);
      std::set<std::vector<int>> seen;
      for (std::size_t i = 0; i < f.size(); ++i) {
        std::vector<int> pat;
        bool idem = true;
        for (const auto& x : s) {
          pat.push_back(f.elements[i].at(x, a.size()));
          idem &= std::find(es.begin(), es.end(), pat.back()) != es.end();
        }
        if (!idem || !seen.insert(pat).second) continue;
        t.expect(theta_class_is_power_truncation(f, i).verified, "truncation " + tag);
      }
      t.expect(!seen.empty(), "some theta class is a subalgebra " + tag);
      if (std::string(name) == "gf2-ring") {
        auto sp = loop_ring_split(f);
        t.expect(sp.trivial_intersection && sp.product_is_everything, "split " + tag);
        t.expect(sp.normal.size() * sp.complement.size() == f.size(), "split orders " + tag);
      }
    }
  }
}

// ---- 8 -------------------------------------------------------------------

void orbits(Tally& t) {
  Rng rng(808);
  for (int r = 0; r < 200; ++r) {
    auto ctx = PointContext::standard(1 + r % 2);
    auto c = random_tail_clopen(ctx, rng);
    auto d = random_same_type(c, rng);
    auto h = orbit_witness(c, d);
    t.expect(h.apply(c) == d, "exact image");
    t.expect(h.fixes_points() && h.extends_to_X(), "point-fixing homeomorphism");
    auto inv = h.inverse();
    bool pointwise = true;
    for (const auto& p : oracle::probe_points(ctx, 4, 6)) {
      auto q = h.apply(p);
      pointwise &= is_member(d, q) == is_member(c, p);
      pointwise &= inv.apply(q).prefix(48) == p.prefix(48);
    }
    t.expect(pointwise, "pointwise cross-check at depth 48");
  }
  for (int r = 0; r < 50; ++r) {
    auto ctx = PointContext::standard(1 + r % 2);
    auto c = random_tail_clopen(ctx, rng), d = random_tail_clopen(ctx, rng);
    if (c.empty() || d.empty() || c.is_whole() || d.is_whole() || c.type() == d.type()) continue;
    bool rejected = false;
    try {
      orbit_witness(c, d);
    } catch (const Error& e) {
      rejected = e.code() == Errc::TypeMismatch;
    }
    t.expect(rejected, "mismatched types rejected");
  }
}

// ---- 9 -------------------------------------------------------------------

std::string two_ends_report(int depth) {
  auto h = two_ends_exchange();
  auto ev = two_ends_cluster_evidence(depth);
  io::Json levels = io::Json::array();
  for (const auto& l : ev.levels)
    levels.push_back({l.depth, l.cell_near_first, l.cell_near_second, l.meets_first, l.meets_second});
  return io::Json{{"homeo", io::to_json(h)}, {"extends", h.extends_to_X()}, {"levels", levels}}.dump();
}

void two_ends(Tally& t) {
  for (int depth : {6, 8}) {
    auto h = two_ends_exchange();
    t.expect(!h.extends_to_X(), "no extension to 2^omega");
    auto ev = two_ends_cluster_evidence(depth);
    t.expect(ev.verified() && static_cast<int>(ev.levels.size()) == depth, "cluster evidence");
    bool both = true;
    for (const auto& l : ev.levels) both &= l.meets_first && l.meets_second;
    t.expect(both, "every level meets both points");
    t.expect(two_ends_report(depth) == two_ends_report(depth), "deterministic output");
  }
}

// ---- 10 ------------------------------------------------------------------

void factorization(Tally& t) {
  Rng rng(1010);
  for (int r = 0; r < 100; ++r) {
    auto ctx = PointContext::standard(1 + r % 2);
    auto part = good_partition(ctx);
    auto sigma = random_homeo(ctx, rng);
    auto rep = pigeonhole_factor(sigma, part);
    const auto& fs = rep.factors;
    t.expect(rep.verified(), "report verified");
    t.expect(compose(fs.sigma3, compose(fs.sigma2, fs.sigma1)) == sigma, "exact product");
    const auto& bi = part.blocks[rep.i];
    TailClopen c(ctx);
    for (int k = 0; k <= ctx.size(); ++k)
      if (k != rep.i) c = c | part.blocks[k];
    bool ok = true;
    for (const auto& p : oracle::probe_points(ctx, 5, 8)) {
      if (is_member(bi, p)) ok &= fs.sigma1.apply(p) == p && fs.sigma3.apply(p) == p;
      if (is_member(c, p)) ok &= fs.sigma2.apply(p) == p;
      ok &= fs.sigma3.apply(fs.sigma2.apply(fs.sigma1.apply(p))) == sigma.apply(p);
    }
    t.expect(ok, "pointwise stabilizers on probe points");
  }
}

// ---- 11 ------------------------------------------------------------------

void kernel(Tally& t) {
  auto gf4 = builtin_algebra("gf4-idempotent-reduct");
  auto auts = automorphisms(gf4);
  Rng rng(1111);
  for (auto [n, filters] : {std::pair{1, std::vector<int>{0}}, std::pair{2, std::vector<int>{0, 1}}}) {
    auto ctx = PowerContext::make(gf4, PointContext::standard(n), filters);
    for (int r = 0; r < 20; ++r) {
      auto k = random_kernel(ctx, rng, 4);
      auto factors = decompose_kernel(ctx, k);
      t.expect(factors.size() <= auts.size(), "factor count");
      auto prod = PowerAutomorphism::identity(ctx);
      for (const auto& f : factors) prod = compose(prod, f);
      t.expect(prod == PowerAutomorphism::from_labeling(ctx, k), "factors recompose");
      bool commute = true;
      for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
          commute &= compose(factors[i], factors[j]) == compose(factors[j], factors[i]);
      t.expect(commute, "factors commute");
    }
  }

  // fibers over the stabilizer of e_1 = 0, the identity fiber included
  auto ctx = PowerContext::make(gf4, PointContext::standard(1), {0});
  auto accumulates = [&](const PowerAutomorphism& phi) {
    TailClopen rest = TailClopen::whole(ctx.points);
    std::vector<TailClopen> frob_fiber;
    for (const auto& [p, set] : label_fibers(phi.labeling())) {
      rest = rest - set;
      if (p == kFrob) frob_fiber.push_back(set);
    }
    if (frob_fiber.size() != 1) return false;
    auto at_point = [](const TailClopen& s) {
      if (s.empty()) return false;
      auto in = s.raw_type().in;
      return std::find(in.begin(), in.end(), 0) != in.end();
    };
    return at_point(rest) && at_point(frob_fiber[0]);
  };
  struct Case {
    TailClopen c;
    const char* name;
  };
  std::vector<Case> cases{
      {TailClopen::from_families(ctx.points, {Family::single("1")}), "compact support"},
      {~TailClopen::from_families(ctx.points, {Family::single("1")}), "compact complement"},
      {TailClopen::from_families(ctx.points, {Family::prog(0, 1, 2)}), "both accumulate"},
  };
  for (int r = 0; r < 20; ++r) cases.push_back({random_tail_clopen(ctx.points, rng, 3, 4), "random support"});
  for (const auto& cs : cases)
    for (const Perm& alpha : {kFrob, perm_identity(4)}) {
      auto pr = kernel_factor_pair(ctx, cs.c, alpha);
      t.expect(compose(pr.sigma, pr.tau.inverse()) == characteristic(ctx, cs.c, alpha),
               std::string("product for ") + cs.name);
      t.expect(accumulates(pr.sigma) && accumulates(pr.tau), std::string("fiber types for ") + cs.name);
    }
}

// ---- 12 ------------------------------------------------------------------

void stabilizer(Tally& t) {
  auto ctx = PowerContext::make(builtin_algebra("gf4-idempotent-reduct"), PointContext::standard(2), {0, 1});
  // m = n + 2 blocks; x_1 in "0", x_2 in "10"
  std::vector<Clopen> blocks{Clopen::from_words({"0"}), Clopen::from_words({"10"}), Clopen::from_words({"110"}),
                             Clopen::from_words({"111"})};
  std::vector<TailClopen> tblocks;
  for (const auto& b : blocks) tblocks.push_back(TailClopen::from_clopen(ctx.points, b));
  std::vector<std::vector<int>> tuples;
  auto tests = block_test_elements(ctx, blocks, &tuples);
  auto depth2 = enumerate_elements(ctx, 2);
  Rng rng(1212);

  for (int r = 0; r < 50; ++r) {
    auto gamma = PowerAutomorphism::from_homeo(ctx, random_block_homeo(tblocks, rng));
    auto k = random_kernel(ctx, rng, 3);
    auto outer = tblocks[2] | tblocks[3];
    auto kappa = PowerAutomorphism::from_labeling(
        ctx, AutLabeling::combine(k, outer.map(), [](const Perm& p, const bool& in) {
          return in ? perm_identity(static_cast<int>(p.size())) : p;
        }));
    auto phi = compose(kappa, gamma);
    bool fixes = true;
    for (const auto& f : tests) fixes &= phi.apply(f) == f;
    t.expect(fixes, "constructed automorphism fixes every test element");
    auto rep = verify_stabilizer_containment(phi, blocks);
    t.expect(rep.fixes_all && rep.kappa && rep.gamma, "decomposition returned");
    if (!rep.kappa || !rep.gamma) continue;
    t.expect(compose(*rep.kappa, *rep.gamma) == phi, "decomposition recomposes");
    t.expect(rep.gamma_preserves_blocks && rep.kappa_restricted, "factor memberships");
    bool same = true;
    for (const auto& f : depth2) same &= rep.kappa->apply(rep.gamma->apply(f)) == phi.apply(f);
    t.expect(same, "recomposition on depth-2 elements");
  }

  for (int r = 0; r < 50; ++r) {
    PowerAutomorphism phi;
    if (r % 2 == 0) {
      // Frobenius on a cylinder inside one of the free blocks
      std::string w = (r % 4 == 0 ? "110" : "111");
      for (int q = uniform_int(rng, 0, 3); q > 0; --q) w += coin(rng) ? '1' : '0';
      phi = characteristic(ctx, TailClopen::from_clopen(ctx.points, Clopen::from_words({w})), kFrob);
    } else {
      // exchange cylinders across the two free blocks
      std::string w1 = "110", w2 = "111";
      for (int q = uniform_int(rng, 0, 3); q > 0; --q) w1 += coin(rng) ? '1' : '0';
      for (int q = uniform_int(rng, 0, 3); q > 0; --q) w2 += coin(rng) ? '1' : '0';
      phi = PowerAutomorphism::from_homeo(ctx, swap_cylinders(ctx.points, w1, w2));
    }
    phi = compose(phi, PowerAutomorphism::from_homeo(ctx, random_block_homeo(tblocks, rng)));
    auto rep = verify_stabilizer_containment(phi, blocks);
    t.expect(!rep.fixes_all && !rep.violated.empty(), "violation reported");
    bool witnessed = false;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if (tuples[i] == rep.violated) witnessed = !(phi.apply(tests[i]) == tests[i]);
    t.expect(witnessed, "violated test element is moved");
  }
}

// -------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  double limit;
  void (*run)(Tally&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "algebra hypotheses", kLimitAlgebra, algebra_hypotheses},
      {2, "principal congruences vs brute force", kLimitCongruence, congruence_correspondence},
      {3, "amalgamation", kLimitAmalgamation, amalgamation},
      {4, "weak homogeneity", kLimitHomogeneity, weak_homogeneity},
      {5, "semidirect structure", kLimitSemidirect, semidirect},
      {6, "isomorphisms", kLimitIsomorphisms, isomorphisms},
      {7, "free algebra", kLimitFreeAlgebra, free_algebra},
      {8, "types and orbits", kLimitOrbits, orbits},
      {9, "two-ended exchange", kLimitTwoEnds, two_ends},
      {10, "three-factor decomposition", kLimitFactorization, factorization},
      {11, "kernel decomposition", kLimitKernel, kernel},
      {12, "stabilizer containment", kLimitStabilizer, stabilizer},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally t;
    std::string error;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const Error& e) {
      error = std::string(errc_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = error.empty() && t.failures == 0 && t.checks > 0 && secs < c.limit;
    failed += !pass;
    std::printf("criterion %2d %s  %-38s checks=%zu failures=%zu time=%.2fs limit=%.0fs", c.id, pass ? "PASS" : "FAIL",
                c.name, t.checks, t.failures, secs, c.limit);
    if (!error.empty()) std::printf("  error: %s", error.c_str());
    if (t.failures) std::printf("  first failure: %s", t.first.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
