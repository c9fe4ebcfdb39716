#include "boolpow/automorphism.hpp"

#include <algorithm>

namespace boolpow {

namespace {

void require_automorphism(const FiniteAlgebra& a, const Perm& p) {
  require(static_cast<int>(p.size()) == a.size() && is_automorphism(a, p), Errc::NotAutomorphism,
          "label is not an automorphism of the algebra");
}

std::vector<Perm> stabilizer(const FiniteAlgebra& a, int e) {
  std::vector<Perm> out{perm_identity(a.size())};
  for (const auto& g : automorphisms(a))
    if (g[e] == e && g != out.front()) out.push_back(g);
  return out;
}

// Cell index of the k-th tail cell of branch i inside c.
std::int64_t tail_in_cell(const TailClopen& c, int i, std::int64_t k) {
  const std::string w = c.tail_words()[i];
  std::vector<std::int64_t> pos;
  for (std::size_t t = 0; t < w.size(); ++t)
    if (w[t] == '1') pos.push_back(static_cast<std::int64_t>(t));
  auto m = static_cast<std::int64_t>(pos.size());
  return c.threshold() + 1 + pos[k % m] + static_cast<std::int64_t>(w.size()) * (k / m);
}

// The tail cells of branch 0 inside r, dealt out in turn to labels[0],
// labels[1], ...; the compact part of r gets `rest`.
std::vector<std::pair<Family, Perm>> deal_tail(const TailClopen& r, const std::vector<Perm>& labels,
                                               const Perm& rest) {
  std::vector<std::pair<Family, Perm>> out;
  for (const auto& w : r.exceptional()) out.emplace_back(Family::single(w), rest);
  const std::string w = r.tail_words()[0];
  auto m = static_cast<std::int64_t>(std::count(w.begin(), w.end(), '1'));
  auto s = static_cast<std::int64_t>(labels.size());
  std::int64_t M = lcm64(m, s);
  for (std::int64_t q = 0; q < M; ++q) {
    std::int64_t start = tail_in_cell(r, 0, q);
    out.emplace_back(Family::prog(0, start, tail_in_cell(r, 0, q + M) - start), labels[q % s]);
  }
  return out;
}

}  // namespace

PowerAutomorphism PowerAutomorphism::identity(const PowerContext& ctx) {
  PowerAutomorphism a;
  a.map_ = PowerMap::identity(ctx);
  return a;
}

PowerAutomorphism PowerAutomorphism::from_homeo(const PowerContext& ctx, const EPHomeo& psi) {
  require(psi.domain() == ctx.points && psi.codomain() == ctx.points, Errc::ContextMismatch,
          "homeomorphism of a different space");
  require(psi.extends_to_X(), Errc::NotExtendable, "homeomorphism has no extension to 2^omega");
  require(psi.fixes_points(), Errc::PointNotFixed, "homeomorphism moves a distinguished point");
  PowerAutomorphism a;
  a.map_ = PowerMap::make(ctx, ctx, psi, AutLabeling(ctx.points, perm_identity(ctx.alg().size())));
  return a;
}

PowerAutomorphism PowerAutomorphism::from_labeling(const PowerContext& ctx, const AutLabeling& k) {
  require(k.context() == ctx.points, Errc::ContextMismatch, "labelling of a different space");
  for (const auto& l : k.labels()) require_automorphism(ctx.alg(), l);
  for (int i = 0; i < ctx.size(); ++i)
    for (const auto& l : k.tails()[i])
      require(l[ctx.filters[i]] == ctx.filters[i], Errc::TailLabelViolation,
              "a label near point " + std::to_string(i) + " moves its filter");
  PowerAutomorphism a;
  a.map_ = PowerMap::make(ctx, ctx, EPHomeo::identity(ctx.points), k);
  return a;
}

PowerAutomorphism PowerAutomorphism::inverse() const {
  PowerAutomorphism a;
  a.map_ = map_.inverse();
  return a;
}

PowerAutomorphism compose(const PowerAutomorphism& a, const PowerAutomorphism& b) {
  PowerAutomorphism r;
  r.map_ = compose(a.map_, b.map_);
  return r;
}

std::vector<std::pair<Perm, TailClopen>> label_fibers(const AutLabeling& k) {
  std::vector<std::pair<Perm, TailClopen>> out;
  for (const auto& l : k.labels()) {
    if (l == perm_identity(static_cast<int>(l.size()))) continue;
    out.emplace_back(l, TailClopen(k.map([&](const Perm& p) { return p == l; })));
  }
  return out;
}

PowerAutomorphism characteristic(const PowerContext& ctx, const TailClopen& c, const Perm& alpha) {
  require(c.context() == ctx.points, Errc::ContextMismatch, "set over a different space");
  require_automorphism(ctx.alg(), alpha);
  for (int i : c.raw_type().in)
    require(alpha[ctx.filters[i]] == ctx.filters[i], Errc::IllegalTriple,
            "alpha moves the filter of point " + std::to_string(i) + " where the set accumulates");
  Perm id = perm_identity(ctx.alg().size());
  return PowerAutomorphism::from_labeling(ctx, c.map().map([&](const bool& in) { return in ? alpha : id; }));
}

std::vector<PowerAutomorphism> decompose_kernel(const PowerContext& ctx, const AutLabeling& k) {
  std::vector<PowerAutomorphism> out;
  for (const auto& [l, c] : label_fibers(k)) out.push_back(characteristic(ctx, c, l));
  return out;
}

bool fibers_accumulate(const PowerContext& ctx, const PowerAutomorphism& phi) {
  require(ctx.size() == 1, Errc::NotSinglePoint, "fiber test needs a single point");
  auto stab = stabilizer(ctx.alg(), ctx.filters[0]);
  const AutLabeling& k = phi.labeling();
  for (const auto& l : k.labels())
    if (std::find(stab.begin(), stab.end(), l) == stab.end()) return false;
  for (const auto& b : stab) {
    TailClopen fiber(k.map([&](const Perm& p) { return p == b; }));
    auto in = fiber.raw_type().in;
    if (fiber.empty() || std::find(in.begin(), in.end(), 0) == in.end()) return false;
  }
  return true;
}

KernelFactorPair kernel_factor_pair(const PowerContext& ctx, const TailClopen& c, const Perm& alpha) {
  require(ctx.size() == 1, Errc::NotSinglePoint, "the construction needs a single-point power");
  require(c.context() == ctx.points, Errc::ContextMismatch, "set over a different space");
  require_automorphism(ctx.alg(), alpha);
  int e = ctx.filters[0];
  require(alpha[e] == e, Errc::NotStabilizing, "alpha does not fix the filter");
  auto stab = stabilizer(ctx.alg(), e);
  Perm id = stab.front();
  KernelFactorPair out;
  std::vector<std::pair<Family, Perm>> sig, tau;
  if (c.raw_type().in.empty()) {
    // c is compact: deal the tail cells of the complement over the stabilizer
    out.construction = 1;
    auto dealt = deal_tail(~c, stab, id);
    sig = tau = dealt;
    for (const auto& f : c.families()) {
      sig.emplace_back(f, alpha);
      tau.emplace_back(f, id);
    }
  } else {
    // c accumulates: deal its own tail cells, sigma carrying alpha.beta
    out.construction = 2;
    std::vector<Perm> shifted;
    for (const auto& b : stab) shifted.push_back(perm_compose(alpha, b));
    sig = deal_tail(c, shifted, alpha);
    tau = deal_tail(c, stab, id);
  }
  out.sigma = PowerAutomorphism::from_labeling(ctx, AutLabeling::from_labeled_families(ctx.points, sig, id));
  out.tau = PowerAutomorphism::from_labeling(ctx, AutLabeling::from_labeled_families(ctx.points, tau, id));
  require(compose(out.sigma, out.tau.inverse()) == characteristic(ctx, c, alpha), Errc::VerificationFailure,
          "sigma . tau^-1 is not the characteristic automorphism");
  require(fibers_accumulate(ctx, out.sigma) && fibers_accumulate(ctx, out.tau), Errc::VerificationFailure,
          "a label fiber does not accumulate at the point");
  return out;
}

std::vector<PowerElement> block_test_elements(const PowerContext& ctx, const std::vector<Clopen>& blocks,
                                              std::vector<std::vector<int>>* tuples, std::size_t limit) {
  int m = static_cast<int>(blocks.size()), n = ctx.size();
  require(m >= n, Errc::InvalidArgument, "fewer blocks than points");
  Clopen seen;
  for (const auto& b : blocks) {
    require(!b.empty() && (seen & b).empty(), Errc::InvalidArgument, "blocks must be nonempty and disjoint");
    seen = seen | b;
  }
  require(seen.is_full(), Errc::InvalidArgument, "blocks must cover 2^omega");
  for (int i = 0; i < n; ++i)
    require(blocks[i].contains(ctx.points.point(i)), Errc::PointMismatch,
            "block " + std::to_string(i) + " does not contain its point");
  const int q = ctx.alg().size();
  double total = 1;
  for (int i = n; i < m; ++i) total *= q;
  require(total <= static_cast<double>(limit), Errc::SizeBudgetExceeded, "too many test elements");
  std::vector<int> a(m, 0);
  for (int i = 0; i < n; ++i) a[i] = ctx.filters[i];
  std::vector<PowerElement> out;
  if (tuples) tuples->clear();
  while (true) {
    PowerElement::Cells cells;
    for (int i = 0; i < m; ++i)
      for (const auto& w : blocks[i].words()) cells.emplace(w, a[i]);
    out.push_back(PowerElement::make(ctx, cells));
    if (tuples) tuples->push_back(a);
    int k = n;
    while (k < m && ++a[k] == q) a[k++] = 0;
    if (k == m) break;
  }
  return out;
}

StabilizerReport verify_stabilizer_containment(const PowerAutomorphism& phi, const std::vector<Clopen>& blocks) {
  const PowerContext& ctx = phi.context();
  auto auts = automorphisms(ctx.alg());
  for (int i = 0; i < ctx.size(); ++i)
    for (int j = i + 1; j < ctx.size(); ++j)
      for (const auto& g : auts)
        require(g[ctx.filters[i]] != ctx.filters[j], Errc::OrbitCollision,
                "filters " + std::to_string(i) + " and " + std::to_string(j) + " share an orbit");
  StabilizerReport rep;
  std::vector<std::vector<int>> tuples;
  auto elems = block_test_elements(ctx, blocks, &tuples);
  for (std::size_t t = 0; t < elems.size(); ++t) {
    ++rep.tested;
    if (!(phi.apply(elems[t]) == elems[t])) {
      rep.violated = tuples[t];
      return rep;
    }
  }
  rep.fixes_all = true;
  rep.kappa = PowerAutomorphism::from_labeling(ctx, phi.labeling());
  rep.gamma = PowerAutomorphism::from_homeo(ctx, phi.homeo());
  require(compose(*rep.kappa, *rep.gamma) == phi, Errc::VerificationFailure,
          "kappa . gamma does not recompose phi");
  rep.gamma_preserves_blocks = true;
  rep.kappa_restricted = true;
  Perm id = perm_identity(ctx.alg().size());
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
    auto b = TailClopen::from_clopen(ctx.points, blocks[i]);
    if (b.empty()) continue;
    rep.gamma_preserves_blocks &= phi.homeo().apply(b) == b;
    auto on_b = AutLabeling::combine(phi.labeling(), b.map(),
                                     [&](const Perm& p, const bool& in) { return in ? p : id; });
    for (const auto& l : on_b.labels()) {
      if (i < ctx.size()) rep.kappa_restricted &= l[ctx.filters[i]] == ctx.filters[i];
      else rep.kappa_restricted &= l == id;
    }
  }
  return rep;
}

}  // namespace boolpow
