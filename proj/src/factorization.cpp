#include "boolpow/factorization.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace boolpow {

namespace {

TailClopen branch_region(const PointContext& ctx, int i) {
  return TailClopen::from_families(ctx, {Family::prog(i, 1, 1)});
}

TailClopen cylinder(const PointContext& ctx, const std::string& w) {
  return TailClopen::from_clopen(ctx, Clopen::from_words({w}));
}

// A compact nonempty piece of a nonempty set.
TailClopen compact_piece(const TailClopen& s) {
  const PointContext& ctx = s.context();
  auto fams = s.families();
  require(!fams.empty(), Errc::EmptyInput, "set has no families");
  const Family& f = fams.front();
  return cylinder(ctx, f.progression ? f.member(ctx, 0) : f.prefix);
}

EPHomeo witness(const TailClopen& from, const TailClopen& to) {
  try {
    return orbit_witness(from, to);
  } catch (const Error& e) {
    if (e.code() == Errc::TypeMismatch) fail(Errc::TypeWitnessFailure, e.what());
    throw;
  }
}

void add_part(std::vector<std::pair<TailClopen, EPHomeo>>& parts, const TailClopen& c, const EPHomeo& h) {
  if (!c.empty()) parts.emplace_back(c, h);
}

bool sets_partition(const std::vector<TailClopen>& blocks) {
  if (blocks.empty()) return false;
  TailClopen covered(blocks.front().context());
  for (const auto& b : blocks) {
    if (!covered.disjoint_from(b)) return false;
    covered = covered | b;
  }
  return covered.is_whole();
}

}  // namespace

GoodPartition good_partition(const PointContext& ctx) {
  const int n = ctx.size();
  require(n >= 1, Errc::NoPoints, "good partitions need at least one distinguished point");
  const int m = n + 2;
  GoodPartition p{ctx, {}};
  for (int t = 0; t < m; ++t) {
    std::vector<Family> fams;
    for (int i = 0; i < n; ++i) fams.push_back(Family::prog(i, t + 1, m));
    if (t == 0)
      for (const auto& w : ctx.off_region()) fams.push_back(Family::single(w));
    p.blocks.push_back(TailClopen::from_families(ctx, fams));
  }
  return p;
}

bool is_good_partition(const GoodPartition& p) {
  for (const auto& b : p.blocks)
    if (!(b.context() == p.ctx) || !b.is_good()) return false;
  return sets_partition(p.blocks);
}

std::vector<Point> sample_points(const PointContext& ctx) {
  std::set<Point> pts;
  const std::vector<std::string> periods = {"0", "1", "01", "011", "001", "0111"};
  for (int len = 0; len <= 5; ++len)
    for (int code = 0; code < (1 << len); ++code) {
      std::string w;
      for (int b = len - 1; b >= 0; --b) w += (code >> b) & 1 ? '1' : '0';
      for (const auto& per : periods) pts.insert(Point(w, per));
    }
  for (int i = 0; i < ctx.size(); ++i) pts.erase(ctx.point(i));
  return {pts.begin(), pts.end()};
}

bool agree_on_samples(const EPHomeo& lhs, const EPHomeo& rhs, std::size_t depth) {
  if (!(lhs.domain() == rhs.domain())) return false;
  for (const auto& p : sample_points(lhs.domain()))
    if (lhs.apply(p).prefix(depth) != rhs.apply(p).prefix(depth)) return false;
  return true;
}

StabilizerFactors stabilizer_factor(const EPHomeo& sigma, const TailClopen& b, const TailClopen& c,
                                    const TailClopen& d) {
  const PointContext& ctx = sigma.domain();
  require(b.context() == ctx && c.context() == ctx && d.context() == ctx, Errc::ContextMismatch,
          "blocks over a different context");
  require(sigma.fixes_points(), Errc::PointNotFixed, "sigma must fix every distinguished point");
  require(b.is_good() && c.is_good() && d.is_good(), Errc::PreconditionNotGood, "b, c, d must be good");
  require(sets_partition({b, c, d}), Errc::PreconditionNotGood, "b, c, d must partition the punctured space");
  const EPHomeo inv = sigma.inverse();
  const TailClopen pre_b = inv.apply(b);
  const TailClopen cd = c | d;
  require((d - pre_b).is_good(), Errc::PreconditionNotGood, "d minus sigma^-1(b) is not good");

  StabilizerFactors out;
  // tau1 moves (c u d) n sigma^-1(b) into one good half of d
  const TailClopen a = cd & pre_b;
  EPHomeo tau1 = EPHomeo::identity(ctx);
  TailClopen f(ctx);
  if (!a.empty()) {
    const TailClopen half = split_good(d).first;
    auto in = a.raw_type().in;
    if (in.empty()) {
      f = compact_piece(half);
    } else {
      TailClopen near(ctx);
      for (int i : in) near = near | branch_region(ctx, i);
      f = half & near;
    }
    tau1 = witness(a, f);
  }
  out.f = f;
  const EPHomeo tau2 = witness(cd - pre_b, cd - f);
  const TailClopen b_out = b & inv.apply(cd);
  const TailClopen src3 = b_out | (d - f);
  const EPHomeo tau3 = witness(src3, d);

  std::vector<std::pair<TailClopen, EPHomeo>> p1, p2, p3;
  add_part(p1, a, tau1);
  add_part(p1, cd - pre_b, tau2);
  out.sigma1 = piecewise_glue(ctx, p1);

  add_part(p2, f, compose(sigma, tau1.inverse()));
  add_part(p2, b & pre_b, sigma);
  add_part(p2, src3, tau3);
  out.sigma2 = piecewise_glue(ctx, p2);

  const EPHomeo tau2_inv = tau2.inverse(), tau3_inv = tau3.inverse();
  add_part(p3, c, compose(sigma, tau2_inv));
  add_part(p3, tau3.apply(b_out), compose(sigma, tau3_inv));
  add_part(p3, tau3.apply(d - f), compose(sigma, compose(tau2_inv, tau3_inv)));
  out.sigma3 = piecewise_glue(ctx, p3);

  out.fixes_b_first = out.sigma1.fixes_pointwise(b);
  out.fixes_c_second = out.sigma2.fixes_pointwise(c);
  out.fixes_b_third = out.sigma3.fixes_pointwise(b);
  out.product_exact = compose(out.sigma3, compose(out.sigma2, out.sigma1)) == sigma;
  out.product_sampled = true;
  for (const auto& p : sample_points(ctx))
    if (out.sigma3.apply(out.sigma2.apply(out.sigma1.apply(p))).prefix(48) != sigma.apply(p).prefix(48)) {
      out.product_sampled = false;
      break;
    }
  return out;
}

bool PigeonholeReport::verified() const {
  for (const auto& f : failures)
    if (f.size() > 1) return false;
  return i >= 0 && j >= 0 && i != j && factors.verified() && setwise_in_E;
}

PigeonholeReport pigeonhole_factor(const EPHomeo& sigma, const GoodPartition& partition) {
  require(sigma.fixes_points(), Errc::PointNotFixed, "sigma must fix every distinguished point");
  const PointContext& ctx = partition.ctx;
  const int n = ctx.size();
  require(static_cast<int>(partition.blocks.size()) == n + 2, Errc::InvalidArgument,
          "a good partition has n + 2 blocks");
  const EPHomeo inv = sigma.inverse();
  const TailClopen& last = partition.blocks.back();
  PigeonholeReport rep;
  rep.failures.assign(n, {});
  for (int i = 0; i <= n; ++i) {
    auto rest = last - inv.apply(partition.blocks[i]);
    std::vector<int> in = rest.empty() ? std::vector<int>{} : rest.raw_type().in;
    bool all = true;
    for (int k = 0; k < n; ++k)
      if (std::find(in.begin(), in.end(), k) == in.end()) {
        rep.failures[k].push_back(i);
        all = false;
      }
    if (all && rep.i < 0) rep.i = i;
  }
  require(rep.i >= 0, Errc::VerificationFailure, "no block leaves a good remainder");
  TailClopen c(ctx);
  for (int t = 0; t <= n; ++t)
    if (t != rep.i) {
      c = c | partition.blocks[t];
      if (rep.j < 0) rep.j = t;
    }
  rep.factors = stabilizer_factor(sigma, partition.blocks[rep.i], c, last);
  const auto& bi = partition.blocks[rep.i];
  const auto& bj = partition.blocks[rep.j];
  rep.setwise_in_E = rep.factors.sigma1.apply(bi) == bi && rep.factors.sigma2.apply(bj) == bj &&
                     rep.factors.sigma3.apply(bi) == bi && rep.factors.sigma2.fixes_pointwise(bj);
  return rep;
}

bool GrowthReport::monotone() const {
  for (std::size_t t = 1; t < sizes.size(); ++t)
    if (sizes[t] < sizes[t - 1]) return false;
  return true;
}

GrowthReport bergman_growth(const PointContext& ctx, const std::vector<EPHomeo>& generators, int depth,
                            int steps, std::size_t budget) {
  require(!generators.empty(), Errc::EmptyGeneratorSet, "no generators");
  require(depth >= 0 && depth <= 12, Errc::OutOfRange, "depth must lie in [0, 12]");
  require(steps >= 1, Errc::InvalidArgument, "at least one step");
  std::vector<std::string> words;
  for (int code = 0; code < (1 << depth); ++code) {
    std::string w;
    for (int b = depth - 1; b >= 0; --b) w += (code >> b) & 1 ? '1' : '0';
    words.push_back(w);
  }
  std::vector<TailClopen> cells;
  for (const auto& w : words) cells.push_back(cylinder(ctx, w));

  std::set<Perm> e;
  Perm id(words.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  e.insert(id);
  for (const auto& g : generators) {
    require(g.domain() == ctx && g.codomain() == ctx, Errc::ContextMismatch, "generator over another context");
    for (const auto& h : {g, g.inverse()}) {
      Perm p;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        auto img = h.apply(cells[i]);
        auto it = std::find(cells.begin(), cells.end(), img);
        require(it != cells.end(), Errc::InvalidArgument,
                "generator does not permute the cylinders of length " + std::to_string(depth));
        p.push_back(static_cast<int>(it - cells.begin()));
      }
      e.insert(p);
    }
  }

  GrowthReport rep;
  rep.depth = depth;
  rep.cells = words.size();
  std::set<Perm> ball = e;
  rep.sizes.push_back(ball.size());
  for (int t = 1; t < steps; ++t) {
    std::set<Perm> next = ball;
    for (const auto& x : ball)
      for (const auto& g : e) {
        Perm p(x.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = g[x[i]];
        next.insert(std::move(p));
        require(next.size() <= budget, Errc::SizeBudgetExceeded, "word ball outgrew the budget");
      }
    if (next.size() == ball.size() && !rep.stabilized_at) rep.stabilized_at = t;
    ball = std::move(next);
    rep.sizes.push_back(ball.size());
  }
  return rep;
}

GrowthReport bergman_growth(const std::vector<PowerAutomorphism>& generators, int depth, int steps,
                            std::size_t budget) {
  require(!generators.empty(), Errc::EmptyGeneratorSet, "no generators");
  std::vector<EPHomeo> hs;
  for (const auto& g : generators) hs.push_back(g.homeo());
  return bergman_growth(generators.front().context().points, hs, depth, steps, budget);
}

}  // namespace boolpow
