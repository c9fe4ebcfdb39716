#include "boolpow/homeo.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace boolpow {

namespace {

struct Work {
  Piece p;
  int tag = -1;
};

// Splits are applied to both sides of a rule at once.
std::pair<Work, Work> split_single(const Work& w) {
  Work a = w, b = w;
  a.p.src.prefix += '0';
  a.p.dst.prefix += '0';
  b.p.src.prefix += '1';
  b.p.dst.prefix += '1';
  return {a, b};
}

std::pair<Work, Work> peel(const PointContext& sctx, const PointContext& dctx, const Work& w) {
  const Family& s = w.p.src;
  const Family& d = w.p.dst;
  Work first{{Family::single(sctx.cell(s.branch, s.start) + s.suffix),
              Family::single(dctx.cell(d.branch, d.start) + d.suffix)},
             w.tag};
  Work rest = w;
  rest.p.src.start += s.step;
  rest.p.dst.start += d.step;
  return {first, rest};
}

std::vector<Work> residues(const Work& w, std::int64_t t) {
  std::vector<Work> out;
  for (std::int64_t c = 0; c < t; ++c) {
    Work r = w;
    r.p.src.start += w.p.src.step * c;
    r.p.dst.start += w.p.dst.step * c;
    r.p.src.step *= t;
    r.p.dst.step *= t;
    out.push_back(r);
  }
  return out;
}

std::pair<Work, Work> split_suffix(const Work& w) {
  Work a = w, b = w;
  a.p.src.suffix += '0';
  a.p.dst.suffix += '0';
  b.p.src.suffix += '1';
  b.p.dst.suffix += '1';
  return {a, b};
}

// Lookup structure over a partition of the punctured space.
class PartitionIndex {
 public:
  PartitionIndex(const PointContext& ctx, const std::vector<Family>& fams)
      : ctx_(ctx), fams_(fams), singles_in_branch_(ctx.size()), progs_(ctx.size()) {
    for (int i = 0; i < static_cast<int>(fams.size()); ++i) {
      const Family& f = fams[i];
      if (f.progression) {
        progs_.at(f.branch).push_back(i);
        continue;
      }
      singles_.emplace(f.prefix, i);
      Location loc = ctx.locate(f.prefix);
      if (loc.kind == Location::Kind::InCell) singles_in_branch_[loc.branch].push_back(i);
    }
  }

  // First partition member meeting f, or -1.
  int overlapping(const Family& f) const {
    if (!f.progression) {
      auto it = singles_.upper_bound(f.prefix);
      if (it != singles_.begin()) {
        auto pr = std::prev(it);
        if (has_prefix(f.prefix, pr->first)) return pr->second;
      }
      auto lb = singles_.lower_bound(f.prefix);
      if (lb != singles_.end() && has_prefix(lb->first, f.prefix)) return lb->second;
      Location loc = ctx_.locate(f.prefix);
      if (loc.kind != Location::Kind::InCell) return -1;
      for (int i : progs_[loc.branch])
        if (family_overlaps(ctx_, fams_[i], f)) return i;
      return -1;
    }
    for (int i : singles_in_branch_.at(f.branch))
      if (family_overlaps(ctx_, fams_[i], f)) return i;
    for (int i : progs_.at(f.branch))
      if (family_overlaps(ctx_, fams_[i], f)) return i;
    return -1;
  }

 private:
  const PointContext& ctx_;
  const std::vector<Family>& fams_;
  std::map<std::string, int> singles_;
  std::vector<std::vector<int>> singles_in_branch_;
  std::vector<std::vector<int>> progs_;
};

// Splits rules until every target lies inside one member of `partition`.
std::vector<std::pair<Work, int>> refine_targets(const PointContext& sctx, const PointContext& dctx,
                                                 std::vector<Work> stack,
                                                 const std::vector<Family>& partition) {
  PartitionIndex index(dctx, partition);
  std::vector<std::pair<Work, int>> out;
  std::size_t guard = 0;
  while (!stack.empty()) {
    require(++guard < 5'000'000, Errc::SizeBudgetExceeded, "refinement did not settle");
    Work w = std::move(stack.back());
    stack.pop_back();
    const Family& d = w.p.dst;
    int g = index.overlapping(d);
    require(g >= 0, Errc::NotBijective, "target " + d.key() + " is not covered");
    const Family& G = partition[g];
    if (family_contains(dctx, G, d)) {
      out.emplace_back(std::move(w), g);
      continue;
    }
    if (!d.progression) {
      auto [a, b] = split_single(w);
      stack.push_back(std::move(a));
      stack.push_back(std::move(b));
      continue;
    }
    bool do_peel = false;
    if (!G.progression) do_peel = true;
    else if (d.start < G.start) do_peel = true;
    if (do_peel) {
      auto [a, b] = peel(sctx, dctx, w);
      stack.push_back(std::move(a));
      stack.push_back(std::move(b));
      continue;
    }
    if (d.step % G.step != 0) {
      for (auto& r : residues(w, G.step / std::gcd(d.step, G.step))) stack.push_back(std::move(r));
      continue;
    }
    auto [a, b] = split_suffix(w);
    stack.push_back(std::move(a));
    stack.push_back(std::move(b));
  }
  return out;
}

// Image of f (contained in rule.src) under the rule.
Family map_family(const PointContext& sctx, const PointContext& dctx, const Family& f,
                  const Piece& rule) {
  const Family& s = rule.src;
  const Family& t = rule.dst;
  if (!s.progression) return Family::single(t.prefix + f.prefix.substr(s.prefix.size()));
  if (!f.progression) {
    Location loc = sctx.locate(f.prefix);
    std::int64_t k = (loc.cell - s.start) / s.step;
    return Family::single(dctx.cell(t.branch, t.start + t.step * k) + t.suffix +
                          loc.suffix.substr(s.suffix.size()));
  }
  std::int64_t k0 = (f.start - s.start) / s.step;
  std::int64_t m = f.step / s.step;
  return Family::prog(t.branch, t.start + t.step * k0, t.step * m, t.suffix + f.suffix.substr(s.suffix.size()));
}

bool valid_single(const PointContext& ctx, const std::string& w) {
  auto k = ctx.locate(w).kind;
  return k == Location::Kind::Off || k == Location::Kind::InCell;
}

// Beyond the largest source start, each source cell lands inside one target cell.
bool whole_cells_forward(const PointContext& sctx, const std::vector<Piece>& pieces) {
  for (int i = 0; i < sctx.size(); ++i) {
    std::int64_t top = 0, period = 1;
    std::vector<const Piece*> progs;
    for (const auto& p : pieces) {
      if (p.src.progression) {
        if (p.src.branch != i) continue;
        progs.push_back(&p);
        top = std::max(top, p.src.start);
        period = lcm64(period, p.src.step);
      } else {
        Location loc = sctx.locate(p.src.prefix);
        if (loc.kind == Location::Kind::InCell && loc.branch == i) top = std::max(top, loc.cell);
      }
    }
    for (std::int64_t j = top + 1; j <= top + 2 * period; ++j) {
      std::optional<std::pair<int, std::int64_t>> target;
      for (const Piece* p : progs) {
        if (!p->src.hits(j)) continue;
        std::int64_t k = (j - p->src.start) / p->src.step;
        std::pair<int, std::int64_t> t{p->dst.branch, p->dst.start + p->dst.step * k};
        if (target && *target != t) return false;
        target = t;
      }
    }
  }
  return true;
}

std::vector<Piece> swapped(std::vector<Piece> pieces) {
  for (auto& p : pieces) std::swap(p.src, p.dst);
  return pieces;
}

}  // namespace

std::vector<Piece> simplify_pieces(const PointContext& dom, const PointContext& cod,
                                   std::vector<Piece> pieces) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> dead(pieces.size(), 0);
    // sibling singles p0 -> q0, p1 -> q1
    {
      std::unordered_map<std::string, std::size_t> by_src;
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (!pieces[i].src.progression) by_src.emplace(pieces[i].src.prefix, i);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        auto& p = pieces[i];
        if (dead[i] || p.src.progression || p.src.prefix.empty() || p.src.prefix.back() != '0') continue;
        if (p.dst.prefix.empty() || p.dst.prefix.back() != '0') continue;
        std::string sp = p.src.prefix.substr(0, p.src.prefix.size() - 1);
        std::string dp = p.dst.prefix.substr(0, p.dst.prefix.size() - 1);
        auto it = by_src.find(sp + '1');
        if (it == by_src.end() || dead[it->second]) continue;
        if (pieces[it->second].dst.prefix != dp + '1') continue;
        if (!valid_single(dom, sp) || !valid_single(cod, dp)) continue;
        dead[it->second] = 1;
        p.src.prefix = sp;
        p.dst.prefix = dp;
        changed = true;
      }
    }
    // sibling suffixes of progressions with equal index data
    {
      std::unordered_map<std::string, std::size_t> by_key;
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (!dead[i] && pieces[i].src.progression)
          by_key.emplace(pieces[i].src.key() + "|" + pieces[i].dst.key(), i);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        auto& p = pieces[i];
        if (dead[i] || !p.src.progression) continue;
        if (p.src.suffix.empty() || p.src.suffix.back() != '0') continue;
        if (p.dst.suffix.empty() || p.dst.suffix.back() != '0') continue;
        Piece q = p;
        q.src.suffix.back() = '1';
        q.dst.suffix.back() = '1';
        auto it = by_key.find(q.src.key() + "|" + q.dst.key());
        if (it == by_key.end() || dead[it->second] || it->second == i) continue;
        dead[it->second] = 1;
        p.src.suffix.pop_back();
        p.dst.suffix.pop_back();
        changed = true;
      }
    }
    // a peeled first member rejoins its progression
    {
      std::unordered_map<std::string, std::size_t> by_src;
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (!dead[i] && !pieces[i].src.progression) by_src.emplace(pieces[i].src.prefix, i);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        auto& p = pieces[i];
        if (dead[i] || !p.src.progression) continue;
        while (p.src.start - p.src.step >= 1 && p.dst.start - p.dst.step >= 1) {
          std::string s = dom.cell(p.src.branch, p.src.start - p.src.step) + p.src.suffix;
          auto it = by_src.find(s);
          if (it == by_src.end() || dead[it->second]) break;
          if (pieces[it->second].dst.prefix !=
              cod.cell(p.dst.branch, p.dst.start - p.dst.step) + p.dst.suffix)
            break;
          dead[it->second] = 1;
          p.src.start -= p.src.step;
          p.dst.start -= p.dst.step;
          changed = true;
        }
      }
    }
    // residue classes that together form a coarser progression
    {
      std::map<std::string, std::vector<std::size_t>> groups;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        if (dead[i] || !p.src.progression) continue;
        groups[std::to_string(p.src.branch) + ":" + std::to_string(p.src.step) + ":" + p.src.suffix +
               "|" + std::to_string(p.dst.branch) + ":" + std::to_string(p.dst.step) + ":" +
               p.dst.suffix]
            .push_back(i);
      }
      for (auto& [key, idxs] : groups) {
        if (idxs.size() < 2) continue;
        std::sort(idxs.begin(), idxs.end(),
                  [&](std::size_t a, std::size_t b) { return pieces[a].src.start < pieces[b].src.start; });
        std::int64_t S = pieces[idxs[0]].src.step, T = pieces[idxs[0]].dst.step;
        std::int64_t g = std::gcd(S, T);
        std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> at;
        for (auto i : idxs) at.emplace(std::make_pair(pieces[i].src.start, pieces[i].dst.start), i);
        for (std::int64_t t = 2; t <= g; ++t) {
          if (g % t) continue;
          std::int64_t s = S / t, u = T / t;
          for (auto i : idxs) {
            if (dead[i] || pieces[i].src.step != S) continue;
            std::vector<std::size_t> members;
            for (std::int64_t c = 1; c < t; ++c) {
              auto it = at.find({pieces[i].src.start + s * c, pieces[i].dst.start + u * c});
              if (it == at.end() || dead[it->second] || pieces[it->second].src.step != S) break;
              members.push_back(it->second);
            }
            if (static_cast<std::int64_t>(members.size()) != t - 1) continue;
            for (auto m : members) dead[m] = 1;
            pieces[i].src.step = s;
            pieces[i].dst.step = u;
            changed = true;
          }
        }
      }
    }
    if (changed) {
      std::vector<Piece> keep;
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (!dead[i]) keep.push_back(std::move(pieces[i]));
      pieces = std::move(keep);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  return pieces;
}

EPHomeo EPHomeo::identity(const PointContext& ctx) {
  EPHomeo h;
  h.dom_ = h.cod_ = ctx;
  for (const auto& w : ctx.off_region()) h.pieces_.push_back({Family::single(w), Family::single(w)});
  for (int i = 0; i < ctx.size(); ++i) h.pieces_.push_back({Family::prog(i, 1, 1), Family::prog(i, 1, 1)});
  return h;
}

EPHomeo EPHomeo::from_pieces(const PointContext& ctx, std::vector<Piece> pieces) {
  return from_pieces(ctx, ctx, std::move(pieces));
}

EPHomeo EPHomeo::from_pieces(const PointContext& dom, const PointContext& cod,
                             std::vector<Piece> pieces) {
  std::vector<Family> srcs, dsts;
  for (const auto& p : pieces) {
    require(p.src.progression == p.dst.progression, Errc::InvalidArgument,
            "a rule must pair families of the same kind");
    srcs.push_back(p.src);
    dsts.push_back(p.dst);
  }
  if (auto e = partition_defect(dom, srcs)) fail(Errc::NotBijective, "sources: " + *e);
  if (auto e = partition_defect(cod, dsts)) fail(Errc::NotBijective, "targets: " + *e);
  require(whole_cells_forward(dom, pieces) && whole_cells_forward(cod, swapped(pieces)),
          Errc::NotRepresentable, "tail cells must eventually map onto whole tail cells");
  EPHomeo h;
  h.dom_ = dom;
  h.cod_ = cod;
  h.pieces_ = simplify_pieces(dom, cod, std::move(pieces));
  return h;
}

EPHomeo EPHomeo::inverse() const {
  EPHomeo h;
  h.dom_ = cod_;
  h.cod_ = dom_;
  h.pieces_ = swapped(pieces_);
  std::sort(h.pieces_.begin(), h.pieces_.end());
  return h;
}

bool EPHomeo::is_identity() const {
  if (!(dom_ == cod_)) return false;
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.src == p.dst; });
}

bool EPHomeo::operator==(const EPHomeo& o) const {
  if (!(dom_ == o.dom_) || !(cod_ == o.cod_)) return false;
  if (pieces_ == o.pieces_) return true;
  return compose(o.inverse(), *this).is_identity();
}

EPHomeo compose(const EPHomeo& outer, const EPHomeo& inner) {
  require(inner.cod_ == outer.dom_, Errc::ContextMismatch, "composition across different contexts");
  std::vector<Work> work;
  for (const auto& p : inner.pieces_) work.push_back({p, -1});
  std::vector<Family> part;
  for (const auto& p : outer.pieces_) part.push_back(p.src);
  auto refined = refine_targets(inner.dom_, inner.cod_, std::move(work), part);
  std::vector<Piece> pieces;
  pieces.reserve(refined.size());
  for (const auto& [w, g] : refined)
    pieces.push_back({w.p.src, map_family(outer.dom_, outer.cod_, w.p.dst, outer.pieces_[g])});
  EPHomeo h;
  h.dom_ = inner.dom_;
  h.cod_ = outer.cod_;
  h.pieces_ = simplify_pieces(h.dom_, h.cod_, std::move(pieces));
  return h;
}

std::vector<Piece> EPHomeo::push_forward(const std::vector<Family>& fams,
                                         std::vector<int>* origin) const {
  std::vector<Work> work;
  for (int i = 0; i < static_cast<int>(fams.size()); ++i) {
    validate_family(dom_, fams[i]);
    work.push_back({{fams[i], fams[i]}, i});
  }
  std::vector<Family> part;
  for (const auto& p : pieces_) part.push_back(p.src);
  auto refined = refine_targets(dom_, dom_, std::move(work), part);
  std::vector<Piece> out;
  if (origin) origin->clear();
  for (const auto& [w, g] : refined) {
    out.push_back({w.p.src, map_family(dom_, cod_, w.p.dst, pieces_[g])});
    if (origin) origin->push_back(w.tag);
  }
  return out;
}

Point EPHomeo::apply(const Point& p) const {
  PointLocation loc = dom_.locate(p);
  if (loc.is_point) {
    auto pm = point_map();
    require(pm.has_value(), Errc::NotExtendable, "map has no value at a distinguished point");
    return cod_.point((*pm)[loc.branch]);
  }
  for (const auto& pc : pieces_) {
    const Family& s = pc.src;
    if (!s.progression) {
      if (p.has_prefix(s.prefix)) return p.drop(s.prefix.size()).prepend(pc.dst.prefix);
      continue;
    }
    if (loc.branch != s.branch || !s.hits(loc.cell) || !loc.rest->has_prefix(s.suffix)) continue;
    std::int64_t k = (loc.cell - s.start) / s.step;
    return loc.rest->drop(s.suffix.size())
        .prepend(cod_.cell(pc.dst.branch, pc.dst.start + pc.dst.step * k) + pc.dst.suffix);
  }
  fail(Errc::NotBijective, "point " + p.to_string() + " is not covered");
}

std::optional<std::vector<int>> EPHomeo::point_map() const {
  if (dom_.size() != cod_.size()) return std::nullopt;
  std::vector<int> target(dom_.size(), -1);
  for (const auto& p : pieces_) {
    if (!p.src.progression) continue;
    int& t = target[p.src.branch];
    if (t >= 0 && t != p.dst.branch) return std::nullopt;
    t = p.dst.branch;
  }
  std::vector<char> hit(cod_.size(), 0);
  for (int t : target) {
    if (t < 0 || hit[t]) return std::nullopt;
    hit[t] = 1;
  }
  return target;
}

bool EPHomeo::fixes_points() const {
  if (!(dom_ == cod_)) return false;
  auto pm = point_map();
  if (!pm) return false;
  for (int i = 0; i < static_cast<int>(pm->size()); ++i)
    if ((*pm)[i] != i) return false;
  return true;
}

bool EPHomeo::fixes_pointwise(const TailClopen& c) const {
  require(c.context() == dom_, Errc::ContextMismatch, "set over a different context");
  for (const auto& p : push_forward(c.families()))
    if (!(p.src == p.dst)) return false;
  return true;
}

TailClopen EPHomeo::apply(const TailClopen& c) const { return TailClopen(apply(c.map())); }

std::vector<Piece> tabular_match(std::vector<std::string> from, std::vector<std::string> to) {
  require(!from.empty() && !to.empty(), Errc::EmptyInput, "tabular match needs nonempty sides");
  auto grow = [](std::vector<std::string>& v, std::size_t n) {
    while (v.size() < n) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i].size() < v[best].size()) best = i;
      std::string w = v[best];
      v[best] = w + '0';
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(best) + 1, w + '1');
    }
  };
  grow(from, to.size());
  grow(to, from.size());
  std::vector<Piece> out;
  for (std::size_t i = 0; i < from.size(); ++i)
    out.push_back({Family::single(from[i]), Family::single(to[i])});
  return out;
}

namespace {

// Cell index of the k-th tail cell of branch i that lies in c.
std::int64_t in_cell_index(const TailClopen& c, int i, std::int64_t k) {
  std::string w = c.tail_words()[i];
  std::vector<std::int64_t> pos;
  for (std::size_t t = 0; t < w.size(); ++t)
    if (w[t] == '1') pos.push_back(static_cast<std::int64_t>(t));
  auto m = static_cast<std::int64_t>(pos.size());
  return c.threshold() + 1 + pos[k % m] + static_cast<std::int64_t>(w.size()) * (k / m);
}

std::int64_t in_count(const TailClopen& c, int i) {
  auto w = c.tail_words()[i];
  return std::count(w.begin(), w.end(), '1');
}

std::vector<Piece> match_sets(const TailClopen& a, const TailClopen& b) {
  require(a.empty() == b.empty(), Errc::TypeMismatch, "one set is empty and the other is not");
  if (a.empty()) return {};
  auto ta = a.raw_type().in, tb = b.raw_type().in;
  require(ta == tb, Errc::TypeMismatch, "sets accumulate at different distinguished points");
  const PointContext& ctx = a.context();
  auto ha = a.exceptional(), hb = b.exceptional();
  std::vector<std::int64_t> k0(ctx.size(), 0);
  if (!ta.empty()) {
    int i0 = ta.front();
    ha.push_back(ctx.cell(i0, in_cell_index(a, i0, 0)));
    hb.push_back(ctx.cell(i0, in_cell_index(b, i0, 0)));
    k0[i0] = 1;
  }
  auto pieces = tabular_match(ha, hb);
  for (int i : ta) {
    std::int64_t ma = in_count(a, i), mb = in_count(b, i);
    std::int64_t M = lcm64(ma, mb);
    for (std::int64_t r = 0; r < M; ++r) {
      std::int64_t k = k0[i] + r;
      std::int64_t sa = in_cell_index(a, i, k), sb = in_cell_index(b, i, k);
      pieces.push_back({Family::prog(i, sa, in_cell_index(a, i, k + M) - sa),
                        Family::prog(i, sb, in_cell_index(b, i, k + M) - sb)});
    }
  }
  return pieces;
}

}  // namespace

EPHomeo orbit_witness(const TailClopen& c1, const TailClopen& c2) {
  require(c1.context() == c2.context(), Errc::ContextMismatch, "sets over different contexts");
  auto pieces = match_sets(c1, c2);
  auto rest = match_sets(~c1, ~c2);
  pieces.insert(pieces.end(), rest.begin(), rest.end());
  EPHomeo h = EPHomeo::from_pieces(c1.context(), std::move(pieces));
  require(h.apply(c1) == c2 && h.fixes_points(), Errc::TypeWitnessFailure,
          "constructed map does not carry the first set onto the second");
  return h;
}

EPHomeo piecewise_glue(const PointContext& ctx,
                       const std::vector<std::pair<TailClopen, EPHomeo>>& parts) {
  TailClopen covered(ctx);
  std::vector<Piece> pieces;
  for (const auto& [c, h] : parts) {
    require(c.context() == ctx && h.domain() == ctx && h.codomain() == ctx, Errc::ContextMismatch,
            "glued parts must share the context");
    require((covered & c).empty(), Errc::OverlappingDomains, "glued domains overlap");
    covered = covered | c;
    auto pushed = h.push_forward(c.families());
    pieces.insert(pieces.end(), pushed.begin(), pushed.end());
  }
  for (const auto& f : (~covered).families()) pieces.push_back({f, f});
  return EPHomeo::from_pieces(ctx, std::move(pieces));
}

EPHomeo merge_branches(const PointContext& dom, const PointContext& cod,
                       const std::vector<int>& target) {
  require(static_cast<int>(target.size()) == dom.size(), Errc::ContextMismatch,
          "one target per source point is required");
  std::vector<std::vector<int>> members(cod.size());
  for (int i = 0; i < dom.size(); ++i) {
    require(target[i] >= 0 && target[i] < cod.size(), Errc::OutOfRange, "target point out of range");
    members[target[i]].push_back(i);
  }
  for (const auto& m : members) require(!m.empty(), Errc::InvalidArgument, "targets must be onto");
  std::vector<std::string> from = dom.off_region(), to = cod.off_region();
  for (int i = 0; i < dom.size(); ++i) from.push_back(dom.cell(i, 1));
  for (int c = 0; c < cod.size(); ++c) to.push_back(cod.cell(c, 1));
  auto pieces = tabular_match(from, to);
  for (int c = 0; c < cod.size(); ++c) {
    auto s = static_cast<std::int64_t>(members[c].size());
    for (std::int64_t t = 0; t < s; ++t)
      pieces.push_back({Family::prog(members[c][t], 2, 1), Family::prog(c, 2 + t, s)});
  }
  return EPHomeo::from_pieces(dom, cod, std::move(pieces));
}

EPHomeo swap_cylinders(const PointContext& ctx, const std::string& p, const std::string& q) {
  require(valid_single(ctx, p) && valid_single(ctx, q), Errc::InvalidArgument,
          "swapped cylinders must avoid the distinguished points");
  require(!comparable(p, q), Errc::OverlappingDomains, "swapped cylinders overlap");
  std::vector<Piece> pieces{{Family::single(p), Family::single(q)}, {Family::single(q), Family::single(p)}};
  auto rest = ~TailClopen::from_clopen(ctx, Clopen::from_words({p, q}));
  for (const auto& f : rest.families()) pieces.push_back({f, f});
  return EPHomeo::from_pieces(ctx, std::move(pieces));
}

EPHomeo two_ends_exchange() {
  PointContext ctx = PointContext::two_ends();
  return EPHomeo::from_pieces(ctx, {{Family::prog(0, 1, 2), Family::prog(0, 1, 2)},
                                    {Family::prog(0, 2, 2), Family::prog(1, 2, 2)},
                                    {Family::prog(1, 1, 2), Family::prog(1, 1, 2)},
                                    {Family::prog(1, 2, 2), Family::prog(0, 2, 2)}});
}

bool ClusterEvidence::verified() const {
  if (extends || levels.empty()) return false;
  for (const auto& l : levels)
    if (!l.meets_first || !l.meets_second || l.cell_near_first == 0 || l.cell_near_second == 0)
      return false;
  return true;
}

ClusterEvidence two_ends_cluster_evidence(int depth) {
  require(depth >= 1, Errc::OutOfRange, "depth must be positive");
  EPHomeo h = two_ends_exchange();
  const PointContext& ctx = h.domain();
  ClusterEvidence ev;
  ev.extends = h.extends_to_X();
  for (int t = 1; t <= depth; ++t) {
    ClusterLevel lv;
    lv.depth = t;
    auto near0 = TailClopen::from_clopen(ctx, Clopen::from_words({std::string(t, '0')}));
    auto near1 = TailClopen::from_clopen(ctx, Clopen::from_words({std::string(t, '1')}));
    auto image = h.apply(near0);
    lv.meets_first = !(image & near0).empty();
    lv.meets_second = !(image & near1).empty();
    for (std::int64_t j = t; j < t + 4; ++j) {
      auto cell = h.apply(TailClopen::from_families(ctx, {Family::single(ctx.cell(0, j))}));
      if (!lv.cell_near_first && cell.subset_of(near0)) lv.cell_near_first = j;
      if (!lv.cell_near_second && cell.subset_of(near1)) lv.cell_near_second = j;
    }
    ev.levels.push_back(lv);
  }
  return ev;
}

}  // namespace boolpow
