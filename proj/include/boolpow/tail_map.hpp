// Labellings of the punctured space (2^omega minus the distinguished points)
// that are locally constant and eventually periodic along every branch.
//
// Below the threshold d the labelling is a finite prefix partition of
//   D_d = 2^omega minus the cylinders root_i spine_i^d,
// and beyond it cell d+1+t of branch i carries tails[i][t mod |tails[i]|].
// The canonical form has the least threshold, primitive tail words and
// sibling cells merged whenever they share a label.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "boolpow/cantor.hpp"

namespace boolpow {

template <class L>
class TailMap {
 public:
  using Cells = std::map<std::string, L>;

  TailMap() = default;
  TailMap(PointContext ctx, L fill) : ctx_(std::move(ctx)) {
    cells_ = build_cells(ctx_, 0, {}, fill);
    tails_.assign(ctx_.size(), std::vector<L>{fill});
  }
  TailMap(PointContext ctx, std::int64_t threshold, const Cells& cells,
          std::vector<std::vector<L>> tails, std::optional<L> fill = std::nullopt)
      : ctx_(std::move(ctx)), d_(threshold), tails_(std::move(tails)) {
    require(d_ >= 0, Errc::OutOfRange, "negative threshold");
    require(static_cast<int>(tails_.size()) == ctx_.size(), Errc::ContextMismatch,
            "one tail word per branch is required");
    for (const auto& t : tails_) require(!t.empty(), Errc::InvalidArgument, "empty tail word");
    for (const auto& [w, l] : cells) {
      auto k = ctx_.locate(w);
      require(k.kind == Location::Kind::Off ||
                  (k.kind == Location::Kind::InCell && k.cell <= d_),
              Errc::InvalidArgument, "cell '" + w + "' is not below the threshold");
    }
    cells_ = build_cells(ctx_, d_, cells, fill);
    canonicalize();
  }

  const PointContext& context() const { return ctx_; }
  std::int64_t threshold() const { return d_; }
  const Cells& cells() const { return cells_; }
  const std::vector<std::vector<L>>& tails() const { return tails_; }

  bool operator==(const TailMap& o) const {
    return ctx_ == o.ctx_ && d_ == o.d_ && cells_ == o.cells_ && tails_ == o.tails_;
  }

  // Label at a point of the punctured space.
  L at(const Point& p) const {
    PointLocation loc = ctx_.locate(p);
    require(!loc.is_point, Errc::OutOfRange, "distinguished points are not in the domain");
    if (loc.branch >= 0 && loc.cell > d_) {
      const auto& t = tails_[loc.branch];
      return t[static_cast<std::size_t>((loc.cell - d_ - 1) % static_cast<std::int64_t>(t.size()))];
    }
    std::size_t len = 0;
    for (const auto& [w, l] : cells_) len = std::max(len, w.size());
    auto hit = containing(cells_, p.prefix(len));
    require(hit.has_value(), Errc::OutOfRange, "point not covered");
    return *hit;
  }

  std::set<L> labels() const {
    std::set<L> out;
    for (const auto& [w, l] : cells_) out.insert(l);
    for (const auto& t : tails_) out.insert(t.begin(), t.end());
    return out;
  }

  template <class F>
  auto map(F f) const -> TailMap<std::decay_t<decltype(f(std::declval<const L&>()))>> {
    using R = std::decay_t<decltype(f(std::declval<const L&>()))>;
    typename TailMap<R>::Cells cells;
    for (const auto& [w, l] : cells_) cells.emplace(w, f(l));
    std::vector<std::vector<R>> tails;
    for (const auto& t : tails_) {
      std::vector<R> r;
      for (const auto& l : t) r.push_back(f(l));
      tails.push_back(std::move(r));
    }
    return TailMap<R>(ctx_, d_, cells, std::move(tails));
  }

  // Pointwise combination of two labellings over the same context.
  template <class M, class F>
  static auto combine(const TailMap<L>& a, const TailMap<M>& b, F f)
      -> TailMap<std::decay_t<decltype(f(std::declval<const L&>(), std::declval<const M&>()))>> {
    using R = std::decay_t<decltype(f(std::declval<const L&>(), std::declval<const M&>()))>;
    require(a.context() == b.context(), Errc::ContextMismatch, "labellings over different contexts");
    std::int64_t d = std::max(a.threshold(), b.threshold());
    auto ra = a.raised(d);
    auto rb = b.raised(d);
    const PointContext& ctx = a.context();
    std::set<std::string> holes = hole_set(ctx, d);
    typename TailMap<R>::Cells cells;
    std::function<void(const std::string&)> zip = [&](const std::string& p) {
      if (holes.count(p)) return;
      auto la = containing(ra.first, p);
      auto lb = TailMap<M>::containing(rb.first, p);
      if (la && lb) {
        cells.emplace(p, f(*la, *lb));
        return;
      }
      zip(p + '0');
      zip(p + '1');
    };
    zip("");
    std::vector<std::vector<R>> tails;
    for (int i = 0; i < ctx.size(); ++i) {
      const auto& ta = ra.second[i];
      const auto& tb = rb.second[i];
      std::int64_t len = lcm64(static_cast<std::int64_t>(ta.size()), static_cast<std::int64_t>(tb.size()));
      std::vector<R> t;
      for (std::int64_t k = 0; k < len; ++k) t.push_back(f(ta[k % ta.size()], tb[k % tb.size()]));
      tails.push_back(std::move(t));
    }
    return TailMap<R>(ctx, d, cells, std::move(tails));
  }

  // Cells and tails after raising the threshold to d (not canonical).
  std::pair<Cells, std::vector<std::vector<L>>> raised(std::int64_t d) const {
    Cells cells = cells_;
    auto tails = tails_;
    for (std::int64_t cur = d_; cur < d; ++cur)
      for (int i = 0; i < ctx_.size(); ++i) {
        cells.emplace(ctx_.cell(i, cur + 1), tails[i].front());
        std::rotate(tails[i].begin(), tails[i].begin() + 1, tails[i].end());
      }
    return {std::move(cells), std::move(tails)};
  }

  // Families partitioning the punctured space, each with its label.
  std::vector<std::pair<Family, L>> labeled_families() const {
    std::vector<std::pair<Family, L>> out;
    for (const auto& [w, l] : cells_) out.emplace_back(Family::single(w), l);
    for (int i = 0; i < ctx_.size(); ++i) {
      const auto& t = tails_[i];
      auto len = static_cast<std::int64_t>(t.size());
      for (std::int64_t k = 0; k < len; ++k)
        out.emplace_back(Family::prog(i, d_ + 1 + k, len), t[static_cast<std::size_t>(k)]);
    }
    return out;
  }

  // Builds the labelling that carries each family's label and `fill`
  // elsewhere. Families must be pairwise disjoint, and beyond the largest
  // start every cell must receive a single label.
  static TailMap from_labeled_families(const PointContext& ctx,
                                       const std::vector<std::pair<Family, L>>& fams, const L& fill) {
    std::vector<std::int64_t> top(ctx.size(), 0), period(ctx.size(), 1);
    std::vector<std::vector<const std::pair<Family, L>*>> progs(ctx.size());
    Cells words;
    for (const auto& fl : fams) {
      const Family& f = fl.first;
      validate_family(ctx, f);
      if (f.progression) {
        top[f.branch] = std::max(top[f.branch], f.start - 1);
        period[f.branch] = lcm64(period[f.branch], f.step);
        progs[f.branch].push_back(&fl);
      } else {
        Location loc = ctx.locate(f.prefix);
        if (loc.kind == Location::Kind::InCell) top[loc.branch] = std::max(top[loc.branch], loc.cell);
        words.emplace(f.prefix, fl.second);
      }
    }
    std::int64_t d = 0;
    for (auto t : top) d = std::max(d, t);
    std::vector<std::vector<L>> tails(ctx.size());
    for (int i = 0; i < ctx.size(); ++i) {
      for (const auto* fl : progs[i])
        for (std::int64_t j = fl->first.start; j <= d; j += fl->first.step)
          words.emplace(ctx.cell(i, j) + fl->first.suffix, fl->second);
      for (std::int64_t t = 0; t < period[i]; ++t) {
        std::int64_t j = d + 1 + t;
        std::vector<std::string> sufs;
        std::optional<L> lab;
        bool uniform = true;
        for (const auto* fl : progs[i]) {
          if (!fl->first.hits(j)) continue;
          sufs.push_back(fl->first.suffix);
          if (lab && !(*lab == fl->second)) uniform = false;
          lab = fl->second;
        }
        if (!lab) {
          tails[i].push_back(fill);
          continue;
        }
        require(uniform && (is_complete_prefix_code(sufs) || *lab == fill), Errc::NotRepresentable,
                "tail cells of branch " + std::to_string(i) + " are not labelled as whole cells");
        tails[i].push_back(*lab);
      }
    }
    return TailMap(ctx, d, words, std::move(tails), fill);
  }

  static std::optional<L> containing(const Cells& cells, const std::string& p) {
    auto it = cells.upper_bound(p);
    if (it == cells.begin()) return std::nullopt;
    --it;
    if (has_prefix(p, it->first)) return it->second;
    return std::nullopt;
  }

 private:
  static std::set<std::string> hole_set(const PointContext& ctx, std::int64_t d) {
    std::set<std::string> h;
    for (int i = 0; i < ctx.size(); ++i) h.insert(ctx.hole(i, d));
    return h;
  }

  // Coarsest prefix partition of D_d agreeing with `words`; gaps take `fill`.
  static Cells build_cells(const PointContext& ctx, std::int64_t d, const Cells& words,
                           std::optional<L> fill) {
    std::set<std::string> holes = hole_set(ctx, d);
    Cells out;
    auto above_hole = [&](const std::string& p) {
      for (const auto& h : holes)
        if (h.size() > p.size() && has_prefix(h, p)) return true;
      return false;
    };
    // returns the label when the whole subtree is uniform and hole-free
    std::function<std::optional<L>(const std::string&)> go =
        [&](const std::string& p) -> std::optional<L> {
      if (holes.count(p)) return std::nullopt;
      if (auto hit = containing(words, p)) return hit;
      auto it = words.lower_bound(p);
      bool below = it != words.end() && has_prefix(it->first, p);
      if (!below && !above_hole(p)) {
        require(fill.has_value(), Errc::NotRepresentable, "labelling leaves '" + p + "' uncovered");
        return fill;
      }
      auto l0 = go(p + '0');
      auto l1 = go(p + '1');
      if (l0 && l1 && *l0 == *l1) return l0;
      if (l0) out.emplace(p + '0', *l0);
      if (l1) out.emplace(p + '1', *l1);
      return std::nullopt;
    };
    if (auto l = go("")) out.emplace("", *l);
    return out;
  }

  void canonicalize() {
    for (auto& t : tails_) {
      std::size_t n = t.size();
      for (std::size_t p = 1; p <= n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = t[i] == t[i - p];
        if (ok) {
          t.resize(p);
          break;
        }
      }
    }
    if (ctx_.size() == 0) {
      d_ = 0;
      return;
    }
    while (d_ > 0) {
      bool lower = true;
      for (int i = 0; i < ctx_.size() && lower; ++i) {
        auto it = cells_.find(ctx_.cell(i, d_));
        lower = it != cells_.end() && it->second == tails_[i].back();
      }
      if (!lower) break;
      for (int i = 0; i < ctx_.size(); ++i) {
        cells_.erase(ctx_.cell(i, d_));
        std::rotate(tails_[i].rbegin(), tails_[i].rbegin() + 1, tails_[i].rend());
      }
      --d_;
    }
  }

  PointContext ctx_;
  std::int64_t d_ = 0;
  Cells cells_;
  std::vector<std::vector<L>> tails_;

  template <class>
  friend class TailMap;
};

}  // namespace boolpow
