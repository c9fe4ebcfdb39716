#include "boolpow/power.hpp"

#include <functional>

namespace boolpow {

namespace {

std::optional<int> containing(const PowerElement::Cells& cells, const std::string& p) {
  return TailMap<int>::containing(cells, p);
}

void require_same(const PowerContext& a, const PowerContext& b) {
  require(a == b, Errc::ContextMismatch, "elements of different powers");
}

// Complete prefix code with k words: 0, 10, 110, ..., 1^(k-1).
std::vector<std::string> ladder_code(std::size_t k) {
  if (k == 1) return {""};
  std::vector<std::string> out;
  for (std::size_t j = 0; j + 1 < k; ++j) out.push_back(std::string(j, '1') + "0");
  out.push_back(std::string(k - 1, '1'));
  return out;
}

}  // namespace

PowerContext PowerContext::make(FiniteAlgebra a, PointContext points, std::vector<int> filters) {
  return make(std::make_shared<const FiniteAlgebra>(std::move(a)), std::move(points), std::move(filters));
}

PowerContext PowerContext::make(std::shared_ptr<const FiniteAlgebra> a, PointContext points,
                                std::vector<int> filters) {
  require(a != nullptr, Errc::InvalidArgument, "no algebra");
  require(static_cast<int>(filters.size()) == points.size(), Errc::ContextMismatch,
          "one filter per point is required");
  auto idem = idempotents(*a);
  for (int e : filters) {
    require(e >= 0 && e < a->size(), Errc::OutOfRange, "filter outside the carrier");
    require(std::find(idem.begin(), idem.end(), e) != idem.end(), Errc::FilterViolation,
            "filter " + std::to_string(e) + " is not idempotent");
  }
  return PowerContext{std::move(a), std::move(points), std::move(filters)};
}

bool PowerContext::operator==(const PowerContext& o) const {
  if (!(points == o.points) || filters != o.filters) return false;
  if (algebra == o.algebra) return true;
  return algebra && o.algebra && *algebra == *o.algebra;
}

PowerElement PowerElement::make(const PowerContext& ctx, const Cells& cells) {
  std::vector<std::string> words;
  for (const auto& [w, a] : cells) {
    require(is_bit_word(w), Errc::InvalidArgument, "cell '" + w + "' is not a binary word");
    require(a >= 0 && a < ctx.alg().size(), Errc::OutOfRange, "label outside the carrier");
    words.push_back(w);
  }
  require(is_complete_prefix_code(words), Errc::InvalidArgument, "cells do not partition 2^omega");
  PowerElement f;
  f.ctx_ = ctx;
  f.cells_ = TailMap<int>(PointContext(), 0, cells, {}).cells();
  for (int i = 0; i < ctx.size(); ++i)
    require(f.at(ctx.points.point(i)) == ctx.filters[i], Errc::FilterViolation,
            "the cell of point " + std::to_string(i) + " is not labelled by its filter");
  return f;
}

PowerElement PowerElement::constant(const PowerContext& ctx, int a) { return make(ctx, {{"", a}}); }

int PowerElement::at(const Point& p) const { return at_word(p.prefix(depth())); }

int PowerElement::at_word(const std::string& w) const {
  auto hit = containing(cells_, w);
  require(hit.has_value(), Errc::OutOfRange, "word '" + w + "' does not fix a label");
  return *hit;
}

std::size_t PowerElement::depth() const {
  std::size_t d = 0;
  for (const auto& [w, a] : cells_) d = std::max(d, w.size());
  return d;
}

std::vector<std::pair<std::string, std::vector<int>>> common_refinement(
    const std::vector<const PowerElement::Cells*>& parts) {
  std::vector<std::pair<std::string, std::vector<int>>> out;
  std::function<void(const std::string&)> go = [&](const std::string& p) {
    std::vector<int> labels;
    for (const auto* c : parts) {
      auto hit = containing(*c, p);
      if (!hit) break;
      labels.push_back(*hit);
    }
    if (labels.size() == parts.size()) {
      out.emplace_back(p, std::move(labels));
      return;
    }
    go(p + '0');
    go(p + '1');
  };
  go("");
  return out;
}

PowerElement apply_operation(const PowerContext& ctx, std::size_t op,
                             const std::vector<PowerElement>& args) {
  const auto& o = ctx.alg().op(op);
  require(static_cast<int>(args.size()) == o.arity, Errc::ArityMismatch,
          "operation " + o.name + " takes " + std::to_string(o.arity) + " arguments");
  std::vector<const PowerElement::Cells*> parts;
  for (const auto& f : args) {
    require_same(f.context(), ctx);
    parts.push_back(&f.cells());
  }
  if (parts.empty()) return PowerElement::constant(ctx, ctx.alg().apply(op, std::span<const int>{}));
  PowerElement::Cells cells;
  for (const auto& [w, ls] : common_refinement(parts)) cells.emplace(w, ctx.alg().apply(op, ls));
  return PowerElement::make(ctx, cells);
}

Clopen equalizer(const PowerElement& f, const PowerElement& g) {
  require_same(f.context(), g.context());
  std::vector<std::string> words;
  for (const auto& [w, ls] : common_refinement({&f.cells(), &g.cells()}))
    if (ls[0] == ls[1]) words.push_back(w);
  return Clopen::from_words(words);
}

PowerCongruence PowerCongruence::make(const PowerContext& ctx, const Clopen& support) {
  for (int i = 0; i < ctx.size(); ++i)
    require(support.contains(ctx.points.point(i)), Errc::InvalidArgument,
            "support must contain every distinguished point");
  return PowerCongruence{ctx, support};
}

PowerCongruence principal_congruence(const PowerElement& f, const PowerElement& g) {
  return PowerCongruence::make(f.context(), equalizer(f, g));
}

PowerCongruence congruence_meet(const PowerCongruence& a, const PowerCongruence& b) {
  require_same(a.ctx, b.ctx);
  return PowerCongruence{a.ctx, a.support | b.support};
}

PowerCongruence congruence_join(const PowerCongruence& a, const PowerCongruence& b) {
  require_same(a.ctx, b.ctx);
  return PowerCongruence{a.ctx, a.support & b.support};
}

bool related(const PowerCongruence& t, const PowerElement& f, const PowerElement& g) {
  require_same(t.ctx, f.context());
  return t.support.subset_of(equalizer(f, g));
}

PowerElement Restriction::apply(const PowerElement& f) const {
  require_same(f.context(), source);
  PowerElement::Cells cells;
  for (std::size_t j = 0; j < from.size(); ++j)
    for (const auto& [c, a] : f.cells()) {
      if (has_prefix(c, from[j])) cells.emplace(to[j] + c.substr(from[j].size()), a);
      else if (has_prefix(from[j], c)) cells.emplace(to[j], a);
    }
  return PowerElement::make(target, cells);
}

Restriction restrict_power(const PowerContext& ctx, const Clopen& b) {
  require(!b.empty(), Errc::EmptyRestriction, "restriction to the empty set");
  Restriction r;
  r.source = ctx;
  r.domain = b;
  r.from = b.words();
  r.to = ladder_code(r.from.size());
  std::vector<Branch> branches;
  std::vector<int> filters;
  for (int i = 0; i < ctx.size(); ++i) {
    Point x = ctx.points.point(i);
    for (std::size_t j = 0; j < r.from.size(); ++j) {
      if (!x.has_prefix(r.from[j])) continue;
      const Branch& br = ctx.points.branch(i);
      std::string root = r.to[j];
      if (r.from[j].size() < br.root.size()) root += br.root.substr(r.from[j].size());
      branches.push_back({root, br.spine});
      filters.push_back(ctx.filters[i]);
      r.kept.push_back(i);
    }
  }
  r.target = PowerContext::make(ctx.algebra, PointContext(std::move(branches)), std::move(filters));
  return r;
}

PowerContext glued_context(const PowerContext& d1, const PowerContext& d2) {
  require(d1.size() == 1 && d2.size() == 1, Errc::NotSinglePoint, "gluing needs single-point powers");
  require(*d1.algebra == *d2.algebra, Errc::ContextMismatch, "powers of different algebras");
  require(d1.filters == d2.filters, Errc::IdempotentMismatch, "powers with different filters");
  const Branch &b1 = d1.points.branch(0), &b2 = d2.points.branch(0);
  return PowerContext::make(d1.algebra, PointContext({{"0" + b1.root, b1.spine}, {"1" + b2.root, b2.spine}}),
                            {d1.filters[0], d1.filters[0]});
}

PowerElement product_iso(const PowerElement& f1, const PowerElement& f2) {
  PowerContext glued = glued_context(f1.context(), f2.context());
  PowerElement::Cells cells;
  for (const auto& [w, a] : f1.cells()) cells.emplace("0" + w, a);
  for (const auto& [w, a] : f2.cells()) cells.emplace("1" + w, a);
  return PowerElement::make(glued, cells);
}

std::pair<PowerElement, PowerElement> product_split(const PowerElement& f, const PowerContext& d1,
                                                    const PowerContext& d2) {
  require_same(f.context(), glued_context(d1, d2));
  PowerElement::Cells c1, c2;
  for (const auto& [w, a] : f.cells()) {
    if (w.empty()) {
      c1.emplace("", a);
      c2.emplace("", a);
    } else {
      (w[0] == '0' ? c1 : c2).emplace(w.substr(1), a);
    }
  }
  return {PowerElement::make(d1, c1), PowerElement::make(d2, c2)};
}

TailMap<int> to_punctured(const PowerElement& f) {
  const PointContext& pts = f.context().points;
  auto d = static_cast<std::int64_t>(f.depth());
  TailMap<int>::Cells cells;
  std::function<void(const std::string&)> go = [&](const std::string& p) {
    Location loc = pts.locate(p);
    if (loc.kind == Location::Kind::PointPrefix && loc.depth == d) return;
    if (loc.kind == Location::Kind::Off || loc.kind == Location::Kind::InCell) {
      if (auto hit = containing(f.cells(), p)) {
        cells.emplace(p, *hit);
        return;
      }
    }
    go(p + '0');
    go(p + '1');
  };
  go("");
  std::vector<std::vector<int>> tails;
  for (int e : f.context().filters) tails.push_back({e});
  return TailMap<int>(pts, d, cells, std::move(tails));
}

PowerElement from_punctured(const PowerContext& ctx, const TailMap<int>& t) {
  require(t.context() == ctx.points, Errc::ContextMismatch, "labelling over a different context");
  PowerElement::Cells cells(t.cells().begin(), t.cells().end());
  for (int i = 0; i < ctx.size(); ++i) {
    for (int a : t.tails()[i])
      require(a == ctx.filters[i], Errc::TailLabelViolation,
              "labels near point " + std::to_string(i) + " are not its filter");
    cells.emplace(ctx.points.hole(i, t.threshold()), ctx.filters[i]);
  }
  return PowerElement::make(ctx, cells);
}

PowerMap PowerMap::make(const PowerContext& dom, const PowerContext& cod, EPHomeo h, TailMap<Perm> k) {
  require(*dom.algebra == *cod.algebra, Errc::ContextMismatch, "powers of different algebras");
  require(h.domain() == dom.points && h.codomain() == cod.points, Errc::ContextMismatch,
          "homeomorphism between the wrong spaces");
  require(k.context() == cod.points, Errc::ContextMismatch, "labelling over the wrong space");
  for (const auto& a : k.labels())
    require(static_cast<int>(a.size()) == dom.alg().size() && is_automorphism(dom.alg(), a),
            Errc::NotAutomorphism, "label is not an automorphism");
  PowerMap m;
  m.dom_ = dom;
  m.cod_ = cod;
  m.h_ = std::move(h);
  m.k_ = std::move(k);
  // the filters near each target point are checked on an element that is
  // e_i on every root cylinder
  PowerElement::Cells base;
  for (const auto& w : dom.points.off_region()) base.emplace(w, 0);
  for (int i = 0; i < dom.size(); ++i) base.emplace(dom.points.branch(i).root, dom.filters[i]);
  m.apply(PowerElement::make(dom, base));
  return m;
}

PowerMap PowerMap::identity(const PowerContext& ctx) {
  PowerMap m;
  m.dom_ = m.cod_ = ctx;
  m.h_ = EPHomeo::identity(ctx.points);
  m.k_ = TailMap<Perm>(ctx.points, perm_identity(ctx.alg().size()));
  return m;
}

PowerElement PowerMap::apply(const PowerElement& f) const {
  require_same(f.context(), dom_);
  auto moved = h_.apply(to_punctured(f));
  auto g = TailMap<Perm>::combine(k_, moved, [](const Perm& a, const int& v) { return a[v]; });
  return from_punctured(cod_, g);
}

PowerMap PowerMap::inverse() const {
  PowerMap m;
  m.dom_ = cod_;
  m.cod_ = dom_;
  m.h_ = h_.inverse();
  m.k_ = m.h_.apply(k_.map([](const Perm& p) { return perm_inverse(p); }));
  return m;
}

bool PowerMap::operator==(const PowerMap& o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && k_ == o.k_ && h_ == o.h_;
}

PowerMap compose(const PowerMap& outer, const PowerMap& inner) {
  require(inner.cod_ == outer.dom_, Errc::ContextMismatch, "composition across different powers");
  PowerMap m;
  m.dom_ = inner.dom_;
  m.cod_ = outer.cod_;
  m.h_ = compose(outer.h_, inner.h_);
  m.k_ = TailMap<Perm>::combine(outer.k_, outer.h_.apply(inner.k_),
                                [](const Perm& a, const Perm& b) { return perm_compose(a, b); });
  return m;
}

PowerMap restriction_iso(const Restriction& r1, const Restriction& r2, const Perm& alpha,
                         const std::optional<EPHomeo>& h) {
  const PowerContext &d1 = r1.target, &d2 = r2.target;
  require(d1.size() == 1 && d2.size() == 1, Errc::PointMismatch,
          "each restriction must contain exactly one distinguished point");
  require(*d1.algebra == *d2.algebra, Errc::ContextMismatch, "powers of different algebras");
  require(static_cast<int>(alpha.size()) == d1.alg().size() && is_automorphism(d1.alg(), alpha),
          Errc::NotAutomorphism, "alpha is not an automorphism");
  require(alpha[d1.filters[0]] == d2.filters[0], Errc::IdempotentMismatch,
          "alpha does not carry the first filter onto the second");
  EPHomeo map = h ? *h : merge_branches(d1.points, d2.points, {0});
  require(map.domain() == d1.points && map.codomain() == d2.points, Errc::ContextMismatch,
          "homeomorphism between the wrong spaces");
  require(map.extends_to_X(), Errc::PointMismatch, "homeomorphism does not carry point to point");
  return PowerMap::make(d1, d2, std::move(map), TailMap<Perm>(d2.points, alpha));
}

Reduction reduce_idempotents(const PowerContext& ctx) {
  const FiniteAlgebra& a = ctx.alg();
  auto auts = automorphisms(a);
  Perm id = perm_identity(a.size());
  Reduction r;
  std::vector<int> filters;
  for (int i = 0; i < ctx.size(); ++i) {
    int cls = -1;
    Perm alpha;
    for (std::size_t c = 0; c < r.representative.size() && cls < 0; ++c) {
      int target = ctx.filters[r.representative[c]];
      if (ctx.filters[i] == target) {
        cls = static_cast<int>(c);
        alpha = id;
        break;
      }
      for (const auto& g : auts)
        if (g[ctx.filters[i]] == target) {
          cls = static_cast<int>(c);
          alpha = g;
          break;
        }
    }
    if (cls < 0) {
      cls = static_cast<int>(r.representative.size());
      r.representative.push_back(i);
      filters.push_back(ctx.filters[i]);
      alpha = id;
    }
    r.class_of.push_back(cls);
    r.alpha.push_back(alpha);
  }
  if (r.representative.size() == static_cast<std::size_t>(ctx.size())) {
    r.reduced = ctx;
    r.witness = PowerMap::identity(ctx);
    return r;
  }
  int n = static_cast<int>(r.representative.size());
  r.reduced = PowerContext::make(ctx.algebra, PointContext::standard(n), filters);
  EPHomeo h = merge_branches(ctx.points, r.reduced.points, r.class_of);
  std::vector<std::pair<Family, Perm>> labels;
  std::vector<std::int64_t> seen(n, 0), count(n, 0);
  for (int c : r.class_of) ++count[c];
  for (int i = 0; i < ctx.size(); ++i) {
    int c = r.class_of[i];
    labels.emplace_back(Family::prog(c, 2 + seen[c]++, count[c]), r.alpha[i]);
  }
  auto k = TailMap<Perm>::from_labeled_families(r.reduced.points, labels, id);
  r.witness = PowerMap::make(ctx, r.reduced, std::move(h), std::move(k));
  return r;
}

std::vector<int> GeneratedSubalgebra::projection(std::size_t cell) const {
  std::vector<int> out;
  for (const auto& t : tuples) out.push_back(t.at(cell));
  return out;
}

PowerElement GeneratedSubalgebra::element(const PowerContext& ctx, std::size_t i) const {
  PowerElement::Cells c;
  for (std::size_t j = 0; j < cells.size(); ++j) c.emplace(cells[j], tuples.at(i)[j]);
  return PowerElement::make(ctx, c);
}

GeneratedSubalgebra generated_subalgebra(const std::vector<PowerElement>& elems, std::size_t budget) {
  require(!elems.empty(), Errc::EmptyGeneratorSet, "no generators");
  const PowerContext& ctx = elems.front().context();
  std::vector<const PowerElement::Cells*> parts;
  for (const auto& f : elems) {
    require_same(f.context(), ctx);
    parts.push_back(&f.cells());
  }
  GeneratedSubalgebra g;
  auto refined = common_refinement(parts);
  std::vector<std::vector<int>> gens(elems.size());
  for (const auto& [w, ls] : refined) {
    g.cells.push_back(w);
    for (std::size_t i = 0; i < ls.size(); ++i) gens[i].push_back(ls[i]);
  }
  const FiniteAlgebra& a = ctx.alg();
  Closure cl;
  try {
    cl = close_tuples(a, gens, budget);
  } catch (const Error& e) {
    if (e.code() == Errc::SearchBudgetExceeded) fail(Errc::SizeBudgetExceeded, e.what());
    throw;
  }
  g.tuples = cl.elems;
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < g.tuples.size(); ++i) index.emplace(g.tuples[i], static_cast<int>(i));
  for (const auto& t : gens) g.generators.push_back(index.at(t));
  auto N = static_cast<std::int64_t>(g.tuples.size());
  std::vector<Operation> ops;
  for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
    const Operation& o = a.op(oi);
    std::int64_t rows = 1;
    for (int r = 0; r < o.arity; ++r) {
      rows *= N;
      require(rows <= (std::int64_t{1} << 22), Errc::SizeBudgetExceeded, "operation table too large");
    }
    Operation out{o.name, o.arity, std::vector<int>(static_cast<std::size_t>(rows))};
    std::vector<int> args(o.arity);
    std::vector<int> coord(o.arity);
    for (std::int64_t row = 0; row < rows; ++row) {
      std::int64_t rest = row;
      for (int r = o.arity - 1; r >= 0; --r) {
        args[r] = static_cast<int>(rest % N);
        rest /= N;
      }
      std::vector<int> val(g.cells.size());
      for (std::size_t j = 0; j < g.cells.size(); ++j) {
        for (int r = 0; r < o.arity; ++r) coord[r] = g.tuples[args[r]][j];
        val[j] = a.apply(oi, coord);
      }
      out.table[static_cast<std::size_t>(row)] = index.at(val);
    }
    ops.push_back(std::move(out));
  }
  g.algebra = FiniteAlgebra(static_cast<int>(N), std::move(ops));
  return g;
}

std::vector<PowerElement> enumerate_elements(const PowerContext& ctx, int depth, std::size_t limit) {
  require(depth >= 0 && depth <= 20, Errc::OutOfRange, "depth out of range");
  std::vector<std::string> words{""};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::string> next;
    for (const auto& w : words) {
      next.push_back(w + '0');
      next.push_back(w + '1');
    }
    words = std::move(next);
  }
  std::vector<int> forced(words.size(), -1);
  for (std::size_t j = 0; j < words.size(); ++j)
    for (int i = 0; i < ctx.size(); ++i) {
      if (!ctx.points.point(i).has_prefix(words[j])) continue;
      if (forced[j] >= 0 && forced[j] != ctx.filters[i]) return {};
      forced[j] = ctx.filters[i];
    }
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < words.size(); ++j)
    if (forced[j] < 0) free.push_back(j);
  const int n = ctx.alg().size();
  double total = 1;
  for (std::size_t k = 0; k < free.size(); ++k) total *= n;
  require(total <= static_cast<double>(limit), Errc::SizeBudgetExceeded,
          "too many elements at depth " + std::to_string(depth));
  std::vector<int> labels = forced;
  for (auto j : free) labels[j] = 0;
  std::vector<PowerElement> out;
  while (true) {
    PowerElement::Cells cells;
    for (std::size_t j = 0; j < words.size(); ++j) cells.emplace(words[j], labels[j]);
    out.push_back(PowerElement::make(ctx, cells));
    std::size_t k = 0;
    while (k < free.size() && ++labels[free[k]] == n) labels[free[k++]] = 0;
    if (k == free.size()) break;
  }
  return out;
}

}  // namespace boolpow
