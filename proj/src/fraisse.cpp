#include "boolpow/fraisse.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace boolpow {

namespace {

bool is_idempotent(const FiniteAlgebra& a, int e) {
  auto es = idempotents(a);
  return std::find(es.begin(), es.end(), e) != es.end();
}

void check_coord(const FiniteAlgebra& a, const Coord& c, int u) {
  if (c.is_aut) {
    require(static_cast<int>(c.aut.size()) == a.size() && is_automorphism(a, c.aut), Errc::NotEmbedding,
            "coordinate label is not an automorphism");
    require(c.src >= 0 && c.src < u, Errc::NotEmbedding, "coordinate source out of range");
  } else {
    require(c.idem >= 0 && c.idem < a.size() && is_idempotent(a, c.idem), Errc::NotEmbedding,
            "constant coordinate " + std::to_string(c.idem) + " is not an idempotent");
  }
}

void check_cover(const std::vector<bool>& hit) {
  for (std::size_t j = 0; j < hit.size(); ++j)
    require(hit[j], Errc::NotEmbedding, "source coordinate " + std::to_string(j) + " is never read");
}

std::size_t tuple_count(int n, int k, std::size_t limit) {
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<std::size_t>(n);
    if (total > limit) return limit + 1;
  }
  return total;
}

// Word -> piece index over all pieces of a partition.
std::map<std::string, int> word_index(const std::vector<BPEmbedding::Piece>& pieces) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (const auto& w : pieces[i].region.words()) out.emplace(w, static_cast<int>(i));
  return out;
}

// Indices of entries whose word is comparable with w.
template <class V>
std::vector<V> overlapping(const std::map<std::string, V>& code, const std::string& w) {
  std::vector<V> out;
  for (std::size_t l = 0; l <= w.size(); ++l) {
    auto it = code.find(w.substr(0, l));
    if (it != code.end()) out.push_back(it->second);
  }
  for (auto it = code.upper_bound(w); it != code.end() && it->first.compare(0, w.size(), w) == 0; ++it)
    out.push_back(it->second);
  return out;
}

// Number of leading symbols shared by two distinct points.
std::size_t common_prefix(const Point& x, const Point& y) {
  std::size_t bound = x.pre().size() + y.pre().size() + x.per().size() * y.per().size() + 1;
  for (std::size_t k = 0; k < bound; ++k)
    if (x.at(k) != y.at(k)) return k;
  fail(Errc::InvalidArgument, "points coincide");
}

Perm identity_of(const FiniteAlgebra& a) { return perm_identity(a.size()); }

}  // namespace

Coord compose_coord(const Coord& outer, const std::vector<Coord>& inner) {
  if (!outer.is_aut) return outer;
  const Coord& c = inner.at(outer.src);
  if (c.is_aut) return Coord::of(perm_compose(outer.aut, c.aut), c.src);
  return Coord::constant(outer.aut[c.idem]);
}

PowerEmbedding PowerEmbedding::raw(int u, std::vector<Coord> coords) {
  PowerEmbedding e;
  e.u_ = u;
  e.coords_ = std::move(coords);
  return e;
}

PowerEmbedding PowerEmbedding::make(const FiniteAlgebra& a, int u, std::vector<Coord> coords) {
  require(u >= 1, Errc::InvalidArgument, "source arity must be positive");
  require(u <= static_cast<int>(coords.size()), Errc::ArityOrder, "source arity exceeds target arity");
  std::vector<bool> hit(u, false);
  for (const auto& c : coords) {
    check_coord(a, c, u);
    if (c.is_aut) hit[c.src] = true;
  }
  check_cover(hit);
  return raw(u, std::move(coords));
}

PowerEmbedding PowerEmbedding::identity(const FiniteAlgebra& a, int u) {
  std::vector<Coord> cs;
  for (int j = 0; j < u; ++j) cs.push_back(Coord::of(identity_of(a), j));
  return make(a, u, std::move(cs));
}

PowerEmbedding PowerEmbedding::block(const FiniteAlgebra& a, const std::vector<int>& mult,
                                     const std::vector<int>& idem_mult) {
  auto es = idempotents(a);
  require(idem_mult.size() <= es.size(), Errc::OutOfRange, "more idempotent blocks than idempotents");
  std::vector<Coord> cs;
  for (std::size_t j = 0; j < mult.size(); ++j)
    for (int r = 0; r < mult[j]; ++r) cs.push_back(Coord::of(identity_of(a), static_cast<int>(j)));
  for (std::size_t t = 0; t < idem_mult.size(); ++t)
    for (int r = 0; r < idem_mult[t]; ++r) cs.push_back(Coord::constant(es[t]));
  return make(a, static_cast<int>(mult.size()), std::move(cs));
}

std::vector<int> PowerEmbedding::apply(const std::vector<int>& a) const {
  require(static_cast<int>(a.size()) == u_, Errc::ArityMismatch, "tuple has the wrong length");
  std::vector<int> out;
  for (const auto& c : coords_) out.push_back(c.eval(a));
  return out;
}

PowerEmbedding PowerEmbedding::inverse() const {
  require(v() == u_, Errc::NotBijective, "only square embeddings are invertible");
  std::vector<Coord> inv(u_);
  std::vector<bool> hit(u_, false);
  for (int i = 0; i < v(); ++i) {
    const Coord& c = coords_[i];
    require(c.is_aut && !hit[c.src], Errc::NotBijective, "coordinates are not a relabelled permutation");
    hit[c.src] = true;
    inv[c.src] = Coord::of(perm_inverse(c.aut), i);
  }
  return raw(u_, std::move(inv));
}

PowerEmbedding compose(const PowerEmbedding& outer, const PowerEmbedding& inner) {
  require(outer.u() == inner.v(), Errc::ArityMismatch, "arities do not chain");
  std::vector<Coord> cs;
  for (const auto& c : outer.coords()) cs.push_back(compose_coord(c, inner.coords()));
  return PowerEmbedding::raw(inner.u(), std::move(cs));
}

PowerEmbedding embedding_from_function(const FiniteAlgebra& a, int u, int v,
                                       const std::function<std::vector<int>(const std::vector<int>&)>& f) {
  std::size_t total = tuple_count(a.size(), u, 1u << 16);
  require(total <= (1u << 16), Errc::SizeBudgetExceeded, "too many source tuples");
  std::vector<std::vector<int>> args, vals;
  for (std::size_t code = 0; code < total; ++code) {
    args.push_back(decode_tuple(a.size(), u, static_cast<std::int64_t>(code)));
    vals.push_back(f(args.back()));
    require(static_cast<int>(vals.back().size()) == v, Errc::ArityMismatch, "image has the wrong length");
  }
  auto auts = automorphisms(a);
  std::vector<Coord> cs;
  for (int i = 0; i < v; ++i) {
    std::optional<Coord> found;
    std::vector<Coord> cands;
    for (int e : idempotents(a)) cands.push_back(Coord::constant(e));
    for (const auto& g : auts)
      for (int j = 0; j < u; ++j) cands.push_back(Coord::of(g, j));
    for (const auto& c : cands) {
      bool ok = true;
      for (std::size_t t = 0; t < total && ok; ++t) ok = c.eval(args[t]) == vals[t][i];
      if (ok) {
        found = c;
        break;
      }
    }
    require(found.has_value(), Errc::NotEmbedding,
            "coordinate " + std::to_string(i) + " is neither a relabelled projection nor a constant idempotent");
    cs.push_back(*found);
  }
  return PowerEmbedding::make(a, u, std::move(cs));
}

NormalForm normalize_embedding(const FiniteAlgebra& a, const PowerEmbedding& emb) {
  auto checked = PowerEmbedding::make(a, emb.u(), emb.coords());
  auto es = idempotents(a);
  NormalForm nf;
  nf.p.assign(emb.u(), 0);
  nf.q.assign(es.size(), 0);
  std::vector<std::pair<std::pair<int, int>, int>> keys;
  for (int i = 0; i < emb.v(); ++i) {
    const Coord& c = emb.coords()[i];
    if (c.is_aut) {
      ++nf.p[c.src];
      keys.push_back({{c.src, i}, i});
    } else {
      int t = static_cast<int>(std::find(es.begin(), es.end(), c.idem) - es.begin());
      ++nf.q[t];
      keys.push_back({{emb.u() + t, i}, i});
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<int> pos(emb.v());
  for (std::size_t t = 0; t < keys.size(); ++t) {
    nf.order.push_back(keys[t].second);
    pos[keys[t].second] = static_cast<int>(t);
  }
  nf.block = PowerEmbedding::block(a, nf.p, nf.q);
  std::vector<Coord> re;
  for (int i = 0; i < emb.v(); ++i) {
    const Coord& c = emb.coords()[i];
    re.push_back(Coord::of(c.is_aut ? c.aut : identity_of(a), pos[i]));
  }
  nf.rearrange = PowerEmbedding::make(a, emb.v(), std::move(re));
  require(compose(nf.rearrange, nf.block) == checked, Errc::VerificationFailure,
          "normal form does not recompose the embedding");
  return nf;
}

std::vector<PowerEmbedding> enumerate_embeddings(const FiniteAlgebra& a, int u, int v) {
  std::vector<Coord> choices;
  for (const auto& g : automorphisms(a))
    for (int j = 0; j < u; ++j) choices.push_back(Coord::of(g, j));
  for (int e : idempotents(a)) choices.push_back(Coord::constant(e));
  int n = static_cast<int>(choices.size());
  std::size_t total = tuple_count(n, v, 1u << 20);
  require(total <= (1u << 20), Errc::SizeBudgetExceeded, "too many candidate embeddings");
  std::vector<PowerEmbedding> out;
  for (std::size_t code = 0; code < total; ++code) {
    auto pick = decode_tuple(n, v, static_cast<std::int64_t>(code));
    std::vector<bool> hit(u, false);
    std::vector<Coord> cs;
    for (int x : pick) {
      cs.push_back(choices[x]);
      if (choices[x].is_aut) hit[choices[x].src] = true;
    }
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
      out.push_back(PowerEmbedding::make(a, u, std::move(cs)));
  }
  return out;
}

JointEmbedding jep(const FiniteAlgebra& a, int u, int w) {
  require(u >= 1 && w >= 1, Errc::InvalidArgument, "arities must be positive");
  auto es = idempotents(a);
  Perm id = identity_of(a);
  // pad with an idempotent when there is one, else with a copy of the first coordinate
  auto pad = [&](int src) { return es.empty() ? Coord::of(id, src) : Coord::constant(es.front()); };
  std::vector<Coord> c1, c2;
  for (int j = 0; j < u; ++j) c1.push_back(Coord::of(id, j));
  for (int j = 0; j < w; ++j) c1.push_back(pad(0));
  for (int j = 0; j < u; ++j) c2.push_back(pad(0));
  for (int j = 0; j < w; ++j) c2.push_back(Coord::of(id, j));
  return {u + w, PowerEmbedding::make(a, u, std::move(c1)), PowerEmbedding::make(a, w, std::move(c2))};
}

namespace {

// Block-form side of an amalgam: source blocks of sizes p (then q per
// idempotent) go onto target blocks of sizes vm (then wm). The first copy
// takes up the slack; an empty idempotent block becomes constants.
PowerEmbedding amalgam_side(const FiniteAlgebra& a, const std::vector<int>& p, const std::vector<int>& q,
                            const std::vector<int>& vm, const std::vector<int>& wm) {
  auto es = idempotents(a);
  Perm id = identity_of(a);
  std::vector<Coord> cs;
  int src = 0;
  auto emit = [&](int count, int target) {
    for (int k = 0; k < count; ++k) {
      int copies = k == 0 ? target - count + 1 : 1;
      for (int r = 0; r < copies; ++r) cs.push_back(Coord::of(id, src));
      ++src;
    }
  };
  for (std::size_t i = 0; i < p.size(); ++i) emit(p[i], vm[i]);
  for (std::size_t t = 0; t < q.size(); ++t) {
    if (q[t] == 0) {
      for (int r = 0; r < wm[t]; ++r) cs.push_back(Coord::constant(es[t]));
    } else {
      emit(q[t], wm[t]);
    }
  }
  return PowerEmbedding::make(a, src, std::move(cs));
}

}  // namespace

Amalgam amalgamate(const FiniteAlgebra& a, const PowerEmbedding& phi, const PowerEmbedding& psi) {
  require(phi.u() == psi.u(), Errc::SourceMismatch, "embeddings have different sources");
  auto n1 = normalize_embedding(a, phi), n2 = normalize_embedding(a, psi);
  std::vector<int> vm, wm;
  Amalgam out;
  for (std::size_t i = 0; i < n1.p.size(); ++i) vm.push_back(std::max(n1.p[i], n2.p[i]));
  for (std::size_t t = 0; t < n1.q.size(); ++t) wm.push_back(std::max(n1.q[t], n2.q[t]));
  for (int x : vm) out.m += x;
  for (int x : wm) out.m += x;
  out.phi2 = compose(amalgam_side(a, n1.p, n1.q, vm, wm), n1.rearrange.inverse());
  out.psi2 = compose(amalgam_side(a, n2.p, n2.q, vm, wm), n2.rearrange.inverse());
  require(compose(out.phi2, phi) == compose(out.psi2, psi), Errc::VerificationFailure,
          "the amalgam square does not commute");
  return out;
}

BPEmbedding BPEmbedding::make(const PowerContext& ctx, int u, std::vector<Piece> pieces) {
  require(u >= 1, Errc::InvalidArgument, "source arity must be positive");
  const FiniteAlgebra& a = ctx.alg();
  Clopen seen;
  std::vector<bool> hit(u, false);
  for (const auto& pc : pieces) {
    require(!pc.region.empty(), Errc::InvalidArgument, "empty piece");
    require((seen & pc.region).empty(), Errc::InvalidArgument, "pieces overlap");
    seen = seen | pc.region;
    check_coord(a, pc.coord, u);
    if (pc.coord.is_aut) hit[pc.coord.src] = true;
  }
  require(seen.is_full(), Errc::InvalidArgument, "pieces do not cover 2^omega");
  check_cover(hit);
  for (int i = 0; i < ctx.size(); ++i) {
    Point x = ctx.points.point(i);
    for (const auto& pc : pieces)
      if (pc.region.contains(x))
        require(!pc.coord.is_aut && pc.coord.idem == ctx.filters[i], Errc::FilterViolation,
                "the piece around point " + std::to_string(i) + " is not constant at its filter");
  }
  BPEmbedding e;
  e.ctx_ = ctx;
  e.u_ = u;
  e.pieces_ = std::move(pieces);
  return e;
}

std::size_t BPEmbedding::cell_count() const {
  return static_cast<std::size_t>(
      std::count_if(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.coord.is_aut; }));
}

PowerElement BPEmbedding::apply(const std::vector<int>& a) const {
  require(static_cast<int>(a.size()) == u_, Errc::ArityMismatch, "tuple has the wrong length");
  PowerElement::Cells cells;
  for (const auto& pc : pieces_)
    for (const auto& w : pc.region.words()) cells.emplace(w, pc.coord.eval(a));
  return PowerElement::make(ctx_, cells);
}

std::optional<std::vector<int>> BPEmbedding::preimage(const PowerElement& f) const {
  std::map<std::string, int> fcells(f.cells().begin(), f.cells().end());
  std::vector<int> a(u_, -1);
  for (const auto& pc : pieces_)
    for (const auto& w : pc.region.words()) {
      auto vals = overlapping(fcells, w);
      for (int val : vals) {
        if (val != vals.front()) return std::nullopt;
        if (!pc.coord.is_aut) {
          if (val != pc.coord.idem) return std::nullopt;
          continue;
        }
        int x = perm_inverse(pc.coord.aut)[val];
        if (a[pc.coord.src] >= 0 && a[pc.coord.src] != x) return std::nullopt;
        a[pc.coord.src] = x;
      }
    }
  return a;
}

bool BPEmbedding::same_map(const BPEmbedding& o) const {
  if (!(ctx_ == o.ctx_) || u_ != o.u_) return false;
  auto idx = word_index(o.pieces_);
  for (const auto& pc : pieces_)
    for (const auto& w : pc.region.words())
      for (int j : overlapping(idx, w))
        if (!(o.pieces_[j].coord == pc.coord)) return false;
  return true;
}

BPEmbedding BPEmbedding::push_forward(const EPHomeo& h) const {
  require(h.domain() == ctx_.points && h.codomain() == ctx_.points, Errc::ContextMismatch,
          "homeomorphism of a different space");
  require(h.extends_to_X(), Errc::NotExtendable, "homeomorphism has no extension to 2^omega");
  require(h.fixes_points(), Errc::PointNotFixed, "homeomorphism moves a distinguished point");
  std::vector<Piece> out;
  for (const auto& pc : pieces_)
    out.push_back({h.apply(TailClopen::from_clopen(ctx_.points, pc.region)).closure(), pc.coord});
  return make(ctx_, u_, std::move(out));
}

BPEmbedding compose(const BPEmbedding& psi, const PowerEmbedding& phi) {
  require(psi.u() == phi.v(), Errc::ArityMismatch, "arities do not chain");
  std::vector<BPEmbedding::Piece> out;
  for (const auto& pc : psi.pieces()) out.push_back({pc.region, compose_coord(pc.coord, phi.coords())});
  return BPEmbedding::make(psi.context(), phi.u(), std::move(out));
}

BPEmbedding extend_weak_homogeneity(const PowerEmbedding& phi, const BPEmbedding& psi, std::size_t check_limit) {
  require(phi.u() <= phi.v(), Errc::ArityOrder, "source arity exceeds target arity");
  require(phi.u() == psi.u(), Errc::SourceMismatch, "embeddings have different sources");
  const PowerContext& ctx = psi.context();
  const FiniteAlgebra& a = ctx.alg();
  auto nf = normalize_embedding(a, phi);
  auto es = idempotents(a);
  std::vector<BPEmbedding::Piece> pieces = psi.pieces();

  // refine until source j is read by at least p_j pieces, splitting the largest
  for (int j = 0; j < phi.u(); ++j) {
    while (true) {
      std::vector<std::size_t> readers;
      for (std::size_t k = 0; k < pieces.size(); ++k)
        if (pieces[k].coord.is_aut && pieces[k].coord.src == j) readers.push_back(k);
      if (static_cast<int>(readers.size()) >= nf.p[j]) break;
      std::size_t big = readers.front();
      for (auto k : readers)
        if (pieces[k].region.measure() > pieces[big].region.measure()) big = k;
      auto [h1, h2] = split(pieces[big].region);
      Coord c = pieces[big].coord;
      pieces[big].region = h1;
      pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(big) + 1, {h2, c});
    }
  }

  std::vector<int> block_start(phi.u() + 1, 0);
  for (int j = 0; j < phi.u(); ++j) block_start[j + 1] = block_start[j] + nf.p[j];
  std::vector<BPEmbedding::Piece> out;
  std::vector<int> seen(phi.u(), 0);
  for (const auto& pc : pieces) {
    if (!pc.coord.is_aut) continue;
    int j = pc.coord.src;
    int k = std::min(seen[j]++, nf.p[j] - 1);
    out.push_back({pc.region, Coord::of(pc.coord.aut, block_start[j] + k)});
  }

  // carve q_t new cells out of a piece constant at e_t
  std::vector<bool> used(pieces.size(), false);
  int next = block_start[phi.u()];
  std::vector<std::pair<std::size_t, std::vector<Clopen>>> carved;
  for (std::size_t t = 0; t < es.size(); ++t) {
    if (nf.q[t] == 0) continue;
    std::optional<std::size_t> host;
    int host_point = -1;
    for (int i = 0; i < ctx.size() && !host; ++i) {
      if (ctx.filters[i] != es[t]) continue;
      for (std::size_t k = 0; k < pieces.size(); ++k)
        if (!used[k] && pieces[k].region.contains(ctx.points.point(i))) {
          host = k;
          host_point = i;
        }
    }
    for (std::size_t k = 0; k < pieces.size() && !host; ++k)
      if (!used[k] && !pieces[k].coord.is_aut && pieces[k].coord.idem == es[t]) host = k;
    require(host.has_value(), Errc::ExtensionFailure,
            "no region constant at idempotent " + std::to_string(es[t]) + " to carve new cells from");
    used[*host] = true;
    Clopen rest = pieces[*host].region;
    std::vector<Clopen> cells;
    if (host_point >= 0) {
      Point x = ctx.points.point(host_point);
      std::size_t len = 0;
      for (const auto& w : rest.words()) len = std::max(len, w.size());
      for (int i = 0; i < ctx.size(); ++i)
        if (i != host_point) len = std::max(len, common_prefix(x, ctx.points.point(i)) + 1);
      for (int r = 0; r < nf.q[t]; ++r) {
        std::string w = x.prefix(len + r);
        w += x.at(len + r) == '0' ? '1' : '0';
        cells.push_back(Clopen::from_words({w}));
        rest = rest - cells.back();
      }
    } else {
      for (int r = 0; r < nf.q[t]; ++r) {
        auto [h1, h2] = split(rest);
        cells.push_back(h2);
        rest = h1;
      }
    }
    for (const auto& c : cells) out.push_back({c, Coord::of(identity_of(a), next++)});
    out.push_back({rest, pieces[*host].coord});
  }
  for (std::size_t k = 0; k < pieces.size(); ++k)
    if (!pieces[k].coord.is_aut && !used[k]) out.push_back(pieces[k]);

  auto in_block = BPEmbedding::make(ctx, phi.v(), std::move(out));
  auto result = compose(in_block, nf.rearrange.inverse());
  require(compose(result, phi).same_map(psi), Errc::VerificationFailure,
          "extension does not restrict to the given embedding");
  std::size_t total = tuple_count(a.size(), phi.u(), check_limit);
  if (total <= check_limit) {
    auto back = compose(result, phi);
    for (std::size_t code = 0; code < total; ++code) {
      auto t = decode_tuple(a.size(), phi.u(), static_cast<std::int64_t>(code));
      require(back.apply(t) == psi.apply(t), Errc::VerificationFailure,
              "extension disagrees with the given embedding on a tuple");
    }
  }
  return result;
}

std::optional<PowerEmbedding> factor_through(const BPEmbedding& chi, const BPEmbedding& psi) {
  require(chi.context() == psi.context(), Errc::ContextMismatch, "embeddings into different powers");
  auto idx = word_index(psi.pieces());
  std::vector<std::optional<Coord>> coords(chi.u());
  for (const auto& pc : chi.pieces()) {
    std::optional<Coord> seen;
    for (const auto& w : pc.region.words())
      for (int j : overlapping(idx, w)) {
        const Coord& c = psi.pieces()[j].coord;
        if (seen && !(*seen == c)) return std::nullopt;
        seen = c;
      }
    if (!seen) continue;
    if (!pc.coord.is_aut) {
      if (!(*seen == pc.coord)) return std::nullopt;
      continue;
    }
    Perm inv = perm_inverse(pc.coord.aut);
    Coord want = seen->is_aut ? Coord::of(perm_compose(inv, seen->aut), seen->src) : Coord::constant(inv[seen->idem]);
    auto& slot = coords[pc.coord.src];
    if (slot && !(*slot == want)) return std::nullopt;
    slot = want;
  }
  std::vector<Coord> cs;
  for (auto& c : coords) {
    if (!c) return std::nullopt;
    cs.push_back(*c);
  }
  auto phi = PowerEmbedding::make(chi.context().alg(), psi.u(), std::move(cs));
  if (!compose(chi, phi).same_map(psi)) return std::nullopt;
  return phi;
}

BPEmbedding level_embedding(const PowerContext& ctx, int level) {
  require(level >= 0 && level <= 20, Errc::SizeBudgetExceeded, "level out of range");
  std::vector<BPEmbedding::Piece> pieces;
  Perm id = identity_of(ctx.alg());
  int k = 0;
  for (std::int64_t code = 0; code < (std::int64_t{1} << level); ++code) {
    std::string w;
    for (int b = level - 1; b >= 0; --b) w += ((code >> b) & 1) ? '1' : '0';
    std::optional<int> filter;
    for (int i = 0; i < ctx.size(); ++i) {
      if (!ctx.points.point(i).has_prefix(w)) continue;
      require(!filter || *filter == ctx.filters[i], Errc::NotRepresentable,
              "cell " + w + " holds points with different filters");
      filter = ctx.filters[i];
    }
    pieces.push_back({Clopen::from_words({w}), filter ? Coord::constant(*filter) : Coord::of(id, k++)});
  }
  require(k >= 1, Errc::NotRepresentable, "every cell holds a point");
  return BPEmbedding::make(ctx, k, std::move(pieces));
}

int first_level(const PowerContext& ctx) {
  for (int level = 0; level <= 20; ++level) {
    try {
      level_embedding(ctx, level);
      return level;
    } catch (const Error& e) {
      if (e.code() != Errc::NotRepresentable) throw;
    }
  }
  fail(Errc::NotRepresentable, "points are not separated by short prefixes");
}

PowerEmbedding level_link(const PowerContext& ctx, int lo, int hi) {
  require(lo <= hi, Errc::ArityOrder, "levels out of order");
  auto small = level_embedding(ctx, lo), big = level_embedding(ctx, hi);
  auto idx = word_index(small.pieces());
  std::vector<Coord> cs;
  for (const auto& pc : big.pieces()) {
    if (!pc.coord.is_aut) continue;
    const Coord& up = small.pieces()[overlapping(idx, pc.region.words().front()).front()].coord;
    cs.push_back(up);
  }
  return PowerEmbedding::make(ctx.alg(), small.u(), std::move(cs));
}

BPEmbedding LimitChain::at_level(int level) const { return level_embedding(ctx, level).push_forward(shift); }

LimitChain limit_chain(const PowerContext& ctx, int depth) {
  require(depth >= 1, Errc::InvalidArgument, "depth must be positive");
  LimitChain c;
  c.ctx = ctx;
  c.shift = EPHomeo::identity(ctx.points);
  int lo = first_level(ctx);
  for (int t = 1; t <= depth; ++t) {
    c.levels.push_back(std::max(t, lo));
    c.stages.push_back(level_embedding(ctx, c.levels.back()));
    if (t > 1) c.links.push_back(level_link(ctx, c.levels[t - 2], c.levels[t - 1]));
  }
  return c;
}

LimitChain push_forward(const LimitChain& c, const EPHomeo& h) {
  LimitChain out = c;
  out.shift = compose(h, c.shift);
  for (auto& s : out.stages) s = s.push_forward(h);
  return out;
}

namespace {
constexpr int kMaxCoverLevel = 14;
}  // namespace

BackForthTrace back_and_forth(const LimitChain& c1, const LimitChain& c2, int rounds) {
  require(c1.ctx == c2.ctx, Errc::ContextMismatch, "chains over different powers");
  require(rounds >= 0, Errc::InvalidArgument, "negative round count");
  BackForthTrace trace;
  trace.verified = true;
  if (rounds == 0) return trace;
  require(!c1.stages.empty() && !c2.stages.empty(), Errc::InvalidArgument, "empty chain");
  BPEmbedding left = c1.stages[0], right = c2.stages[0];
  require(left.u() == right.u(), Errc::ExtensionFailure, "first stages have different arities");
  auto cover = [&](const LimitChain& c, const BPEmbedding& held, int t) {
    int lo = t <= static_cast<int>(c.levels.size()) ? c.levels[t - 1] : std::max(t, c.levels.back());
    // the image is constant on cells one level below its deepest word, pulled back along the shift
    int need = lo;
    auto pulled = held.push_forward(c.shift.inverse());
    for (const auto& pc : pulled.pieces())
      for (const auto& w : pc.region.words()) need = std::max(need, static_cast<int>(w.size()) + 1);
    require(need <= kMaxCoverLevel, Errc::SizeBudgetExceeded,
            "the current image needs stage level " + std::to_string(need));
    for (int level = lo; level <= need; ++level) {
      auto target = c.at_level(level);
      if (auto phi = factor_through(target, held)) return std::make_pair(target, *phi);
    }
    fail(Errc::ExtensionFailure, "no stage up to level " + std::to_string(need) + " contains the current image");
  };
  for (int t = 1; t <= rounds; ++t) {
    for (bool forth : {true, false}) {
      BackForthStep step;
      step.forth = forth;
      step.stage = t;
      if (forth) {
        auto [target, phi] = cover(c1, left, t);
        step.right = extend_weak_homogeneity(phi, right);
        step.left = target;
        step.link = phi;
      } else {
        auto [target, phi] = cover(c2, right, t);
        step.left = extend_weak_homogeneity(phi, left);
        step.right = target;
        step.link = phi;
      }
      trace.verified = trace.verified && compose(step.left, step.link).same_map(left) &&
                       compose(step.right, step.link).same_map(right);
      left = step.left;
      right = step.right;
      trace.steps.push_back(std::move(step));
    }
  }
  return trace;
}

}  // namespace boolpow
