#include "run.hpp"

#include <algorithm>
#include <set>

#include "boolpow/free_algebra.hpp"
#include "boolpow/sampling.hpp"

namespace boolpow::cli {

using io::Json;

namespace {

std::vector<std::vector<int>> all_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= n;
  for (std::int64_t c = 0; c < total; ++c) out.push_back(decode_tuple(n, k, c));
  return out;
}

FiniteAlgebra algebra_of(const RunConfig& cfg) {
  require(cfg.alg.empty() || cfg.builtin.empty(), Errc::InvalidArgument, "give --alg or --builtin, not both");
  if (!cfg.alg.empty()) return io::load_algebra(io::read_file(cfg.alg));
  return builtin_algebra(cfg.builtin.empty() ? "gf2-idempotent-reduct" : cfg.builtin);
}

std::string algebra_label(const RunConfig& cfg) {
  if (!cfg.alg.empty()) return cfg.alg;
  return cfg.builtin.empty() ? "gf2-idempotent-reduct" : cfg.builtin;
}

// every_idempotent: without --filters, put one point at each idempotent
PowerContext power_of(const RunConfig& cfg, bool every_idempotent = false) {
  auto a = algebra_of(cfg);
  std::vector<int> filters = cfg.filters;
  if (filters.empty() && every_idempotent) {
    filters = idempotents(a);
    require(!filters.empty(), Errc::InvalidArgument, "the algebra has no idempotents to use as filters");
  } else if (filters.empty()) {
    auto es = idempotents(a);
    require(!es.empty(), Errc::InvalidArgument, "the algebra has no idempotents to use as filters");
    filters.assign(cfg.points, es.front());
  }
  return PowerContext::make(a, PointContext::standard(static_cast<int>(filters.size())), filters);
}

Json inspect_algebra(const RunConfig& cfg) {
  auto a = algebra_of(cfg);
  auto auts = automorphisms(a);
  auto subs = subalgebras(a);
  Json proper = Json::array();
  for (const auto& s : subs)
    if (static_cast<int>(s.size()) < a.size()) proper.push_back(s);
  auto m = find_malcev_term(a, cfg.budget);
  bool m_ok = m && is_malcev_term(a, *m);
  return {{"algebra", algebra_label(cfg)},
          {"size", a.size()},
          {"simple", is_simple(a)},
          {"abelian", is_abelian(a, cfg.budget)},
          {"idempotents", idempotents(a)},
          {"automorphisms", auts},
          {"aut_order", auts.size()},
          {"proper_subalgebras", proper},
          {"malcev_term", m ? Json(render_term(a, *m)) : Json(nullptr)},
          {"verified", m_ok}};
}

Json build_power(const RunConfig& cfg) {
  auto pc = power_of(cfg);
  auto elems = enumerate_elements(pc, cfg.depth, cfg.budget);
  // cells of length depth holding a point are pinned to its filter
  std::set<std::string> pinned;
  for (int i = 0; i < pc.size(); ++i) pinned.insert(pc.points.point(i).prefix(cfg.depth));
  double expected = 1;
  for (std::size_t c = 0; c < (std::size_t{1} << cfg.depth) - pinned.size(); ++c) expected *= pc.alg().size();
  bool filters_ok = true;
  for (const auto& f : elems)
    for (int i = 0; i < pc.size(); ++i) filters_ok &= f.at(pc.points.point(i)) == pc.filters[i];
  Json listed = Json::array();
  for (std::size_t i = 0; i < elems.size() && static_cast<int>(i) < cfg.limit; ++i) listed.push_back(io::to_json(elems[i]));
  return {{"context", io::to_json(pc)},
          {"depth", cfg.depth},
          {"count", elems.size()},
          {"expected_count", expected},
          {"elements", listed},
          {"verified", filters_ok && static_cast<double>(elems.size()) == expected}};
}

bool commutes(const FiniteAlgebra& a, const PowerEmbedding& phi, const PowerEmbedding& psi, const Amalgam& am) {
  for (const auto& t : all_tuples(a.size(), phi.u()))
    if (am.phi2.apply(phi.apply(t)) != am.psi2.apply(psi.apply(t))) return false;
  return true;
}

Json amalgamate_cmd(const RunConfig& cfg) {
  auto a = algebra_of(cfg);
  auto phi = cfg.phi.empty() ? PowerEmbedding::identity(a, 1) : io::embedding_from_json(a, io::read_file(cfg.phi));
  auto psi = cfg.psi.empty() ? PowerEmbedding::identity(a, 1) : io::embedding_from_json(a, io::read_file(cfg.psi));
  auto am = amalgamate(a, phi, psi);
  return {{"phi", io::to_json(phi)},
          {"psi", io::to_json(psi)},
          {"m", am.m},
          {"phi2", io::to_json(am.phi2)},
          {"psi2", io::to_json(am.psi2)},
          {"verified", commutes(a, phi, psi, am)}};
}

Json extend_homogeneity(const RunConfig& cfg) {
  auto pc = power_of(cfg, true);
  const auto& a = pc.alg();
  Rng rng(cfg.seed);
  BPEmbedding psi = cfg.psi.empty() ? level_embedding(pc, first_level(pc))
                                    : io::bp_embedding_from_json(pc, io::read_file(cfg.psi));
  PowerEmbedding phi;
  if (!cfg.phi.empty()) {
    phi = io::embedding_from_json(a, io::read_file(cfg.phi));
  } else {
    auto all = enumerate_embeddings(a, psi.u(), psi.u() + 1);
    require(!all.empty(), Errc::VerificationFailure, "no embeddings to extend along");
    phi = all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(all.size()) - 1))];
  }
  auto psi2 = extend_weak_homogeneity(phi, psi);
  bool ok = true;
  for (const auto& t : all_tuples(a.size(), phi.u())) ok &= psi2.apply(phi.apply(t)) == psi.apply(t);
  return {{"phi", io::to_json(phi)}, {"psi", io::to_json(psi)}, {"psi2", io::to_json(psi2)}, {"verified", ok}};
}

Json fraisse_chain(const RunConfig& cfg) {
  auto pc = power_of(cfg, true);
  const auto& a = pc.alg();
  auto chain = limit_chain(pc, cfg.depth);
  Json stages = Json::array();
  bool links_ok = true;
  for (std::size_t t = 0; t < chain.stages.size(); ++t) {
    Json s = {{"stage", t + 1}, {"level", chain.levels[t]}, {"arity", chain.stages[t].u()}};
    if (t + 1 < chain.stages.size()) {
      bool ok = true;
      for (const auto& x : all_tuples(a.size(), chain.stages[t].u()))
        ok &= chain.stages[t + 1].apply(chain.links[t].apply(x)) == chain.stages[t].apply(x);
      s["link_commutes"] = ok;
      links_ok &= ok;
    }
    stages.push_back(s);
  }
  // the second chain differs by a seeded swap of two free cells
  Rng rng(cfg.seed);
  std::vector<std::string> free;
  for (const char* w : {"000", "001", "010", "011", "100", "101", "110", "111"}) {
    bool hit = false;
    for (int i = 0; i < pc.size(); ++i) hit |= pc.points.point(i).has_prefix(w);
    if (!hit) free.push_back(w);
  }
  EPHomeo swap = EPHomeo::identity(pc.points);
  if (free.size() >= 2) {
    int i = uniform_int(rng, 0, static_cast<int>(free.size()) - 1);
    int j = uniform_int(rng, 0, static_cast<int>(free.size()) - 2);
    if (j >= i) ++j;
    swap = swap_cylinders(pc.points, free[i], free[j]);
  }
  auto other = push_forward(chain, swap);
  int rounds = std::min(cfg.depth, 3);
  auto trace = back_and_forth(chain, other, rounds);
  return {{"context", io::to_json(pc)},
          {"stages", stages},
          {"swap", io::to_json(swap)},
          {"back_and_forth", {{"rounds", rounds}, {"steps", trace.steps.size()}, {"verified", trace.verified}}},
          {"verified", links_ok && trace.verified}};
}

Json free_algebra_cmd(const RunConfig& cfg) {
  auto a = algebra_of(cfg);
  auto f = clone_generate(a, cfg.rank, cfg.budget);
  auto s = compute_Sk(a, cfg.rank);
  auto rep = verify_Fk_decomposition(f);
  auto es = idempotents(a);
  // classes by pattern on S_k; the idempotent-valued ones are subalgebras
  std::map<std::vector<int>, std::size_t> classes;
  std::map<std::vector<int>, std::size_t> first;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::vector<int> pat;
    for (const auto& t : s) pat.push_back(f.elements[i].at(t, a.size()));
    bool idem = std::all_of(pat.begin(), pat.end(), [&](int v) { return std::find(es.begin(), es.end(), v) != es.end(); });
    if (!idem) continue;
    ++classes[pat];
    first.emplace(pat, i);
  }
  Json theta = Json::array();
  bool trunc_ok = true;
  for (const auto& [pat, n] : classes) {
    auto w = theta_class_is_power_truncation(f, first[pat]);
    trunc_ok &= w.verified;
    theta.push_back({{"pattern", pat}, {"size", n}, {"filters", w.filters}, {"power_truncation", w.verified}});
  }
  return {{"algebra", algebra_label(cfg)},
          {"rank", cfg.rank},
          {"free_size", f.size()},
          {"S_k", s},
          {"decomposition",
           {{"r_size", rep.r_size},
            {"s_size", rep.s_size},
            {"exponent", rep.exponent},
            {"first_factor", rep.first_factor},
            {"second_factor", rep.second_factor},
            {"restriction_injective", rep.restriction_injective},
            {"first_is_full_power", rep.first_is_full_power},
            {"is_product", rep.is_product}}},
          {"theta_classes", theta},
          {"verified", rep.verified() && trunc_ok}};
}

Json reduce_idempotents_cmd(const RunConfig& cfg) {
  auto pc = power_of(cfg);
  auto red = reduce_idempotents(pc);
  auto elems = enumerate_elements(pc, std::min(cfg.depth, 3), cfg.budget);
  std::set<PowerElement> images;
  bool hom = true;
  for (const auto& f : elems) images.insert(red.witness.apply(f));
  const auto& a = pc.alg();
  for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
    int r = a.op(oi).arity;
    for (std::size_t k = 0; k < std::min<std::size_t>(elems.size(), 64); ++k) {
      std::vector<PowerElement> args;
      for (int q = 0; q < r; ++q) args.push_back(elems[(k + static_cast<std::size_t>(q) * 7) % elems.size()]);
      std::vector<PowerElement> imgs;
      for (const auto& x : args) imgs.push_back(red.witness.apply(x));
      hom &= red.witness.apply(apply_operation(pc, oi, args)) == apply_operation(red.reduced, oi, imgs);
    }
  }
  return {{"context", io::to_json(pc)},
          {"reduced", io::to_json(red.reduced)},
          {"class_of", red.class_of},
          {"representative", red.representative},
          {"alpha", red.alpha},
          {"checked_elements", elems.size()},
          {"injective", images.size() == elems.size()},
          {"homomorphism", hom},
          {"verified", hom && images.size() == elems.size()}};
}

Json demo_two_ends(const RunConfig& cfg) {
  auto h = two_ends_exchange();
  auto ev = two_ends_cluster_evidence(cfg.depth);
  Json levels = Json::array();
  for (const auto& l : ev.levels)
    levels.push_back({{"depth", l.depth},
                      {"cell_near_first", l.cell_near_first},
                      {"cell_near_second", l.cell_near_second},
                      {"meets_first", l.meets_first},
                      {"meets_second", l.meets_second}});
  return {{"homeo", io::to_json(h)},
          {"extends_to_X", h.extends_to_X()},
          {"cluster_evidence", levels},
          {"verified", !h.extends_to_X() && ev.verified()}};
}

Json factor_homeo(const RunConfig& cfg) {
  GoodPartition p = cfg.partition.empty() ? good_partition(PointContext::standard(cfg.points))
                                          : io::partition_from_json(io::read_file(cfg.partition));
  require(is_good_partition(p), Errc::PreconditionNotGood, "the blocks are not a good partition");
  Rng rng(cfg.seed);
  EPHomeo sigma = cfg.sigma.empty() ? random_homeo(p.ctx, rng) : io::homeo_from_json(p.ctx, io::read_file(cfg.sigma));
  auto rep = pigeonhole_factor(sigma, p);
  return {{"partition", io::to_json(p)},
          {"sigma", io::to_json(sigma)},
          {"i", rep.i},
          {"j", rep.j},
          {"failures", rep.failures},
          {"sigma1", io::to_json(rep.factors.sigma1)},
          {"sigma2", io::to_json(rep.factors.sigma2)},
          {"sigma3", io::to_json(rep.factors.sigma3)},
          {"checks",
           {{"sigma1_fixes_b_i", rep.factors.fixes_b_first},
            {"sigma2_fixes_rest", rep.factors.fixes_c_second},
            {"sigma3_fixes_b_i", rep.factors.fixes_b_third},
            {"product_exact", rep.factors.product_exact},
            {"product_sampled", rep.factors.product_sampled},
            {"setwise", rep.setwise_in_E}}},
          {"verified", rep.verified()}};
}

Json bergman_growth_cmd(const RunConfig& cfg) {
  PointContext ctx;
  std::vector<EPHomeo> gens;
  if (!cfg.gens.empty()) {
    auto j = io::read_file(cfg.gens);
    ctx = io::context_from_json(j.at("points"));
    for (const auto& g : j.at("generators")) gens.push_back(io::homeo_from_json(ctx, g));
  } else {
    // transpositions of neighbouring cylinders that avoid the points
    ctx = PointContext::standard(cfg.points);
    std::vector<std::string> free;
    for (int code = 0; code < (1 << cfg.depth); ++code) {
      std::string w;
      for (int b = cfg.depth - 1; b >= 0; --b) w += (code >> b) & 1 ? '1' : '0';
      bool hit = false;
      for (int i = 0; i < ctx.size(); ++i) hit |= ctx.point(i).has_prefix(w);
      if (!hit) free.push_back(w);
    }
    for (std::size_t i = 0; i + 1 < free.size(); ++i) gens.push_back(swap_cylinders(ctx, free[i], free[i + 1]));
  }
  auto rep = bergman_growth(ctx, gens, cfg.depth, cfg.steps, cfg.budget);
  Json table = Json::array();
  for (std::size_t t = 0; t < rep.sizes.size(); ++t) table.push_back({{"step", t + 1}, {"size", rep.sizes[t]}});
  return {{"points", io::to_json(ctx)},
          {"depth", rep.depth},
          {"cells", rep.cells},
          {"generators", gens.size()},
          {"sizes", table},
          {"stabilized_at", rep.stabilized_at ? Json(*rep.stabilized_at) : Json(nullptr)},
          {"monotone", rep.monotone()},
          {"verified", rep.monotone() && rep.stabilized_at.has_value()}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "inspect-algebra",    "build-power",   "amalgamate",   "extend-homogeneity", "fraisse-chain",
      "free-algebra",       "reduce-idempotents", "demo-two-ends", "factor-homeo", "bergman-growth"};
  return names;
}

Json run(const RunConfig& cfg) {
  const auto& c = cfg.command;
  Json report;
  if (c == "inspect-algebra") report = inspect_algebra(cfg);
  else if (c == "build-power") report = build_power(cfg);
  else if (c == "amalgamate") report = amalgamate_cmd(cfg);
  else if (c == "extend-homogeneity") report = extend_homogeneity(cfg);
  else if (c == "fraisse-chain") report = fraisse_chain(cfg);
  else if (c == "free-algebra") report = free_algebra_cmd(cfg);
  else if (c == "reduce-idempotents") report = reduce_idempotents_cmd(cfg);
  else if (c == "demo-two-ends") report = demo_two_ends(cfg);
  else if (c == "factor-homeo") report = factor_homeo(cfg);
  else if (c == "bergman-growth") report = bergman_growth_cmd(cfg);
  else fail(Errc::InvalidArgument, "unknown subcommand '" + c + "'");
  Json out = {{"command", c}, {"seed", cfg.seed}};
  out.update(report);
  return out;
}

}  // namespace boolpow::cli
