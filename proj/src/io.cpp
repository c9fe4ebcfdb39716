#include "boolpow/io.hpp"

#include <fstream>
#include <sstream>

namespace boolpow::io {

namespace {

template <class F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, std::string("bad ") + what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const FiniteAlgebra& a) {
  Json ops = Json::array();
  for (const auto& op : a.ops()) ops.push_back({{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
  return {{"carrier", a.size()}, {"ops", ops}};
}

FiniteAlgebra algebra_from_json(const Json& j) {
  return parsing("algebra", [&] {
    std::vector<Operation> ops;
    for (const auto& o : j.at("ops"))
      ops.push_back(Operation{o.at("name").get<std::string>(), o.at("arity").get<int>(),
                              o.at("table").get<std::vector<int>>()});
    return FiniteAlgebra(j.at("carrier").get<int>(), std::move(ops));
  });
}

FiniteAlgebra load_algebra(const Json& j) {
  if (j.is_string()) return builtin_algebra(j.get<std::string>());
  return algebra_from_json(j);
}

Json to_json(const Point& p) { return {{"pre", p.pre()}, {"per", p.per()}}; }

Point point_from_json(const Json& j) {
  return parsing("point", [&] { return Point(j.at("pre").get<std::string>(), j.at("per").get<std::string>()); });
}

Json to_json(const PointContext& ctx) {
  Json bs = Json::array();
  for (const auto& b : ctx.branches()) bs.push_back({{"root", b.root}, {"spine", std::string(1, b.spine)}});
  return {{"branches", bs}};
}

PointContext context_from_json(const Json& j) {
  return parsing("point context", [&] {
    if (j.is_number_integer()) return PointContext::standard(j.get<int>());
    std::vector<Branch> bs;
    for (const auto& b : j.at("branches")) {
      auto spine = b.at("spine").get<std::string>();
      require(spine == "0" || spine == "1", Errc::ParseError, "spine must be \"0\" or \"1\"");
      bs.push_back({b.at("root").get<std::string>(), spine[0]});
    }
    return PointContext(std::move(bs));
  });
}

Json to_json(const Clopen& c) { return c.words(); }

Clopen clopen_from_json(const Json& j) {
  return parsing("clopen", [&] { return Clopen::from_words(j.get<std::vector<std::string>>()); });
}

Json to_json(const TailClopen& c) {
  Json tails = Json::array();
  auto words = c.tail_words();
  for (std::size_t i = 0; i < words.size(); ++i) tails.push_back({{"branch", i}, {"word", words[i]}});
  return {{"threshold", c.threshold()}, {"exceptional", c.exceptional()}, {"tails", tails}};
}

TailClopen tail_clopen_from_json(const PointContext& ctx, const Json& j) {
  return parsing("tail clopen", [&] {
    std::vector<std::string> tails(ctx.size());
    std::vector<bool> seen(ctx.size(), false);
    for (const auto& t : j.at("tails")) {
      int b = t.at("branch").get<int>();
      require(b >= 0 && b < ctx.size() && !seen[b], Errc::ParseError, "bad tail branch index");
      seen[b] = true;
      tails[b] = t.at("word").get<std::string>();
    }
    for (bool s : seen) require(s, Errc::ParseError, "every branch needs a tail word");
    return TailClopen::from_parts(ctx, j.at("threshold").get<std::int64_t>(),
                                  j.at("exceptional").get<std::vector<std::string>>(), tails);
  });
}

Json to_json(const Family& f) {
  if (!f.progression) return {{"word", f.prefix}};
  return {{"branch", f.branch}, {"start", f.start}, {"step", f.step}, {"suffix", f.suffix}};
}

Family family_from_json(const Json& j) {
  return parsing("family", [&] {
    if (j.contains("word")) return Family::single(j.at("word").get<std::string>());
    return Family::prog(j.at("branch").get<int>(), j.at("start").get<std::int64_t>(),
                        j.at("step").get<std::int64_t>(), j.value("suffix", std::string()));
  });
}

Json to_json(const EPHomeo& h) {
  Json ps = Json::array();
  for (const auto& p : h.pieces()) ps.push_back({{"src", to_json(p.src)}, {"dst", to_json(p.dst)}});
  return {{"pieces", ps}};
}

EPHomeo homeo_from_json(const PointContext& ctx, const Json& j) {
  return parsing("homeomorphism", [&] {
    std::vector<Piece> ps;
    for (const auto& p : j.at("pieces")) ps.push_back({family_from_json(p.at("src")), family_from_json(p.at("dst"))});
    return EPHomeo::from_pieces(ctx, std::move(ps));
  });
}

Json to_json(const PowerContext& ctx) {
  return {{"algebra", to_json(ctx.alg())}, {"points", to_json(ctx.points)}, {"filters", ctx.filters}};
}

PowerContext power_context_from_json(const Json& j) {
  return parsing("power context", [&] {
    return PowerContext::make(load_algebra(j.at("algebra")), context_from_json(j.at("points")),
                              j.at("filters").get<std::vector<int>>());
  });
}

Json to_json(const PowerElement& f) {
  Json cells = Json::array();
  for (const auto& [w, l] : f.cells()) cells.push_back({{"prefix", w}, {"label", l}});
  return {{"cells", cells}};
}

PowerElement element_from_json(const PowerContext& ctx, const Json& j) {
  return parsing("element", [&] {
    PowerElement::Cells cells;
    for (const auto& c : j.at("cells")) cells[c.at("prefix").get<std::string>()] = c.at("label").get<int>();
    return PowerElement::make(ctx, cells);
  });
}

Json to_json(const PowerAutomorphism& phi) {
  const auto& k = phi.labeling();
  Json cells = Json::array();
  for (const auto& [w, p] : k.cells()) cells.push_back({{"region", w}, {"aut", p}});
  return {{"homeo", to_json(phi.homeo())},
          {"labeling", {{"threshold", k.threshold()}, {"cells", cells}, {"tails", k.tails()}}}};
}

PowerAutomorphism automorphism_from_json(const PowerContext& ctx, const Json& j) {
  return parsing("automorphism", [&] {
    const Json& l = j.at("labeling");
    AutLabeling::Cells cells;
    for (const auto& c : l.at("cells")) cells[c.at("region").get<std::string>()] = c.at("aut").get<Perm>();
    AutLabeling k(ctx.points, l.at("threshold").get<std::int64_t>(), cells,
                  l.at("tails").get<std::vector<std::vector<Perm>>>());
    auto h = homeo_from_json(ctx.points, j.at("homeo"));
    return compose(PowerAutomorphism::from_labeling(ctx, k), PowerAutomorphism::from_homeo(ctx, h));
  });
}

Json to_json(const Coord& c) {
  if (c.is_aut) return {{"aut", c.aut}, {"src", c.src}};
  return {{"idem", c.idem}};
}

Coord coord_from_json(const Json& j) {
  return parsing("coordinate", [&] {
    if (j.contains("idem")) return Coord::constant(j.at("idem").get<int>());
    return Coord::of(j.at("aut").get<Perm>(), j.at("src").get<int>());
  });
}

Json to_json(const PowerEmbedding& e) {
  Json cs = Json::array();
  for (const auto& c : e.coords()) cs.push_back(to_json(c));
  return {{"u", e.u()}, {"v", e.v()}, {"coords", cs}};
}

PowerEmbedding embedding_from_json(const FiniteAlgebra& a, const Json& j) {
  return parsing("embedding", [&] {
    std::vector<Coord> cs;
    for (const auto& c : j.at("coords")) cs.push_back(coord_from_json(c));
    require(!j.contains("v") || j.at("v").get<int>() == static_cast<int>(cs.size()), Errc::ParseError,
            "v does not match the number of coordinates");
    return PowerEmbedding::make(a, j.at("u").get<int>(), std::move(cs));
  });
}

Json to_json(const BPEmbedding& e) {
  Json ps = Json::array();
  for (const auto& p : e.pieces()) ps.push_back({{"region", to_json(p.region)}, {"coord", to_json(p.coord)}});
  return {{"u", e.u()}, {"pieces", ps}};
}

BPEmbedding bp_embedding_from_json(const PowerContext& ctx, const Json& j) {
  return parsing("power embedding", [&] {
    std::vector<BPEmbedding::Piece> ps;
    for (const auto& p : j.at("pieces")) ps.push_back({clopen_from_json(p.at("region")), coord_from_json(p.at("coord"))});
    return BPEmbedding::make(ctx, j.at("u").get<int>(), std::move(ps));
  });
}

Json to_json(const GoodPartition& p) {
  Json bs = Json::array();
  for (const auto& b : p.blocks) bs.push_back(to_json(b));
  return {{"points", to_json(p.ctx)}, {"blocks", bs}};
}

GoodPartition partition_from_json(const Json& j) {
  return parsing("partition", [&] {
    GoodPartition p{context_from_json(j.at("points")), {}};
    for (const auto& b : j.at("blocks")) p.blocks.push_back(tail_clopen_from_json(p.ctx, b));
    return p;
  });
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, "'" + path + "' is not JSON: " + e.what());
  }
}

}  // namespace boolpow::io
