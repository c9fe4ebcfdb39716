#include "boolpow/io.hpp"
#include "boolpow/sampling.hpp"
#include "doctest.h"

using namespace boolpow;
using io::Json;

namespace {

template <class F>
void expect_error(Errc code, F&& f) {
  try {
    f();
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

// serialize . parse . serialize is the first serialization, as text
template <class T, class P>
void round_trip(const T& x, P&& parse) {
  Json j = io::to_json(x);
  auto back = parse(Json::parse(j.dump()));
  CHECK(io::to_json(back).dump() == j.dump());
  CHECK(back == x);
}

}  // namespace

TEST_CASE("algebras and contexts") {
  for (const char* name : {"gf2-ring", "gf2-idempotent-reduct", "gf4-idempotent-reduct", "cyclic-group 5"}) {
    auto a = builtin_algebra(name);
    Json j = io::to_json(a);
    auto b = io::algebra_from_json(Json::parse(j.dump()));
    CHECK(io::to_json(b) == j);
    CHECK(b.ops() == a.ops());
  }
  CHECK(io::load_algebra(Json("gf2-ring")).size() == 2);
  round_trip(PointContext::standard(3), io::context_from_json);
  round_trip(PointContext::two_ends(), io::context_from_json);
  CHECK(io::context_from_json(Json(2)) == PointContext::standard(2));
  round_trip(Point("0110", "01"), io::point_from_json);
}

TEST_CASE("sets and homeomorphisms") {
  Rng rng(3);
  auto ctx = PointContext::standard(2);
  for (int i = 0; i < 20; ++i) {
    round_trip(random_clopen(rng, 4), io::clopen_from_json);
    auto c = random_tail_clopen(ctx, rng);
    round_trip(c, [&](const Json& j) { return io::tail_clopen_from_json(ctx, j); });
    auto h = random_homeo(ctx, rng);
    round_trip(h, [&](const Json& j) { return io::homeo_from_json(ctx, j); });
  }
  round_trip(Family::prog(1, 2, 3, "01"), io::family_from_json);
  round_trip(Family::single("0110"), io::family_from_json);
  auto p = good_partition(ctx);
  auto q = io::partition_from_json(Json::parse(io::to_json(p).dump()));
  CHECK(q.ctx == p.ctx);
  CHECK(q.blocks == p.blocks);
}

TEST_CASE("power values") {
  Rng rng(9);
  auto pc = PowerContext::make(builtin_algebra("gf4-idempotent-reduct"), PointContext::standard(2), {0, 1});
  auto back = io::power_context_from_json(Json::parse(io::to_json(pc).dump()));
  CHECK(back == pc);
  for (int i = 0; i < 10; ++i)
    round_trip(random_element(pc, rng, 3), [&](const Json& j) { return io::element_from_json(pc, j); });

  auto frob = Perm{0, 1, 3, 2};
  auto chi = characteristic(pc, TailClopen::from_clopen(pc.points, Clopen::from_words({"111"})), frob);
  auto phi = compose(chi, PowerAutomorphism::from_homeo(pc, swap_cylinders(pc.points, "1110", "1111")));
  round_trip(phi, [&](const Json& j) { return io::automorphism_from_json(pc, j); });
}

TEST_CASE("embeddings") {
  auto a = builtin_algebra("gf4-idempotent-reduct");
  auto e = PowerEmbedding::make(a, 2, {Coord::of({0, 1, 3, 2}, 1), Coord::constant(1), Coord::of(perm_identity(4), 0)});
  round_trip(e, [&](const Json& j) { return io::embedding_from_json(a, j); });
  Json j = io::to_json(e);
  CHECK(j["coords"][1] == Json{{"idem", 1}});

  auto pc = PowerContext::make(a, PointContext::standard(1), {0});
  auto bp = level_embedding(pc, 2);
  auto bp2 = io::bp_embedding_from_json(pc, Json::parse(io::to_json(bp).dump()));
  CHECK(bp2.same_map(bp));
  CHECK(io::to_json(bp2) == io::to_json(bp));
}

TEST_CASE("malformed input") {
  expect_error(Errc::ParseError, [] { io::algebra_from_json(Json{{"carrier", 2}}); });
  expect_error(Errc::ParseError, [] { io::point_from_json(Json{{"pre", 1}, {"per", "0"}}); });
  expect_error(Errc::ParseError, [] { io::context_from_json(Json{{"branches", {{{"root", "0"}, {"spine", "x"}}}}}); });
  expect_error(Errc::ParseError, [] { io::read_file("/nonexistent/file.json"); });
  auto ctx = PointContext::standard(1);
  expect_error(Errc::ParseError, [&] {
    io::tail_clopen_from_json(ctx, Json{{"threshold", 0}, {"exceptional", Json::array()}, {"tails", Json::array()}});
  });
}
