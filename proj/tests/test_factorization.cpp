#include "boolpow/factorization.hpp"
#include "boolpow/sampling.hpp"
#include "doctest.h"

using namespace boolpow;

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

// Exchanges two disjoint sets of equal type, identity elsewhere.
EPHomeo exchange(const PointContext& ctx, const TailClopen& x, const TailClopen& y) {
  return piecewise_glue(ctx, {{x, orbit_witness(x, y)}, {y, orbit_witness(y, x)}});
}

}  // namespace

TEST_CASE("good partitions") {
  for (int n = 1; n <= 3; ++n) {
    auto p = good_partition(PointContext::standard(n));
    CHECK(p.blocks.size() == static_cast<std::size_t>(n + 2));
    CHECK(is_good_partition(p));
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    for (const auto& b : p.blocks) CHECK(b.type() == ClopenType{all, all});
  }
  auto p1 = good_partition(PointContext::standard(1));
  for (const auto& b : p1.blocks) {
    const auto& t = b.map().tails()[0];
    CHECK(t.size() == 3);
    CHECK(std::count(t.begin(), t.end(), true) == 1);
  }
  auto two = good_partition(PointContext::two_ends());
  CHECK(is_good_partition(two));
  expect_error(Errc::NoPoints, [] { good_partition(PointContext::standard(0)); });
}

TEST_CASE("a partition with a repeated block is rejected") {
  auto p = good_partition(PointContext::standard(2));
  p.blocks[1] = p.blocks[0];
  CHECK_FALSE(is_good_partition(p));
}

TEST_CASE("three stabilizer factors") {
  auto ctx = PointContext::standard(1);
  auto p = good_partition(ctx);
  const auto &b = p.blocks[0], &c = p.blocks[1], &d = p.blocks[2];

  auto id = stabilizer_factor(EPHomeo::identity(ctx), b, c, d);
  CHECK(id.verified());
  CHECK(id.f.empty());

  // swaps inside c u d, and between b and d
  for (auto [x, y] : std::vector<std::pair<int, int>>{{2, 3}, {1, 3}, {1, 2}, {4, 9}}) {
    auto sigma = swap_cylinders(ctx, ctx.cell(0, x), ctx.cell(0, y));
    auto r = stabilizer_factor(sigma, b, c, d);
    CHECK(r.verified());
    CHECK(r.f.subset_of(d));
    CHECK((d - r.f).is_good());
  }

  // moves a set accumulating at the point from d into b
  auto half = split_good(d).first;
  auto into_b = split_good(b).first;
  auto sigma = exchange(ctx, half, into_b);
  auto r = stabilizer_factor(sigma, b, c, d);
  CHECK(r.verified());
  CHECK(r.f.raw_type().in == std::vector<int>{0});
}

TEST_CASE("three stabilizer factors for random homeomorphisms") {
  Rng rng(17);
  for (int n = 1; n <= 2; ++n) {
    auto ctx = PointContext::standard(n);
    auto p = good_partition(ctx);
    TailClopen c = p.blocks[1];
    for (int t = 2; t <= n; ++t) c = c | p.blocks[t];
    int done = 0;
    for (int trial = 0; trial < 12; ++trial) {
      auto sigma = random_homeo(ctx, rng);
      if (!(p.blocks.back() - sigma.inverse().apply(p.blocks[0])).is_good()) continue;
      CHECK(stabilizer_factor(sigma, p.blocks[0], c, p.blocks.back()).verified());
      ++done;
    }
    CHECK(done > 0);
  }
}

TEST_CASE("stabilizer factor preconditions") {
  auto ctx = PointContext::standard(1);
  auto p = good_partition(ctx);
  const auto &b = p.blocks[0], &c = p.blocks[1], &d = p.blocks[2];
  // sigma^-1(b) = d leaves nothing of d
  auto swap_bd = exchange(ctx, b, d);
  expect_error(Errc::PreconditionNotGood, [&] { stabilizer_factor(swap_bd, b, c, d); });
  expect_error(Errc::PreconditionNotGood, [&] { stabilizer_factor(EPHomeo::identity(ctx), b, b, d); });
  expect_error(Errc::PreconditionNotGood, [&] { stabilizer_factor(EPHomeo::identity(ctx), b, c, d - split_good(d).first); });
  expect_error(Errc::PointNotFixed, [&] {
    auto ctx2 = PointContext::standard(2);
    auto p2 = good_partition(ctx2);
    auto swap_points = merge_branches(ctx2, ctx2, {1, 0});
    stabilizer_factor(swap_points, p2.blocks[0], p2.blocks[1] | p2.blocks[2], p2.blocks[3]);
  });
}

TEST_CASE("pigeonhole factorization") {
  for (int n = 1; n <= 2; ++n) {
    auto ctx = PointContext::standard(n);
    auto p = good_partition(ctx);
    auto id = pigeonhole_factor(EPHomeo::identity(ctx), p);
    CHECK(id.verified());
    CHECK(id.i == 0);

    // exchanging b_1 with the last block forces another choice of i
    auto sigma = exchange(ctx, p.blocks[0], p.blocks.back());
    auto r = pigeonhole_factor(sigma, p);
    CHECK(r.verified());
    CHECK(r.i == 1);
    for (const auto& f : r.failures) CHECK(f == std::vector<int>{0});

    Rng rng(100 + n);
    for (int trial = 0; trial < 10; ++trial) CHECK(pigeonhole_factor(random_homeo(ctx, rng), p).verified());
  }
}

TEST_CASE("sample agreement") {
  auto ctx = PointContext::standard(2);
  Rng rng(5);
  auto h = random_homeo(ctx, rng);
  CHECK(agree_on_samples(h, h));
  CHECK(agree_on_samples(compose(h, h.inverse()), EPHomeo::identity(ctx)));
  auto s = swap_cylinders(ctx, "1110", "1111");
  CHECK_FALSE(agree_on_samples(s, EPHomeo::identity(ctx)));
  for (const auto& pt : sample_points(ctx))
    for (int i = 0; i < ctx.size(); ++i) CHECK_FALSE(pt == ctx.point(i));
}

TEST_CASE("word growth on cylinder permutations") {
  auto ctx = PointContext::standard(1);  // x = 0^omega sits in 00
  auto id = bergman_growth(ctx, {EPHomeo::identity(ctx)}, 2, 4);
  CHECK(id.sizes == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(id.stabilized_at == 1);

  auto s1 = swap_cylinders(ctx, "01", "10");
  auto s2 = swap_cylinders(ctx, "10", "11");
  auto r = bergman_growth(ctx, {s1, s2}, 2, 5);
  CHECK(r.sizes == std::vector<std::size_t>{3, 5, 6, 6, 6});
  CHECK(r.stabilized_at == 3);
  CHECK(r.monotone());

  // all of Sym{01, 10, 11} at once
  auto cyc = compose(s1, s2);
  auto full = bergman_growth(ctx, {s1, s2, swap_cylinders(ctx, "01", "11"), cyc}, 2, 3);
  CHECK(full.sizes == std::vector<std::size_t>{6, 6, 6});
  CHECK(full.stabilized_at == 1);

  expect_error(Errc::EmptyGeneratorSet, [&] { bergman_growth(ctx, {}, 2, 3); });
  expect_error(Errc::InvalidArgument, [&] { bergman_growth(ctx, {swap_cylinders(ctx, "010", "11")}, 2, 3); });
}

TEST_CASE("word growth for power automorphisms") {
  auto a = builtin_algebra("gf2-idempotent-reduct");
  auto pc = PowerContext::make(a, PointContext::standard(1), {0});
  const auto& ctx = pc.points;
  std::vector<PowerAutomorphism> gens;
  // the only automorphism of A is the identity, so characteristic maps are trivial
  gens.push_back(characteristic(pc, TailClopen::from_clopen(ctx, Clopen::from_words({"1"})), perm_identity(2)));
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"001", "010"}, {"011", "100"}, {"101", "110"}, {"111", "001"}})
    gens.push_back(PowerAutomorphism::from_homeo(pc, swap_cylinders(ctx, x, y)));
  auto r = bergman_growth(gens, 3, 12);
  CHECK(r.monotone());
  REQUIRE(r.stabilized_at.has_value());
  // orbits {001, 010, 111}, {011, 100}, {101, 110}: Sym(3) x Sym(2) x Sym(2)
  CHECK(r.sizes.back() == 24);
}
