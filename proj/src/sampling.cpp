#include "boolpow/sampling.hpp"

#include <algorithm>
#include <functional>

namespace boolpow {

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng) { return uniform_int(rng, 0, 1) == 1; }

namespace {

void random_leaves(Rng& rng, const std::string& w, int extra, std::vector<std::string>& in) {
  if (extra > 0 && uniform_int(rng, 0, 2) == 0) {
    random_leaves(rng, w + '0', extra - 1, in);
    random_leaves(rng, w + '1', extra - 1, in);
    return;
  }
  if (coin(rng)) in.push_back(w);
}

std::string random_word_over(Rng& rng, const std::string& letters, int max_len) {
  int len = uniform_int(rng, static_cast<int>(letters.size()), std::max<int>(max_len, letters.size()));
  std::string w;
  for (int k = 0; k < len; ++k) w += letters[uniform_int(rng, 0, static_cast<int>(letters.size()) - 1)];
  // make sure every letter occurs
  std::vector<int> pos(len);
  for (int k = 0; k < len; ++k) pos[k] = k;
  std::shuffle(pos.begin(), pos.end(), rng);
  for (std::size_t k = 0; k < letters.size(); ++k) w[pos[k]] = letters[k];
  return w;
}

std::vector<std::string> random_exceptional(const PointContext& ctx, Rng& rng, std::int64_t d) {
  std::vector<std::string> in;
  for (const auto& w : ctx.off_region()) random_leaves(rng, w, 2, in);
  for (int i = 0; i < ctx.size(); ++i)
    for (std::int64_t j = 1; j <= d; ++j) random_leaves(rng, ctx.cell(i, j), 2, in);
  return in;
}

}  // namespace

Clopen random_clopen(Rng& rng, int depth) {
  std::vector<std::string> in;
  random_leaves(rng, "", depth, in);
  return Clopen::from_words(in);
}

TailClopen random_tail_clopen(const PointContext& ctx, Rng& rng, int max_threshold, int max_period) {
  std::int64_t d = ctx.size() ? uniform_int(rng, 0, max_threshold) : 0;
  std::vector<std::string> tails;
  for (int i = 0; i < ctx.size(); ++i) {
    int len = uniform_int(rng, 1, max_period);
    std::string t;
    for (int k = 0; k < len; ++k) t += coin(rng) ? '1' : '0';
    tails.push_back(t);
  }
  return TailClopen::from_parts(ctx, d, random_exceptional(ctx, rng, d), tails);
}

TailClopen random_same_type(const TailClopen& c, Rng& rng, int max_threshold, int max_period) {
  const PointContext& ctx = c.context();
  if (c.empty() || c.is_whole()) return c;
  auto words = c.tail_words();
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::int64_t d = ctx.size() ? uniform_int(rng, 0, max_threshold) : 0;
    std::vector<std::string> tails;
    for (const auto& w : words) {
      std::string letters;
      if (w.find('0') != std::string::npos) letters += '0';
      if (w.find('1') != std::string::npos) letters += '1';
      tails.push_back(random_word_over(rng, letters, max_period));
    }
    auto c2 = TailClopen::from_parts(ctx, d, random_exceptional(ctx, rng, d), tails);
    if (!c2.empty() && !c2.is_whole()) return c2;
  }
  fail(Errc::SearchBudgetExceeded, "no random set of the requested type found");
}

EPHomeo random_homeo(const PointContext& ctx, Rng& rng, int rounds) {
  EPHomeo h = EPHomeo::identity(ctx);
  for (int r = 0; r < rounds; ++r) {
    auto c = random_tail_clopen(ctx, rng);
    if (c.empty() || c.is_whole()) continue;
    h = compose(orbit_witness(c, random_same_type(c, rng)), h);
  }
  return h;
}

EPHomeo random_block_homeo(const std::vector<TailClopen>& blocks, Rng& rng) {
  require(!blocks.empty(), Errc::EmptyInput, "no blocks");
  const PointContext& ctx = blocks.front().context();
  std::vector<std::pair<TailClopen, EPHomeo>> parts;
  for (const auto& b : blocks) {
    bool done = false;
    for (int attempt = 0; attempt < 20 && !done; ++attempt) {
      auto c = b & random_tail_clopen(ctx, rng);
      if (c.empty() || c == b) continue;
      auto rest = b - c;
      for (int inner = 0; inner < 20 && !done; ++inner) {
        auto c2 = b & random_same_type(c, rng);
        auto rest2 = b - c2;
        if (c2.empty() || rest2.empty()) continue;
        if (c2.raw_type() != c.raw_type() || rest2.raw_type() != rest.raw_type()) continue;
        parts.emplace_back(c, orbit_witness(c, c2));
        parts.emplace_back(rest, orbit_witness(rest, rest2));
        done = true;
      }
    }
    if (!done) parts.emplace_back(b, EPHomeo::identity(ctx));
  }
  return piecewise_glue(ctx, parts);
}

PowerElement random_element(const PowerContext& ctx, Rng& rng, int depth) {
  PowerElement::Cells cells;
  std::function<void(const std::string&)> go = [&](const std::string& w) {
    if (static_cast<int>(w.size()) < depth) {
      go(w + '0');
      go(w + '1');
      return;
    }
    int label = uniform_int(rng, 0, ctx.alg().size() - 1);
    for (int i = 0; i < ctx.size(); ++i)
      if (ctx.points.point(i).has_prefix(w)) label = ctx.filters[i];
    cells.emplace(w, label);
  };
  go("");
  return PowerElement::make(ctx, cells);
}

}  // namespace boolpow
