#include "boolpow/clopen.hpp"

#include <cmath>

namespace boolpow {

namespace {

std::vector<std::pair<Family, bool>> tagged(const std::vector<Family>& fams) {
  std::vector<std::pair<Family, bool>> out;
  for (const auto& f : fams) out.emplace_back(f, true);
  return out;
}

}  // namespace

Clopen Clopen::full() { return Clopen(TailMap<bool>(PointContext(), true)); }

Clopen Clopen::from_words(const std::vector<std::string>& words) {
  std::vector<Family> fams;
  for (const auto& w : words) {
    require(is_bit_word(w), Errc::InvalidArgument, "clopen words must be binary");
    fams.push_back(Family::single(w));
  }
  return Clopen(TailMap<bool>::from_labeled_families(PointContext(), tagged(fams), false));
}

Clopen Clopen::from_map(TailMap<bool> m) {
  require(m.context().size() == 0, Errc::ContextMismatch, "clopen map must not have branches");
  return Clopen(std::move(m));
}

std::vector<std::string> Clopen::words() const {
  std::vector<std::string> out;
  for (const auto& [w, l] : map_.cells())
    if (l) out.push_back(w);
  return out;
}

bool Clopen::empty() const { return words().empty(); }

bool Clopen::is_full() const {
  return map_.cells().size() == 1 && map_.cells().begin()->first.empty() && map_.cells().begin()->second;
}

bool Clopen::contains_word(const std::string& w) const { return from_words({w}).subset_of(*this); }

bool Clopen::meets_word(const std::string& w) const { return !(from_words({w}) & *this).empty(); }

bool Clopen::subset_of(const Clopen& o) const { return (*this - o).empty(); }

long double Clopen::measure() const {
  long double m = 0;
  for (const auto& w : words()) m += std::ldexp(1.0L, -static_cast<int>(w.size()));
  return m;
}

Clopen Clopen::operator|(const Clopen& o) const {
  return Clopen(TailMap<bool>::combine(map_, o.map_, [](bool a, bool b) { return a || b; }));
}
Clopen Clopen::operator&(const Clopen& o) const {
  return Clopen(TailMap<bool>::combine(map_, o.map_, [](bool a, bool b) { return a && b; }));
}
Clopen Clopen::operator-(const Clopen& o) const {
  return Clopen(TailMap<bool>::combine(map_, o.map_, [](bool a, bool b) { return a && !b; }));
}
Clopen Clopen::operator~() const { return Clopen(map_.map([](bool a) { return !a; })); }

std::pair<Clopen, Clopen> split(const Clopen& b) {
  auto ws = b.words();
  require(!ws.empty(), Errc::EmptyInput, "cannot split the empty clopen");
  if (ws.size() == 1) return {Clopen::from_words({ws[0] + '0'}), Clopen::from_words({ws[0] + '1'})};
  std::vector<std::string> rest(ws.begin() + 1, ws.end());
  return {Clopen::from_words({ws[0]}), Clopen::from_words(rest)};
}

TailClopen TailClopen::from_clopen(const PointContext& ctx, const Clopen& b) {
  std::vector<Family> fams;
  for (const auto& w : b.words())
    for (auto& f : families_of_word(ctx, w)) fams.push_back(std::move(f));
  return from_families(ctx, fams);
}

TailClopen TailClopen::from_families(const PointContext& ctx, const std::vector<Family>& fams) {
  return TailClopen(TailMap<bool>::from_labeled_families(ctx, tagged(fams), false));
}

TailClopen TailClopen::from_parts(const PointContext& ctx, std::int64_t threshold,
                                  const std::vector<std::string>& exceptional,
                                  const std::vector<std::string>& tails) {
  require(threshold >= 0, Errc::OutOfRange, "negative threshold");
  require(static_cast<int>(tails.size()) == ctx.size(), Errc::ContextMismatch,
          "one tail word per branch is required");
  std::vector<std::pair<Family, bool>> fams;
  for (const auto& w : exceptional) {
    require(is_bit_word(w), Errc::InvalidArgument, "exceptional words must be binary");
    Location loc = ctx.locate(w);
    require(loc.kind == Location::Kind::Off ||
                (loc.kind == Location::Kind::InCell && loc.cell <= threshold),
            Errc::InvalidArgument, "exceptional word '" + w + "' is not below the threshold");
    fams.emplace_back(Family::single(w), true);
  }
  for (int i = 0; i < ctx.size(); ++i) {
    const auto& t = tails[i];
    require(!t.empty() && is_bit_word(t), Errc::InvalidArgument, "tail words must be nonempty and binary");
    auto len = static_cast<std::int64_t>(t.size());
    for (std::int64_t k = 0; k < len; ++k)
      fams.emplace_back(Family::prog(i, threshold + 1 + k, len), t[k] == '1');
  }
  return TailClopen(TailMap<bool>::from_labeled_families(ctx, fams, false));
}

std::vector<std::string> TailClopen::exceptional() const {
  std::vector<std::string> out;
  for (const auto& [w, l] : map_.cells())
    if (l) out.push_back(w);
  return out;
}

std::vector<std::string> TailClopen::tail_words() const {
  std::vector<std::string> out;
  for (const auto& t : map_.tails()) {
    std::string s;
    for (bool b : t) s += b ? '1' : '0';
    out.push_back(s);
  }
  return out;
}

std::vector<Family> TailClopen::families() const {
  std::vector<Family> out;
  for (auto& [f, l] : map_.labeled_families())
    if (l) out.push_back(f);
  return out;
}

bool TailClopen::empty() const { return map_.labels() == std::set<bool>{false}; }

bool TailClopen::is_whole() const { return map_.labels() == std::set<bool>{true}; }

bool TailClopen::subset_of(const TailClopen& o) const { return (*this - o).empty(); }

ClopenType TailClopen::raw_type() const {
  ClopenType t;
  auto words = tail_words();
  for (int i = 0; i < static_cast<int>(words.size()); ++i) {
    if (words[i].find('1') != std::string::npos) t.in.push_back(i);
    if (words[i].find('0') != std::string::npos) t.out.push_back(i);
  }
  return t;
}

ClopenType TailClopen::type() const {
  require(!empty() && !is_whole(), Errc::EmptyOrFull, "type is defined for proper nonempty sets");
  return raw_type();
}

bool TailClopen::is_good() const {
  if (empty() || is_whole()) return false;
  for (const auto& w : tail_words())
    if (w.find('1') == std::string::npos || w.find('0') == std::string::npos) return false;
  return true;
}

bool TailClopen::extends_to_X() const {
  for (const auto& w : tail_words())
    if (w.size() != 1) return false;
  return true;
}

Clopen TailClopen::closure() const {
  require(extends_to_X(), Errc::NotExtendable, "set does not extend to a clopen of the whole space");
  auto words = exceptional();
  auto tails = tail_words();
  for (int i = 0; i < context().size(); ++i)
    if (tails[i] == "1") words.push_back(context().hole(i, threshold()));
  return Clopen::from_words(words);
}

TailClopen TailClopen::operator|(const TailClopen& o) const {
  return TailClopen(TailMap<bool>::combine(map_, o.map_, [](bool a, bool b) { return a || b; }));
}
TailClopen TailClopen::operator&(const TailClopen& o) const {
  return TailClopen(TailMap<bool>::combine(map_, o.map_, [](bool a, bool b) { return a && b; }));
}
TailClopen TailClopen::operator-(const TailClopen& o) const {
  return TailClopen(TailMap<bool>::combine(map_, o.map_, [](bool a, bool b) { return a && !b; }));
}
TailClopen TailClopen::operator~() const { return TailClopen(map_.map([](bool a) { return !a; })); }

std::pair<TailClopen, TailClopen> split_good(const TailClopen& c) {
  require(c.is_good(), Errc::NotGood, "split_good needs a good set");
  std::vector<std::string> t1, t2;
  for (const auto& w : c.tail_words()) {
    std::string ww = w + w, a(ww.size(), '0'), b(ww.size(), '0');
    int seen = 0;
    for (std::size_t k = 0; k < ww.size(); ++k)
      if (ww[k] == '1') (seen++ % 2 == 0 ? a : b)[k] = '1';
    t1.push_back(a);
    t2.push_back(b);
  }
  return {TailClopen::from_parts(c.context(), c.threshold(), c.exceptional(), t1),
          TailClopen::from_parts(c.context(), c.threshold(), {}, t2)};
}

}  // namespace boolpow
