#include "boolpow/cantor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace boolpow {

bool is_bit_word(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

bool has_prefix(std::string_view w, std::string_view p) {
  return w.size() >= p.size() && w.compare(0, p.size(), p) == 0;
}

bool comparable(std::string_view a, std::string_view b) {
  return has_prefix(a, b) || has_prefix(b, a);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  std::int64_t l = a / std::gcd(a, b) * b;
  require(l > 0 && l < (std::int64_t{1} << 40), Errc::SizeBudgetExceeded, "period too large");
  return l;
}

bool is_complete_prefix_code(std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  for (std::size_t i = 0; i + 1 < words.size(); ++i)
    if (has_prefix(words[i + 1], words[i])) return false;
  std::set<std::string> set(words.begin(), words.end());
  std::function<bool(const std::string&)> covered = [&](const std::string& p) {
    if (set.count(p)) return true;
    auto it = set.lower_bound(p);
    if (it == set.end() || !has_prefix(*it, p)) return false;
    return covered(p + '0') && covered(p + '1');
  };
  return covered("");
}

Point::Point(std::string pre, std::string per) : pre_(std::move(pre)), per_(std::move(per)) {
  require(!per_.empty(), Errc::InvalidArgument, "point period must be nonempty");
  require(is_bit_word(pre_) && is_bit_word(per_), Errc::InvalidArgument, "point words must be binary");
  std::size_t n = per_.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = per_[i] == per_[i - p];
    if (ok) {
      per_.resize(p);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    per_ = per_.back() + per_.substr(0, per_.size() - 1);
    pre_.pop_back();
  }
}

char Point::at(std::size_t k) const {
  return k < pre_.size() ? pre_[k] : per_[(k - pre_.size()) % per_.size()];
}

std::string Point::prefix(std::size_t len) const {
  std::string s;
  s.reserve(len);
  for (std::size_t k = 0; k < len; ++k) s += at(k);
  return s;
}

bool Point::has_prefix(std::string_view w) const {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (at(k) != w[k]) return false;
  return true;
}

Point Point::drop(std::size_t k) const {
  if (k <= pre_.size()) return Point(pre_.substr(k), per_);
  std::size_t off = (k - pre_.size()) % per_.size();
  return Point("", per_.substr(off) + per_.substr(0, off));
}

Point Point::prepend(std::string_view w) const { return Point(std::string(w) + pre_, per_); }

std::string Point::to_string() const { return pre_ + "(" + per_ + ")"; }

PointContext::PointContext(std::vector<Branch> branches) : branches_(std::move(branches)) {
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const auto& b = branches_[i];
    require(is_bit_word(b.root), Errc::InvalidArgument, "branch root must be binary");
    require(b.spine == '0' || b.spine == '1', Errc::InvalidArgument, "spine must be a bit");
    for (std::size_t j = 0; j < i; ++j)
      require(!comparable(b.root, branches_[j].root), Errc::InvalidArgument,
              "branch roots must be pairwise incomparable");
  }
}

PointContext PointContext::standard(int n) {
  require(n >= 0, Errc::OutOfRange, "negative number of points");
  std::vector<Branch> bs;
  for (int i = 0; i < n; ++i) bs.push_back({std::string(i, '1') + "0", '0'});
  return PointContext(std::move(bs));
}

PointContext PointContext::two_ends() { return PointContext({{"0", '0'}, {"1", '1'}}); }

Point PointContext::point(int i) const {
  const auto& b = branch(i);
  return Point(b.root, std::string(1, b.spine));
}

std::string PointContext::cell(int i, std::int64_t j) const {
  const auto& b = branch(i);
  require(j >= 1, Errc::OutOfRange, "cell index must be positive");
  require(j < (1 << 22), Errc::SizeBudgetExceeded, "cell index too large");
  std::string w = b.root;
  w.append(static_cast<std::size_t>(j - 1), b.spine);
  w += b.spine == '0' ? '1' : '0';
  return w;
}

std::string PointContext::hole(int i, std::int64_t depth) const {
  const auto& b = branch(i);
  std::string w = b.root;
  w.append(static_cast<std::size_t>(depth), b.spine);
  return w;
}

Location PointContext::locate(std::string_view w) const {
  Location loc;
  for (int i = 0; i < size(); ++i) {
    const auto& b = branches_[i];
    if (!has_prefix(w, b.root)) continue;
    std::string_view rest = w.substr(b.root.size());
    std::size_t k = 0;
    while (k < rest.size() && rest[k] == b.spine) ++k;
    loc.branch = i;
    if (k == rest.size()) {
      loc.kind = Location::Kind::PointPrefix;
      loc.depth = static_cast<std::int64_t>(k);
    } else {
      loc.kind = Location::Kind::InCell;
      loc.cell = static_cast<std::int64_t>(k) + 1;
      loc.suffix = std::string(rest.substr(k + 1));
    }
    return loc;
  }
  for (const auto& b : branches_)
    if (has_prefix(b.root, w)) {
      loc.kind = Location::Kind::Spanning;
      return loc;
    }
  return loc;
}

PointLocation PointContext::locate(const Point& p) const {
  PointLocation loc;
  for (int i = 0; i < size(); ++i) {
    const auto& b = branches_[i];
    if (!p.has_prefix(b.root)) continue;
    loc.branch = i;
    Point q = p.drop(b.root.size());
    if (q == Point("", std::string(1, b.spine))) {
      loc.is_point = true;
      return loc;
    }
    std::size_t k = 0;
    while (q.at(k) == b.spine) ++k;
    loc.cell = static_cast<std::int64_t>(k) + 1;
    loc.rest = q.drop(k + 1);
    return loc;
  }
  return loc;
}

std::vector<std::string> PointContext::off_region() const {
  std::vector<std::string> out;
  std::function<void(const std::string&)> go = [&](const std::string& w) {
    bool inside = false, above = false;
    for (const auto& b : branches_) {
      if (has_prefix(w, b.root)) inside = true;
      else if (has_prefix(b.root, w)) above = true;
    }
    if (inside) return;
    if (!above) {
      out.push_back(w);
      return;
    }
    go(w + '0');
    go(w + '1');
  };
  go("");
  return out;
}

std::string Family::member(const PointContext& ctx, std::int64_t k) const {
  if (!progression) return prefix;
  return ctx.cell(branch, start + step * k) + suffix;
}

std::string Family::key() const {
  if (!progression) return "s:" + prefix;
  return "p:" + std::to_string(branch) + ":" + std::to_string(start) + ":" + std::to_string(step) +
         ":" + suffix;
}

void validate_family(const PointContext& ctx, const Family& f) {
  if (!f.progression) {
    require(is_bit_word(f.prefix), Errc::InvalidArgument, "family prefix must be binary");
    auto k = ctx.locate(f.prefix).kind;
    require(k == Location::Kind::Off || k == Location::Kind::InCell, Errc::InvalidArgument,
            "single family '" + f.prefix + "' contains a distinguished point");
    return;
  }
  require(f.branch >= 0 && f.branch < ctx.size(), Errc::OutOfRange, "family branch out of range");
  require(f.start >= 1 && f.step >= 1, Errc::InvalidArgument, "progression start and step must be positive");
  require(is_bit_word(f.suffix), Errc::InvalidArgument, "progression suffix must be binary");
}

bool family_contains(const PointContext& ctx, const Family& outer, const Family& inner) {
  if (!outer.progression) return !inner.progression && has_prefix(inner.prefix, outer.prefix);
  if (!inner.progression) {
    Location loc = ctx.locate(inner.prefix);
    return loc.kind == Location::Kind::InCell && loc.branch == outer.branch &&
           outer.hits(loc.cell) && has_prefix(loc.suffix, outer.suffix);
  }
  return inner.branch == outer.branch && outer.hits(inner.start) && inner.step % outer.step == 0 &&
         has_prefix(inner.suffix, outer.suffix);
}

bool family_overlaps(const PointContext& ctx, const Family& a, const Family& b) {
  if (!a.progression && !b.progression) return comparable(a.prefix, b.prefix);
  if (a.progression && b.progression) {
    if (a.branch != b.branch || !comparable(a.suffix, b.suffix)) return false;
    return (a.start - b.start) % std::gcd(a.step, b.step) == 0;
  }
  const Family& s = a.progression ? b : a;
  const Family& p = a.progression ? a : b;
  Location loc = ctx.locate(s.prefix);
  return loc.kind == Location::Kind::InCell && loc.branch == p.branch && p.hits(loc.cell) &&
         comparable(loc.suffix, p.suffix);
}

bool family_has_point(const PointContext& ctx, const Family& f, const Point& p) {
  if (!f.progression) return p.has_prefix(f.prefix);
  PointLocation loc = ctx.locate(p);
  return loc.branch == f.branch && !loc.is_point && f.hits(loc.cell) &&
         loc.rest->has_prefix(f.suffix);
}

std::vector<Family> families_of_word(const PointContext& ctx, const std::string& w) {
  require(is_bit_word(w), Errc::InvalidArgument, "word must be binary");
  std::vector<Family> out;
  std::function<void(const std::string&)> go = [&](const std::string& v) {
    Location loc = ctx.locate(v);
    switch (loc.kind) {
      case Location::Kind::Off:
      case Location::Kind::InCell:
        out.push_back(Family::single(v));
        return;
      case Location::Kind::PointPrefix:
        out.push_back(Family::prog(loc.branch, loc.depth + 1, 1));
        return;
      case Location::Kind::Spanning:
        go(v + '0');
        go(v + '1');
        return;
    }
  };
  go(w);
  return out;
}

std::optional<std::string> partition_defect(const PointContext& ctx,
                                            const std::vector<Family>& fams) {
  std::vector<std::string> off;
  for (const auto& b : ctx.branches()) off.push_back(b.root);
  std::vector<std::map<std::int64_t, std::vector<std::string>>> in_cell(ctx.size());
  std::vector<std::vector<const Family*>> progs(ctx.size());
  for (const auto& f : fams) {
    try {
      validate_family(ctx, f);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    if (f.progression) {
      progs[f.branch].push_back(&f);
      continue;
    }
    Location loc = ctx.locate(f.prefix);
    if (loc.kind == Location::Kind::Off) off.push_back(f.prefix);
    else in_cell[loc.branch][loc.cell].push_back(loc.suffix);
  }
  if (!is_complete_prefix_code(off)) return "off-branch region is not partitioned";
  for (int i = 0; i < ctx.size(); ++i) {
    std::int64_t top = 0, period = 1;
    if (!in_cell[i].empty()) top = in_cell[i].rbegin()->first;
    for (const Family* p : progs[i]) {
      top = std::max(top, p->start);
      period = lcm64(period, p->step);
    }
    for (std::int64_t j = 1; j <= top + period; ++j) {
      std::vector<std::string> words;
      if (auto it = in_cell[i].find(j); it != in_cell[i].end()) words = it->second;
      for (const Family* p : progs[i])
        if (p->hits(j)) words.push_back(p->suffix);
      if (!is_complete_prefix_code(words))
        return "cell " + std::to_string(j) + " of branch " + std::to_string(i) +
               " is not partitioned";
    }
  }
  return std::nullopt;
}

}  // namespace boolpow
