// Clopen subsets of 2^omega, and clopen subsets of the punctured space.
#pragma once

#include <string>
#include <vector>

#include "boolpow/cantor.hpp"
#include "boolpow/tail_map.hpp"

namespace boolpow {

class Clopen {
 public:
  Clopen() : map_(PointContext(), false) {}
  static Clopen full();
  static Clopen from_words(const std::vector<std::string>& words);  // union of cylinders
  static Clopen from_map(TailMap<bool> m);

  std::vector<std::string> words() const;  // canonical antichain, sorted
  bool empty() const;
  bool is_full() const;
  bool contains(const Point& p) const { return map_.at(p); }
  bool contains_word(const std::string& w) const;  // whole cylinder inside
  bool meets_word(const std::string& w) const;
  bool subset_of(const Clopen& o) const;
  long double measure() const;

  Clopen operator|(const Clopen& o) const;
  Clopen operator&(const Clopen& o) const;
  Clopen operator-(const Clopen& o) const;
  Clopen operator~() const;
  bool operator==(const Clopen& o) const { return map_ == o.map_; }

  const TailMap<bool>& map() const { return map_; }

 private:
  explicit Clopen(TailMap<bool> m) : map_(std::move(m)) {}
  TailMap<bool> map_;
};

// Nonempty proper clopen splits into two nonempty clopen halves.
std::pair<Clopen, Clopen> split(const Clopen& b);

// I: branches whose point is a limit of the set; I': limits of the complement.
struct ClopenType {
  std::vector<int> in, out;
  bool operator==(const ClopenType&) const = default;
};

class TailClopen {
 public:
  TailClopen() : map_(PointContext(), false) {}
  explicit TailClopen(PointContext ctx) : map_(std::move(ctx), false) {}
  explicit TailClopen(TailMap<bool> m) : map_(std::move(m)) {}
  static TailClopen whole(const PointContext& ctx) { return TailClopen(TailMap<bool>(ctx, true)); }
  static TailClopen from_clopen(const PointContext& ctx, const Clopen& b);
  static TailClopen from_families(const PointContext& ctx, const std::vector<Family>& fams);
  // Exceptional part must lie in the off-branch region and cells <= threshold.
  static TailClopen from_parts(const PointContext& ctx, std::int64_t threshold,
                               const std::vector<std::string>& exceptional,
                               const std::vector<std::string>& tails);

  const PointContext& context() const { return map_.context(); }
  std::int64_t threshold() const { return map_.threshold(); }
  std::vector<std::string> exceptional() const;
  std::vector<std::string> tail_words() const;
  std::vector<Family> families() const;

  bool empty() const;
  bool is_whole() const;
  bool contains(const Point& p) const { return map_.at(p); }
  bool subset_of(const TailClopen& o) const;
  bool disjoint_from(const TailClopen& o) const { return (*this & o).empty(); }

  ClopenType raw_type() const;
  ClopenType type() const;  // EmptyOrFull for the empty set and the whole space
  bool is_good() const;
  bool extends_to_X() const;  // every tail word is constant
  Clopen closure() const;     // NotExtendable unless extends_to_X()

  TailClopen operator|(const TailClopen& o) const;
  TailClopen operator&(const TailClopen& o) const;
  TailClopen operator-(const TailClopen& o) const;
  TailClopen operator~() const;
  bool operator==(const TailClopen& o) const { return map_ == o.map_; }

  const TailMap<bool>& map() const { return map_; }

 private:
  TailMap<bool> map_;
};

// Both halves are good; tail cells alternate between them.
std::pair<TailClopen, TailClopen> split_good(const TailClopen& c);

}  // namespace boolpow
