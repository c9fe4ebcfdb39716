// Words, eventually periodic points, distinguished-point contexts and the
// "families" of cylinders that the homeomorphism machinery works with.
//
// Each distinguished point is x_i = root_i spine_i^omega. Cell j >= 1 of
// branch i is the cylinder root_i spine_i^(j-1) (1 - spine_i); the cells of a
// branch partition the root cylinder minus the point and converge to it.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolpow/error.hpp"

namespace boolpow {

bool is_bit_word(std::string_view w);
bool has_prefix(std::string_view w, std::string_view p);
bool comparable(std::string_view a, std::string_view b);  // one is a prefix of the other
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t gcd64(std::int64_t a, std::int64_t b);

// True when the words are pairwise incomparable and cover all of 2^omega.
bool is_complete_prefix_code(std::vector<std::string> words);

// u v^omega with v primitive and u as short as possible.
class Point {
 public:
  Point(std::string pre, std::string per);

  const std::string& pre() const { return pre_; }
  const std::string& per() const { return per_; }
  char at(std::size_t k) const;
  std::string prefix(std::size_t len) const;
  bool has_prefix(std::string_view w) const;
  Point drop(std::size_t k) const;
  Point prepend(std::string_view w) const;
  std::string to_string() const;  // "pre(per)"

  auto operator<=>(const Point&) const = default;

 private:
  std::string pre_, per_;
};

struct Branch {
  std::string root;
  char spine = '0';
  bool operator==(const Branch&) const = default;
};

struct Location {
  enum class Kind { Off, InCell, PointPrefix, Spanning };
  Kind kind = Kind::Off;
  int branch = -1;
  std::int64_t cell = 0;   // InCell
  std::string suffix;      // InCell: remainder after the cell word
  std::int64_t depth = 0;  // PointPrefix: word is root + spine^depth
};

struct PointLocation {
  int branch = -1;       // -1: off every branch
  bool is_point = false; // the point is x_branch itself
  std::int64_t cell = 0;
  std::optional<Point> rest;  // remainder after the cell word
};

class PointContext {
 public:
  PointContext() = default;  // no distinguished points
  explicit PointContext(std::vector<Branch> branches);

  // x_i = 1^(i-1) 0^omega for i = 1..n (branch index i-1).
  static PointContext standard(int n);
  // x_0 = 0^omega, x_1 = 1^omega; the cells are 0^j 1 and 1^j 0.
  static PointContext two_ends();

  int size() const { return static_cast<int>(branches_.size()); }
  const std::vector<Branch>& branches() const { return branches_; }
  const Branch& branch(int i) const { return branches_.at(i); }
  Point point(int i) const;
  std::string cell(int i, std::int64_t j) const;
  std::string hole(int i, std::int64_t depth) const;  // root + spine^depth

  Location locate(std::string_view w) const;
  PointLocation locate(const Point& p) const;
  // The off-branch region as a prefix antichain (complement of the roots).
  std::vector<std::string> off_region() const;

  bool operator==(const PointContext&) const = default;

 private:
  std::vector<Branch> branches_;
};

// A single cylinder that avoids the distinguished points, or a progression
// {cell(branch, start + step*k) + suffix : k >= 0}.
struct Family {
  bool progression = false;
  std::string prefix;
  int branch = -1;
  std::int64_t start = 0, step = 0;
  std::string suffix;

  static Family single(std::string w) { return Family{false, std::move(w), -1, 0, 0, {}}; }
  static Family prog(int branch, std::int64_t start, std::int64_t step, std::string suffix = {}) {
    return Family{true, {}, branch, start, step, std::move(suffix)};
  }
  std::string member(const PointContext& ctx, std::int64_t k) const;
  std::string key() const;
  std::string to_string() const { return key(); }
  bool hits(std::int64_t j) const { return j >= start && (j - start) % step == 0; }

  auto operator<=>(const Family&) const = default;
};

void validate_family(const PointContext& ctx, const Family& f);
bool family_contains(const PointContext& ctx, const Family& outer, const Family& inner);
bool family_overlaps(const PointContext& ctx, const Family& a, const Family& b);
bool family_has_point(const PointContext& ctx, const Family& f, const Point& p);
// Families covering a cylinder of 2^omega minus the distinguished points.
std::vector<Family> families_of_word(const PointContext& ctx, const std::string& w);
// nullopt when the families partition the punctured space, else a reason.
std::optional<std::string> partition_defect(const PointContext& ctx,
                                            const std::vector<Family>& fams);

}  // namespace boolpow
