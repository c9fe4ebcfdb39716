// Homeomorphisms of the punctured space given by finitely many family rules.
//
// A rule sends a single cylinder p to a single cylinder q by p w -> q w, or
// a progression to a progression, member k onto member k with the suffix
// after the family word kept. Sources and targets each partition the
// punctured space. Beyond some threshold every tail cell goes onto a whole
// tail cell, which keeps images of TailClopens inside the same class.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "boolpow/clopen.hpp"

namespace boolpow {

struct Piece {
  Family src, dst;
  auto operator<=>(const Piece&) const = default;
};

class EPHomeo {
 public:
  EPHomeo() = default;
  static EPHomeo identity(const PointContext& ctx);
  // Validates that sources and targets partition the punctured spaces.
  static EPHomeo from_pieces(const PointContext& ctx, std::vector<Piece> pieces);
  static EPHomeo from_pieces(const PointContext& dom, const PointContext& cod,
                             std::vector<Piece> pieces);

  const PointContext& domain() const { return dom_; }
  const PointContext& codomain() const { return cod_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  EPHomeo inverse() const;
  bool is_identity() const;
  bool operator==(const EPHomeo& o) const;

  // Image of a point; a distinguished point goes along point_map().
  Point apply(const Point& p) const;
  // i -> target branch when every rule of branch i targets one branch and
  // this is a bijection.
  std::optional<std::vector<int>> point_map() const;
  bool extends_to_X() const { return point_map().has_value(); }
  bool fixes_points() const;
  bool fixes_pointwise(const TailClopen& c) const;

  // Each family pushed forward: pairs (sub-family of an input family, image).
  // `origin` receives the index of the input family for each pair.
  std::vector<Piece> push_forward(const std::vector<Family>& fams,
                                  std::vector<int>* origin = nullptr) const;

  TailClopen apply(const TailClopen& c) const;
  template <class L>
  TailMap<L> apply(const TailMap<L>& m) const;

  friend EPHomeo compose(const EPHomeo& outer, const EPHomeo& inner);

 private:
  PointContext dom_, cod_;
  std::vector<Piece> pieces_;
};

EPHomeo compose(const EPHomeo& outer, const EPHomeo& inner);

// Merges adjacent rules; the map itself is unchanged.
std::vector<Piece> simplify_pieces(const PointContext& dom, const PointContext& cod,
                                   std::vector<Piece> pieces);

// Prefix-replacement bijection between two nonempty compact clopens of the
// punctured space given as word lists.
std::vector<Piece> tabular_match(std::vector<std::string> from, std::vector<std::string> to);

// A point-fixing homeomorphism h with h(c1) = c2; TypeMismatch unless both
// sets and both complements have matching types and emptiness.
EPHomeo orbit_witness(const TailClopen& c1, const TailClopen& c2);

// Union of the restrictions h|c, identity off the union of the domains.
EPHomeo piecewise_glue(const PointContext& ctx,
                       const std::vector<std::pair<TailClopen, EPHomeo>>& parts);

// Sends the cells near dom point i into the cells near cod point target[i];
// points with a common target are interleaved cell by cell. The first cell
// of every branch and the off-branch regions are matched by prefix
// replacement. target must be onto.
EPHomeo merge_branches(const PointContext& dom, const PointContext& cod,
                       const std::vector<int>& target);

// Swaps two disjoint compact cylinders by prefix replacement.
EPHomeo swap_cylinders(const PointContext& ctx, const std::string& p, const std::string& q);

// Homeomorphism of 2^omega minus {0^omega, 1^omega} that fixes odd cells of
// each end and exchanges the even ones; it has no extension to 2^omega.
EPHomeo two_ends_exchange();

struct ClusterLevel {
  int depth = 0;
  std::int64_t cell_near_first = 0;   // cell 0^j 1 with image inside 0^depth
  std::int64_t cell_near_second = 0;  // cell 0^j 1 with image inside 1^depth
  bool meets_first = false, meets_second = false;
};

struct ClusterEvidence {
  bool extends = true;
  std::vector<ClusterLevel> levels;
  bool verified() const;
};

// For each depth t up to `depth`, the image of 0^t minus 0^omega meets both
// 0^t and 1^t, so no continuous extension can pick a value at 0^omega.
ClusterEvidence two_ends_cluster_evidence(int depth);

template <class L>
TailMap<L> EPHomeo::apply(const TailMap<L>& m) const {
  require(m.context() == dom_, Errc::ContextMismatch, "labelling over a different context");
  auto lf = m.labeled_families();
  std::vector<Family> fams;
  for (const auto& [f, l] : lf) fams.push_back(f);
  std::vector<int> origin;
  auto pushed = push_forward(fams, &origin);
  std::vector<std::pair<Family, L>> out;
  for (std::size_t i = 0; i < pushed.size(); ++i) out.emplace_back(pushed[i].dst, lf[origin[i]].second);
  require(!lf.empty(), Errc::EmptyInput, "labelling has no families");
  return TailMap<L>::from_labeled_families(cod_, out, lf.front().second);
}

}  // namespace boolpow
