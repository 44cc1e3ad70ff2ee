#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "roughkleene/demorgan.hpp"
#include "roughkleene/order.hpp"

namespace rk {

/// Reflexive, symmetric relation on a universe of at most 64 points.
class Tolerance {
 public:
  Tolerance() = default;
  /// Throws InvalidInput unless the neighbourhoods describe a tolerance.
  Tolerance(std::vector<std::string> labels, std::vector<PointSet> neighbourhoods);

  /// Symmetric closure of `pairs` plus the diagonal.
  static Tolerance from_pairs(std::vector<std::string> labels, std::span<const std::pair<std::size_t, std::size_t>> pairs);
  static Tolerance identity(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  PointSet universe() const { return full_set(size()); }
  /// R(x) = {y | x R y}.
  PointSet neighbourhood(std::size_t x) const { return nbhd_[x]; }
  bool related(std::size_t x, std::size_t y) const { return nbhd_[x] >> y & 1; }
  bool operator==(const Tolerance&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<PointSet> nbhd_;
};

/// Family of nonempty subsets whose union is the universe. Blocks are kept
/// sorted and deduplicated (a covering is a set of sets).
class Covering {
 public:
  Covering() = default;
  Covering(std::vector<std::string> labels, std::vector<PointSet> blocks);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<PointSet>& blocks() const { return blocks_; }

 private:
  std::vector<std::string> labels_;
  std::vector<PointSet> blocks_;
};

struct RoughSetPair {
  PointSet lower = 0;  ///< X^▽
  PointSet upper = 0;  ///< X^△
  auto operator<=>(const RoughSetPair&) const = default;
};

struct RoughSetPairHash {
  std::size_t operator()(const RoughSetPair& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.lower * 0x9e3779b97f4a7c15ULL ^ p.upper);
  }
};

/// X^▽ = {x | R(x) ⊆ X}.
PointSet lower_approx(const Tolerance& r, PointSet x);
/// X^△ = {x | R(x) ∩ X ≠ ∅}.
PointSet upper_approx(const Tolerance& r, PointSet x);
/// Both approximations; asserts the duality X^▽ᶜ = Xᶜ^△.
RoughSetPair approximations(const Tolerance& r, PointSet x);

/// Maximal cliques of the tolerance graph in ascending mask order. Asserts
/// that the blocks reconstruct the relation.
std::vector<PointSet> blocks_of(const Tolerance& r);

/// R_H = ⋃{B² | B ∈ H}.
Tolerance tolerance_from_covering(const Covering& h);

struct IrredundanceReport {
  bool removal_criterion = true;       ///< no block can be dropped
  bool neighbourhood_criterion = true; ///< H ⊆ {R_H(x) | x ∈ U}
  bool irredundant = true;
  std::optional<std::size_t> removable_block;
};

/// Evaluates both criteria and asserts they agree. For irredundant H also
/// asserts H = {R(x) | R(x) is a block} and B^▽ ≠ ∅ for every B ∈ H.
IrredundanceReport is_irredundant(const Covering& h);

/// The unique irredundant covering inducing r, if r is induced by one.
std::optional<Covering> inducing_irredundant_covering(const Tolerance& r);

struct RsOptions {
  std::size_t universe_max = 16;
  bool force = false;
  /// Lattice tables are quadratic in |RS|.
  std::size_t max_elements = 2048;
  static constexpr std::size_t hard_cap = 30;
};

/// The rough-set system RS of a tolerance with its lattice structure.
class RoughSetAlgebra {
 public:
  const Tolerance& tolerance() const { return tolerance_; }
  const std::vector<RoughSetPair>& pairs() const { return pairs_; }
  const RoughSetPair& pair(Element e) const { return pairs_[e]; }
  const FiniteLattice& lattice() const { return lattice_; }
  std::size_t size() const { return pairs_.size(); }
  std::optional<Element> find(const RoughSetPair& p) const;
  Element at(const RoughSetPair& p) const;

  const std::vector<Element>& neg() const { return neg_; }
  /// Present when every element has both pseudocomplements.
  const std::optional<std::vector<Element>>& star() const { return star_; }
  const std::optional<std::vector<Element>>& plus() const { return plus_; }
  const JoinIrreducibleSet& join_irreducibles() const { return jirr_; }
  /// Set when the tolerance is induced by an irredundant covering.
  const std::optional<Covering>& irredundant_covering() const { return covering_; }
  bool distributive() const { return distributive_; }

  /// ∼ as a De Morgan structure; requires distributivity.
  DeMorganStructure demorgan() const;

 private:
  Tolerance tolerance_;
  std::vector<RoughSetPair> pairs_;
  std::unordered_map<RoughSetPair, Element, RoughSetPairHash> index_;
  FiniteLattice lattice_;
  std::vector<Element> neg_;
  std::optional<std::vector<Element>> star_, plus_;
  JoinIrreducibleSet jirr_;
  std::optional<Covering> covering_;
  bool distributive_ = false;

  friend RoughSetAlgebra build_rs(const Tolerance&, RsOptions);
};

/// Element labels of an RS lattice, "({a,b}, {a,b,c})" with ∅ for the empty set.
std::string format_pair(const Tolerance& r, const RoughSetPair& p);

/// Enumerates RS over all subsets of U, orders it coordinatewise and checks
/// the meet/join formulas. Throws NotALattice (with the first pair lacking a
/// bound) and BoundsExceeded. For irredundant-covering tolerances asserts
/// distributivity, (K), regularity and the closed forms for *, ⁺.
RoughSetAlgebra build_rs(const Tolerance& r, RsOptions opts = {});

/// RS rebuilt as the closure of the closed-form join-irreducibles under the
/// closed-form join, in the same element order as build_rs.
std::vector<RoughSetPair> rs_from_join_irreducibles(const Tolerance& r);

struct RsJoinIrreducible {
  Element element;
  RoughSetPair pair;
  PointSet block;
  bool empty_lower;  ///< (∅, B) rather than (B^▽, B^△)
};

struct RsJoinIrreducibles {
  std::vector<RsJoinIrreducible> members;
  std::vector<Element> atoms;
};

/// J(RS) and its atoms from the closed forms, asserted equal to the
/// lattice-computed sets. Requires an irredundant-covering tolerance.
RsJoinIrreducibles rs_join_irreducibles(const RoughSetAlgebra& rs);

/// g on J(RS) via compute_g, asserted equal to the closed form on blocks.
GMap rs_g_map(const RoughSetAlgebra& rs);

struct IsolatedBlock {
  PointSet block;
  bool neighbourhoods_equal;  ///< R(y) = B for every y ∈ B
  bool exact;                 ///< (B^▽, B^△) = (B, B)
  bool single_atom_below;     ///< B is a singleton or (∅, B) is the only atom below
  bool isolated;
};

std::vector<IsolatedBlock> isolated_block_report(const RoughSetAlgebra& rs);

/// Checks (℘(U)^△, ⊇) ≅ S*(RS) via B ↦ (Bᶜ^▽, Bᶜ^△) and
/// (℘(U)^▽, ⊇) ≅ S⁺(RS) via A ↦ (Aᶜ^▽, Aᶜ^△). Throws AssertionFailure.
void check_skeleton_isomorphisms(const RoughSetAlgebra& rs);

}  // namespace rk
