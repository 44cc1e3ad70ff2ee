#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roughkleene/core.hpp"

namespace rk {

/// A finite binary relation over labelled elements, meant to be a partial
/// order. Construction does not validate; see validate_poset.
class FinitePoset {
 public:
  FinitePoset() = default;
  /// `up_rows[a]` holds every b with a <= b.
  FinitePoset(std::vector<std::string> labels, std::vector<ElementSet> up_rows);

  static FinitePoset from_matrix(std::vector<std::string> labels,
                                 const std::vector<std::vector<bool>>& leq);
  /// Reflexive-transitive closure of the given covering pairs (lower, upper).
  static FinitePoset from_covers(std::vector<std::string> labels,
                                 std::span<const std::pair<Element, Element>> covers);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Element e) const { return labels_[e]; }
  std::optional<Element> find(std::string_view label) const;

  bool leq(Element a, Element b) const { return up_[a].test(b); }
  bool lt(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }
  const ElementSet& up(Element a) const { return up_[a]; }
  const ElementSet& down(Element a) const { return down_[a]; }

 private:
  std::vector<std::string> labels_;
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
};

struct PosetViolation {
  enum class Kind { Reflexivity, Antisymmetry, Transitivity, DuplicateLabel };
  Kind kind;
  std::vector<Element> witness;
};

struct PosetReport {
  std::vector<PosetViolation> violations;
  bool valid() const { return violations.empty(); }
};

/// Lists the lexicographically first witness of each violated axiom.
PosetReport validate_poset(const FinitePoset& p);

/// Finite lattice with precomputed meet/join tables and cover lists. Copies
/// share the immutable tables.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  const FinitePoset& order() const { return d_->order; }
  std::size_t size() const { return d_->order.size(); }
  const std::string& label(Element e) const { return d_->order.label(e); }
  const std::vector<std::string>& labels() const { return d_->order.labels(); }
  std::optional<Element> find(std::string_view label) const { return d_->order.find(label); }

  bool leq(Element a, Element b) const { return d_->order.leq(a, b); }
  bool lt(Element a, Element b) const { return d_->order.lt(a, b); }
  const ElementSet& up(Element a) const { return d_->order.up(a); }
  const ElementSet& down(Element a) const { return d_->order.down(a); }

  Element meet(Element a, Element b) const { return d_->meet[a * size() + b]; }
  Element join(Element a, Element b) const { return d_->join[a * size() + b]; }
  Element bottom() const { return d_->bottom; }
  Element top() const { return d_->top; }

  /// Join (meet) of a set of elements; empty set gives bottom (top).
  Element join_of(const ElementSet& s) const;
  Element meet_of(const ElementSet& s) const;

  const std::vector<Element>& lower_covers(Element e) const { return d_->lower_covers[e]; }
  const std::vector<Element>& upper_covers(Element e) const { return d_->upper_covers[e]; }

 private:
  struct Data {
    FinitePoset order;
    std::vector<Element> meet, join;
    Element bottom = 0, top = 0;
    std::vector<std::vector<Element>> lower_covers, upper_covers;
  };
  std::shared_ptr<const Data> d_;

  friend FiniteLattice lattice_from_order(FinitePoset, const std::function<Element(Element, Element)>&,
                                          const std::function<Element(Element, Element)>&);
};

/// Computes meet/join tables. Throws NotALattice for the first pair (in id
/// order) lacking a glb or lub, InvalidInput if `p` is not a valid poset.
FiniteLattice lattice_from_order(FinitePoset p);

/// Same, but first tries the candidate meet/join returned by the hints (which
/// may return kNoElement); candidates are verified against the order.
FiniteLattice lattice_from_order(FinitePoset p, const std::function<Element(Element, Element)>& meet_hint,
                                 const std::function<Element(Element, Element)>& join_hint);

struct DistributivityResult {
  bool distributive = true;
  /// (x, y, z) with x∧(y∨z) != (x∧y)∨(x∧z), lexicographically first.
  std::optional<std::array<Element, 3>> witness;
};

DistributivityResult is_distributive(const FiniteLattice& l);

struct JoinIrreducibleSet {
  std::vector<Element> members;
  ElementSet member_mask;
  /// Indexed by element id; kNoElement for non-members.
  std::vector<Element> lower_cover;
  std::vector<Element> atoms;
  ElementSet atom_mask;

  bool contains(Element e) const { return member_mask.test(e); }
  bool is_atom(Element e) const { return atom_mask.test(e); }
};

/// Members are the elements with exactly one lower cover. Also checks that
/// every element is the join of the join-irreducibles below it.
JoinIrreducibleSet join_irreducibles(const FiniteLattice& l);

struct TwoLevelResult {
  bool two_levels = true;
  /// First pair j < k in the join-irreducibles with j not an atom.
  std::optional<std::pair<Element, Element>> violation;
  /// A three-element chain i < j < k of join-irreducibles.
  std::optional<std::array<Element, 3>> chain;
};

TwoLevelResult has_two_levels(const JoinIrreducibleSet& j, const FiniteLattice& l);

/// Lattice of down-sets of a poset ordered by inclusion.
struct DownSetLattice {
  FiniteLattice lattice;
  /// Down-set of each lattice element, as a bitmask over poset elements.
  std::vector<std::uint64_t> sets;
  /// principal[p] is the lattice element ↓p.
  std::vector<Element> principal;
};

/// Elements are ordered by size then by mask; the empty down-set is labelled
/// "0" (or "∅" if some point is already called "0") and any other by its
/// maximal elements joined with "∨".
DownSetLattice down_set_lattice(const FinitePoset& p, std::size_t max_elements = 1u << 16);

FiniteLattice chain_lattice(std::size_t n);
/// Product of chains with the given element counts, ordered coordinatewise.
FiniteLattice product_of_chains(std::span<const std::size_t> lengths);

}  // namespace rk
