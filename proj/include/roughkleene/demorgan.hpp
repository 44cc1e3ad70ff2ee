#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "roughkleene/order.hpp"

namespace rk {

/// A distributive lattice with an order-reversing involution ∼.
class DeMorganStructure {
 public:
  DeMorganStructure() = default;

  const FiniteLattice& lattice() const { return lattice_; }
  Element neg(Element x) const { return neg_[x]; }
  const std::vector<Element>& neg_table() const { return neg_; }

 private:
  DeMorganStructure(FiniteLattice l, std::vector<Element> neg) : lattice_(std::move(l)), neg_(std::move(neg)) {}
  FiniteLattice lattice_;
  std::vector<Element> neg_;

  friend DeMorganStructure validate_demorgan(FiniteLattice, std::vector<Element>);
};

/// Throws NotDistributive, NotInvolution or NotAntitone with the first
/// witness (checked in that order); InvalidInput for a malformed table.
DeMorganStructure validate_demorgan(FiniteLattice l, std::vector<Element> neg);

struct KleeneCheck {
  bool kleene = true;
  /// First (x, y) with x∧∼x ≰ y∨∼y.
  std::optional<std::pair<Element, Element>> witness;
};

KleeneCheck is_kleene(const DeMorganStructure& d);

/// g on the join-irreducibles; other entries hold kNoElement.
class GMap {
 public:
  GMap() = default;
  explicit GMap(std::vector<Element> image) : image_(std::move(image)) {}
  Element operator()(Element j) const { return image_[j]; }
  const std::vector<Element>& table() const { return image_; }
  bool operator==(const GMap&) const = default;

 private:
  std::vector<Element> image_;
};

/// g(j) = ⋀{x | x ≰ ∼j}. Asserts g(j) is join-irreducible, antitone and
/// involutive, and comparable with j when d is Kleene.
GMap compute_g(const DeMorganStructure& d, const JoinIrreducibleSet& j);

/// ∼x = ⋁{j | g(j) ≰ x}.
std::vector<Element> neg_from_g(const FiniteLattice& l, const JoinIrreducibleSet& j, const GMap& g);

struct JPosetAlgebra {
  DeMorganStructure algebra;
  /// embedding[p] is the lattice element ↓p identified with poset point p.
  std::vector<Element> embedding;
  std::vector<std::uint64_t> down_sets;
};

/// Builds the lattice of down-sets of `jposet` and installs ∼ from the
/// involution `g` (given on poset points). Throws GViolatesAxioms unless g is
/// an antitone involution, comparable with each point when `require_kleene`.
JPosetAlgebra build_kleene_from_jposet(const FinitePoset& jposet, std::span<const Element> g,
                                       bool require_kleene = true);

/// Every involutive dual automorphism of a distributive lattice, i.e. every
/// De Morgan negation it admits, in lexicographic table order.
std::vector<std::vector<Element>> demorgan_operations(const FiniteLattice& l);

}  // namespace rk
