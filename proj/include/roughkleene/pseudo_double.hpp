#pragma once

#include <optional>
#include <span>
#include <vector>

#include "roughkleene/order.hpp"

namespace rk {

/// A lattice with pseudocomplement x* and dual pseudocomplement x⁺.
struct DoublePStructure {
  FiniteLattice lattice;
  std::vector<Element> star;
  std::vector<Element> plus;
  /// Non-distributive inputs are accepted but tagged; regularity checks
  /// refuse them.
  bool distributive = true;
};

/// x* is the greatest z with x∧z = 0, x⁺ the least z with x∨z = 1. Throws
/// NoPseudocomplement if some element lacks either. Asserts the p-algebra
/// laws (i)–(v) and their duals.
DoublePStructure compute_pseudocomplements(const FiniteLattice& l);

struct ConditionResult {
  bool holds = true;
  std::vector<Element> witness;
};

struct MDNReport {
  ConditionResult m;  ///< x* = y* and x⁺ = y⁺ imply x = y
  ConditionResult d;  ///< x∧x⁺ <= y∨y*
  std::optional<ConditionResult> n;  ///< x* <= ∼x, only with a negation
};

/// Evaluates (M) and (D) independently and asserts they agree on
/// distributive input; (N) when `neg` is given, with x* <= ∼x <= x⁺ asserted
/// whenever (N) holds.
MDNReport check_m_d_n(const DoublePStructure& d, std::optional<std::span<const Element>> neg = std::nullopt);

struct HeytingTables {
  std::size_t n = 0;
  std::vector<Element> implies;    ///< a ⇒ b, greatest x with a∧x <= b
  std::vector<Element> coimplies;  ///< a ⇐ b, least x with a∨x >= b
  Element imp(Element a, Element b) const { return implies[a * n + b]; }
  Element coimp(Element a, Element b) const { return coimplies[a * n + b]; }
};

/// Brute-force relative pseudocomplements. When (M) holds, both tables are
/// checked against the closed forms built from * and ⁺ alone.
HeytingTables heyting_implications(const DoublePStructure& d);

/// Image of * (or ⁺) with its Boolean operations.
struct Skeleton {
  std::vector<Element> elements;
  std::vector<Element> atoms;
};

struct Skeletons {
  Skeleton star;  ///< S*(L), join a⊔b = (a*∧b*)*
  Skeleton plus;  ///< S⁺(L), meet a⊓b = (a⁺∨b⁺)⁺
};

/// Extracts both skeletons and checks each is a Boolean algebra under its
/// operations (closed, complemented, atomistic with 2^atoms elements).
Skeletons skeletons(const DoublePStructure& d);

struct PrimeFilterFamily {
  /// Each filter is principal; generators[i] is its least element.
  std::vector<Element> generators;
  std::vector<ElementSet> filters;
  std::vector<bool> maximal;
  std::size_t longest_chain = 0;
};

/// Prime filters of a finite distributive lattice: the principal filters of
/// join-irreducibles, each checked for primality. On lattices up to
/// `scan_limit` elements every principal filter is also scanned and the two
/// families must agree.
PrimeFilterFamily prime_filters(const FiniteLattice& l, std::size_t scan_limit = 128);

struct RegularityReport {
  MDNReport conditions;
  std::size_t prime_chain_max = 0;
  TwoLevelResult two_level;
  bool m = true;
  bool prime_chains_ok = true;
  bool two_levels = true;
  bool regular = true;
};

/// Decides regularity three ways: (M), every chain of prime filters has at
/// most two members, and the join-irreducibles have at most two levels.
/// Throws CriteriaDisagree if they differ, NotDistributive on
/// non-distributive input.
RegularityReport is_regular(const DoublePStructure& d, const JoinIrreducibleSet& j,
                            std::optional<std::span<const Element>> neg = std::nullopt);

}  // namespace rk
