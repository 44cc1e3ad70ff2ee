#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "roughkleene/order.hpp"

namespace rk {

/// Unary operations carried along with a lattice (for example ∼, *, +); an
/// isomorphism must commute with each of them. Tables are indexed by element.
using UnaryOps = std::span<const std::vector<Element>>;

/// Searches for an order isomorphism a → b commuting with the paired unary
/// operations. Colour refinement on the cover graph, individualization and
/// backtracking; returns the map a-id → b-id.
std::optional<std::vector<Element>> find_isomorphism(const FiniteLattice& a, const FiniteLattice& b,
                                                     UnaryOps ops_a = {}, UnaryOps ops_b = {});

/// Canonical encoding: two lattices (with operations) are isomorphic iff
/// their encodings are equal. Explores every leaf of the refinement tree, so
/// cost grows with the automorphism group; throws BoundsExceeded past
/// `max_leaves`.
std::vector<std::uint32_t> canonical_form(const FiniteLattice& l, UnaryOps ops = {},
                                          std::size_t max_leaves = std::size_t{1} << 18);

}  // namespace rk
