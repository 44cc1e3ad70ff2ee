#pragma once

#include <string>
#include <vector>

#include "roughkleene/order.hpp"

namespace rk {

struct DotOptions {
  std::string name = "L";
  /// Elements drawn as filled circles, usually the join-irreducibles.
  const JoinIrreducibleSet* filled = nullptr;
  /// When set, each node gets an external "∼" label.
  const std::vector<Element>* neg = nullptr;
};

/// Hasse diagram, bottom-up, nodes and edges in id order.
std::string hasse_dot(const FiniteLattice& l, const DotOptions& opts = {});

}  // namespace rk
