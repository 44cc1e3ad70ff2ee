#include "roughkleene/dot.hpp"

#include <sstream>

namespace rk {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string hasse_dot(const FiniteLattice& l, const DotOptions& opts) {
  std::ostringstream os;
  os << "digraph " << quoted(opts.name) << " {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=circle, width=0.15, fixedsize=true, fontsize=10];\n";
  os << "  edge [arrowhead=none];\n";
  for (Element x = 0; x < l.size(); ++x) {
    const bool fill = opts.filled && opts.filled->contains(x);
    std::string text = l.label(x);
    if (opts.neg) text += "  ∼" + l.label((*opts.neg)[x]);
    os << "  n" << x << " [xlabel=" << quoted(text) << ", label=\"\", style="
       << (fill ? "filled, fillcolor=black" : "solid") << "];\n";
  }
  for (Element x = 0; x < l.size(); ++x)
    for (Element y : l.upper_covers(x)) os << "  n" << x << " -> n" << y << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace rk
