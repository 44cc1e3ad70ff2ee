#include "roughkleene/isomorphism.hpp"

#include <algorithm>
#include <map>

#include "roughkleene/error.hpp"

namespace rk {

namespace {

using Colors = std::vector<std::uint32_t>;

struct Structure {
  const FiniteLattice* lattice;
  UnaryOps ops;
};

std::vector<std::uint32_t> signature(const Structure& s, const Colors& c, Element x) {
  std::vector<std::uint32_t> sig{c[x]};
  const auto& up = s.lattice->upper_covers(x);
  const auto& down = s.lattice->lower_covers(x);
  std::vector<std::uint32_t> tmp;
  tmp.reserve(std::max(up.size(), down.size()));
  for (auto y : up) tmp.push_back(c[y]);
  std::sort(tmp.begin(), tmp.end());
  sig.push_back(static_cast<std::uint32_t>(tmp.size()));
  sig.insert(sig.end(), tmp.begin(), tmp.end());
  tmp.clear();
  for (auto y : down) tmp.push_back(c[y]);
  std::sort(tmp.begin(), tmp.end());
  sig.push_back(static_cast<std::uint32_t>(tmp.size()));
  sig.insert(sig.end(), tmp.begin(), tmp.end());
  for (const auto& op : s.ops) sig.push_back(c[op[x]]);
  return sig;
}

std::size_t class_count(const Colors& c) {
  Colors tmp = c;
  std::sort(tmp.begin(), tmp.end());
  return static_cast<std::size_t>(std::unique(tmp.begin(), tmp.end()) - tmp.begin());
}

/// Refines all structures jointly so colour ids stay comparable between
/// them. Returns false if colour class sizes diverge.
bool refine(std::span<const Structure> ss, std::span<Colors*> cs) {
  std::size_t classes = class_count(*cs[0]);
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ranks;
    std::vector<std::vector<std::vector<std::uint32_t>>> sigs(ss.size());
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const auto n = static_cast<Element>(cs[k]->size());
      sigs[k].reserve(n);
      for (Element x = 0; x < n; ++x) {
        sigs[k].push_back(signature(ss[k], *cs[k], x));
        ranks.emplace(sigs[k].back(), 0);
      }
    }
    std::uint32_t r = 0;
    for (auto& [sig, rank] : ranks) rank = r++;
    for (std::size_t k = 0; k < ss.size(); ++k)
      for (std::size_t x = 0; x < sigs[k].size(); ++x) (*cs[k])[x] = ranks.at(sigs[k][x]);

    for (std::size_t k = 1; k < ss.size(); ++k) {
      Colors a = *cs[0], b = *cs[k];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return false;
    }
    const std::size_t now = class_count(*cs[0]);
    if (now == classes) return true;
    classes = now;
  }
}

Colors initial_colors(const FiniteLattice& l) {
  const auto n = static_cast<Element>(l.size());
  Colors c(n);
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> ranks;
  std::vector<std::pair<std::size_t, std::size_t>> keys(n);
  for (Element x = 0; x < n; ++x) {
    keys[x] = {l.down(x).count(), l.up(x).count()};
    ranks.emplace(keys[x], 0);
  }
  std::uint32_t r = 0;
  for (auto& [k, v] : ranks) v = r++;
  for (Element x = 0; x < n; ++x) c[x] = ranks.at(keys[x]);
  return c;
}

/// Smallest colour shared by more than one element, or nullopt if discrete.
std::optional<std::uint32_t> target_cell(const Colors& c) {
  std::map<std::uint32_t, std::size_t> counts;
  for (auto v : c) ++counts[v];
  for (auto [color, count] : counts)
    if (count > 1) return color;
  return std::nullopt;
}

bool verify_map(const Structure& a, const Structure& b, const std::vector<Element>& f) {
  const auto n = static_cast<Element>(f.size());
  std::vector<Element> mapped;
  for (Element x = 0; x < n; ++x) {
    mapped.clear();
    for (auto y : a.lattice->upper_covers(x)) mapped.push_back(f[y]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != b.lattice->upper_covers(f[x])) return false;
    for (std::size_t k = 0; k < a.ops.size(); ++k)
      if (f[a.ops[k][x]] != b.ops[k][f[x]]) return false;
  }
  return true;
}

bool search_iso(const Structure& a, const Structure& b, Colors ca, Colors cb, std::vector<Element>& out) {
  Structure ss[2] = {a, b};
  Colors* cs[2] = {&ca, &cb};
  if (!refine(ss, cs)) return false;
  const auto cell = target_cell(ca);
  if (!cell) {
    const auto n = ca.size();
    std::vector<Element> by_color(n);
    for (Element y = 0; y < n; ++y) by_color[cb[y]] = y;
    out.assign(n, 0);
    for (Element x = 0; x < n; ++x) out[x] = by_color[ca[x]];
    return verify_map(a, b, out);
  }
  const auto n = static_cast<Element>(ca.size());
  Element v = 0;
  while (ca[v] != *cell) ++v;
  const auto fresh = static_cast<std::uint32_t>(n);
  for (Element w = 0; w < n; ++w) {
    if (cb[w] != *cell) continue;
    Colors na = ca, nb = cb;
    na[v] = fresh;
    nb[w] = fresh;
    if (search_iso(a, b, std::move(na), std::move(nb), out)) return true;
  }
  return false;
}

std::vector<std::uint32_t> encode(const Structure& s, const Colors& c) {
  const auto n = static_cast<Element>(c.size());
  std::vector<Element> inverse(n);
  for (Element x = 0; x < n; ++x) inverse[c[x]] = x;
  std::vector<std::uint32_t> code{static_cast<std::uint32_t>(n)};
  std::vector<std::uint32_t> tmp;
  for (Element i = 0; i < n; ++i) {
    tmp.clear();
    for (auto y : s.lattice->upper_covers(inverse[i])) tmp.push_back(c[y]);
    std::sort(tmp.begin(), tmp.end());
    code.push_back(static_cast<std::uint32_t>(tmp.size()));
    code.insert(code.end(), tmp.begin(), tmp.end());
  }
  for (const auto& op : s.ops)
    for (Element i = 0; i < n; ++i) code.push_back(c[op[inverse[i]]]);
  return code;
}

void search_canonical(const Structure& s, Colors c, std::optional<std::vector<std::uint32_t>>& best,
                      std::size_t& leaves, std::size_t max_leaves) {
  Structure ss[1] = {s};
  Colors* cs[1] = {&c};
  refine(ss, cs);
  const auto cell = target_cell(c);
  if (!cell) {
    if (++leaves > max_leaves) throw BoundsExceeded("canonical_form: leaf budget exhausted");
    auto code = encode(s, c);
    if (!best || code < *best) best = std::move(code);
    return;
  }
  const auto n = static_cast<Element>(c.size());
  for (Element v = 0; v < n; ++v) {
    if (c[v] != *cell) continue;
    Colors nc = c;
    nc[v] = static_cast<std::uint32_t>(n);
    search_canonical(s, std::move(nc), best, leaves, max_leaves);
  }
}

void check_ops(const FiniteLattice& l, UnaryOps ops) {
  for (const auto& op : ops) {
    if (op.size() != l.size()) throw InvalidInput("isomorphism: operation table has wrong size");
    for (auto v : op)
      if (v >= l.size()) throw InvalidInput("isomorphism: operation value out of range");
  }
}

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const FiniteLattice& a, const FiniteLattice& b, UnaryOps ops_a,
                                                     UnaryOps ops_b) {
  if (a.size() != b.size() || ops_a.size() != ops_b.size()) return std::nullopt;
  check_ops(a, ops_a);
  check_ops(b, ops_b);
  // Initial colours are computed jointly so equal keys get equal ids.
  const auto n = static_cast<Element>(a.size());
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> ranks;
  for (Element x = 0; x < n; ++x) {
    ranks.emplace(std::make_pair(a.down(x).count(), a.up(x).count()), 0);
    ranks.emplace(std::make_pair(b.down(x).count(), b.up(x).count()), 0);
  }
  std::uint32_t r = 0;
  for (auto& [k, v] : ranks) v = r++;
  Colors ca(n), cb(n);
  for (Element x = 0; x < n; ++x) {
    ca[x] = ranks.at({a.down(x).count(), a.up(x).count()});
    cb[x] = ranks.at({b.down(x).count(), b.up(x).count()});
  }
  std::vector<Element> out;
  if (search_iso({&a, ops_a}, {&b, ops_b}, std::move(ca), std::move(cb), out)) return out;
  return std::nullopt;
}

std::vector<std::uint32_t> canonical_form(const FiniteLattice& l, UnaryOps ops, std::size_t max_leaves) {
  check_ops(l, ops);
  std::optional<std::vector<std::uint32_t>> best;
  std::size_t leaves = 0;
  search_canonical({&l, ops}, initial_colors(l), best, leaves, max_leaves);
  return *best;
}

}  // namespace rk
