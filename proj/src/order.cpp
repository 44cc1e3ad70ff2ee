#include "roughkleene/order.hpp"

#include <algorithm>
#include <unordered_map>

#include "roughkleene/error.hpp"

namespace rk {

namespace {

std::vector<ElementSet> transpose(const std::vector<ElementSet>& rows) {
  const std::size_t n = rows.size();
  std::vector<ElementSet> out(n, ElementSet(n));
  for (std::size_t a = 0; a < n; ++a)
    for_each_element(rows[a], [&](Element b) { out[b].set(a); });
  return out;
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<ElementSet> up_rows)
    : labels_(std::move(labels)), up_(std::move(up_rows)) {
  if (up_.size() != labels_.size())
    throw InvalidInput("poset: relation has " + std::to_string(up_.size()) + " rows but " +
                       std::to_string(labels_.size()) + " labels");
  for (auto& row : up_)
    if (row.size() != labels_.size()) throw InvalidInput("poset: relation row has wrong width");
  down_ = transpose(up_);
}

FinitePoset FinitePoset::from_matrix(std::vector<std::string> labels,
                                     const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = labels.size();
  if (leq.size() != n) throw InvalidInput("poset: leq matrix must be " + std::to_string(n) + " rows");
  std::vector<ElementSet> rows(n, ElementSet(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (leq[a].size() != n) throw InvalidInput("poset: leq matrix row " + std::to_string(a) + " has wrong width");
    for (std::size_t b = 0; b < n; ++b)
      if (leq[a][b]) rows[a].set(b);
  }
  return FinitePoset(std::move(labels), std::move(rows));
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels,
                                     std::span<const std::pair<Element, Element>> covers) {
  const std::size_t n = labels.size();
  std::vector<ElementSet> rows(n, ElementSet(n));
  for (std::size_t a = 0; a < n; ++a) rows[a].set(a);
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n)
      throw InvalidInput("poset: cover pair (" + std::to_string(lo) + "," + std::to_string(hi) +
                         ") out of range");
    rows[lo].set(hi);
  }
  // Warshall closure on bitset rows.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rows[i].test(k)) rows[i] |= rows[k];
  return FinitePoset(std::move(labels), std::move(rows));
}

std::optional<Element> FinitePoset::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Element>(i);
  return std::nullopt;
}

PosetReport validate_poset(const FinitePoset& p) {
  PosetReport report;
  const auto n = static_cast<Element>(p.size());

  for (Element a = 0; a < n; ++a)
    if (!p.leq(a, a)) {
      report.violations.push_back({PosetViolation::Kind::Reflexivity, {a}});
      break;
    }

  [&] {
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b)
        if (p.leq(a, b) && p.leq(b, a)) {
          report.violations.push_back({PosetViolation::Kind::Antisymmetry, {a, b}});
          return;
        }
  }();

  [&] {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        if (!p.leq(a, b)) continue;
        ElementSet missing = p.up(b) - p.up(a);
        if (missing.any()) {
          report.violations.push_back(
              {PosetViolation::Kind::Transitivity, {a, b, static_cast<Element>(missing.find_first())}});
          return;
        }
      }
  }();

  [&] {
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b)
        if (p.label(a) == p.label(b)) {
          report.violations.push_back({PosetViolation::Kind::DuplicateLabel, {a, b}});
          return;
        }
  }();
  return report;
}

FiniteLattice lattice_from_order(FinitePoset p) {
  return lattice_from_order(std::move(p), {}, {});
}

FiniteLattice lattice_from_order(FinitePoset p, const std::function<Element(Element, Element)>& meet_hint,
                                 const std::function<Element(Element, Element)>& join_hint) {
  const auto n = static_cast<Element>(p.size());
  if (n == 0) throw InvalidInput("lattice: empty carrier");
  if (auto rep = validate_poset(p); !rep.valid()) {
    const auto& v = rep.violations.front();
    static const char* names[] = {"reflexivity", "antisymmetry", "transitivity", "duplicate label"};
    std::string w;
    for (auto e : v.witness) w += (w.empty() ? "" : ",") + std::to_string(e);
    throw InvalidInput(std::string("lattice: order violates ") + names[static_cast<int>(v.kind)] + " at (" +
                       w + ")");
  }

  std::vector<std::size_t> down_count(n), up_count(n);
  for (Element a = 0; a < n; ++a) {
    down_count[a] = p.down(a).count();
    up_count[a] = p.up(a).count();
  }

  std::vector<Element> meet(std::size_t{n} * n), join(std::size_t{n} * n);
  ElementSet scratch(n);

  // Greatest element of `bounds` w.r.t. the given rows, kNoElement if none.
  auto greatest = [&](const ElementSet& bounds, Element hint, const std::vector<ElementSet>& below,
                      const std::vector<std::size_t>& count) -> Element {
    if (hint != kNoElement && hint < n && bounds.test(hint) && bounds.is_subset_of(below[hint])) return hint;
    Element best = kNoElement;
    std::size_t best_count = 0;
    for_each_element(bounds, [&](Element c) {
      if (best == kNoElement || count[c] > best_count) {
        best = c;
        best_count = count[c];
      }
    });
    if (best != kNoElement && bounds.is_subset_of(below[best])) return best;
    return kNoElement;
  };

  std::vector<ElementSet> downs(n), ups(n);
  for (Element a = 0; a < n; ++a) {
    downs[a] = p.down(a);
    ups[a] = p.up(a);
  }

  for (Element a = 0; a < n; ++a) {
    meet[a * n + a] = a;
    join[a * n + a] = a;
    for (Element b = a + 1; b < n; ++b) {
      scratch = downs[a];
      scratch &= downs[b];
      const Element m = greatest(scratch, meet_hint ? meet_hint(a, b) : kNoElement, downs, down_count);
      if (m == kNoElement)
        throw NotALattice(a, b, NotALattice::Bound::Meet,
                          "not a lattice: no greatest lower bound for (" + p.label(a) + ", " + p.label(b) + ")");
      scratch = ups[a];
      scratch &= ups[b];
      const Element j = greatest(scratch, join_hint ? join_hint(a, b) : kNoElement, ups, up_count);
      if (j == kNoElement)
        throw NotALattice(a, b, NotALattice::Bound::Join,
                          "not a lattice: no least upper bound for (" + p.label(a) + ", " + p.label(b) + ")");
      meet[a * n + b] = meet[b * n + a] = m;
      join[a * n + b] = join[b * n + a] = j;
    }
  }

  auto data = std::make_shared<FiniteLattice::Data>();
  data->bottom = 0;
  data->top = 0;
  for (Element a = 1; a < n; ++a) {
    data->bottom = meet[data->bottom * n + a];
    data->top = join[data->top * n + a];
  }

  data->lower_covers.assign(n, {});
  data->upper_covers.assign(n, {});
  for (Element x = 0; x < n; ++x) {
    for_each_element(downs[x], [&](Element y) {
      if (y == x) return;
      scratch = ups[y];
      scratch &= downs[x];
      if (scratch.count() == 2) {
        data->lower_covers[x].push_back(y);
        data->upper_covers[y].push_back(x);
      }
    });
  }
  for (auto& v : data->upper_covers) std::sort(v.begin(), v.end());

  data->order = std::move(p);
  data->meet = std::move(meet);
  data->join = std::move(join);
  FiniteLattice l;
  l.d_ = std::move(data);
  return l;
}

Element FiniteLattice::join_of(const ElementSet& s) const {
  Element acc = bottom();
  for_each_element(s, [&](Element e) { acc = join(acc, e); });
  return acc;
}

Element FiniteLattice::meet_of(const ElementSet& s) const {
  Element acc = top();
  for_each_element(s, [&](Element e) { acc = meet(acc, e); });
  return acc;
}

JoinIrreducibleSet join_irreducibles(const FiniteLattice& l) {
  const auto n = static_cast<Element>(l.size());
  JoinIrreducibleSet j;
  j.member_mask = ElementSet(n);
  j.atom_mask = ElementSet(n);
  j.lower_cover.assign(n, kNoElement);
  for (Element x = 0; x < n; ++x) {
    if (x == l.bottom()) continue;
    const auto& lc = l.lower_covers(x);
    if (lc.size() != 1) continue;
    j.members.push_back(x);
    j.member_mask.set(x);
    j.lower_cover[x] = lc.front();
    if (lc.front() == l.bottom()) {
      j.atoms.push_back(x);
      j.atom_mask.set(x);
    }
  }
  for (Element x = 0; x < n; ++x) {
    ElementSet below = l.down(x) & j.member_mask;
    if (l.join_of(below) != x)
      throw AssertionFailure("spatiality failure: " + l.label(x) +
                             " is not the join of the join-irreducibles below it");
  }
  return j;
}

DistributivityResult is_distributive(const FiniteLattice& l) {
  const auto n = static_cast<Element>(l.size());
  const auto jirr = join_irreducibles(l);
  // L is distributive iff x ↦ {j ∈ J | j <= x} preserves joins.
  std::vector<ElementSet> jdown(n);
  for (Element x = 0; x < n; ++x) jdown[x] = l.down(x) & jirr.member_mask;
  bool ok = true;
  for (Element x = 0; x < n && ok; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (jdown[l.join(x, y)] != (jdown[x] | jdown[y])) {
        ok = false;
        break;
      }
  if (ok) return {};

  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)))
          return {false, std::array<Element, 3>{x, y, z}};
  throw AssertionFailure("distributivity: join-preservation test failed but no violating triple exists");
}

TwoLevelResult has_two_levels(const JoinIrreducibleSet& j, const FiniteLattice& l) {
  for (Element lo : j.members) {
    if (j.is_atom(lo)) continue;
    for (Element hi : j.members) {
      if (!l.lt(lo, hi)) continue;
      TwoLevelResult r;
      r.two_levels = false;
      r.violation = std::make_pair(lo, hi);
      for (Element below : j.members)
        if (l.lt(below, lo)) {
          r.chain = std::array<Element, 3>{below, lo, hi};
          break;
        }
      return r;
    }
  }
  return {};
}

DownSetLattice down_set_lattice(const FinitePoset& p, std::size_t max_elements) {
  const std::size_t m = p.size();
  if (m > 64) throw BoundsExceeded("down-set lattice: poset has more than 64 elements");
  std::vector<std::uint64_t> strict_below(m, 0);
  for (Element a = 0; a < m; ++a)
    for_each_element(p.down(a), [&](Element b) {
      if (b != a) strict_below[a] |= std::uint64_t{1} << b;
    });

  std::vector<std::uint64_t> sets{0};
  std::unordered_map<std::uint64_t, Element> seen{{0, 0}};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::uint64_t d = sets[i];
    for (std::size_t a = 0; a < m; ++a) {
      const std::uint64_t bit = std::uint64_t{1} << a;
      if ((d & bit) || (strict_below[a] & ~d)) continue;
      if (seen.emplace(d | bit, 0).second) {
        sets.push_back(d | bit);
        if (sets.size() > max_elements)
          throw BoundsExceeded("down-set lattice exceeds " + std::to_string(max_elements) + " elements");
      }
    }
  }
  std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  const auto n = static_cast<Element>(sets.size());
  for (Element i = 0; i < n; ++i) seen[sets[i]] = i;

  // "0" is taken when the poset itself has a point called "0".
  bool zero_taken = false;
  for (Element a = 0; a < m; ++a) zero_taken = zero_taken || p.label(a) == "0";
  std::vector<std::string> labels(n);
  for (Element i = 0; i < n; ++i) {
    const std::uint64_t d = sets[i];
    if (d == 0) {
      labels[i] = zero_taken ? "∅" : "0";
      continue;
    }
    std::string s;
    for (std::size_t a = 0; a < m; ++a) {
      if (!(d >> a & 1)) continue;
      bool maximal = true;
      for (std::size_t b = 0; b < m && maximal; ++b)
        if (b != a && (d >> b & 1) && p.leq(static_cast<Element>(a), static_cast<Element>(b))) maximal = false;
      if (maximal) s += (s.empty() ? "" : "∨") + p.label(static_cast<Element>(a));
    }
    labels[i] = std::move(s);
  }

  std::vector<ElementSet> rows(n, ElementSet(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = a; b < n; ++b)
      if ((sets[a] & ~sets[b]) == 0) rows[a].set(b);

  FinitePoset order(std::move(labels), std::move(rows));
  auto lattice = lattice_from_order(
      std::move(order), [&](Element a, Element b) { return seen.at(sets[a] & sets[b]); },
      [&](Element a, Element b) { return seen.at(sets[a] | sets[b]); });

  std::vector<Element> principal(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::uint64_t d = strict_below[a] | (std::uint64_t{1} << a);
    principal[a] = seen.at(d);
  }
  return {std::move(lattice), std::move(sets), std::move(principal)};
}

FiniteLattice chain_lattice(std::size_t n) {
  std::vector<std::string> labels(n);
  std::vector<ElementSet> rows(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (std::size_t k = i; k < n; ++k) rows[i].set(k);
  }
  return lattice_from_order(FinitePoset(std::move(labels), std::move(rows)));
}

FiniteLattice product_of_chains(std::span<const std::size_t> lengths) {
  std::size_t n = 1;
  for (auto len : lengths) {
    if (len == 0) throw InvalidInput("product_of_chains: chain of length 0");
    n *= len;
  }
  const std::size_t k = lengths.size();
  std::vector<std::vector<std::size_t>> coords(n, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (std::size_t c = k; c-- > 0;) {
      coords[i][c] = rest % lengths[c];
      rest /= lengths[c];
    }
  }
  std::vector<std::string> labels(n);
  std::vector<ElementSet> rows(n, ElementSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = "(";
    for (std::size_t c = 0; c < k; ++c) s += (c ? "," : "") + std::to_string(coords[i][c]);
    labels[i] = s + ")";
    for (std::size_t j = 0; j < n; ++j) {
      bool le = true;
      for (std::size_t c = 0; c < k && le; ++c) le = coords[i][c] <= coords[j][c];
      if (le) rows[i].set(j);
    }
  }
  auto index_of = [&](const std::vector<std::size_t>& xs) {
    std::size_t idx = 0;
    for (std::size_t c = 0; c < k; ++c) idx = idx * lengths[c] + xs[c];
    return static_cast<Element>(idx);
  };
  std::vector<std::size_t> tmp(k);
  return lattice_from_order(
      FinitePoset(std::move(labels), std::move(rows)),
      [&](Element a, Element b) {
        for (std::size_t c = 0; c < k; ++c) tmp[c] = std::min(coords[a][c], coords[b][c]);
        return index_of(tmp);
      },
      [&](Element a, Element b) {
        for (std::size_t c = 0; c < k; ++c) tmp[c] = std::max(coords[a][c], coords[b][c]);
        return index_of(tmp);
      });
}

}  // namespace rk
