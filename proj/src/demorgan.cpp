#include "roughkleene/demorgan.hpp"

#include <functional>
#include <unordered_map>

#include "roughkleene/error.hpp"

namespace rk {

DeMorganStructure validate_demorgan(FiniteLattice l, std::vector<Element> neg) {
  const auto n = static_cast<Element>(l.size());
  if (neg.size() != n)
    throw InvalidInput("neg: expected " + std::to_string(n) + " entries, got " + std::to_string(neg.size()));
  for (Element x = 0; x < n; ++x)
    if (neg[x] >= n) throw InvalidInput("neg: value out of range at " + l.label(x));

  if (auto dist = is_distributive(l); !dist.distributive) {
    const auto& t = *dist.witness;
    throw NotDistributive({t[0], t[1], t[2]}, "lattice is not distributive: (" + l.label(t[0]) + ", " +
                                                  l.label(t[1]) + ", " + l.label(t[2]) + ")");
  }
  for (Element x = 0; x < n; ++x)
    if (neg[neg[x]] != x) throw NotInvolution(x, "neg is not an involution at " + l.label(x));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (l.leq(x, y) != l.leq(neg[y], neg[x]))
        throw NotAntitone(x, y, "neg is not order-reversing at (" + l.label(x) + ", " + l.label(y) + ")");
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (neg[l.join(x, y)] != l.meet(neg[x], neg[y]) || neg[l.meet(x, y)] != l.join(neg[x], neg[y]))
        throw AssertionFailure("De Morgan laws fail at (" + l.label(x) + ", " + l.label(y) + ")");
  return DeMorganStructure(std::move(l), std::move(neg));
}

KleeneCheck is_kleene(const DeMorganStructure& d) {
  const auto& l = d.lattice();
  const auto n = static_cast<Element>(l.size());
  std::vector<Element> low(n), high(n);
  Element low_join = l.bottom(), high_meet = l.top();
  for (Element x = 0; x < n; ++x) {
    low[x] = l.meet(x, d.neg(x));
    high[x] = l.join(x, d.neg(x));
    low_join = l.join(low_join, low[x]);
    high_meet = l.meet(high_meet, high[x]);
  }
  if (l.leq(low_join, high_meet)) return {};
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (!l.leq(low[x], high[y])) return {false, std::make_pair(x, y)};
  throw AssertionFailure("is_kleene: aggregate test failed without a witness pair");
}

GMap compute_g(const DeMorganStructure& d, const JoinIrreducibleSet& j) {
  const auto& l = d.lattice();
  const auto n = static_cast<Element>(l.size());
  std::vector<Element> g(n, kNoElement);
  for (Element m : j.members) {
    ElementSet not_below = l.down(d.neg(m));
    not_below.flip();
    g[m] = l.meet_of(not_below);
    if (!j.contains(g[m]))
      throw AssertionFailure("g(" + l.label(m) + ") = " + l.label(g[m]) + " is not join-irreducible");
  }
  for (Element a : j.members) {
    if (g[g[a]] != a) throw AssertionFailure("(J2) fails at " + l.label(a));
    for (Element b : j.members)
      if (l.leq(a, b) && !l.leq(g[b], g[a]))
        throw AssertionFailure("(J1) fails at (" + l.label(a) + ", " + l.label(b) + ")");
  }
  if (is_kleene(d).kleene)
    for (Element a : j.members)
      if (!l.leq(a, g[a]) && !l.leq(g[a], a)) throw AssertionFailure("(J3) fails at " + l.label(a));
  return GMap(std::move(g));
}

std::vector<Element> neg_from_g(const FiniteLattice& l, const JoinIrreducibleSet& j, const GMap& g) {
  const auto n = static_cast<Element>(l.size());
  std::vector<Element> neg(n);
  for (Element x = 0; x < n; ++x) {
    Element acc = l.bottom();
    for (Element m : j.members)
      if (!l.leq(g(m), x)) acc = l.join(acc, m);
    neg[x] = acc;
  }
  return neg;
}

JPosetAlgebra build_kleene_from_jposet(const FinitePoset& jposet, std::span<const Element> g, bool require_kleene) {
  const auto m = static_cast<Element>(jposet.size());
  if (auto rep = validate_poset(jposet); !rep.valid()) throw InvalidInput("jposet is not a partial order");
  if (g.size() != m) throw InvalidInput("g: expected " + std::to_string(m) + " entries");
  for (Element p = 0; p < m; ++p)
    if (g[p] >= m) throw InvalidInput("g: value out of range at " + jposet.label(p));

  for (Element p = 0; p < m; ++p) {
    if (g[g[p]] != p) throw GViolatesAxioms("g is not an involution at " + jposet.label(p));
    for (Element q = 0; q < m; ++q)
      if (jposet.leq(p, q) && !jposet.leq(g[q], g[p]))
        throw GViolatesAxioms("g is not antitone at (" + jposet.label(p) + ", " + jposet.label(q) + ")");
    if (require_kleene && !jposet.comparable(p, g[p]))
      throw GViolatesAxioms("g(" + jposet.label(p) + ") is not comparable with " + jposet.label(p));
  }

  auto ds = down_set_lattice(jposet);
  const auto& l = ds.lattice;
  const auto n = static_cast<Element>(l.size());
  std::unordered_map<std::uint64_t, Element> index;
  for (Element i = 0; i < n; ++i) index.emplace(ds.sets[i], i);
  std::vector<Element> neg(n);
  for (Element i = 0; i < n; ++i) {
    std::uint64_t image = 0;
    for (Element p = 0; p < m; ++p)
      if (!(ds.sets[i] >> g[p] & 1)) image |= std::uint64_t{1} << p;
    neg[i] = index.at(image);
  }
  auto algebra = validate_demorgan(l, std::move(neg));

  const auto jirr = join_irreducibles(l);
  if (jirr.members.size() != m)
    throw AssertionFailure("down-set lattice has an unexpected number of join-irreducibles");
  const auto lg = compute_g(algebra, jirr);
  for (Element p = 0; p < m; ++p)
    if (lg(ds.principal[p]) != ds.principal[g[p]])
      throw AssertionFailure("g recomputed on the down-set lattice differs at " + jposet.label(p));
  if (require_kleene && !is_kleene(algebra).kleene)
    throw AssertionFailure("comparable g produced a non-Kleene algebra");
  return {std::move(algebra), std::move(ds.principal), std::move(ds.sets)};
}

std::vector<std::vector<Element>> demorgan_operations(const FiniteLattice& l) {
  const auto n = static_cast<Element>(l.size());
  std::vector<std::size_t> down_count(n), up_count(n);
  for (Element x = 0; x < n; ++x) {
    down_count[x] = l.down(x).count();
    up_count[x] = l.up(x).count();
  }
  std::vector<std::vector<Element>> out;
  std::vector<Element> f(n, kNoElement);

  auto consistent = [&](Element x) {
    for (Element u = 0; u < n; ++u) {
      if (f[u] == kNoElement) continue;
      if (l.leq(u, x) != l.leq(f[x], f[u])) return false;
      if (l.leq(x, u) != l.leq(f[u], f[x])) return false;
    }
    return true;
  };

  std::function<void(Element)> assign = [&](Element x) {
    while (x < n && f[x] != kNoElement) ++x;
    if (x == n) {
      out.push_back(f);
      return;
    }
    for (Element y = x; y < n; ++y) {
      if (f[y] != kNoElement) continue;
      if (down_count[x] != up_count[y] || up_count[x] != down_count[y]) continue;
      f[x] = y;
      f[y] = x;
      if (consistent(x) && consistent(y)) assign(x + 1);
      f[x] = kNoElement;
      f[y] = kNoElement;
    }
  };
  assign(0);
  return out;
}

}  // namespace rk
