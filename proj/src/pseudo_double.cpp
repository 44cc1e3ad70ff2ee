#include "roughkleene/pseudo_double.hpp"

#include <algorithm>
#include <map>

#include "roughkleene/error.hpp"

namespace rk {

namespace {

void check_p_laws(const FiniteLattice& l, const std::vector<Element>& star, const std::vector<Element>& plus) {
  const auto n = static_cast<Element>(l.size());
  auto fail = [&](const std::string& law, Element a, Element b) {
    throw AssertionFailure("pseudocomplement law " + law + " fails at (" + l.label(a) + ", " + l.label(b) + ")");
  };
  for (Element a = 0; a < n; ++a) {
    const Element ss = star[star[a]];
    if (!l.leq(a, ss) || star[star[ss]] != ss) fail("(ii)", a, a);
    if (star[ss] != star[a]) fail("(iii)", a, a);
    const Element pp = plus[plus[a]];
    if (!l.leq(pp, a) || plus[plus[pp]] != pp) fail("dual (ii)", a, a);
    if (plus[pp] != plus[a]) fail("dual (iii)", a, a);
    for (Element b = 0; b < n; ++b) {
      if (l.leq(a, b) && (!l.leq(star[b], star[a]) || !l.leq(plus[b], plus[a]))) fail("(i)", a, b);
      if (star[l.join(a, b)] != l.meet(star[a], star[b])) fail("(iv)", a, b);
      if (!l.leq(l.join(star[a], star[b]), star[l.meet(a, b)])) fail("(v)", a, b);
      if (plus[l.meet(a, b)] != l.join(plus[a], plus[b])) fail("dual (iv)", a, b);
      if (!l.leq(plus[l.join(a, b)], l.meet(plus[a], plus[b]))) fail("dual (v)", a, b);
    }
  }
}

/// Checks that `s` (a subset of l) is a Boolean algebra with meet `meet_op`,
/// join `join_op` and complement `comp`; returns its atoms.
template <class Meet, class Join>
std::vector<Element> check_boolean(const FiniteLattice& l, const std::vector<Element>& s, Meet meet_op,
                                   Join join_op, const std::vector<Element>& comp, const char* name) {
  const auto n = l.size();
  ElementSet mask(n);
  for (auto e : s) mask.set(e);
  auto fail = [&](const std::string& what) {
    throw AssertionFailure(std::string("skeleton ") + name + ": " + what);
  };
  if (!mask.test(l.bottom()) || !mask.test(l.top())) fail("missing a bound");
  ElementSet scratch(n);
  for (auto a : s) {
    if (!mask.test(comp[a])) fail("complement leaves the skeleton at " + l.label(a));
    if (meet_op(a, comp[a]) != l.bottom() || join_op(a, comp[a]) != l.top())
      fail("not complemented at " + l.label(a));
    for (auto b : s) {
      const Element m = meet_op(a, b), j = join_op(a, b);
      if (!mask.test(m) || !mask.test(j)) fail("not closed at (" + l.label(a) + ", " + l.label(b) + ")");
      scratch = l.up(a);
      scratch &= l.up(b);
      scratch &= mask;
      if (!scratch.test(j) || !scratch.is_subset_of(l.up(j))) fail("join is not the least upper bound");
      scratch = l.down(a);
      scratch &= l.down(b);
      scratch &= mask;
      if (!scratch.test(m) || !scratch.is_subset_of(l.down(m))) fail("meet is not the greatest lower bound");
    }
  }
  std::vector<Element> atoms;
  for (auto a : s) {
    if (a == l.bottom()) continue;
    bool minimal = true;
    for (auto b : s)
      if (b != l.bottom() && b != a && l.leq(b, a)) minimal = false;
    if (minimal) atoms.push_back(a);
  }
  if (atoms.size() >= 63 || s.size() != (std::size_t{1} << atoms.size()))
    fail("size is not 2^(number of atoms)");
  for (auto a : s) {
    Element acc = l.bottom();
    for (auto at : atoms)
      if (l.leq(at, a)) acc = join_op(acc, at);
    if (acc != a) fail("not atomistic at " + l.label(a));
  }
  return atoms;
}

}  // namespace

DoublePStructure compute_pseudocomplements(const FiniteLattice& l) {
  const auto n = static_cast<Element>(l.size());
  DoublePStructure d{l, std::vector<Element>(n), std::vector<Element>(n), is_distributive(l).distributive};
  ElementSet zs(n);
  for (Element x = 0; x < n; ++x) {
    zs.reset();
    for (Element z = 0; z < n; ++z)
      if (l.meet(x, z) == l.bottom()) zs.set(z);
    const Element s = l.join_of(zs);
    if (l.meet(x, s) != l.bottom()) throw NoPseudocomplement(x, "no pseudocomplement for " + l.label(x));
    d.star[x] = s;

    zs.reset();
    for (Element z = 0; z < n; ++z)
      if (l.join(x, z) == l.top()) zs.set(z);
    const Element p = l.meet_of(zs);
    if (l.join(x, p) != l.top()) throw NoPseudocomplement(x, "no dual pseudocomplement for " + l.label(x));
    d.plus[x] = p;
  }
  check_p_laws(l, d.star, d.plus);
  return d;
}

MDNReport check_m_d_n(const DoublePStructure& d, std::optional<std::span<const Element>> neg) {
  const auto& l = d.lattice;
  const auto n = static_cast<Element>(l.size());
  MDNReport r;

  std::map<std::pair<Element, Element>, std::vector<Element>> classes;
  for (Element x = 0; x < n; ++x) classes[{d.star[x], d.plus[x]}].push_back(x);
  for (const auto& [key, members] : classes) {
    if (members.size() < 2) continue;
    std::vector<Element> w{members[0], members[1]};
    if (r.m.holds || w < r.m.witness) r.m = {false, w};
  }

  std::vector<Element> low(n), high(n);
  Element low_join = l.bottom(), high_meet = l.top();
  for (Element x = 0; x < n; ++x) {
    low[x] = l.meet(x, d.plus[x]);
    high[x] = l.join(x, d.star[x]);
    low_join = l.join(low_join, low[x]);
    high_meet = l.meet(high_meet, high[x]);
  }
  if (!l.leq(low_join, high_meet)) {
    [&] {
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (!l.leq(low[x], high[y])) {
            r.d = {false, {x, y}};
            return;
          }
    }();
  }

  if (d.distributive && r.m.holds != r.d.holds)
    throw CriteriaDisagree(std::string("(M) ") + (r.m.holds ? "holds" : "fails") + " but (D) " +
                           (r.d.holds ? "holds" : "fails"));

  if (neg) {
    const auto& ng = *neg;
    if (ng.size() != n) throw InvalidInput("check_m_d_n: negation table has wrong size");
    ConditionResult cn;
    for (Element x = 0; x < n; ++x)
      if (!l.leq(d.star[x], ng[x])) {
        cn = {false, {x}};
        break;
      }
    if (cn.holds)
      for (Element x = 0; x < n; ++x)
        if (!l.leq(ng[x], d.plus[x]))
          throw AssertionFailure("(N) holds but ∼x <= x⁺ fails at " + l.label(x));
    r.n = cn;
  }
  return r;
}

HeytingTables heyting_implications(const DoublePStructure& d) {
  if (!d.distributive) throw InvalidInput("heyting_implications requires a distributive lattice");
  const auto& l = d.lattice;
  const auto n = static_cast<Element>(l.size());
  HeytingTables t{n, std::vector<Element>(std::size_t{n} * n), std::vector<Element>(std::size_t{n} * n)};
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      Element imp = l.bottom(), coimp = l.top();
      for (Element x = 0; x < n; ++x) {
        if (l.leq(l.meet(a, x), b)) imp = l.join(imp, x);
        if (l.leq(b, l.join(a, x))) coimp = l.meet(coimp, x);
      }
      if (!l.leq(l.meet(a, imp), b) || !l.leq(b, l.join(a, coimp)))
        throw AssertionFailure("relative pseudocomplement missing at (" + l.label(a) + ", " + l.label(b) + ")");
      t.implies[a * n + b] = imp;
      t.coimplies[a * n + b] = coimp;
    }

  if (!check_m_d_n(d).m.holds) return t;
  const auto& s = d.star;
  const auto& p = d.plus;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      const Element left = s[s[l.join(s[a], s[s[b]])]];
      const Element right = l.join(l.join(p[l.join(a, s[a])], s[a]), l.join(b, s[b]));
      if (l.meet(left, right) != t.imp(a, b))
        throw FormulaMismatch("closed form for ⇒ disagrees at (" + l.label(a) + ", " + l.label(b) + ")");
      const Element left2 = p[p[l.meet(p[a], p[p[b]])]];
      const Element right2 = l.meet(l.meet(s[l.meet(a, p[a])], p[a]), l.meet(b, p[b]));
      if (l.join(left2, right2) != t.coimp(a, b))
        throw FormulaMismatch("closed form for ⇐ disagrees at (" + l.label(a) + ", " + l.label(b) + ")");
    }
  return t;
}

Skeletons skeletons(const DoublePStructure& d) {
  const auto& l = d.lattice;
  Skeletons out;
  out.star.elements = d.star;
  std::sort(out.star.elements.begin(), out.star.elements.end());
  out.star.elements.erase(std::unique(out.star.elements.begin(), out.star.elements.end()), out.star.elements.end());
  out.plus.elements = d.plus;
  std::sort(out.plus.elements.begin(), out.plus.elements.end());
  out.plus.elements.erase(std::unique(out.plus.elements.begin(), out.plus.elements.end()), out.plus.elements.end());

  const auto& s = d.star;
  const auto& p = d.plus;
  out.star.atoms = check_boolean(
      l, out.star.elements, [&](Element a, Element b) { return l.meet(a, b); },
      [&](Element a, Element b) { return s[l.meet(s[a], s[b])]; }, s, "S*");
  out.plus.atoms = check_boolean(
      l, out.plus.elements, [&](Element a, Element b) { return p[l.join(p[a], p[b])]; },
      [&](Element a, Element b) { return l.join(a, b); }, p, "S+");
  return out;
}

PrimeFilterFamily prime_filters(const FiniteLattice& l, std::size_t scan_limit) {
  if (auto dist = is_distributive(l); !dist.distributive) {
    const auto& t = *dist.witness;
    throw NotDistributive({t[0], t[1], t[2]}, "prime_filters requires a distributive lattice");
  }
  const auto n = static_cast<Element>(l.size());
  const auto jirr = join_irreducibles(l);

  auto is_prime = [&](Element x) {
    if (x == l.bottom()) return false;
    const ElementSet& f = l.up(x);
    for (Element a = 0; a < n; ++a) {
      if (f.test(a)) continue;
      for (Element b = a + 1; b < n; ++b)
        if (!f.test(b) && f.test(l.join(a, b))) return false;
    }
    return true;
  };

  PrimeFilterFamily fam;
  for (Element j : jirr.members) {
    if (!is_prime(j)) throw AssertionFailure("principal filter of " + l.label(j) + " is not prime");
    fam.generators.push_back(j);
    fam.filters.push_back(l.up(j));
  }
  if (n <= scan_limit) {
    std::vector<Element> scanned;
    for (Element x = 0; x < n; ++x)
      if (is_prime(x)) scanned.push_back(x);
    if (scanned != fam.generators)
      throw AssertionFailure("prime filter scan disagrees with the join-irreducible principal filters");
  }

  const std::size_t k = fam.filters.size();
  fam.maximal.assign(k, true);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t q = 0; q < k; ++q)
      if (q != i && fam.filters[i].is_proper_subset_of(fam.filters[q])) fam.maximal[i] = false;
  for (std::size_t i = 0; i < k; ++i)
    if (fam.maximal[i] != jirr.is_atom(fam.generators[i]))
      throw AssertionFailure("maximal prime filter of " + l.label(fam.generators[i]) +
                             " does not match atomicity of its generator");

  // Filters ordered by size ascending form a linear extension of ⊂ reversed.
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return fam.filters[a].count() > fam.filters[b].count(); });
  std::vector<std::size_t> chain(k, 1);
  for (std::size_t ii = 0; ii < k; ++ii) {
    const std::size_t i = order[ii];
    for (std::size_t jj = 0; jj < ii; ++jj) {
      const std::size_t q = order[jj];
      if (fam.filters[i].is_proper_subset_of(fam.filters[q])) chain[i] = std::max(chain[i], chain[q] + 1);
    }
    fam.longest_chain = std::max(fam.longest_chain, chain[i]);
  }
  return fam;
}

RegularityReport is_regular(const DoublePStructure& d, const JoinIrreducibleSet& j,
                            std::optional<std::span<const Element>> neg) {
  if (!d.distributive) throw NotDistributive({}, "regularity is only decided for distributive lattices");
  RegularityReport r;
  r.conditions = check_m_d_n(d, neg);
  r.prime_chain_max = prime_filters(d.lattice).longest_chain;
  r.two_level = has_two_levels(j, d.lattice);
  r.m = r.conditions.m.holds;
  r.prime_chains_ok = r.prime_chain_max <= 2;
  r.two_levels = r.two_level.two_levels;
  if (r.m != r.prime_chains_ok || r.m != r.two_levels)
    throw CriteriaDisagree(std::string("regularity criteria disagree: (M)=") + (r.m ? "true" : "false") +
                           " prime-chain<=2=" + (r.prime_chains_ok ? "true" : "false") +
                           " two-levels=" + (r.two_levels ? "true" : "false"));
  r.regular = r.m;
  return r;
}

}  // namespace rk
