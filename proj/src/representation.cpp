#include "roughkleene/representation.hpp"

#include <algorithm>
#include <array>

#include "roughkleene/error.hpp"
#include "roughkleene/isomorphism.hpp"

namespace rk {

namespace {

bool contains(const std::vector<Element>& sorted, Element e) {
  return std::binary_search(sorted.begin(), sorted.end(), e);
}

}  // namespace

PseudoKleeneAlgebra analyze(const DeMorganStructure& d) {
  const auto& l = d.lattice();
  if (auto k = is_kleene(d); !k.kleene)
    throw NotKleene("not a Kleene algebra: x∧∼x ≰ y∨∼y for (x, y) = (" + l.label(k.witness->first) + ", " +
                    l.label(k.witness->second) + ")");
  auto jirr = join_irreducibles(l);
  auto dp = compute_pseudocomplements(l);
  auto reg = is_regular(dp, jirr, std::span<const Element>(d.neg_table()));
  if (!reg.regular) {
    std::string w;
    if (reg.two_level.chain) {
      const auto& c = *reg.two_level.chain;
      w = ": join-irreducible chain " + l.label(c[0]) + " < " + l.label(c[1]) + " < " + l.label(c[2]);
    }
    throw NotRegular("not regular" + w);
  }
  auto g = compute_g(d, jirr);
  return {d, std::move(jirr), std::move(g), std::move(dp), std::move(reg)};
}

std::size_t SimilaritySpace::index_of(Element atom) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), atom);
  if (it == atoms.end() || *it != atom) throw InvalidInput("not an atom");
  return static_cast<std::size_t>(it - atoms.begin());
}

SimilaritySpace build_similarity(const PseudoKleeneAlgebra& alg) {
  const auto& l = alg.lattice();
  const auto& g = alg.g;
  SimilaritySpace s;
  std::vector<Element> upper_level;
  for (Element x : alg.jirr.members) {
    if (l.leq(x, g(x))) s.atoms.push_back(x);
    else if (l.lt(g(x), x)) upper_level.push_back(x);
    else throw AssertionFailure("g(" + l.label(x) + ") is incomparable with it");
  }
  if (s.atoms != alg.jirr.atoms)
    throw AssertionFailure("join-irreducibles below their g-image are not exactly the atoms");
  for (const auto* level : {&s.atoms, &upper_level})
    for (Element x : *level)
      for (Element y : *level)
        if (x != y && l.leq(x, y))
          throw AssertionFailure("level of J is not an antichain: " + l.label(x) + " < " + l.label(y));

  const std::size_t k = s.atoms.size();
  s.simeq.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t m = 0; m < k; ++m) s.simeq[i][m] = l.leq(s.atoms[i], g(s.atoms[m]));
  for (std::size_t i = 0; i < k; ++i) {
    if (!s.simeq[i][i]) throw AssertionFailure("≃ is not reflexive at " + l.label(s.atoms[i]));
    for (std::size_t m = 0; m < k; ++m)
      if (s.simeq[i][m] != s.simeq[m][i])
        throw AssertionFailure("≃ is not symmetric at (" + l.label(s.atoms[i]) + ", " + l.label(s.atoms[m]) + ")");
  }

  s.spans.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto& span = s.spans[i];
    for (std::size_t m = 0; m < k; ++m)
      if (s.simeq[i][m]) span.push_back(l.join(s.atoms[i], s.atoms[m]));
    span.push_back(g(s.atoms[i]));
    std::sort(span.begin(), span.end());
    span.erase(std::unique(span.begin(), span.end()), span.end());
  }

  for (std::size_t i = 0; i < k; ++i) {
    const Element x = s.atoms[i];
    for (std::size_t m = 0; m < k; ++m) {
      const Element y = s.atoms[m];
      if (contains(s.spans[i], y) != (i == m))
        throw AssertionFailure("span of " + l.label(x) + " has the wrong atoms");
      bool meet = false;
      for (Element e : s.spans[i]) meet = meet || contains(s.spans[m], e);
      if (meet != s.simeq[i][m])
        throw AssertionFailure("spans of " + l.label(x) + " and " + l.label(y) + " overlap iff ≃ fails");
    }
    if ((s.spans[i] == std::vector<Element>{x}) != (g(x) == x))
      throw AssertionFailure("singleton span criterion fails at " + l.label(x));
  }
  return s;
}

PointSet ToleranceUniverse::to_points(const std::vector<Element>& elems) const {
  PointSet out = 0;
  for (Element e : elems) {
    if (e >= point_of.size() || point_of[e] == npos) throw InvalidInput("element outside the universe");
    out |= PointSet{1} << point_of[e];
  }
  return out;
}

ToleranceUniverse build_tolerance_universe(const PseudoKleeneAlgebra& alg, const SimilaritySpace& s) {
  const auto& l = alg.lattice();
  const auto& g = alg.g;
  if (s.atoms.empty()) throw InvalidInput("the one-element algebra would need an empty universe");
  ToleranceUniverse tu;
  for (const auto& span : s.spans) tu.points.insert(tu.points.end(), span.begin(), span.end());
  std::sort(tu.points.begin(), tu.points.end());
  tu.points.erase(std::unique(tu.points.begin(), tu.points.end()), tu.points.end());
  if (tu.points.size() > kMaxPoints) throw BoundsExceeded("universe has more than 64 points");
  tu.point_of.assign(l.size(), ToleranceUniverse::npos);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < tu.points.size(); ++i) {
    tu.point_of[tu.points[i]] = i;
    labels.push_back(l.label(tu.points[i]));
  }

  std::vector<PointSet> blocks;
  for (const auto& span : s.spans) blocks.push_back(tu.to_points(span));
  tu.covering = Covering(labels, blocks);
  if (tu.covering.blocks().size() != s.atoms.size()) throw AssertionFailure("two atoms share a span");
  if (!is_irredundant(tu.covering).irredundant) throw AssertionFailure("span covering is redundant");
  tu.tolerance = tolerance_from_covering(tu.covering);
  const auto& r = tu.tolerance;

  auto block_of = [&](Element atom) { return blocks[s.index_of(atom)]; };
  for (std::size_t p = 0; p < tu.points.size(); ++p) {
    const Element z = tu.points[p];
    const PointSet nb = r.neighbourhood(p);
    if (alg.jirr.is_atom(z)) {
      if (nb != block_of(z)) throw AssertionFailure("R(" + l.label(z) + ") is not its span");
    } else if (alg.jirr.contains(z)) {
      if (nb != block_of(g(z))) throw AssertionFailure("R(" + l.label(z) + ") is not the span of g of it");
    } else {
      bool found = false;
      for (std::size_t i = 0; i < s.atoms.size() && !found; ++i)
        for (std::size_t m = i + 1; m < s.atoms.size() && !found; ++m)
          found = s.simeq[i][m] && l.join(s.atoms[i], s.atoms[m]) == z &&
                  nb == (blocks[s.index_of(s.atoms[i])] | blocks[s.index_of(s.atoms[m])]);
      if (!found) throw AssertionFailure("R(" + l.label(z) + ") is not a union of two spans");
    }
  }

  for (Element x : alg.jirr.members) {
    const std::size_t p = tu.point_of[x];
    if (p == ToleranceUniverse::npos) throw AssertionFailure(l.label(x) + " is missing from U");
    const PointSet nb = r.neighbourhood(p);
    const Element a = alg.jirr.is_atom(x) ? x : g(x);
    const std::size_t ai = s.index_of(a);
    PointSet upper = 0, touching = 0;
    for (std::size_t m = 0; m < s.atoms.size(); ++m) {
      if (s.simeq[ai][m]) upper |= blocks[m];
      if (blocks[m] & nb) touching |= blocks[m];
    }
    const auto pair = approximations(r, nb);
    if (pair.lower != tu.to_points({x, g(x)}))
      throw AssertionFailure("lower approximation of R(" + l.label(x) + ") is not {x, g(x)}");
    if (pair.upper != upper || pair.upper != touching)
      throw AssertionFailure("upper approximation of R(" + l.label(x) + ") has the wrong form");
  }
  return tu;
}

PhiMap build_phi(const PseudoKleeneAlgebra& alg, const ToleranceUniverse& tu, const RoughSetAlgebra& rs) {
  const auto& l = alg.lattice();
  const auto& g = alg.g;
  const auto& r = tu.tolerance;
  PhiMap phi(l.size(), kNoElement);
  for (Element j : alg.jirr.members) {
    const PointSet nb = r.neighbourhood(tu.point_of[j]);
    const RoughSetPair p = l.lt(j, g(j)) ? RoughSetPair{0, nb} : approximations(r, nb);
    auto e = rs.find(p);
    if (!e) throw PhiNotIso("φ(" + l.label(j) + ") is not a rough set");
    phi[j] = *e;
  }

  std::vector<Element> image;
  for (Element j : alg.jirr.members) image.push_back(phi[j]);
  std::sort(image.begin(), image.end());
  if (image != rs.join_irreducibles().members) throw PhiNotIso("φ is not a bijection onto J(RS)");
  for (Element j : alg.jirr.members)
    for (Element k : alg.jirr.members)
      if (l.leq(j, k) != rs.lattice().leq(phi[j], phi[k]))
        throw PhiNotIso("φ does not reflect the order at (" + l.label(j) + ", " + l.label(k) + ")");
  const auto rs_g = rs_g_map(rs);
  for (Element j : alg.jirr.members)
    if (phi[g(j)] != rs_g(phi[j])) throw PhiNotIso("φ does not commute with g at " + l.label(j));
  return phi;
}

ExtendedIso extend_iso(const PseudoKleeneAlgebra& alg, const PhiMap& phi, const RoughSetAlgebra& rs) {
  const auto& l = alg.lattice();
  const auto& t = rs.lattice();
  const auto n = static_cast<Element>(l.size());
  ExtendedIso out;
  out.map.assign(n, kNoElement);
  for (Element x = 0; x < n; ++x) {
    Element acc = t.bottom();
    for (Element j : alg.jirr.members)
      if (l.leq(j, x)) acc = t.join(acc, phi[j]);
    out.map[x] = acc;
  }
  const auto& f = out.map;

  auto add = [&](std::string op) -> IsoCheck& { return out.report.checks.emplace_back(IsoCheck{std::move(op), true, {}}); };

  {
    auto& c = add("bijective");
    if (rs.size() != n) c.holds = false;
    std::vector<Element> seen(rs.size(), kNoElement);
    for (Element x = 0; x < n && c.holds; ++x) {
      if (seen[f[x]] != kNoElement) {
        c.holds = false;
        c.witness = {seen[f[x]], x};
      }
      seen[f[x]] = x;
    }
  }
  auto binary = [&](const char* op, auto lhs, auto rhs) {
    auto& c = add(op);
    for (Element x = 0; x < n && c.holds; ++x)
      for (Element y = x; y < n && c.holds; ++y)
        if (f[lhs(x, y)] != rhs(f[x], f[y])) {
          c.holds = false;
          c.witness = {x, y};
        }
  };
  binary("join", [&](Element x, Element y) { return l.join(x, y); },
         [&](Element x, Element y) { return t.join(x, y); });
  binary("meet", [&](Element x, Element y) { return l.meet(x, y); },
         [&](Element x, Element y) { return t.meet(x, y); });

  auto unary = [&](const char* op, const std::vector<Element>& src, const std::vector<Element>* dst) {
    auto& c = add(op);
    if (!dst) {
      c.holds = false;
      return;
    }
    for (Element x = 0; x < n && c.holds; ++x)
      if (f[src[x]] != (*dst)[f[x]]) {
        c.holds = false;
        c.witness = {x};
      }
  };
  unary("neg", alg.dm.neg_table(), &rs.neg());
  unary("star", alg.dp.star, rs.star() ? &*rs.star() : nullptr);
  unary("plus", alg.dp.plus, rs.plus() ? &*rs.plus() : nullptr);

  add("bottom").holds = f[l.bottom()] == t.bottom();
  add("top").holds = f[l.top()] == t.top();

  for (const auto& c : out.report.checks) out.report.verified = out.report.verified && c.holds;
  return out;
}

RepresentationResult represent(const DeMorganStructure& d, RsOptions opts) {
  auto alg = analyze(d);
  auto similarity = build_similarity(alg);
  auto universe = build_tolerance_universe(alg, similarity);
  opts.force = true;
  opts.max_elements = std::max(opts.max_elements, alg.lattice().size());
  auto rs = build_rs(universe.tolerance, opts);
  if (!rs.irredundant_covering() || rs.irredundant_covering()->blocks() != universe.covering.blocks())
    throw AssertionFailure("RS does not recover the span covering");
  auto phi = build_phi(alg, universe, rs);
  auto iso = extend_iso(alg, phi, rs);
  for (const auto& c : iso.report.checks)
    if (!c.holds) {
      std::string w;
      for (Element e : c.witness) w += (w.empty() ? "" : ", ") + alg.lattice().label(e);
      throw IsoCheckFailed(c.operation, "extended isomorphism fails " + c.operation + " check at (" + w + ")");
    }
  return {std::move(alg), std::move(similarity), std::move(universe), std::move(rs), std::move(phi), std::move(iso)};
}

RoundtripReport roundtrip_equivalence_check(const Tolerance& r, RsOptions opts) {
  const auto rs = build_rs(r, opts);
  if (!rs.irredundant_covering())
    throw InvalidInput("roundtrip: tolerance is not induced by an irredundant covering");
  const auto rep = represent(rs.demorgan(), opts);
  const std::array<std::vector<Element>, 1> ops_a{rs.neg()};
  const std::array<std::vector<Element>, 1> ops_b{rep.rs.neg()};
  auto map = find_isomorphism(rs.lattice(), rep.rs.lattice(), ops_a, ops_b);
  if (!map) throw IsoCheckFailed("roundtrip", "RS of the representation is not isomorphic to the original RS");
  return {rs.size(), r.size(), rep.universe.points.size(), std::move(*map)};
}

}  // namespace rk
