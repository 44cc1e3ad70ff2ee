#include "roughkleene/rough_sets.hpp"

#include <algorithm>
#include <set>

#include "roughkleene/error.hpp"
#include "roughkleene/pseudo_double.hpp"

namespace rk {

namespace {

PointSet bit(std::size_t i) { return PointSet{1} << i; }

bool rs_less(const RoughSetPair& a, const RoughSetPair& b) {
  const int sa = point_count(a.lower) + point_count(a.upper);
  const int sb = point_count(b.lower) + point_count(b.upper);
  if (sa != sb) return sa < sb;
  return a < b;
}

std::string format_set(const Tolerance& r, PointSet s) {
  if (s == 0) return "∅";
  std::string out = "{";
  bool first = true;
  for_each_point(s, [&](std::size_t i) {
    out += (first ? "" : ",") + r.labels()[i];
    first = false;
  });
  return out + "}";
}

void bron_kerbosch(const std::vector<PointSet>& adj, PointSet r, PointSet p, PointSet x, std::vector<PointSet>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  std::size_t pivot = 0;
  int best = -1;
  for_each_point(p | x, [&](std::size_t u) {
    const int c = point_count(p & adj[u]);
    if (c > best) {
      best = c;
      pivot = u;
    }
  });
  for_each_point(p & ~adj[pivot], [&](std::size_t v) {
    bron_kerbosch(adj, r | bit(v), p & adj[v], x & adj[v], out);
    p &= ~bit(v);
    x |= bit(v);
  });
}

/// Closed-form J(RS) of an irredundant covering: (B^▽, B^△) for every block,
/// (∅, B) for blocks of size at least two.
std::vector<std::pair<RoughSetPair, std::pair<PointSet, bool>>> formula_join_irreducibles(const Tolerance& r,
                                                                                        const Covering& h) {
  std::vector<std::pair<RoughSetPair, std::pair<PointSet, bool>>> out;
  for (PointSet b : h.blocks()) {
    out.push_back({approximations(r, b), {b, false}});
    if (point_count(b) >= 2) out.push_back({{0, b}, {b, true}});
  }
  return out;
}

RoughSetPair formula_join(const Tolerance& r, const RoughSetPair& a, const RoughSetPair& b) {
  return {lower_approx(r, upper_approx(r, a.lower | b.lower)), a.upper | b.upper};
}

RoughSetPair formula_meet(const Tolerance& r, const RoughSetPair& a, const RoughSetPair& b) {
  return {a.lower & b.lower, upper_approx(r, lower_approx(r, a.upper & b.upper))};
}

}  // namespace

Tolerance::Tolerance(std::vector<std::string> labels, std::vector<PointSet> neighbourhoods)
    : labels_(std::move(labels)), nbhd_(std::move(neighbourhoods)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvalidInput("tolerance: empty universe");
  if (n > kMaxPoints) throw BoundsExceeded("tolerance: more than 64 points");
  if (nbhd_.size() != n) throw InvalidInput("tolerance: neighbourhood count differs from label count");
  for (std::size_t x = 0; x < n; ++x) {
    if (nbhd_[x] & ~full_set(n)) throw InvalidInput("tolerance: neighbourhood outside the universe");
    if (!related(x, x)) throw InvalidInput("tolerance: not reflexive at " + labels_[x]);
    for_each_point(nbhd_[x], [&](std::size_t y) {
      if (!related(y, x))
        throw InvalidInput("tolerance: not symmetric at (" + labels_[x] + ", " + labels_[y] + ")");
    });
  }
}

Tolerance Tolerance::from_pairs(std::vector<std::string> labels,
                                std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  const std::size_t n = labels.size();
  if (n > kMaxPoints) throw BoundsExceeded("tolerance: more than 64 points");
  std::vector<PointSet> nb(n);
  for (std::size_t x = 0; x < n; ++x) nb[x] = bit(x);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw InvalidInput("tolerance: pair index out of range");
    nb[a] |= bit(b);
    nb[b] |= bit(a);
  }
  return Tolerance(std::move(labels), std::move(nb));
}

Tolerance Tolerance::identity(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return from_pairs(std::move(labels), {});
}

Covering::Covering(std::vector<std::string> labels, std::vector<PointSet> blocks)
    : labels_(std::move(labels)), blocks_(std::move(blocks)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvalidInput("covering: empty universe");
  if (n > kMaxPoints) throw BoundsExceeded("covering: more than 64 points");
  PointSet seen = 0;
  for (PointSet b : blocks_) {
    if (b == 0) throw InvalidInput("covering: empty block");
    if (b & ~full_set(n)) throw InvalidInput("covering: block outside the universe");
    seen |= b;
  }
  if (seen != full_set(n)) throw InvalidInput("covering: blocks do not cover the universe");
  std::sort(blocks_.begin(), blocks_.end());
  blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
}

PointSet lower_approx(const Tolerance& r, PointSet x) {
  PointSet out = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (is_subset(r.neighbourhood(i), x)) out |= bit(i);
  return out;
}

PointSet upper_approx(const Tolerance& r, PointSet x) {
  PointSet out = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.neighbourhood(i) & x) out |= bit(i);
  return out;
}

RoughSetPair approximations(const Tolerance& r, PointSet x) {
  const PointSet u = r.universe();
  if (x & ~u) throw InvalidInput("approximations: subset outside the universe");
  RoughSetPair p{lower_approx(r, x), upper_approx(r, x)};
  if ((~p.lower & u) != upper_approx(r, ~x & u)) throw AssertionFailure("approximation duality fails");
  return p;
}

std::vector<PointSet> blocks_of(const Tolerance& r) {
  const std::size_t n = r.size();
  std::vector<PointSet> adj(n);
  for (std::size_t x = 0; x < n; ++x) adj[x] = r.neighbourhood(x) & ~bit(x);
  std::vector<PointSet> out;
  bron_kerbosch(adj, 0, r.universe(), 0, out);
  std::sort(out.begin(), out.end());
  for (std::size_t x = 0; x < n; ++x) {
    PointSet covered = 0;
    for (PointSet b : out)
      if (b & bit(x)) covered |= b;
    if (covered != r.neighbourhood(x))
      throw AssertionFailure("blocks do not reconstruct the tolerance at " + r.labels()[x]);
  }
  return out;
}

Tolerance tolerance_from_covering(const Covering& h) {
  std::vector<PointSet> nb(h.size(), 0);
  for (PointSet b : h.blocks()) for_each_point(b, [&](std::size_t x) { nb[x] |= b; });
  return Tolerance(h.labels(), std::move(nb));
}

IrredundanceReport is_irredundant(const Covering& h) {
  IrredundanceReport rep;
  const auto& blocks = h.blocks();
  const PointSet u = full_set(h.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    PointSet rest = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (k != i) rest |= blocks[k];
    if (rest == u) {
      rep.removal_criterion = false;
      rep.removable_block = i;
      break;
    }
  }
  const auto r = tolerance_from_covering(h);
  std::set<PointSet> neighbourhoods;
  for (std::size_t x = 0; x < r.size(); ++x) neighbourhoods.insert(r.neighbourhood(x));
  for (PointSet b : blocks)
    if (!neighbourhoods.count(b)) rep.neighbourhood_criterion = false;
  if (rep.removal_criterion != rep.neighbourhood_criterion)
    throw CriteriaDisagree("irredundance: removal and neighbourhood criteria disagree");
  rep.irredundant = rep.removal_criterion;
  if (!rep.irredundant) return rep;

  const auto blk = blocks_of(r);
  std::set<PointSet> block_nbhds;
  for (std::size_t x = 0; x < r.size(); ++x)
    if (std::binary_search(blk.begin(), blk.end(), r.neighbourhood(x))) block_nbhds.insert(r.neighbourhood(x));
  if (std::vector<PointSet>(block_nbhds.begin(), block_nbhds.end()) != blocks)
    throw AssertionFailure("irredundant covering differs from the block neighbourhoods");
  for (PointSet b : blocks) {
    const PointSet low = lower_approx(r, b);
    PointSet others = 0;
    for (PointSet c : blocks)
      if (c != b) others |= c;
    PointSet exact = 0;
    for (std::size_t x = 0; x < r.size(); ++x)
      if (r.neighbourhood(x) == b) exact |= bit(x);
    if (low == 0 || low != (b & ~others) || low != exact)
      throw AssertionFailure("lower approximation of a covering block has the wrong form");
  }
  return rep;
}

std::optional<Covering> inducing_irredundant_covering(const Tolerance& r) {
  const auto blk = blocks_of(r);
  std::vector<PointSet> h;
  for (std::size_t x = 0; x < r.size(); ++x)
    if (std::binary_search(blk.begin(), blk.end(), r.neighbourhood(x))) h.push_back(r.neighbourhood(x));
  PointSet cover = 0;
  for (PointSet b : h) cover |= b;
  if (cover != r.universe()) return std::nullopt;
  Covering c(r.labels(), std::move(h));
  if (!(tolerance_from_covering(c) == r)) return std::nullopt;
  if (!is_irredundant(c).irredundant) return std::nullopt;
  return c;
}

std::string format_pair(const Tolerance& r, const RoughSetPair& p) {
  return "(" + format_set(r, p.lower) + ", " + format_set(r, p.upper) + ")";
}

std::optional<Element> RoughSetAlgebra::find(const RoughSetPair& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element RoughSetAlgebra::at(const RoughSetPair& p) const {
  auto e = find(p);
  if (!e) throw AssertionFailure("pair " + format_pair(tolerance_, p) + " is not a rough set");
  return *e;
}

DeMorganStructure RoughSetAlgebra::demorgan() const { return validate_demorgan(lattice_, neg_); }

RoughSetAlgebra build_rs(const Tolerance& r, RsOptions opts) {
  const std::size_t n = r.size();
  if (n > RsOptions::hard_cap) throw BoundsExceeded("build_rs: universe exceeds the hard cap of 30 points");
  if (n > opts.universe_max && !opts.force)
    throw BoundsExceeded("build_rs: universe of " + std::to_string(n) + " points exceeds the bound " +
                         std::to_string(opts.universe_max) + " (override with force)");

  RoughSetAlgebra rs;
  rs.tolerance_ = r;
  const PointSet u = r.universe();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<RoughSetPair> all;
  all.reserve(subsets);
  for (std::uint64_t x = 0; x < subsets; ++x) all.push_back({lower_approx(r, x), upper_approx(r, x)});
  std::sort(all.begin(), all.end(), rs_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() > opts.max_elements)
    throw BoundsExceeded("build_rs: RS has " + std::to_string(all.size()) + " elements, above the limit of " +
                         std::to_string(opts.max_elements));
  rs.pairs_ = std::move(all);
  const auto m = static_cast<Element>(rs.pairs_.size());
  for (Element i = 0; i < m; ++i) rs.index_.emplace(rs.pairs_[i], i);

  std::vector<std::string> labels(m);
  std::vector<ElementSet> rows(m, ElementSet(m));
  for (Element a = 0; a < m; ++a) {
    labels[a] = format_pair(r, rs.pairs_[a]);
    for (Element b = 0; b < m; ++b)
      if (is_subset(rs.pairs_[a].lower, rs.pairs_[b].lower) && is_subset(rs.pairs_[a].upper, rs.pairs_[b].upper))
        rows[a].set(b);
  }
  auto lookup = [&](const RoughSetPair& p) {
    auto it = rs.index_.find(p);
    return it == rs.index_.end() ? kNoElement : it->second;
  };
  rs.lattice_ = lattice_from_order(
      FinitePoset(std::move(labels), std::move(rows)),
      [&](Element a, Element b) { return lookup(formula_meet(r, rs.pairs_[a], rs.pairs_[b])); },
      [&](Element a, Element b) { return lookup(formula_join(r, rs.pairs_[a], rs.pairs_[b])); });
  const auto& l = rs.lattice_;

  for (Element a = 0; a < m; ++a)
    for (Element b = a + 1; b < m; ++b) {
      if (l.meet(a, b) != lookup(formula_meet(r, rs.pairs_[a], rs.pairs_[b])))
        throw FormulaMismatch("RS meet formula fails at " + l.label(a) + " ∧ " + l.label(b));
      if (l.join(a, b) != lookup(formula_join(r, rs.pairs_[a], rs.pairs_[b])))
        throw FormulaMismatch("RS join formula fails at " + l.label(a) + " ∨ " + l.label(b));
    }

  rs.neg_.resize(m);
  for (Element a = 0; a < m; ++a) {
    const auto& p = rs.pairs_[a];
    rs.neg_[a] = rs.at({~p.upper & u, ~p.lower & u});
  }
  try {
    auto dp = compute_pseudocomplements(l);
    rs.star_ = std::move(dp.star);
    rs.plus_ = std::move(dp.plus);
  } catch (const NoPseudocomplement&) {
  }
  rs.jirr_ = join_irreducibles(l);
  rs.distributive_ = is_distributive(l).distributive;
  rs.covering_ = inducing_irredundant_covering(r);

  if (rs.covering_) {
    if (!rs.distributive_) throw AssertionFailure("RS of an irredundant covering is not distributive");
    const auto dm = rs.demorgan();
    if (!is_kleene(dm).kleene) throw AssertionFailure("RS of an irredundant covering is not Kleene");
    if (!rs.star_) throw AssertionFailure("RS of an irredundant covering is not pseudocomplemented");
    for (Element a = 0; a < m; ++a) {
      const auto& p = rs.pairs_[a];
      if ((*rs.star_)[a] != rs.at(approximations(r, ~p.upper & u)))
        throw FormulaMismatch("RS pseudocomplement formula fails at " + l.label(a));
      if ((*rs.plus_)[a] != rs.at(approximations(r, ~p.lower & u)))
        throw FormulaMismatch("RS dual pseudocomplement formula fails at " + l.label(a));
    }
    DoublePStructure dp{l, *rs.star_, *rs.plus_, true};
    if (!is_regular(dp, rs.jirr_, std::span<const Element>(rs.neg_)).regular)
      throw AssertionFailure("RS of an irredundant covering is not regular");
  }
  return rs;
}

std::vector<RoughSetPair> rs_from_join_irreducibles(const Tolerance& r) {
  const auto h = inducing_irredundant_covering(r);
  if (!h) throw InvalidInput("rs_from_join_irreducibles: tolerance is not induced by an irredundant covering");
  const auto js = formula_join_irreducibles(r, *h);
  std::set<RoughSetPair> seen{RoughSetPair{}};
  std::vector<RoughSetPair> frontier{RoughSetPair{}};
  while (!frontier.empty()) {
    std::vector<RoughSetPair> next;
    for (const auto& x : frontier)
      for (const auto& [j, info] : js) {
        auto y = formula_join(r, x, j);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<RoughSetPair> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), rs_less);
  return out;
}

RsJoinIrreducibles rs_join_irreducibles(const RoughSetAlgebra& rs) {
  const auto& h = rs.irredundant_covering();
  if (!h) throw InvalidInput("rs_join_irreducibles: tolerance is not induced by an irredundant covering");
  const auto& r = rs.tolerance();

  RsJoinIrreducibles out;
  for (const auto& [pair, info] : formula_join_irreducibles(r, *h)) {
    auto e = rs.find(pair);
    if (!e) throw FormulaMismatch("closed-form join-irreducible " + format_pair(r, pair) + " is not in RS");
    out.members.push_back({*e, pair, info.first, info.second});
  }
  std::sort(out.members.begin(), out.members.end(),
            [](const RsJoinIrreducible& a, const RsJoinIrreducible& b) { return a.element < b.element; });

  // Same set indexed by points whose neighbourhood is a block.
  const auto blk = blocks_of(r);
  std::set<Element> by_points;
  for (std::size_t x = 0; x < r.size(); ++x) {
    const PointSet nb = r.neighbourhood(x);
    if (!std::binary_search(blk.begin(), blk.end(), nb)) continue;
    by_points.insert(rs.at(approximations(r, nb)));
    if (point_count(nb) >= 2) by_points.insert(rs.at({0, nb}));
  }
  std::vector<Element> formula;
  for (const auto& m : out.members) formula.push_back(m.element);
  if (std::vector<Element>(by_points.begin(), by_points.end()) != formula)
    throw FormulaMismatch("join-irreducibles from blocks and from neighbourhoods differ");
  if (formula != rs.join_irreducibles().members)
    throw FormulaMismatch("closed-form join-irreducibles differ from the lattice's");

  std::set<Element> atoms;
  for (std::size_t x = 0; x < r.size(); ++x) {
    const PointSet nb = r.neighbourhood(x);
    if (nb == bit(x)) atoms.insert(rs.at({nb, nb}));
    else if (std::binary_search(blk.begin(), blk.end(), nb)) atoms.insert(rs.at({0, nb}));
  }
  out.atoms.assign(atoms.begin(), atoms.end());
  if (out.atoms != rs.join_irreducibles().atoms)
    throw FormulaMismatch("closed-form atoms differ from the lattice's");
  return out;
}

GMap rs_g_map(const RoughSetAlgebra& rs) {
  const auto js = rs_join_irreducibles(rs);
  const auto g = compute_g(rs.demorgan(), rs.join_irreducibles());
  const auto& r = rs.tolerance();
  for (const auto& m : js.members) {
    Element expected;
    if (point_count(m.block) == 1) expected = m.element;
    else if (m.empty_lower) expected = rs.at(approximations(r, m.block));
    else expected = rs.at({0, m.block});
    if (g(m.element) != expected)
      throw FormulaMismatch("g closed form fails at " + rs.lattice().label(m.element));
  }
  return g;
}

std::vector<IsolatedBlock> isolated_block_report(const RoughSetAlgebra& rs) {
  const auto& h = rs.irredundant_covering();
  if (!h) throw InvalidInput("isolated_block_report: tolerance is not induced by an irredundant covering");
  const auto& r = rs.tolerance();
  const auto& l = rs.lattice();
  const auto& jirr = rs.join_irreducibles();
  std::vector<IsolatedBlock> out;
  for (PointSet b : h->blocks()) {
    IsolatedBlock ib{b, true, false, false, false};
    for_each_point(b, [&](std::size_t y) {
      if (r.neighbourhood(y) != b) ib.neighbourhoods_equal = false;
    });
    const auto pair = approximations(r, b);
    ib.exact = pair.lower == b && pair.upper == b;
    if (point_count(b) == 1) {
      ib.single_atom_below = true;
    } else {
      const Element top = rs.at(pair);
      std::vector<Element> below;
      for (Element a : jirr.atoms)
        if (l.leq(a, top)) below.push_back(a);
      ib.single_atom_below = below.size() == 1 && below.front() == rs.at({0, b});
    }
    if (ib.neighbourhoods_equal != ib.exact || ib.exact != ib.single_atom_below)
      throw CriteriaDisagree("isolated-block conditions disagree for block " +
                             format_pair(r, {b, b}));
    ib.isolated = ib.exact;
    out.push_back(ib);
  }
  return out;
}

void check_skeleton_isomorphisms(const RoughSetAlgebra& rs) {
  if (!rs.star() || !rs.plus()) throw AssertionFailure("skeleton check needs pseudocomplements");
  const auto& r = rs.tolerance();
  const auto& l = rs.lattice();
  const PointSet u = r.universe();

  auto check = [&](bool use_upper, const std::vector<Element>& op, const char* name) {
    std::set<PointSet> family;
    for (const auto& p : rs.pairs()) family.insert(use_upper ? p.upper : p.lower);
    std::set<Element> skeleton(op.begin(), op.end());
    std::vector<PointSet> sets(family.begin(), family.end());
    std::vector<Element> image;
    for (PointSet s : sets) {
      const Element e = rs.at(approximations(r, ~s & u));
      if (!skeleton.count(e))
        throw AssertionFailure(std::string(name) + " skeleton map leaves the skeleton");
      image.push_back(e);
    }
    if (std::set<Element>(image.begin(), image.end()) != skeleton)
      throw AssertionFailure(std::string(name) + " skeleton map is not a bijection");
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t k = 0; k < sets.size(); ++k)
        if (is_subset(sets[k], sets[i]) != l.leq(image[i], image[k]))
          throw AssertionFailure(std::string(name) + " skeleton map is not an order isomorphism");
  };
  check(true, *rs.star(), "S*");
  check(false, *rs.plus(), "S+");
}

}  // namespace rk
