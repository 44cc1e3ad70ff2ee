#include <doctest.h>

#include "oracles.hpp"
#include "roughkleene/enumerate.hpp"
#include "roughkleene/error.hpp"
#include "roughkleene/pseudo_double.hpp"

using namespace rk;

namespace {

std::vector<FiniteLattice> distributive_upto(std::size_t n) {
  std::vector<FiniteLattice> out;
  for (auto& l : all_lattices(n))
    if (is_distributive(l).distributive) out.push_back(l);
  return out;
}

// Longest chain (by member count) in a family of sets under strict inclusion.
std::size_t longest_chain(const std::vector<std::vector<bool>>& sets) {
  const std::size_t k = sets.size();
  auto strict_subset = [&](std::size_t a, std::size_t b) {
    bool proper = false;
    for (std::size_t i = 0; i < sets[a].size(); ++i) {
      if (sets[a][i] && !sets[b][i]) return false;
      if (!sets[a][i] && sets[b][i]) proper = true;
    }
    return proper;
  };
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::count(sets[a].begin(), sets[a].end(), true) < std::count(sets[b].begin(), sets[b].end(), true);
  });
  std::vector<std::size_t> best(k, 1);
  std::size_t top = k ? 1 : 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (strict_subset(order[j], order[i])) {
        best[i] = std::max(best[i], best[j] + 1);
        top = std::max(top, best[i]);
      }
  return top;
}

}  // namespace

TEST_CASE("pseudocomplements agree with the defining scan") {
  for (const auto& l : all_lattices(8)) {
    bool exists = true;
    for (Element x = 0; x < l.size(); ++x)
      exists = exists && oracle::pseudocomplement(l, x) && oracle::dual_pseudocomplement(l, x);
    if (!exists) {
      CHECK_THROWS_AS(compute_pseudocomplements(l), NoPseudocomplement);
      continue;
    }
    const auto d = compute_pseudocomplements(l);
    for (Element x = 0; x < l.size(); ++x) {
      CHECK(d.star[x] == *oracle::pseudocomplement(l, x));
      CHECK(d.plus[x] == *oracle::dual_pseudocomplement(l, x));
    }
  }
}

TEST_CASE("(M) and (D) on chains") {
  auto c3 = compute_pseudocomplements(chain_lattice(3));
  auto r3 = check_m_d_n(c3);
  CHECK(r3.m.holds);
  CHECK(r3.d.holds);
  CHECK_FALSE(r3.n);

  auto c4 = compute_pseudocomplements(chain_lattice(4));
  auto r4 = check_m_d_n(c4);
  CHECK_FALSE(r4.m.holds);
  CHECK_FALSE(r4.d.holds);
  REQUIRE(r4.m.witness.size() == 2);
  const Element x = r4.m.witness[0], y = r4.m.witness[1];
  CHECK(x != y);
  CHECK(c4.star[x] == c4.star[y]);
  CHECK(c4.plus[x] == c4.plus[y]);
}

TEST_CASE("(N) sandwich on the Kleene three-chain") {
  auto c3 = compute_pseudocomplements(chain_lattice(3));
  const std::vector<Element> neg{2, 1, 0};
  auto r = check_m_d_n(c3, std::span<const Element>(neg));
  REQUIRE(r.n);
  CHECK(r.n->holds);
}

TEST_CASE("prime filters are the principal filters of join-irreducibles") {
  for (const auto& l : distributive_upto(8)) {
    const auto fam = prime_filters(l);
    auto brute = oracle::prime_filters(l);
    std::vector<std::vector<bool>> ours;
    for (const auto& f : fam.filters) {
      std::vector<bool> v(l.size());
      for (Element x = 0; x < l.size(); ++x) v[x] = f.test(x);
      ours.push_back(v);
    }
    std::sort(ours.begin(), ours.end());
    std::sort(brute.begin(), brute.end());
    CHECK(ours == brute);
    CHECK(fam.longest_chain == longest_chain(brute));
    CHECK(fam.generators == join_irreducibles(l).members);
  }
  const auto n5 = lattice_from_order(FinitePoset::from_covers(
      {"0", "a", "c", "b", "1"}, std::vector<std::pair<Element, Element>>{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}));
  CHECK_THROWS_AS(prime_filters(n5), NotDistributive);
}

TEST_CASE("regularity criteria agree on every distributive lattice up to 8 elements") {
  for (const auto& l : distributive_upto(8)) {
    const auto d = compute_pseudocomplements(l);
    const auto j = join_irreducibles(l);
    const auto rep = is_regular(d, j);
    CHECK(rep.m == rep.prime_chains_ok);
    CHECK(rep.m == rep.two_levels);
    CHECK(rep.m == check_m_d_n(d).d.holds);
    CHECK(rep.prime_chains_ok == (longest_chain(oracle::prime_filters(l)) <= 2));
  }
  CHECK_FALSE(is_regular(compute_pseudocomplements(chain_lattice(4)), join_irreducibles(chain_lattice(4))).regular);
}

TEST_CASE("relative pseudocomplements are residuals") {
  for (const auto& l : distributive_upto(8)) {
    const auto d = compute_pseudocomplements(l);
    const auto h = heyting_implications(d);
    for (Element a = 0; a < l.size(); ++a)
      for (Element b = 0; b < l.size(); ++b)
        for (Element x = 0; x < l.size(); ++x) {
          CHECK(l.leq(l.meet(a, x), b) == l.leq(x, h.imp(a, b)));
          CHECK(l.leq(b, l.join(a, x)) == l.leq(h.coimp(a, b), x));
        }
  }
}

TEST_CASE("skeletons are Boolean") {
  const auto sq = compute_pseudocomplements(product_of_chains(std::vector<std::size_t>{2, 2}));
  auto s = skeletons(sq);
  CHECK(s.star.elements.size() == 4);
  CHECK(s.plus.atoms.size() == 2);
  const auto c4 = compute_pseudocomplements(chain_lattice(4));
  auto t = skeletons(c4);
  CHECK(t.star.elements.size() == 2);
  CHECK(t.plus.elements.size() == 2);
  for (const auto& l : distributive_upto(8)) {
    const auto k = skeletons(compute_pseudocomplements(l));
    CHECK(k.star.elements.size() == std::size_t{1} << k.star.atoms.size());
  }
}
