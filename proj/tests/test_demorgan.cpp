#include <doctest.h>

#include "oracles.hpp"
#include "roughkleene/demorgan.hpp"
#include "roughkleene/enumerate.hpp"
#include "roughkleene/error.hpp"

using namespace rk;

namespace {

struct Square {
  FiniteLattice l = product_of_chains(std::vector<std::size_t>{2, 2});
  Element zero = l.bottom(), one = l.top(), a = *l.find("(1,0)"), b = *l.find("(0,1)");

  std::vector<Element> neg(bool swap_atoms) const {
    std::vector<Element> n(4);
    n[zero] = one;
    n[one] = zero;
    n[a] = swap_atoms ? b : a;
    n[b] = swap_atoms ? a : b;
    return n;
  }
};

}  // namespace

TEST_CASE("validate_demorgan error order") {
  Square sq;
  CHECK_THROWS_AS(validate_demorgan(sq.l, {0, 1, 2}), InvalidInput);
  CHECK_THROWS_AS(validate_demorgan(sq.l, {0, 1, 2, 9}), InvalidInput);

  auto m3 = lattice_from_order(FinitePoset::from_covers(
      {"0", "a", "b", "c", "1"}, std::vector<std::pair<Element, Element>>{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}));
  CHECK_THROWS_AS(validate_demorgan(m3, {4, 1, 2, 3, 0}), NotDistributive);

  auto c3 = chain_lattice(3);
  try {
    validate_demorgan(c3, {2, 2, 0});
    FAIL("expected NotInvolution");
  } catch (const NotInvolution& e) {
    CHECK(e.element() == 1);
  }
  CHECK_THROWS_AS(validate_demorgan(c3, {0, 1, 2}), NotAntitone);
  CHECK_NOTHROW(validate_demorgan(c3, {2, 1, 0}));
}

TEST_CASE("Kleene condition on the four-element Boolean lattice") {
  Square sq;
  // Swapping the atoms is the Boolean complement, which is Kleene.
  CHECK(is_kleene(validate_demorgan(sq.l, sq.neg(true))).kleene);
  // Fixing the atoms is De Morgan but not Kleene: a∧∼a = a is not below b∨∼b = b.
  const auto k = is_kleene(validate_demorgan(sq.l, sq.neg(false)));
  CHECK_FALSE(k.kleene);
  REQUIRE(k.witness);
  const auto& l = sq.l;
  const auto n = sq.neg(false);
  CHECK_FALSE(l.leq(l.meet(k.witness->first, n[k.witness->first]), l.join(k.witness->second, n[k.witness->second])));
}

TEST_CASE("g on the Kleene three-chain swaps a and 1") {
  auto c3 = chain_lattice(3);
  auto d = validate_demorgan(c3, {2, 1, 0});
  CHECK(is_kleene(d).kleene);
  auto j = join_irreducibles(c3);
  auto g = compute_g(d, j);
  CHECK(g(1) == 2);
  CHECK(g(2) == 1);
  CHECK(neg_from_g(c3, j, g) == d.neg_table());
}

TEST_CASE("De Morgan operations agree with a permutation scan") {
  for (const auto& l : all_lattices(8)) {
    if (!is_distributive(l).distributive) continue;
    auto ops = demorgan_operations(l);
    auto brute = oracle::demorgan_operations(l);
    std::sort(ops.begin(), ops.end());
    CHECK(ops == brute);
  }
}

TEST_CASE("g is an antitone involution and recovers ∼; (J3) iff Kleene") {
  std::size_t kleene = 0, total = 0;
  for (const auto& l : all_lattices(8)) {
    if (!is_distributive(l).distributive) continue;
    const auto j = join_irreducibles(l);
    for (const auto& n : demorgan_operations(l)) {
      const auto d = validate_demorgan(l, n);
      const auto g = compute_g(d, j);
      CHECK(neg_from_g(l, j, g) == n);
      bool comparable = true;
      for (Element x : j.members) {
        CHECK(g(g(x)) == x);
        comparable = comparable && (l.leq(x, g(x)) || l.leq(g(x), x));
        // g(x) is the least element not below ∼x.
        for (Element y = 0; y < l.size(); ++y)
          if (!l.leq(y, n[x])) CHECK(l.leq(g(x), y));
      }
      const bool k = is_kleene(d).kleene;
      CHECK(comparable == k);
      kleene += k;
      ++total;
    }
  }
  CHECK(total == 26);
  CHECK(kleene == 19);
}

TEST_CASE("Kleene algebras from J-posets") {
  SUBCASE("two-point chain with g swapping gives the three-chain") {
    auto p = FinitePoset::from_covers({"a", "j"}, std::vector<std::pair<Element, Element>>{{0, 1}});
    const std::vector<Element> g{1, 0};
    auto alg = build_kleene_from_jposet(p, g);
    CHECK(alg.algebra.lattice().size() == 3);
    CHECK(is_kleene(alg.algebra).kleene);
  }
  SUBCASE("axiom violations") {
    auto anti = FinitePoset::from_covers({"a", "b"}, {});
    const std::vector<Element> not_inv{1, 1};
    CHECK_THROWS_AS(build_kleene_from_jposet(anti, not_inv), GViolatesAxioms);
    const std::vector<Element> swap{1, 0};
    CHECK_THROWS_AS(build_kleene_from_jposet(anti, swap), GViolatesAxioms);
    CHECK_NOTHROW(build_kleene_from_jposet(anti, swap, false));
    auto chain = FinitePoset::from_covers({"a", "j"}, std::vector<std::pair<Element, Element>>{{0, 1}});
    const std::vector<Element> id{0, 1};
    CHECK_THROWS_AS(build_kleene_from_jposet(chain, id), GViolatesAxioms);
  }
  SUBCASE("worked example") {
    auto p = FinitePoset::from_covers({"a", "b", "c", "j", "k", "l"},
                                      std::vector<std::pair<Element, Element>>{
                                          {0, 3}, {1, 3}, {0, 4}, {1, 4}, {2, 4}, {1, 5}, {2, 5}});
    const std::vector<Element> g{3, 4, 5, 0, 1, 2};
    auto alg = build_kleene_from_jposet(p, g);
    const auto& l = alg.algebra.lattice();
    CHECK(l.size() == oracle::down_set_count(p));
    CHECK(l.size() == 17);
    CHECK(is_kleene(alg.algebra).kleene);
    const auto jl = join_irreducibles(l);
    CHECK(jl.members.size() == 6);
    CHECK(jl.atoms.size() == 3);
  }
}
