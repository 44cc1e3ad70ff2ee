// One line per acceptance criterion; exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "roughkleene/commands.hpp"
#include "roughkleene/demorgan.hpp"
#include "roughkleene/enumerate.hpp"
#include "roughkleene/error.hpp"
#include "roughkleene/io.hpp"
#include "roughkleene/isomorphism.hpp"
#include "roughkleene/pseudo_double.hpp"
#include "roughkleene/representation.hpp"
#include "roughkleene/rough_sets.hpp"

using namespace rk;
using json = nlohmann::json;

namespace {

const std::string kFixtures = FIXTURE_DIR;

// Wall-clock limits in seconds.
constexpr double kLimitExample = 1.0;
constexpr double kLimitRepresentation = 30.0;
constexpr double kLimitRegularity = 60.0;
constexpr double kLimitFormulas = 60.0;
constexpr double kLimitOther = 60.0;

// Random two-level J-posets for the representation criterion.
constexpr std::size_t kRandomPosets = 60;
constexpr std::size_t kMaxJoinIrreducibles = 10;
constexpr std::uint64_t kSeed = 20240531;

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::set<std::string> as_set(const json& arr) {
  std::set<std::string> s;
  for (const auto& v : arr) s.insert(v.get<std::string>());
  return s;
}

// Irredundant coverings of at most five points with their RS, shared by
// criteria 4, 5 and 8.
struct Instance {
  Covering covering;
  RoughSetAlgebra rs;
};
std::vector<Instance> g_instances;

Outcome example_reproduction() {
  std::ostringstream out, err;
  const int code = cli::guarded(
      [&] { return cli::cmd_represent(kFixtures + "/example_jposet.json", std::nullopt, out); }, err);
  if (code != cli::kPass) return {false, "represent exited " + std::to_string(code) + ": " + err.str()};
  const std::string expected = slurp(kFixtures + "/example_bundle.json");
  if (out.str() != expected) return {false, "bundle differs from the frozen fixture"};

  // Published values, writing x for a∨b and y for b∨c.
  const auto b = json::parse(out.str());
  const std::string x = "a∨b", y = "b∨c";
  const std::set<std::string> sa{"a", "j", x}, sb{"b", "k", x, y}, sc{"c", "l", y};
  std::set<std::string> sab = sa, sbc = sb;
  sab.insert(sb.begin(), sb.end());
  sbc.insert(sc.begin(), sc.end());
  std::set<std::pair<std::string, std::string>> sim;
  for (const auto& p : b["similarity"]) sim.emplace(p[0].get<std::string>(), p[1].get<std::string>());
  const std::set<std::pair<std::string, std::string>> want_sim{{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "c"}};
  const auto& n = b["neighborhoods"];
  const bool ok = sim == want_sim && as_set(b["spans"]["a"]) == sa && as_set(b["spans"]["b"]) == sb &&
                  as_set(b["spans"]["c"]) == sc && b["universe"].size() == 8 && b["covering"].size() == 3 &&
                  as_set(n["a"]) == sa && as_set(n["j"]) == sa && as_set(n["b"]) == sb && as_set(n["k"]) == sb &&
                  as_set(n["c"]) == sc && as_set(n["l"]) == sc && as_set(n[x]) == sab && as_set(n[y]) == sbc &&
                  b["report"]["verified"] == true;
  if (!ok) return {false, "bundle disagrees with the worked example"};
  return {true, "byte-exact bundle, |U| = 8, 3 blocks, 17 elements"};
}

Outcome representation_end_to_end() {
  std::vector<DeMorganStructure> algebras;
  {
    const auto j = io::read_file(kFixtures + "/example_jposet.json");
    const auto in = io::parse_jposet(j);
    algebras.push_back(build_kleene_from_jposet(in.poset, in.g).algebra);
  }
  std::mt19937_64 rng(kSeed);
  while (algebras.size() < kRandomPosets + 1) {
    const auto inst = random_two_level_jposet(rng, kMaxJoinIrreducibles);
    algebras.push_back(build_kleene_from_jposet(inst.poset, inst.g).algebra);
  }
  std::size_t verified = 0, largest = 0;
  for (const auto& d : algebras) {
    const auto jl = join_irreducibles(d.lattice());
    if (jl.members.size() > kMaxJoinIrreducibles) return {false, "generator exceeded the join-irreducible bound"};
    if (!is_regular(compute_pseudocomplements(d.lattice()), jl).regular)
      return {false, "generator produced a non-regular algebra"};
    const auto rep = represent(d);
    bool all = rep.iso.report.verified && rep.iso.report.checks.size() == 8;
    for (const auto& c : rep.iso.report.checks) all = all && c.holds;
    if (!all) return {false, "isomorphism check failed on an algebra of size " + std::to_string(d.lattice().size())};
    ++verified;
    largest = std::max(largest, d.lattice().size());
  }
  return {true, std::to_string(verified) + " algebras (worked example + " + std::to_string(kRandomPosets) +
                    " random), largest " + std::to_string(largest) + " elements"};
}

Outcome regularity_equivalence() {
  std::size_t structures = 0, regular = 0, disagreements = 0;
  for (const auto& l : all_lattices(8)) {
    if (!is_distributive(l).distributive) continue;
    const auto dp = compute_pseudocomplements(l);
    const auto jl = join_irreducibles(l);
    for (const auto& neg : demorgan_operations(l)) {
      ++structures;
      validate_demorgan(l, neg);
      try {
        const auto mdn = check_m_d_n(dp, std::span<const Element>(neg));
        const bool m = mdn.m.holds, d = mdn.d.holds;
        const bool chains = prime_filters(l).longest_chain <= 2;
        const bool levels = has_two_levels(jl, l).two_levels;
        if (!(m == d && d == chains && chains == levels)) ++disagreements;
        regular += m;
      } catch (const CriteriaDisagree&) {
        ++disagreements;
      }
    }
  }
  return {disagreements == 0, std::to_string(structures) + " De Morgan structures, " + std::to_string(regular) +
                                  " regular, " + std::to_string(disagreements) + " disagreements"};
}

Outcome formulas() {
  g_instances.clear();
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (auto& h : coverings(n, n)) {
      if (!is_irredundant(h).irredundant) continue;
      const auto r = tolerance_from_covering(h);
      auto rs = build_rs(r);
      const auto& l = rs.lattice();

      // Closed forms from the blocks.
      std::set<Element> members, atoms;
      std::vector<Element> g_formula(l.size(), kNoElement);
      for (PointSet b : h.blocks()) {
        const Element full = rs.at(approximations(r, b));
        members.insert(full);
        if (std::popcount(b) >= 2) {
          const Element e = rs.at({0, b});
          members.insert(e);
          atoms.insert(e);
          g_formula[e] = full;
          g_formula[full] = e;
        } else {
          atoms.insert(full);
          g_formula[full] = full;
        }
      }

      // Values computed in the lattice.
      const auto jl = join_irreducibles(l);
      const auto g = compute_g(rs.demorgan(), jl);
      const bool ok = std::set<Element>(jl.members.begin(), jl.members.end()) == members &&
                      std::set<Element>(jl.atoms.begin(), jl.atoms.end()) == atoms &&
                      std::all_of(jl.members.begin(), jl.members.end(),
                                  [&](Element j) { return g(j) == g_formula[j]; });
      mismatches += !ok;
      g_instances.push_back({std::move(h), std::move(rs)});
    }
  return {mismatches == 0,
          std::to_string(g_instances.size()) + " irredundant coverings, " + std::to_string(mismatches) + " mismatches"};
}

Outcome conditions_mnk() {
  if (g_instances.empty()) return {false, "no instances (criterion 4 did not run)"};
  std::size_t failures = 0;
  for (const auto& [h, rs] : g_instances) {
    const auto dp = compute_pseudocomplements(rs.lattice());
    const auto mdn = check_m_d_n(dp, std::span<const Element>(rs.neg()));
    bool ok = mdn.m.holds && mdn.n && mdn.n->holds && is_kleene(rs.demorgan()).kleene;
    try {
      check_skeleton_isomorphisms(rs);
    } catch (const Error&) {
      ok = false;
    }
    failures += !ok;
  }
  return {failures == 0, std::to_string(g_instances.size()) + " RS checked for (M), (N), (K) and skeletons, " +
                             std::to_string(failures) + " failures"};
}

Outcome equivalences() {
  std::size_t tested = 0, failures = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& parts : set_partitions(n)) {
      ++tested;
      const auto rs = build_rs(tolerance_from_covering(Covering(numbered_labels(n), parts)));
      std::vector<std::size_t> dims;
      std::size_t expected = 1;
      for (PointSet p : parts) {
        const std::size_t len = std::popcount(p) == 1 ? 2 : 3;
        dims.push_back(len);
        expected *= len;
      }
      std::sort(dims.begin(), dims.end());
      const auto& l = rs.lattice();
      bool ok = rs.size() == expected && canonical_form(l) == canonical_form(product_of_chains(dims));
      const auto dp = compute_pseudocomplements(l);
      for (Element x = 0; x < l.size(); ++x)
        ok = ok && l.join(dp.star[x], dp.star[dp.star[x]]) == l.top() &&
             l.meet(dp.plus[x], dp.plus[dp.plus[x]]) == l.bottom();
      failures += !ok;
    }
  return {failures == 0, std::to_string(tested) + " equivalences, " + std::to_string(failures) + " failures"};
}

// Some pair of rough sets lacks a least upper bound or a greatest lower bound.
bool order_is_not_lattice(const Tolerance& r) {
  std::set<RoughSetPair> all;
  for (PointSet x = 0; x < (PointSet{1} << r.size()); ++x) all.insert(approximations(r, x));
  const std::vector<RoughSetPair> v(all.begin(), all.end());
  auto leq = [](const RoughSetPair& a, const RoughSetPair& b) {
    return is_subset(a.lower, b.lower) && is_subset(a.upper, b.upper);
  };
  for (const auto& a : v)
    for (const auto& b : v) {
      std::vector<const RoughSetPair*> ub, lb;
      for (const auto& c : v) {
        if (leq(a, c) && leq(b, c)) ub.push_back(&c);
        if (leq(c, a) && leq(c, b)) lb.push_back(&c);
      }
      const bool lub = std::any_of(ub.begin(), ub.end(), [&](auto c) {
        return std::all_of(ub.begin(), ub.end(), [&](auto d) { return leq(*c, *d); });
      });
      const bool glb = std::any_of(lb.begin(), lb.end(), [&](auto c) {
        return std::all_of(lb.begin(), lb.end(), [&](auto d) { return leq(*d, *c); });
      });
      if (!lub || !glb) return true;
    }
  return false;
}

Outcome non_lattice_witness() {
  EnumerationBounds b;
  b.universe_max = 6;
  b.coverings = b.equivalences = b.demorgan = false;
  const auto report = run_enumeration(b);
  const auto it = report.properties.find("nonLatticeRs");
  if (it == report.properties.end() || it->second.hits == 0 || !it->second.witness)
    return {false, "no tolerance with a non-lattice RS up to 6 points"};
  const auto& w = *it->second.witness;
  const auto path = (std::filesystem::temp_directory_path() / "roughkleene_acceptance_witness.json").string();
  std::ofstream(path, std::ios::binary) << io::dump(w);
  std::ostringstream out, err;
  const int code = cli::guarded([&] { return cli::cmd_verify(path, out); }, err);
  std::filesystem::remove(path);
  if (code != cli::kPropertyFailure) return {false, "verify on the witness exited " + std::to_string(code)};
  if (json::parse(out.str())["rsLattice"] != false) return {false, "verify did not report a non-lattice RS"};
  const auto r = io::parse_tolerance(w);
  if (!order_is_not_lattice(r)) return {false, "brute-force check finds a lattice"};
  return {true, std::to_string(it->second.hits) + " of " + std::to_string(it->second.tested) +
                    " tolerances; first witness has |U| = " + std::to_string(r.size()) + " and replays through verify"};
}

Outcome oracle_duality() {
  if (g_instances.empty()) return {false, "no instances (criterion 4 did not run)"};
  std::size_t mismatches = 0;
  for (const auto& [h, rs] : g_instances) mismatches += rs_from_join_irreducibles(rs.tolerance()) != rs.pairs();
  return {mismatches == 0,
          std::to_string(g_instances.size()) + " RS compared, " + std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example reproduction", kLimitExample, example_reproduction},
      {2, "representation end to end", kLimitRepresentation, representation_end_to_end},
      {3, "regularity criteria equivalence", kLimitRegularity, regularity_equivalence},
      {4, "join-irreducible, atom and g formulas", kLimitFormulas, formulas},
      {5, "(M), (N), (K) and skeletons on RS", kLimitOther, conditions_mnk},
      {6, "equivalences: product of chains and Stone laws", kLimitOther, equivalences},
      {7, "non-lattice RS witness", kLimitOther, non_lattice_witness},
      {8, "oracle duality", kLimitOther, oracle_duality},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs < c.limit;
    all = all && pass;
    std::printf("[%s] %d %s: %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs, c.limit);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
