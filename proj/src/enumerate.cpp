#include "roughkleene/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include "roughkleene/demorgan.hpp"
#include "roughkleene/error.hpp"
#include "roughkleene/io.hpp"
#include "roughkleene/isomorphism.hpp"
#include "roughkleene/pseudo_double.hpp"
#include "roughkleene/representation.hpp"

namespace rk {

using nlohmann::json;

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

std::vector<FiniteLattice> all_lattices(std::size_t max_size) {
  std::vector<std::pair<std::vector<std::uint32_t>, FiniteLattice>> found;
  std::set<std::vector<std::uint32_t>> seen;
  auto keep = [&](FiniteLattice l) {
    auto cf = canonical_form(l);
    if (seen.insert(cf).second) found.emplace_back(std::move(cf), std::move(l));
  };
  if (max_size >= 1) keep(chain_lattice(1));
  if (max_size >= 2) keep(chain_lattice(2));

  for (std::size_t k = 1; k + 2 <= max_size; ++k) {
    // Naturally labelled posets: point i sits above a down-set of 0..i-1.
    std::vector<std::uint32_t> below(k, 0);
    std::function<void(std::size_t)> extend = [&](std::size_t i) {
      if (i == k) {
        const std::size_t n = k + 2;
        std::vector<std::string> labels{"0"};
        for (std::size_t p = 0; p < k; ++p) labels.push_back(std::string(1, static_cast<char>('a' + p)));
        labels.push_back("1");
        std::vector<ElementSet> up(n, ElementSet(n));
        up[0].set();
        up[n - 1].set(n - 1);
        for (std::size_t p = 0; p < k; ++p) {
          up[p + 1].set(p + 1);
          up[p + 1].set(n - 1);
          for (std::size_t q = 0; q < k; ++q)
            if (below[q] >> p & 1) up[p + 1].set(q + 1);
        }
        try {
          keep(lattice_from_order(FinitePoset(std::move(labels), std::move(up))));
        } catch (const NotALattice&) {
        }
        return;
      }
      for (std::uint32_t mask = 0; mask < (1u << i); ++mask) {
        bool closed = true;
        for (std::size_t q = 0; q < i && closed; ++q)
          if ((mask >> q & 1) && (below[q] & ~mask)) closed = false;
        if (!closed) continue;
        below[i] = mask;
        extend(i + 1);
      }
    };
    extend(0);
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.first < b.first;
  });
  std::vector<FiniteLattice> out;
  for (auto& [cf, l] : found) out.push_back(std::move(l));
  return out;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> edge_list(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) e.emplace_back(x, y);
  return e;
}

Tolerance tolerance_of_mask(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                            std::uint64_t mask) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (mask >> i & 1) pairs.push_back(edges[i]);
  return Tolerance::from_pairs(numbered_labels(n), pairs);
}

}  // namespace

std::vector<Tolerance> all_tolerances(std::size_t n) {
  const auto edges = edge_list(n);
  if (edges.size() > 24) throw BoundsExceeded("all_tolerances: too many graphs");
  std::vector<Tolerance> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask)
    out.push_back(tolerance_of_mask(n, edges, mask));
  return out;
}

std::vector<Tolerance> canonical_tolerances(std::size_t n) {
  if (n > 7) throw BoundsExceeded("canonical_tolerances: at most 7 points");
  const auto edges = edge_list(n);
  std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    index[edges[i].first][edges[i].second] = i;
    index[edges[i].second][edges[i].first] = i;
  }
  std::vector<std::vector<std::size_t>> perm_maps;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::size_t> m(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) m[i] = index[perm[edges[i].first]][perm[edges[i].second]];
    perm_maps.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Tolerance> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    bool minimal = true;
    for (const auto& m : perm_maps) {
      std::uint64_t image = 0;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (mask >> i & 1) image |= std::uint64_t{1} << m[i];
      if (image < mask) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(tolerance_of_mask(n, edges, mask));
  }
  return out;
}

std::vector<Covering> coverings(std::size_t n, std::size_t max_blocks) {
  if (n == 0 || n > 6) throw BoundsExceeded("coverings: between 1 and 6 points");
  const PointSet full = full_set(n);
  const PointSet last = full;
  std::vector<Covering> out;
  std::vector<PointSet> chosen;
  const auto labels = numbered_labels(n);
  std::function<void(PointSet, PointSet)> pick = [&](PointSet from, PointSet covered) {
    if (covered == full) out.emplace_back(labels, chosen);
    if (chosen.size() == max_blocks) return;
    for (PointSet b = from; b <= last; ++b) {
      chosen.push_back(b);
      pick(b + 1, covered | b);
      chosen.pop_back();
    }
  };
  pick(1, 0);
  return out;
}

std::vector<std::vector<PointSet>> set_partitions(std::size_t n) {
  std::vector<std::vector<PointSet>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t classes) {
    if (i == n) {
      std::vector<PointSet> blocks(classes, 0);
      for (std::size_t p = 0; p < n; ++p) blocks[rgs[p]] |= PointSet{1} << p;
      std::sort(blocks.begin(), blocks.end());
      out.push_back(std::move(blocks));
      return;
    }
    for (std::size_t c = 0; c <= classes; ++c) {
      rgs[i] = c;
      go(i + 1, std::max(classes, c + 1));
    }
  };
  go(0, 0);
  return out;
}

JPosetInstance random_two_level_jposet(std::mt19937_64& rng, std::size_t max_points) {
  if (max_points == 0) throw InvalidInput("random_two_level_jposet: no points");
  const std::size_t moving = std::uniform_int_distribution<std::size_t>(0, max_points / 2)(rng);
  std::size_t fixed = std::uniform_int_distribution<std::size_t>(0, max_points - 2 * moving)(rng);
  if (moving + fixed == 0) fixed = 1;
  const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < moving; ++i) labels.push_back("a" + std::to_string(i));
  for (std::size_t i = 0; i < fixed; ++i) labels.push_back("f" + std::to_string(i));
  for (std::size_t i = 0; i < moving; ++i) labels.push_back("u" + std::to_string(i));
  const auto upper = [&](std::size_t i) { return static_cast<Element>(moving + fixed + i); };

  std::vector<std::pair<Element, Element>> covers;
  for (std::size_t i = 0; i < moving; ++i) covers.emplace_back(static_cast<Element>(i), upper(i));
  std::bernoulli_distribution edge(density);
  for (std::size_t i = 0; i < moving; ++i)
    for (std::size_t k = i + 1; k < moving; ++k)
      if (edge(rng)) {
        covers.emplace_back(static_cast<Element>(i), upper(k));
        covers.emplace_back(static_cast<Element>(k), upper(i));
      }

  std::vector<Element> g(labels.size());
  for (std::size_t i = 0; i < moving; ++i) {
    g[i] = upper(i);
    g[upper(i)] = static_cast<Element>(i);
  }
  for (std::size_t i = 0; i < fixed; ++i) g[moving + i] = static_cast<Element>(moving + i);
  return {FinitePoset::from_covers(std::move(labels), covers), std::move(g)};
}

std::size_t worker_count() {
  if (const char* env = std::getenv("ROUGHKLEENE_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Outcome {
  std::string property;
  bool search = false;
  bool hit = false;
  std::string message;
};

struct InstanceResult {
  std::vector<Outcome> outcomes;
  std::vector<std::string> counters;
  json witness;
  std::string kind;

  /// Runs `f`; any exception is a failure carrying its message.
  template <class F>
  void check(const std::string& property, F&& f) {
    Outcome o{property, false, false, {}};
    try {
      if (!f()) {
        o.hit = true;
        o.message = "property does not hold";
      }
    } catch (const std::exception& e) {
      o.hit = true;
      o.message = e.what();
    }
    outcomes.push_back(std::move(o));
  }

  void found(const std::string& property, bool hit, std::string message = {}) {
    outcomes.push_back({property, true, hit, std::move(message)});
  }
};

template <class T, class F>
std::vector<InstanceResult> run_parallel(const std::vector<T>& items, F f) {
  std::vector<InstanceResult> results(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) results[i] = f(items[i]);
  };
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(items.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

void merge(EnumerationReport& report, const std::vector<InstanceResult>& results) {
  for (const auto& r : results) {
    for (const auto& c : r.counters) ++report.counts[c];
    for (const auto& o : r.outcomes) {
      auto& p = report.properties[o.property];
      p.name = o.property;
      p.search = o.search;
      ++p.tested;
      if (!o.hit) continue;
      if (p.hits++ == 0) {
        p.witness = r.witness;
        p.witness_kind = r.kind;
        p.message = o.message;
      }
    }
  }
}

InstanceResult sweep_covering(const Covering& h) {
  InstanceResult res;
  res.kind = "covering";
  res.witness = io::covering_to_json(h);
  res.counters.push_back("coverings");
  bool irredundant = false;
  res.check("irredundanceCriteria", [&] {
    irredundant = is_irredundant(h).irredundant;
    return true;
  });
  if (!irredundant) return res;
  res.counters.push_back("irredundantCoverings");

  const auto r = tolerance_from_covering(h);
  std::optional<RoughSetAlgebra> rs;
  res.check("rsStructure", [&] {
    rs = build_rs(r);
    return rs->irredundant_covering() && rs->irredundant_covering()->blocks() == h.blocks();
  });
  if (!rs) return res;
  res.check("joinIrreducibleFormulas", [&] { return !rs_join_irreducibles(*rs).members.empty(); });
  res.check("gFormula", [&] {
    rs_g_map(*rs);
    return true;
  });
  res.check("conditionsMNK", [&] {
    DoublePStructure dp{rs->lattice(), *rs->star(), *rs->plus(), true};
    const auto mdn = check_m_d_n(dp, std::span<const Element>(rs->neg()));
    return mdn.m.holds && mdn.n && mdn.n->holds && is_kleene(rs->demorgan()).kleene;
  });
  res.check("skeletonIsomorphisms", [&] {
    check_skeleton_isomorphisms(*rs);
    return true;
  });
  res.check("isolatedBlocks", [&] { return isolated_block_report(*rs).size() == h.blocks().size(); });
  res.check("oracleDuality", [&] { return rs_from_join_irreducibles(r) == rs->pairs(); });
  res.check("heytingFormulas", [&] {
    heyting_implications(DoublePStructure{rs->lattice(), *rs->star(), *rs->plus(), true});
    return true;
  });
  return res;
}

InstanceResult sweep_tolerance(const Tolerance& r) {
  InstanceResult res;
  res.kind = "tolerance";
  res.witness = io::tolerance_to_json(r);
  res.counters.push_back("tolerances");
  try {
    const auto rs = build_rs(r);
    res.found("nonLatticeRs", false);
    res.counters.push_back(rs.distributive() ? "rsDistributive" : "rsNonDistributive");
    if (rs.irredundant_covering()) res.counters.push_back("rsFromIrredundantCovering");
  } catch (const NotALattice& e) {
    res.found("nonLatticeRs", true, e.what());
    res.counters.push_back("rsNotLattice");
  } catch (const std::exception& e) {
    res.outcomes.push_back({"rsConstruction", false, true, e.what()});
    return res;
  }
  res.outcomes.push_back({"rsConstruction", false, false, {}});
  return res;
}

InstanceResult sweep_equivalence(const std::vector<PointSet>& partition) {
  InstanceResult res;
  std::size_t n = 0;
  for (PointSet b : partition) n += static_cast<std::size_t>(point_count(b));
  std::vector<PointSet> nb(n);
  for (PointSet b : partition) for_each_point(b, [&](std::size_t x) { nb[x] = b; });
  const Tolerance r(numbered_labels(n), nb);
  res.kind = "tolerance";
  res.witness = io::tolerance_to_json(r);
  res.counters.push_back("equivalences");

  std::optional<RoughSetAlgebra> rs;
  res.check("gehrkeWalker", [&] {
    rs = build_rs(r);
    std::vector<std::size_t> chains;
    std::size_t expected = 1;
    for (PointSet b : partition) {
      chains.push_back(point_count(b) == 1 ? 2 : 3);
      expected *= chains.back();
    }
    if (rs->size() != expected) return false;
    return canonical_form(rs->lattice()) == canonical_form(product_of_chains(chains));
  });
  if (!rs) return res;
  res.check("comer", [&] {
    if (!rs->star() || !rs->plus()) return false;
    const auto& l = rs->lattice();
    const auto& s = *rs->star();
    const auto& p = *rs->plus();
    for (Element x = 0; x < l.size(); ++x)
      if (l.join(s[x], s[s[x]]) != l.top() || l.meet(p[x], p[p[x]]) != l.bottom()) return false;
    return true;
  });
  return res;
}

struct DeMorganInstance {
  FiniteLattice lattice;
  std::vector<Element> neg;
};

InstanceResult sweep_demorgan(const DeMorganInstance& inst) {
  InstanceResult res;
  res.kind = "lattice";
  res.witness = io::lattice_to_json(inst.lattice, &inst.neg);
  res.counters.push_back("deMorganStructures");
  std::optional<DeMorganStructure> dm;
  res.check("deMorganValid", [&] {
    dm = validate_demorgan(inst.lattice, inst.neg);
    return true;
  });
  if (!dm) return res;
  const auto& l = dm->lattice();
  const auto jirr = join_irreducibles(l);
  const auto dp = compute_pseudocomplements(l);
  std::optional<RegularityReport> reg;
  res.check("regularityCriteria", [&] {
    reg = is_regular(dp, jirr, std::span<const Element>(inst.neg));
    return true;
  });
  res.check("gAxioms", [&] {
    const auto g = compute_g(*dm, jirr);
    return neg_from_g(l, jirr, g) == inst.neg;
  });
  res.check("heytingFormulas", [&] {
    heyting_implications(dp);
    return true;
  });
  const bool kleene = is_kleene(*dm).kleene;
  if (kleene) res.counters.push_back("kleene");
  if (reg && reg->regular) res.counters.push_back("regular");
  if (kleene && reg && reg->regular && l.size() > 1) {
    res.counters.push_back("regularKleene");
    res.check("representation", [&] { return represent(*dm).iso.report.verified; });
  }
  return res;
}

}  // namespace

bool EnumerationReport::ok() const {
  for (const auto& [name, p] : properties)
    if (!p.search && p.hits) return false;
  return true;
}

json EnumerationReport::to_json() const {
  json props = json::object();
  for (const auto& [name, p] : properties) {
    json e{{"tested", p.tested}};
    if (p.search) {
      e["search"] = true;
      e["found"] = p.hits;
    } else {
      e["failures"] = p.hits;
      e["pass"] = p.hits == 0;
    }
    if (p.witness) {
      e["witness"] = *p.witness;
      e["witnessKind"] = p.witness_kind;
      e["message"] = p.message;
    }
    props[name] = e;
  }
  return {{"ok", ok()}, {"counts", counts}, {"properties", props}};
}

EnumerationReport run_enumeration(const EnumerationBounds& bounds) {
  if (!bounds.force &&
      (bounds.universe_max > kUniverseCap || bounds.covering_max > kCoveringCap || bounds.lattice_max > kLatticeCap))
    throw BoundsExceeded("enumerate: bounds above --universe-max 6, --covering-max 5, --lattice-max 9 need --force");
  EnumerationReport report;
  if (bounds.coverings)
    for (std::size_t n = 1; n <= bounds.covering_max; ++n) merge(report, run_parallel(coverings(n, n), sweep_covering));
  if (bounds.tolerances)
    for (std::size_t n = 1; n <= bounds.universe_max; ++n)
      merge(report, run_parallel(bounds.canonical ? canonical_tolerances(n) : all_tolerances(n), sweep_tolerance));
  if (bounds.equivalences)
    for (std::size_t n = 1; n <= bounds.universe_max; ++n)
      merge(report, run_parallel(set_partitions(n), sweep_equivalence));
  if (bounds.demorgan) {
    std::vector<DeMorganInstance> instances;
    for (const auto& l : all_lattices(bounds.lattice_max)) {
      ++report.counts["lattices"];
      if (!is_distributive(l).distributive) continue;
      ++report.counts["distributiveLattices"];
      for (auto& neg : demorgan_operations(l)) instances.push_back({l, std::move(neg)});
    }
    merge(report, run_parallel(instances, sweep_demorgan));
  }
  return report;
}

}  // namespace rk
