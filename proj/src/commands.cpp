#include "roughkleene/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "roughkleene/dot.hpp"
#include "roughkleene/error.hpp"
#include "roughkleene/io.hpp"
#include "roughkleene/pseudo_double.hpp"
#include "roughkleene/representation.hpp"

namespace rk::cli {

using io::json;

namespace {

json labels_of(const FiniteLattice& l, const std::vector<Element>& ids) {
  json out = json::array();
  for (Element e : ids) out.push_back(l.label(e));
  return out;
}

struct Algebra {
  FiniteLattice lattice;
  std::optional<std::vector<Element>> neg;
  std::string kind;
};

Algebra load_algebra(const json& j) {
  switch (io::detect_kind(j)) {
    case io::InputKind::Lattice: {
      auto in = io::parse_lattice(j);
      return {std::move(in.lattice), std::move(in.neg), "lattice"};
    }
    case io::InputKind::JPoset: {
      auto in = io::parse_jposet(j);
      auto alg = build_kleene_from_jposet(in.poset, in.g, false);
      return {alg.algebra.lattice(), alg.algebra.neg_table(), "jposet"};
    }
    default:
      throw ParseError("<root>", "expected a lattice or a J-poset with g");
  }
}

Tolerance load_tolerance(const json& j, json* covering_report) {
  switch (io::detect_kind(j)) {
    case io::InputKind::Tolerance:
      return io::parse_tolerance(j);
    case io::InputKind::Covering: {
      const auto h = io::parse_covering(j);
      const auto rep = is_irredundant(h);
      if (covering_report) {
        (*covering_report)["irredundant"] = rep.irredundant;
        if (rep.removable_block) {
          const auto r = tolerance_from_covering(h);
          (*covering_report)["removableBlock"] = io::point_labels(r, h.blocks()[*rep.removable_block]);
        }
      }
      return tolerance_from_covering(h);
    }
    case io::InputKind::Bundle: {
      json c{{"labels", j["universe"]}, {"blocks", j["covering"]}};
      return tolerance_from_covering(io::parse_covering(c));
    }
    default:
      throw ParseError("<root>", "expected a tolerance or a covering");
  }
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + p.string());
  f << text;
}

}  // namespace

int guarded(const std::function<int()>& f, std::ostream& err) {
  try {
    return f();
  } catch (const AssertionFailure& e) {
    err << "error: " << e.what() << "\n";
    return kPropertyFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_check(const std::string& path, std::ostream& out) {
  const auto alg = load_algebra(io::read_file(path));
  const auto& l = alg.lattice;
  json rep;
  rep["kind"] = alg.kind;
  rep["size"] = l.size();

  const auto dist = is_distributive(l);
  rep["distributive"] = dist.distributive;
  if (dist.witness) rep["distributiveWitness"] = labels_of(l, {(*dist.witness)[0], (*dist.witness)[1], (*dist.witness)[2]});
  const auto jirr = join_irreducibles(l);
  rep["joinIrreducibles"] = labels_of(l, jirr.members);

  std::optional<DeMorganStructure> dm;
  rep["deMorgan"] = nullptr;
  rep["K"] = nullptr;
  if (alg.neg) {
    try {
      dm = validate_demorgan(l, *alg.neg);
      rep["deMorgan"] = true;
    } catch (const AssertionFailure&) {
      throw;
    } catch (const Error& e) {
      rep["deMorgan"] = false;
      rep["deMorganError"] = e.what();
    }
  }
  if (dm) {
    const auto k = is_kleene(*dm);
    rep["K"] = k.kleene;
    if (k.witness) rep["KWitness"] = labels_of(l, {k.witness->first, k.witness->second});
  }

  const auto two = has_two_levels(jirr, l);
  rep["twoLevels"] = two.two_levels;
  if (two.chain) rep["twoLevelsWitness"] = labels_of(l, {(*two.chain)[0], (*two.chain)[1], (*two.chain)[2]});

  std::optional<DoublePStructure> dp;
  try {
    dp = compute_pseudocomplements(l);
  } catch (const NoPseudocomplement&) {
  }
  rep["pseudocomplemented"] = dp.has_value();
  rep["M"] = rep["D"] = rep["N"] = nullptr;
  rep["primeChainMax"] = nullptr;
  rep["regular"] = false;
  if (dp) {
    dp->distributive = dist.distributive;
    const auto mdn = check_m_d_n(*dp, dm ? std::optional<std::span<const Element>>(dm->neg_table()) : std::nullopt);
    rep["M"] = mdn.m.holds;
    if (!mdn.m.holds) rep["MWitness"] = labels_of(l, mdn.m.witness);
    rep["D"] = mdn.d.holds;
    if (!mdn.d.holds) rep["DWitness"] = labels_of(l, mdn.d.witness);
    if (mdn.n) {
      rep["N"] = mdn.n->holds;
      if (!mdn.n->holds) rep["NWitness"] = labels_of(l, mdn.n->witness);
    }
    if (dist.distributive) {
      const auto reg = is_regular(*dp, jirr);
      rep["primeChainMax"] = reg.prime_chain_max;
      rep["regular"] = reg.regular;
    }
  }
  rep["regularPseudocomplementedKleene"] = rep["regular"].get<bool>() && rep["K"] == true;
  out << io::dump(rep);
  return kPass;
}

int cmd_represent(const std::string& path, const std::optional<std::string>& dot_dir, std::ostream& out) {
  const auto alg = load_algebra(io::read_file(path));
  if (!alg.neg) throw InvalidInput("represent: the lattice has no 'neg'");
  const auto rep = represent(validate_demorgan(alg.lattice, *alg.neg));
  if (dot_dir) {
    std::filesystem::create_directories(*dot_dir);
    write_file(std::filesystem::path(*dot_dir) / "algebra.dot",
               hasse_dot(rep.alg.lattice(), {"L", &rep.alg.jirr, &rep.alg.dm.neg_table()}));
    write_file(std::filesystem::path(*dot_dir) / "rs.dot",
               hasse_dot(rep.rs.lattice(), {"RS", &rep.rs.join_irreducibles(), &rep.rs.neg()}));
  }
  out << io::dump(io::bundle_to_json(rep));
  return rep.iso.report.verified ? kPass : kPropertyFailure;
}

int cmd_verify(const std::string& path, std::ostream& out) {
  json rep;
  json covering_report = json::object();
  const auto r = load_tolerance(io::read_file(path), &covering_report);
  if (!covering_report.empty()) rep["covering"] = covering_report;
  rep["universeSize"] = r.size();

  json blocks = json::array();
  for (PointSet b : blocks_of(r)) blocks.push_back(io::point_labels(r, b));
  rep["blocks"] = blocks;
  const auto h = inducing_irredundant_covering(r);
  rep["inducedByIrredundant"] = h.has_value();
  if (h) {
    json hb = json::array();
    for (PointSet b : h->blocks()) hb.push_back(io::point_labels(r, b));
    rep["inducingCovering"] = hb;
  }

  std::optional<RoughSetAlgebra> rs;
  try {
    rs = build_rs(r);
  } catch (const NotALattice& e) {
    rep["rsLattice"] = false;
    rep["notALattice"] = {{"bound", e.bound() == NotALattice::Bound::Meet ? "meet" : "join"}, {"message", e.what()}};
    out << io::dump(rep);
    return kPropertyFailure;
  }
  rep["rsLattice"] = true;
  rep["rsSize"] = rs->size();
  rep["distributive"] = rs->distributive();
  rep["pseudocomplemented"] = rs->star().has_value();

  json checks = json::object();
  json failures = json::object();
  auto check = [&](const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    try {
      ok = f();
      if (!ok) failures[name] = "property does not hold";
    } catch (const Error& e) {
      failures[name] = e.what();
    }
    checks[name] = ok;
  };
  if (rs->distributive()) check("kleene", [&] { return is_kleene(rs->demorgan()).kleene; });
  if (h) {
    check("regular", [&] {
      DoublePStructure dp{rs->lattice(), *rs->star(), *rs->plus(), true};
      return is_regular(dp, rs->join_irreducibles(), std::span<const Element>(rs->neg())).regular;
    });
    check("conditionsMNK", [&] {
      DoublePStructure dp{rs->lattice(), *rs->star(), *rs->plus(), true};
      const auto mdn = check_m_d_n(dp, std::span<const Element>(rs->neg()));
      return mdn.m.holds && mdn.n->holds;
    });
    check("joinIrreducibleFormulas", [&] { return !rs_join_irreducibles(*rs).members.empty(); });
    check("gFormula", [&] { return !rs_g_map(*rs).table().empty(); });
    check("skeletonIsomorphisms", [&] {
      check_skeleton_isomorphisms(*rs);
      return true;
    });
    check("oracleDuality", [&] { return rs_from_join_irreducibles(r) == rs->pairs(); });
    json isolated = json::array();
    check("isolatedBlocks", [&] {
      for (const auto& ib : isolated_block_report(*rs))
        if (ib.isolated) isolated.push_back(io::point_labels(r, ib.block));
      return true;
    });
    rep["isolatedBlocks"] = isolated;
  }
  rep["checks"] = checks;
  if (!failures.empty()) rep["failures"] = failures;
  out << io::dump(rep);
  return failures.empty() ? kPass : kPropertyFailure;
}

int cmd_enumerate(const EnumerationBounds& bounds, const std::optional<std::string>& witness_dir, std::ostream& out) {
  const auto report = run_enumeration(bounds);
  if (witness_dir) {
    std::filesystem::create_directories(*witness_dir);
    for (const auto& [name, p] : report.properties)
      if (p.witness) write_file(std::filesystem::path(*witness_dir) / (name + ".json"), io::dump(*p.witness));
  }
  out << io::dump(report.to_json());
  return report.ok() ? kPass : kPropertyFailure;
}

int cmd_render(const std::string& path, bool show_neg, std::ostream& out) {
  const auto j = io::read_file(path);
  const auto kind = io::detect_kind(j);
  if (kind == io::InputKind::Lattice || kind == io::InputKind::JPoset) {
    const auto alg = load_algebra(j);
    const auto jirr = join_irreducibles(alg.lattice);
    out << hasse_dot(alg.lattice, {"L", &jirr, show_neg && alg.neg ? &*alg.neg : nullptr});
    return kPass;
  }
  const auto rs = build_rs(load_tolerance(j, nullptr));
  out << hasse_dot(rs.lattice(), {"RS", &rs.join_irreducibles(), show_neg ? &rs.neg() : nullptr});
  return kPass;
}

}  // namespace rk::cli
