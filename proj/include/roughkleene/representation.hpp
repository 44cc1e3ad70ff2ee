#pragma once

#include <string>
#include <vector>

#include "roughkleene/demorgan.hpp"
#include "roughkleene/pseudo_double.hpp"
#include "roughkleene/rough_sets.hpp"

namespace rk {

/// A De Morgan structure that passed the Kleene and regularity checks,
/// with everything the representation needs precomputed.
struct PseudoKleeneAlgebra {
  DeMorganStructure dm;
  JoinIrreducibleSet jirr;
  GMap g;
  DoublePStructure dp;
  RegularityReport regularity;

  const FiniteLattice& lattice() const { return dm.lattice(); }
};

/// Throws NotKleene or NotRegular (with the failing witness in the message).
PseudoKleeneAlgebra analyze(const DeMorganStructure& d);

struct SimilaritySpace {
  /// Atoms of L in id order; indices below refer to this vector.
  std::vector<Element> atoms;
  /// simeq[i][k]: atoms[i] <= g(atoms[k]).
  std::vector<std::vector<bool>> simeq;
  /// spans[i] = ⟨atoms[i]⟩ as sorted L ids.
  std::vector<std::vector<Element>> spans;

  std::size_t index_of(Element atom) const;
};

SimilaritySpace build_similarity(const PseudoKleeneAlgebra& alg);

struct ToleranceUniverse {
  /// Points of U are L elements; points[i] is the L id of point i.
  std::vector<Element> points;
  /// Indexed by L id; npos for elements outside U.
  std::vector<std::size_t> point_of;
  Covering covering;
  Tolerance tolerance;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  PointSet to_points(const std::vector<Element>& elems) const;
};

/// Point labels are the L labels.
ToleranceUniverse build_tolerance_universe(const PseudoKleeneAlgebra& alg, const SimilaritySpace& s);

/// phi[j] for j in J(L), kNoElement elsewhere; values are RS element ids.
using PhiMap = std::vector<Element>;

PhiMap build_phi(const PseudoKleeneAlgebra& alg, const ToleranceUniverse& tu, const RoughSetAlgebra& rs);

struct IsoCheck {
  std::string operation;
  bool holds = true;
  std::vector<Element> witness;  ///< L ids
};

struct IsoReport {
  /// bijective, join, meet, neg, star, plus, bottom, top, in that order.
  std::vector<IsoCheck> checks;
  bool verified = true;
};

struct ExtendedIso {
  std::vector<Element> map;  ///< L id -> RS id
  IsoReport report;
};

/// iso(x) = ⋁{φ(j) | j ∈ J, j <= x} in RS, checked exhaustively. Does not
/// throw on a failed check; represent() does.
ExtendedIso extend_iso(const PseudoKleeneAlgebra& alg, const PhiMap& phi, const RoughSetAlgebra& rs);

struct RepresentationResult {
  PseudoKleeneAlgebra alg;
  SimilaritySpace similarity;
  ToleranceUniverse universe;
  RoughSetAlgebra rs;
  PhiMap phi;
  ExtendedIso iso;
};

/// The whole pipeline. Throws NotKleene, NotRegular, IsoCheckFailed.
RepresentationResult represent(const DeMorganStructure& d, RsOptions opts = {});

struct RoundtripReport {
  std::size_t rs_size = 0;
  std::size_t universe_size = 0;
  std::size_t represented_universe_size = 0;
  std::vector<Element> map;  ///< RS(r) id -> RS(represent(RS(r))) id
};

/// RS(r) -> represent -> RS again; asserts the two are isomorphic as
/// De Morgan algebras by an independent isomorphism search.
RoundtripReport roundtrip_equivalence_check(const Tolerance& r, RsOptions opts = {});

}  // namespace rk
