#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughkleene/order.hpp"
#include "roughkleene/rough_sets.hpp"

namespace rk {

// Generators --------------------------------------------------------------

/// Every lattice with at most `max_size` elements, one per isomorphism
/// class, ordered by size and then by canonical form. Inner elements are
/// labelled a, b, c, ...; bottom "0" and top "1".
std::vector<FiniteLattice> all_lattices(std::size_t max_size);

/// Point labels "0", "1", ... used by the generated instances.
std::vector<std::string> numbered_labels(std::size_t n);

/// All 2^(n(n-1)/2) tolerances on n points, in adjacency-mask order.
std::vector<Tolerance> all_tolerances(std::size_t n);

/// One tolerance per graph isomorphism class (n <= 7).
std::vector<Tolerance> canonical_tolerances(std::size_t n);

/// Coverings of n points by at most `max_blocks` distinct blocks. Every
/// irredundant covering has at most n blocks.
std::vector<Covering> coverings(std::size_t n, std::size_t max_blocks);

/// Set partitions of n points, blocks in ascending order.
std::vector<std::vector<PointSet>> set_partitions(std::size_t n);

struct JPosetInstance {
  FinitePoset poset;
  std::vector<Element> g;
};

/// Random two-level J-poset with an antitone involution comparable with each
/// point: `moving` atoms a < g(a), `fixed` atoms with g = id, and a random
/// symmetric ≃ among the moving atoms with a < g(b) iff a ≃ b.
JPosetInstance random_two_level_jposet(std::mt19937_64& rng, std::size_t max_points);

// Harness -----------------------------------------------------------------

struct EnumerationBounds {
  std::size_t universe_max = 5;   ///< tolerances and equivalences
  std::size_t covering_max = 5;   ///< coverings (cost grows as C(2^n, n))
  std::size_t lattice_max = 8;    ///< De Morgan structures
  bool canonical = false;         ///< dedupe tolerances up to isomorphism
  bool force = false;             ///< allow bounds above the caps below
  bool tolerances = true, coverings = true, equivalences = true, demorgan = true;
};

struct PropertyResult {
  std::string name;
  /// Searches look for an instance (e.g. a non-lattice RS); hits are not
  /// failures.
  bool search = false;
  std::size_t tested = 0;
  std::size_t hits = 0;
  std::optional<nlohmann::json> witness;
  std::string witness_kind;  ///< tolerance, covering or lattice
  std::string message;
};

struct EnumerationReport {
  std::map<std::string, PropertyResult> properties;
  std::map<std::string, std::size_t> counts;

  /// No non-search property failed.
  bool ok() const;
  nlohmann::json to_json() const;
};

/// Worker count from ROUGHKLEENE_WORKERS, else the hardware concurrency.
std::size_t worker_count();

/// Caps without `force`: universe 6, coverings 5, lattices 9.
inline constexpr std::size_t kUniverseCap = 6, kCoveringCap = 5, kLatticeCap = 9;

/// Throws BoundsExceeded when a bound is above its cap and `force` is unset.
EnumerationReport run_enumeration(const EnumerationBounds& bounds);

}  // namespace rk
