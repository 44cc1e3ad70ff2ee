#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughkleene/demorgan.hpp"
#include "roughkleene/representation.hpp"
#include "roughkleene/rough_sets.hpp"

namespace rk::io {

using nlohmann::json;

enum class InputKind { Lattice, JPoset, Tolerance, Covering, Bundle };

/// Throws ParseError with "line N" as the field on malformed JSON.
json parse_text(const std::string& text);
json read_file(const std::string& path);

/// Decided by the keys present: g, pairs, blocks, universe, covers/leq.
InputKind detect_kind(const json& j);

struct LatticeInput {
  FiniteLattice lattice;
  std::optional<std::vector<Element>> neg;
};

/// { "labels": [...], "covers": [[lo, hi], ...] } or { "labels", "leq": matrix },
/// with an optional "neg" given as a list or a label map. Ids may be
/// indices or labels. NotALattice propagates.
LatticeInput parse_lattice(const json& j);

struct JPosetInput {
  FinitePoset poset;
  std::vector<Element> g;
};

/// { "labels", "covers", "g": { label: label } }.
JPosetInput parse_jposet(const json& j);

Tolerance parse_tolerance(const json& j);
Covering parse_covering(const json& j);

json tolerance_to_json(const Tolerance& r);
json covering_to_json(const Covering& h);
json lattice_to_json(const FiniteLattice& l, const std::vector<Element>* neg = nullptr);

/// Point labels of a set in point order.
json point_labels(const Tolerance& r, PointSet s);

json bundle_to_json(const RepresentationResult& rep);

/// Serialised form written by the CLI: two-space indent, sorted keys,
/// trailing newline.
std::string dump(const json& j);

}  // namespace rk::io
