#include "roughkleene/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "roughkleene/error.hpp"

namespace rk::io {

namespace {

std::vector<std::string> parse_labels(const json& j) {
  if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
  if (!j.contains("labels") || !j["labels"].is_array()) throw ParseError("labels", "expected an array of strings");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& v : j["labels"]) {
    if (!v.is_string()) throw ParseError("labels", "expected an array of strings");
    if (!seen.insert(v.get<std::string>()).second)
      throw ParseError("labels", "duplicate label '" + v.get<std::string>() + "'");
    out.push_back(v.get<std::string>());
  }
  if (out.empty()) throw ParseError("labels", "empty carrier");
  return out;
}

std::size_t resolve(const json& v, const std::vector<std::string>& labels, const std::string& field) {
  if (v.is_number_unsigned()) {
    const auto i = v.get<std::size_t>();
    if (i >= labels.size()) throw ParseError(field, "index " + std::to_string(i) + " out of range");
    return i;
  }
  if (v.is_string()) {
    auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
    if (it == labels.end()) throw ParseError(field, "unknown label '" + v.get<std::string>() + "'");
    return static_cast<std::size_t>(it - labels.begin());
  }
  throw ParseError(field, "expected an index or a label");
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const json& j, const char* key,
                                                            const std::vector<std::string>& labels) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw ParseError(key, "expected an array of pairs");
  for (std::size_t i = 0; i < j[key].size(); ++i) {
    const auto& p = j[key][i];
    const std::string field = std::string(key) + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) throw ParseError(field, "expected a pair");
    out.emplace_back(resolve(p[0], labels, field), resolve(p[1], labels, field));
  }
  return out;
}

FinitePoset parse_order(const json& j, const std::vector<std::string>& labels) {
  if (j.contains("leq")) {
    const auto& m = j["leq"];
    if (!m.is_array() || m.size() != labels.size()) throw ParseError("leq", "expected a square matrix");
    std::vector<std::vector<bool>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string field = "leq[" + std::to_string(i) + "]";
      if (!m[i].is_array() || m[i].size() != labels.size()) throw ParseError(field, "expected a square matrix");
      auto& row = rows.emplace_back();
      for (const auto& v : m[i]) {
        if (v.is_boolean()) row.push_back(v.get<bool>());
        else if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) row.push_back(v.get<int>() == 1);
        else throw ParseError(field, "expected booleans or 0/1");
      }
    }
    return FinitePoset::from_matrix(labels, rows);
  }
  if (!j.contains("covers")) throw ParseError("covers", "expected 'covers' or 'leq'");
  std::vector<std::pair<Element, Element>> covers;
  for (auto [a, b] : parse_pairs(j, "covers", labels))
    covers.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
  return FinitePoset::from_covers(labels, covers);
}

std::vector<Element> parse_map(const json& m, const std::vector<std::string>& labels, const char* key) {
  std::vector<Element> out(labels.size(), kNoElement);
  if (m.is_array()) {
    if (m.size() != labels.size()) throw ParseError(key, "expected one entry per element");
    for (std::size_t i = 0; i < m.size(); ++i)
      out[i] = static_cast<Element>(resolve(m[i], labels, std::string(key) + "[" + std::to_string(i) + "]"));
  } else if (m.is_object()) {
    for (const auto& [k, v] : m.items()) {
      const std::string field = std::string(key) + "." + k;
      out[resolve(json(k), labels, field)] = static_cast<Element>(resolve(v, labels, field));
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (out[i] == kNoElement) throw ParseError(key, "no image for '" + labels[i] + "'");
  } else {
    throw ParseError(key, "expected an array or an object");
  }
  return out;
}

json label_list(const std::vector<std::string>& labels, const std::vector<Element>& ids) {
  json out = json::array();
  for (Element e : ids) out.push_back(labels[e]);
  return out;
}

}  // namespace

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line), e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

InputKind detect_kind(const json& j) {
  if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
  if (j.contains("universe") && j.contains("covering")) return InputKind::Bundle;
  if (j.contains("g")) return InputKind::JPoset;
  if (j.contains("pairs")) return InputKind::Tolerance;
  if (j.contains("blocks")) return InputKind::Covering;
  if (j.contains("covers") || j.contains("leq")) return InputKind::Lattice;
  throw ParseError("<root>", "cannot tell the input kind (expected covers, leq, g, pairs or blocks)");
}

LatticeInput parse_lattice(const json& j) {
  auto labels = parse_labels(j);
  LatticeInput out{lattice_from_order(parse_order(j, labels)), std::nullopt};
  if (j.contains("neg")) out.neg = parse_map(j["neg"], labels, "neg");
  return out;
}

JPosetInput parse_jposet(const json& j) {
  auto labels = parse_labels(j);
  JPosetInput out{parse_order(j, labels), {}};
  out.g = parse_map(j["g"], labels, "g");
  return out;
}

Tolerance parse_tolerance(const json& j) {
  auto labels = parse_labels(j);
  if (labels.size() > kMaxPoints) throw ParseError("labels", "more than 64 points");
  const auto pairs = parse_pairs(j, "pairs", labels);
  return Tolerance::from_pairs(std::move(labels), pairs);
}

Covering parse_covering(const json& j) {
  auto labels = parse_labels(j);
  if (labels.size() > kMaxPoints) throw ParseError("labels", "more than 64 points");
  if (!j["blocks"].is_array()) throw ParseError("blocks", "expected an array of blocks");
  std::vector<PointSet> blocks;
  for (std::size_t i = 0; i < j["blocks"].size(); ++i) {
    const auto& b = j["blocks"][i];
    const std::string field = "blocks[" + std::to_string(i) + "]";
    if (!b.is_array()) throw ParseError(field, "expected an array");
    PointSet s = 0;
    for (const auto& v : b) s |= PointSet{1} << resolve(v, labels, field);
    blocks.push_back(s);
  }
  try {
    return Covering(std::move(labels), std::move(blocks));
  } catch (const InvalidInput& e) {
    throw ParseError("blocks", e.what());
  }
}

json point_labels(const Tolerance& r, PointSet s) {
  json out = json::array();
  for_each_point(s, [&](std::size_t i) { out.push_back(r.labels()[i]); });
  return out;
}

json tolerance_to_json(const Tolerance& r) {
  json pairs = json::array();
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = x + 1; y < r.size(); ++y)
      if (r.related(x, y)) pairs.push_back({x, y});
  return {{"labels", r.labels()}, {"pairs", pairs}};
}

json covering_to_json(const Covering& h) {
  json blocks = json::array();
  for (PointSet b : h.blocks()) {
    json block = json::array();
    for_each_point(b, [&](std::size_t i) { block.push_back(i); });
    blocks.push_back(block);
  }
  return {{"labels", h.labels()}, {"blocks", blocks}};
}

json lattice_to_json(const FiniteLattice& l, const std::vector<Element>* neg) {
  json covers = json::array();
  for (Element x = 0; x < l.size(); ++x)
    for (Element y : l.upper_covers(x)) covers.push_back({x, y});
  json out{{"labels", l.labels()}, {"covers", covers}};
  if (neg) out["neg"] = *neg;
  return out;
}

json bundle_to_json(const RepresentationResult& rep) {
  const auto& l = rep.alg.lattice();
  const auto& labels = l.labels();
  const auto& s = rep.similarity;
  const auto& tu = rep.universe;
  const auto& r = tu.tolerance;
  const auto& t = rep.rs.lattice();

  json b;
  b["latticeSize"] = l.size();
  b["rsSize"] = rep.rs.size();
  b["universe"] = label_list(labels, tu.points);

  b["covering"] = json::array();
  b["spans"] = json::object();
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    b["covering"].push_back(label_list(labels, s.spans[i]));
    b["spans"][labels[s.atoms[i]]] = label_list(labels, s.spans[i]);
  }
  b["similarity"] = json::array();
  for (std::size_t i = 0; i < s.atoms.size(); ++i)
    for (std::size_t k = i; k < s.atoms.size(); ++k)
      if (s.simeq[i][k]) b["similarity"].push_back({labels[s.atoms[i]], labels[s.atoms[k]]});

  b["tolerancePairs"] = json::array();
  b["neighborhoods"] = json::object();
  for (std::size_t p = 0; p < tu.points.size(); ++p) {
    b["neighborhoods"][labels[tu.points[p]]] = point_labels(r, r.neighbourhood(p));
    for (std::size_t q = p + 1; q < tu.points.size(); ++q)
      if (r.related(p, q)) b["tolerancePairs"].push_back({labels[tu.points[p]], labels[tu.points[q]]});
  }

  b["phi"] = json::object();
  for (Element j : rep.alg.jirr.members) b["phi"][labels[j]] = t.label(rep.phi[j]);
  b["isoTable"] = json::object();
  for (Element x = 0; x < l.size(); ++x) b["isoTable"][labels[x]] = t.label(rep.iso.map[x]);

  json report = json::object();
  for (const auto& c : rep.iso.report.checks) {
    report[c.operation] = c.holds;
    if (!c.holds) report["witnesses"][c.operation] = label_list(labels, c.witness);
  }
  report["verified"] = rep.iso.report.verified;
  b["report"] = report;
  return b;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace rk::io
