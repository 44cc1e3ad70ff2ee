#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "roughkleene/commands.hpp"
#include "roughkleene/error.hpp"
#include "roughkleene/io.hpp"

using namespace rk;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::function<int(std::ostream&)>& f) {
  std::ostringstream out, err;
  const int code = cli::guarded([&] { return f(out); }, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / ("roughkleene_test_" + name);
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse errors carry the line") {
  try {
    io::read_file(fixture("malformed.json"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "line 4");
  }
  CHECK_THROWS_AS(io::read_file(fixture("missing.json")), ParseError);
  CHECK_THROWS_AS(io::parse_lattice(io::parse_text(R"({"labels": ["a", "a"], "covers": []})")), ParseError);
  CHECK_THROWS_AS(io::parse_lattice(io::parse_text(R"({"labels": ["a"], "covers": [["a", "z"]]})")), ParseError);
}

TEST_CASE("input kinds") {
  CHECK(io::detect_kind(io::read_file(fixture("example_jposet.json"))) == io::InputKind::JPoset);
  CHECK(io::detect_kind(io::read_file(fixture("four_chain.json"))) == io::InputKind::Lattice);
  CHECK(io::detect_kind(io::read_file(fixture("example_covering.json"))) == io::InputKind::Covering);
  CHECK(io::detect_kind(io::read_file(fixture("nonlattice_tolerance.json"))) == io::InputKind::Tolerance);
  CHECK(io::detect_kind(io::read_file(fixture("example_bundle.json"))) == io::InputKind::Bundle);
}

TEST_CASE("serializers round trip") {
  const auto r = io::parse_tolerance(io::read_file(fixture("nonlattice_tolerance.json")));
  CHECK(io::parse_tolerance(io::tolerance_to_json(r)) == r);
  const auto h = io::parse_covering(io::read_file(fixture("example_covering.json")));
  CHECK(io::parse_covering(io::covering_to_json(h)).blocks() == h.blocks());
}

TEST_CASE("check") {
  auto r = run([](std::ostream& o) { return cli::cmd_check(fixture("example_jposet.json"), o); });
  REQUIRE(r.code == cli::kPass);
  auto j = io::parse_text(r.out);
  CHECK(j["regular"] == true);
  CHECK(j["K"] == true);
  CHECK(j["primeChainMax"] == 2);
  CHECK(j["size"] == 17);

  r = run([](std::ostream& o) { return cli::cmd_check(fixture("four_chain.json"), o); });
  REQUIRE(r.code == cli::kPass);
  j = io::parse_text(r.out);
  CHECK(j["regular"] == false);
  CHECK(j["M"] == false);
  CHECK(j["primeChainMax"] == 3);

  r = run([](std::ostream& o) { return cli::cmd_check(fixture("malformed.json"), o); });
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("line 4") != std::string::npos);
  r = run([](std::ostream& o) { return cli::cmd_check(fixture("example_covering.json"), o); });
  CHECK(r.code == cli::kInputError);
}

TEST_CASE("represent reproduces the frozen bundle byte for byte") {
  const auto r = run([](std::ostream& o) { return cli::cmd_represent(fixture("example_jposet.json"), {}, o); });
  REQUIRE(r.code == cli::kPass);
  CHECK(r.out == slurp(fixture("example_bundle.json")));
  const auto again = run([](std::ostream& o) { return cli::cmd_represent(fixture("example_jposet.json"), {}, o); });
  CHECK(again.out == r.out);
}

TEST_CASE("represent on small algebras") {
  SUBCASE("Boolean 2^3") {
    const auto path = temp_file("boolean.json", R"({"labels": ["p", "q", "r"], "covers": [], "g": [0, 1, 2]})");
    const auto r = run([&](std::ostream& o) { return cli::cmd_represent(path, {}, o); });
    REQUIRE(r.code == cli::kPass);
    const auto j = io::parse_text(r.out);
    CHECK(j["universe"].size() == 3);
    CHECK(j["tolerancePairs"].empty());
    CHECK(j["covering"].size() == 3);
  }
  SUBCASE("Kleene three-chain") {
    const auto path = temp_file("chain3.json", R"({"labels": ["0", "a", "1"], "covers": [["0", "a"], ["a", "1"]],
                                                   "neg": ["1", "a", "0"]})");
    const auto r = run([&](std::ostream& o) { return cli::cmd_represent(path, {}, o); });
    REQUIRE(r.code == cli::kPass);
    const auto j = io::parse_text(r.out);
    CHECK(j["covering"].size() == 1);
    CHECK(j["covering"][0].size() == 2);
  }
  SUBCASE("preconditions are input errors") {
    const auto r = run([](std::ostream& o) { return cli::cmd_represent(fixture("four_chain.json"), {}, o); });
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("not regular") != std::string::npos);
  }
  SUBCASE("DOT pair") {
    const auto dir = (fs::temp_directory_path() / "roughkleene_test_dot").string();
    fs::remove_all(dir);
    const auto r = run([&](std::ostream& o) { return cli::cmd_represent(fixture("example_jposet.json"), dir, o); });
    REQUIRE(r.code == cli::kPass);
    CHECK(count(slurp(dir + "/algebra.dot"), "style=filled") == 6);
    CHECK(count(slurp(dir + "/rs.dot"), "style=filled") == 6);
  }
}

TEST_CASE("verify") {
  auto r = run([](std::ostream& o) { return cli::cmd_verify(fixture("example_covering.json"), o); });
  REQUIRE(r.code == cli::kPass);
  auto j = io::parse_text(r.out);
  CHECK(j["covering"]["irredundant"] == true);
  CHECK(j["rsSize"] == 17);
  CHECK(j["failures"].empty());
  for (const auto& [k, v] : j["checks"].items()) CHECK_MESSAGE(v == true, k);

  r = run([](std::ostream& o) { return cli::cmd_verify(fixture("redundant_covering.json"), o); });
  REQUIRE(r.code == cli::kPass);
  j = io::parse_text(r.out);
  CHECK(j["covering"]["irredundant"] == false);
  CHECK(j["blocks"].size() == 1);
  CHECK(j["rsSize"] == 3);

  r = run([](std::ostream& o) { return cli::cmd_verify(fixture("nonlattice_tolerance.json"), o); });
  CHECK(r.code == cli::kPropertyFailure);
  j = io::parse_text(r.out);
  CHECK(j["rsLattice"] == false);
  CHECK(j.contains("notALattice"));
}

TEST_CASE("enumerate writes replayable witnesses") {
  const auto dir = (fs::temp_directory_path() / "roughkleene_test_witness").string();
  fs::remove_all(dir);
  EnumerationBounds b;
  b.universe_max = 5;
  b.covering_max = 3;
  b.lattice_max = 6;
  const auto r = run([&](std::ostream& o) { return cli::cmd_enumerate(b, dir, o); });
  REQUIRE(r.code == cli::kPass);
  const auto j = io::parse_text(r.out);
  CHECK(j["ok"] == true);
  const auto witness = dir + "/nonLatticeRs.json";
  REQUIRE(fs::exists(witness));
  const auto v = run([&](std::ostream& o) { return cli::cmd_verify(witness, o); });
  CHECK(v.code == cli::kPropertyFailure);
  CHECK(io::parse_text(v.out)["rsLattice"] == false);

  const auto again = run([&](std::ostream& o) { return cli::cmd_enumerate(b, {}, o); });
  CHECK(again.out == r.out);

  EnumerationBounds big;
  big.universe_max = 7;
  CHECK(run([&](std::ostream& o) { return cli::cmd_enumerate(big, {}, o); }).code == cli::kInputError);
}

TEST_CASE("render") {
  auto r = run([](std::ostream& o) { return cli::cmd_render(fixture("two_chain.json"), false, o); });
  REQUIRE(r.code == cli::kPass);
  CHECK(count(r.out, "xlabel=") == 2);
  CHECK(count(r.out, " -> ") == 1);

  r = run([](std::ostream& o) { return cli::cmd_render(fixture("example_jposet.json"), true, o); });
  REQUIRE(r.code == cli::kPass);
  CHECK(count(r.out, "xlabel=") == 17);
  CHECK(count(r.out, "style=filled") == 6);
  CHECK(count(r.out, "∼") == 17);

  r = run([](std::ostream& o) { return cli::cmd_render(fixture("example_covering.json"), false, o); });
  REQUIRE(r.code == cli::kPass);
  CHECK(count(r.out, "xlabel=") == 17);
  CHECK(count(r.out, "style=filled") == 6);
  const auto again = run([](std::ostream& o) { return cli::cmd_render(fixture("example_covering.json"), false, o); });
  CHECK(again.out == r.out);
}
