#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "roughkleene/commands.hpp"
#include "roughkleene/error.hpp"

int main(int argc, char** argv) {
  using namespace rk::cli;
  CLI::App app{"Rough-set Kleene algebras: checks, representation and enumeration"};
  app.require_subcommand(1);

  std::string file;
  std::string dot_dir, witness_dir;
  bool show_neg = false;
  rk::EnumerationBounds bounds;

  auto* check = app.add_subcommand("check", "Diagnose a lattice or J-poset algebra");
  check->add_option("file", file, "Input JSON")->required();

  auto* represent = app.add_subcommand("represent", "Build the rough-set representation bundle");
  represent->add_option("file", file, "Input JSON")->required();
  represent->add_option("--dot", dot_dir, "Directory for algebra.dot and rs.dot");

  auto* verify = app.add_subcommand("verify", "Check a tolerance or covering");
  verify->add_option("file", file, "Input JSON")->required();

  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive sweeps over small instances");
  enumerate->add_option("--universe-max", bounds.universe_max, "Largest universe for tolerances and equivalences");
  enumerate->add_option("--covering-max", bounds.covering_max, "Largest universe for coverings");
  enumerate->add_option("--lattice-max", bounds.lattice_max, "Largest lattice for De Morgan structures");
  enumerate->add_flag("--canonical", bounds.canonical, "Sweep tolerances up to isomorphism");
  enumerate->add_option("--witness-dir", witness_dir, "Directory for witness files");
  enumerate->add_flag("--force", bounds.force, "Allow bounds above the caps");

  auto* render = app.add_subcommand("render", "Hasse diagram in DOT");
  render->add_option("file", file, "Input JSON")->required();
  render->add_flag("--neg", show_neg, "Label nodes with their negation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::string>(s); };
  return guarded(
      [&]() -> int {
        if (*check) return cmd_check(file, std::cout);
        if (*represent) return cmd_represent(file, opt(dot_dir), std::cout);
        if (*verify) return cmd_verify(file, std::cout);
        if (*render) return cmd_render(file, show_neg, std::cout);
        if (bounds.covering_max > bounds.universe_max && !enumerate->count("--covering-max"))
          bounds.covering_max = bounds.universe_max;
        return cmd_enumerate(bounds, opt(witness_dir), std::cout);
      },
      std::cerr);
}
