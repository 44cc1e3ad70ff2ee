#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "roughkleene/enumerate.hpp"

namespace rk::cli {

/// Exit codes shared by every command.
enum Exit : int { kPass = 0, kPropertyFailure = 1, kInputError = 2 };

/// Diagnostics for a lattice (optionally with ∼) or a J-poset with g.
int cmd_check(const std::string& path, std::ostream& out);

/// Representation bundle; with `dot_dir`, also algebra.dot and rs.dot.
int cmd_represent(const std::string& path, const std::optional<std::string>& dot_dir, std::ostream& out);

/// Rough-set checks for a tolerance or a covering.
int cmd_verify(const std::string& path, std::ostream& out);

/// Sweep; failing properties and search hits get `<dir>/<property>.json`.
int cmd_enumerate(const EnumerationBounds& bounds, const std::optional<std::string>& witness_dir, std::ostream& out);

/// DOT of a lattice, J-poset algebra, or the RS of a tolerance, covering
/// or bundle.
int cmd_render(const std::string& path, bool show_neg, std::ostream& out);

/// Runs a command, mapping input errors to 2 and assertion failures to 1
/// with a one-line message on `err`.
int guarded(const std::function<int()>& f, std::ostream& err);

}  // namespace rk::cli
