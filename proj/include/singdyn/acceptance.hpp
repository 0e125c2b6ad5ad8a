#pragma once

#include <ostream>
#include <string>

namespace singdyn {

/// Built-in acceptance suite: runs every criterion at its pinned tolerance
/// and prints one PASS/FAIL line per criterion. `scenarios_dir` must hold the
/// bundled scenario files (used by the determinism criterion). Returns true
/// when all criteria pass.
bool run_acceptance(std::ostream& os, const std::string& scenarios_dir = "scenarios");

}  // namespace singdyn
