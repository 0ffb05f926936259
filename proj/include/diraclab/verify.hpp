#pragma once

#include <string>
#include <vector>

#include "diraclab/runner.hpp"

namespace diraclab::verify {

using runner::Check;

// hodge, stokes, dirac, contact, infogeo, all
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Invariant battery on built-in small meshes, one row per invariant.
// Throws std::invalid_argument for an unknown suite.
std::vector<Check> run_suite(const std::string& name);

}  // namespace diraclab::verify
