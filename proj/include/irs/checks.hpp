// SPDX-License-Identifier: Apache-2.0
//
// Fast self-consistency checks between the simulator and the closed-form
// results; backs the `check` subcommand.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irs/channel.hpp"

namespace irs {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_consistency_checks(const SystemConfig& config, std::uint64_t seed);

}  // namespace irs
