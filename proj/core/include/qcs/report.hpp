#pragma once

#include <string>

#include "qcs/config.hpp"

namespace qcs {

// Consolidated witness report: planner certificates, straightened component
// table, spherical-diameter witnesses, and the pinned tolerances.  The
// timestamp is isolated in its own field so that reports are otherwise
// byte-identical across runs.
std::string build_report(const RunConfig& cfg, bool with_timestamp = true);

}  // namespace qcs
