#pragma once

#include "twisted_cli/config.hpp"
#include "twisted_cli/report.hpp"

namespace twisted::cli {

/// Executes the configured experiment. Independent per-alpha work is spread
/// over `threads` workers; the report is assembled in input order.
Report run(const ExperimentConfig& config, unsigned threads = 1);

}  // namespace twisted::cli
