#pragma once

#include "oodeval/gscore.hpp"
#include "oodeval/metrics.hpp"
#include "oodeval/suite.hpp"

#include <optional>
#include <vector>

namespace oodeval {

// Per-set work over a suite. Serial is the reference; Parallel spreads sets
// over OpenMP threads. Each set is processed by the same serial code in
// both modes, so results are bit-identical.
enum class Execution { Serial, Parallel };

std::vector<GscoreResult> suite_gscores(const MetaSuite& suite, const std::optional<GaussianParams>& val,
                                        const GscoreConfig& cfg, Execution exec = Execution::Parallel);

std::vector<double> suite_truths(const MetaSuite& suite, const TargetMetric& metric,
                                 Execution exec = Execution::Parallel);

} // namespace oodeval
