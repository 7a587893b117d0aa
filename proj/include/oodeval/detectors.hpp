#pragma once

#include "oodeval/score_set.hpp"

#include <span>
#include <string_view>

namespace oodeval {

enum class Detector { Msp, OdinT, Energy, Mls };

inline constexpr double kDefaultOdinTemperature = 1000.0;

Detector parse_detector(std::string_view name);
std::string_view detector_name(Detector d);

// All detectors are oriented so that a larger value means more IND.
//   Msp    max softmax(l)
//   OdinT  max softmax(l / T)   (temperature scaling only, no input perturbation)
//   Energy T * logsumexp(l / T)
//   Mls    max logit
// `temperature` is ignored by Msp and Mls but must still be positive.
double detector_score(std::span<const double> logits, Detector method, double temperature = 1.0);

inline double detector_score(const LogitRow& row, Detector method, double temperature = 1.0)
{
    return detector_score(row.logits, method, temperature);
}

} // namespace oodeval
