#include "oodeval/detectors.hpp"

#include "oodeval/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oodeval {

Detector parse_detector(std::string_view name)
{
    if (name == "msp") return Detector::Msp;
    if (name == "odin_t") return Detector::OdinT;
    if (name == "energy") return Detector::Energy;
    if (name == "mls") return Detector::Mls;
    throw Error(ErrorCode::Config, "unknown detector '" + std::string(name) + "'");
}

std::string_view detector_name(Detector d)
{
    switch (d) {
    case Detector::Msp: return "msp";
    case Detector::OdinT: return "odin_t";
    case Detector::Energy: return "energy";
    case Detector::Mls: return "mls";
    }
    return "?";
}

namespace {

// sum_i exp((x_i - max) / t)
double shifted_exp_sum(std::span<const double> logits, double t, double max_logit)
{
    double acc = 0.0;
    for (double l : logits)
        acc += std::exp((l - max_logit) / t);
    return acc;
}

} // namespace

double detector_score(std::span<const double> logits, Detector method, double temperature)
{
    if (logits.size() < 2)
        throw Error(ErrorCode::Input, "a logit row needs at least two classes");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw Error(ErrorCode::Input, "temperature must be positive");
    for (double l : logits)
        if (!std::isfinite(l))
            throw Error(ErrorCode::Input, "non-finite logit");

    const double max_logit = *std::max_element(logits.begin(), logits.end());
    switch (method) {
    case Detector::Mls:
        return max_logit;
    case Detector::Msp:
        return 1.0 / shifted_exp_sum(logits, 1.0, max_logit);
    case Detector::OdinT:
        return 1.0 / shifted_exp_sum(logits, temperature, max_logit);
    case Detector::Energy:
        return max_logit + temperature * std::log(shifted_exp_sum(logits, temperature, max_logit));
    }
    throw Error(ErrorCode::Config, "unknown detector");
}

} // namespace oodeval
