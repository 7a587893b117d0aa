#pragma once

#include "oodeval/score_set.hpp"

#include <string>
#include <string_view>

namespace oodeval {

// Supervised detection metrics. IND is the positive class throughout and a
// sample is predicted IND when its score is strictly above the threshold.
// Every function requires labels with both classes (E_UNSUPPORTED_METRIC).

/// Probability that a random IND score beats a random OOD score, ties
/// counting one half. Rank-sum implementation, exact on the pair count.
double auroc(const ScoreSet& set);

/// FPR at the largest threshold t (observed score or -inf) with TPR(t) >= q.
double fpr_at_tpr(const ScoreSet& set, double q);

/// min over thresholds of 0.5 * (1 - TPR) + 0.5 * FPR.
double detection_error(const ScoreSet& set);

/// Area under the precision-recall curve, IND positive. Points are taken at
/// each distinct score (descending, ties grouped), integrated with the
/// trapezoid rule on recall from an anchor at recall 0 that carries the
/// precision of the top-ranked group.
double aupr(const ScoreSet& set);

struct TargetMetric {
    enum class Kind { FprAtTpr, Auroc, DetectionError, Aupr };
    Kind kind = Kind::FprAtTpr;
    double q = 0.95; // only meaningful for FprAtTpr

    static TargetMetric fpr_at_tpr(double q) { return {Kind::FprAtTpr, q}; }
    static TargetMetric auroc() { return {Kind::Auroc, 0.0}; }
    static TargetMetric detection_error() { return {Kind::DetectionError, 0.0}; }
    static TargetMetric aupr() { return {Kind::Aupr, 0.0}; }

    bool operator==(const TargetMetric&) const = default;
};

// "fpr@tpr:0.95", "auroc", "de", "aupr"
TargetMetric parse_target_metric(std::string_view text);
std::string target_metric_name(const TargetMetric& m);
// Short key as written to the model file ("fpr@tpr", "auroc", "de", "aupr").
std::string_view target_metric_key(TargetMetric::Kind kind);

/// Ground-truth value of `metric` on a labeled set, as a fraction in [0, 1].
double evaluate_metric(const ScoreSet& set, const TargetMetric& metric);

} // namespace oodeval
