#pragma once

#include "oodeval/gscore.hpp"
#include "oodeval/metrics.hpp"
#include "oodeval/suite.hpp"
#include "oodeval/suite_kernels.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oodeval {

struct LinearFit {
    double theta1 = 0.0;
    double theta0 = 0.0;
    double loss = 0.0; // mean squared residual
};

// Ordinary least squares p = theta1 * g + theta0. Throws E_INPUT for fewer
// than two points and E_ILL_CONDITIONED when all g are equal.
LinearFit fit_regression(std::span<const double> gscores, std::span<const double> performance);

/// Gscore -> performance map. Performance is a fraction in [0, 1].
struct RegressionModel {
    double theta1 = 0.0;
    double theta0 = 0.0;
    GscoreConfig cfg{};
    TargetMetric target{};
    double train_loss = 0.0;
    std::size_t n_train = 0;
    // Ids of the training sets; kept in memory for leakage checks, not serialised.
    std::vector<std::string> train_ids;
};

// Clamp edge of tau's open interval.
inline constexpr double kTauEpsilon = 1e-6;

struct TauEvaluation {
    double tau = 0.0;
    double loss = 0.0; // +inf when the regression could not be fitted
};

struct TauSearch {
    double tau = 0.0;
    double loss = 0.0;
    std::vector<TauEvaluation> scanned; // every distinct tau evaluated, in order
};

// Two-stage grid search minimising loss(tau): tenths over [0, 1], then
// hundredths over [best - 0.5, best + 0.5], grid points clamped into
// [kTauEpsilon, 1 - kTauEpsilon]. Ties go to the smaller tau. Throws
// E_TUNING_FAILED when every loss is infinite.
TauSearch search_tau(const std::function<double(double)>& loss);

struct TuneResult {
    double tau = 0.0;
    RegressionModel model;
    std::vector<TauEvaluation> scanned;
};

// Fits one model per tau on the labeled training suite and keeps the one with
// the smallest training loss. Kmeans has no tau and is fitted once. GMM fits
// do not depend on tau, so its scan is flat and resolves to the smallest tau.
TuneResult tune_tau(const MetaSuite& train, const std::optional<GaussianParams>& val, const GscoreConfig& base,
                    const TargetMetric& target, Execution exec = Execution::Parallel);

// Fits the regression at cfg.tau without searching.
RegressionModel train_model(const MetaSuite& train, const std::optional<GaussianParams>& val,
                            const GscoreConfig& cfg, const TargetMetric& target,
                            Execution exec = Execution::Parallel);

struct Prediction {
    double gscore = 0.0;
    bool degenerate = false;
    double value = 0.0; // clamped to [0, 1]
};

Prediction predict_detail(const RegressionModel& model, std::span<const double> scores,
                          const std::optional<GaussianParams>& val);

inline double predict(const RegressionModel& model, std::span<const double> scores,
                      const std::optional<GaussianParams>& val)
{
    return predict_detail(model, scores, val).value;
}

struct SetRecord {
    std::string id;
    double gscore = 0.0;
    bool degenerate = false;
    // Percent scale, as written to reports.
    std::optional<double> truth_pct;
    double predicted_pct = 0.0;

    bool operator==(const SetRecord&) const = default;
};

/// Per-set predictions with an RMSE summary (percentage points) and the
/// Gscore-vs-truth correlations over the suite.
struct MetricReport {
    TargetMetric metric;
    std::vector<SetRecord> records;
    double rmse_pct = 0.0;
    std::optional<double> pearson;  // absent when Gscore or truth is constant
    std::optional<double> spearman;

    bool operator==(const MetricReport&) const = default;
};

MetricReport evaluate_suite(const RegressionModel& model, const MetaSuite& test,
                            const std::optional<GaussianParams>& val, std::span<const std::string> train_ids,
                            Execution exec = Execution::Parallel);

struct SuiteCorrelation {
    double tau = 0.0;
    double pearson = 0.0;
    double spearman = 0.0;
    std::vector<double> gscores;
    std::vector<double> truths;
};

// Gscore-vs-truth correlation over a labeled suite, tuning tau first when
// `tune` is set.
SuiteCorrelation correlate_suite(const MetaSuite& suite, const std::optional<GaussianParams>& val,
                                 const GscoreConfig& cfg, const TargetMetric& target, bool tune,
                                 Execution exec = Execution::Parallel);

} // namespace oodeval
