#include "oodeval/meta_regress.hpp"

#include "oodeval/error.hpp"
#include "oodeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace oodeval {

LinearFit fit_regression(std::span<const double> gscores, std::span<const double> performance)
{
    if (gscores.size() != performance.size())
        throw Error(ErrorCode::Input, "gscore and performance counts differ");
    if (gscores.size() < 2)
        throw Error(ErrorCode::Input, "regression needs at least two points");
    const double mx = mean(gscores);
    const double my = mean(performance);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < gscores.size(); ++i) {
        sxx += (gscores[i] - mx) * (gscores[i] - mx);
        sxy += (gscores[i] - mx) * (performance[i] - my);
    }
    if (!(sxx > 0.0) || !std::isfinite(sxx))
        throw Error(ErrorCode::IllConditioned, "all gscores are equal; the regression slope is undefined");
    LinearFit fit;
    fit.theta1 = sxy / sxx;
    fit.theta0 = my - fit.theta1 * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < gscores.size(); ++i) {
        const double r = performance[i] - (fit.theta1 * gscores[i] + fit.theta0);
        ss += r * r;
    }
    fit.loss = ss / static_cast<double>(gscores.size());
    return fit;
}

TauSearch search_tau(const std::function<double(double)>& loss)
{
    std::map<double, double> seen;
    auto evaluate = [&](int numerator, int denominator) {
        const double raw = static_cast<double>(numerator) / static_cast<double>(denominator);
        const double tau = std::clamp(raw, kTauEpsilon, 1.0 - kTauEpsilon);
        if (!seen.contains(tau)) {
            const double l = loss(tau);
            seen.emplace(tau, std::isnan(l) ? std::numeric_limits<double>::infinity() : l);
        }
    };
    auto best_so_far = [&] {
        // std::map iterates by ascending tau, so strict < keeps the smallest tau on ties.
        auto best = seen.begin();
        for (auto it = seen.begin(); it != seen.end(); ++it)
            if (it->second < best->second)
                best = it;
        return *best;
    };

    for (int k = 0; k <= 10; ++k)
        evaluate(k, 10);
    auto [coarse_tau, coarse_loss] = best_so_far();
    if (std::isinf(coarse_loss))
        throw Error(ErrorCode::TuningFailed, "no tau on the coarse grid produced a usable regression");

    // Window around the unclamped coarse grid point.
    const double centre = std::round(coarse_tau * 10.0) / 10.0;
    for (int k = 0; k <= 100; ++k) {
        const double raw = k / 100.0;
        if (raw >= centre - 0.5 - 1e-9 && raw <= centre + 0.5 + 1e-9)
            evaluate(k, 100);
    }
    auto [tau, l] = best_so_far();

    TauSearch out;
    out.tau = tau;
    out.loss = l;
    for (const auto& [t, v] : seen)
        out.scanned.push_back({t, v});
    return out;
}

namespace {

std::vector<double> gscore_values(const std::vector<GscoreResult>& results)
{
    std::vector<double> out;
    out.reserve(results.size());
    for (const auto& r : results)
        out.push_back(r.gscore);
    return out;
}

bool all_equal(std::span<const double> v)
{
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

RegressionModel make_model(const LinearFit& fit, const GscoreConfig& cfg, const TargetMetric& target,
                           const MetaSuite& train)
{
    RegressionModel m;
    m.theta1 = fit.theta1;
    m.theta0 = fit.theta0;
    m.cfg = cfg;
    m.target = target;
    m.train_loss = fit.loss;
    m.n_train = train.size();
    m.train_ids = train.ids();
    return m;
}

void require_labeled(const MetaSuite& suite)
{
    if (!suite.labeled())
        throw Error(ErrorCode::UnsupportedMetric, "training needs a labeled suite");
}

} // namespace

RegressionModel train_model(const MetaSuite& train, const std::optional<GaussianParams>& val,
                            const GscoreConfig& cfg, const TargetMetric& target, Execution exec)
{
    require_labeled(train);
    const auto truths = suite_truths(train, target, exec);
    const auto gscores = gscore_values(suite_gscores(train, val, cfg, exec));
    return make_model(fit_regression(gscores, truths), cfg, target, train);
}

TuneResult tune_tau(const MetaSuite& train, const std::optional<GaussianParams>& val, const GscoreConfig& base,
                    const TargetMetric& target, Execution exec)
{
    require_labeled(train);
    base.validate();
    if (train.size() < 2)
        throw Error(ErrorCode::Input, "tuning needs at least two training sets");

    TuneResult out;
    if (base.method == FitMethod::Kmeans) {
        out.model = train_model(train, val, base, target, exec);
        out.tau = base.tau;
        return out;
    }

    const auto truths = suite_truths(train, target, exec);
    std::map<double, LinearFit> fits;
    std::optional<std::vector<double>> tau_free_gscores;
    if (base.method == FitMethod::Gmm)
        tau_free_gscores = gscore_values(suite_gscores(train, val, base, exec));

    auto loss = [&](double tau) {
        std::vector<double> g;
        if (tau_free_gscores) {
            g = *tau_free_gscores;
        } else {
            GscoreConfig cfg = base;
            cfg.tau = tau;
            g = gscore_values(suite_gscores(train, val, cfg, exec));
        }
        if (all_equal(g))
            return std::numeric_limits<double>::infinity();
        const LinearFit fit = fit_regression(g, truths);
        fits[tau] = fit;
        return fit.loss;
    };

    TauSearch search;
    try {
        search = search_tau(loss);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::TuningFailed)
            throw Error(ErrorCode::TuningFailed, "every tau gave degenerate or constant gscores");
        throw;
    }

    GscoreConfig cfg = base;
    cfg.tau = search.tau;
    out.tau = search.tau;
    out.model = make_model(fits.at(search.tau), cfg, target, train);
    out.scanned = std::move(search.scanned);
    return out;
}

Prediction predict_detail(const RegressionModel& model, std::span<const double> scores,
                          const std::optional<GaussianParams>& val)
{
    if (model.cfg.method == FitMethod::Ude && !val)
        throw Error(ErrorCode::Config, "this model uses UDE and needs validation scores");
    const GscoreResult g = compute_gscore(scores, val, model.cfg);
    Prediction p;
    p.gscore = g.gscore;
    p.degenerate = g.degenerate;
    p.value = std::clamp(model.theta1 * g.gscore + model.theta0, 0.0, 1.0);
    return p;
}

MetricReport evaluate_suite(const RegressionModel& model, const MetaSuite& test,
                            const std::optional<GaussianParams>& val, std::span<const std::string> train_ids,
                            Execution exec)
{
    require_labeled(test);
    require_disjoint(train_ids, test);
    if (model.cfg.method == FitMethod::Ude && !val)
        throw Error(ErrorCode::Config, "this model uses UDE and needs validation scores");

    const auto truths = suite_truths(test, model.target, exec);
    const auto results = suite_gscores(test, val, model.cfg, exec);

    MetricReport report;
    report.metric = model.target;
    std::vector<double> pred_pct, truth_pct, g;
    for (std::size_t i = 0; i < test.size(); ++i) {
        SetRecord r;
        r.id = test[i].id();
        r.gscore = results[i].gscore;
        r.degenerate = results[i].degenerate;
        r.truth_pct = 100.0 * truths[i];
        r.predicted_pct = 100.0 * std::clamp(model.theta1 * r.gscore + model.theta0, 0.0, 1.0);
        pred_pct.push_back(r.predicted_pct);
        truth_pct.push_back(*r.truth_pct);
        g.push_back(r.gscore);
        report.records.push_back(std::move(r));
    }
    if (!report.records.empty())
        report.rmse_pct = rmse(pred_pct, truth_pct);
    if (g.size() >= 2 && !all_equal(g) && !all_equal(truths)) {
        report.pearson = pearson(g, truths);
        report.spearman = spearman(g, truths);
    }
    return report;
}

SuiteCorrelation correlate_suite(const MetaSuite& suite, const std::optional<GaussianParams>& val,
                                 const GscoreConfig& cfg, const TargetMetric& target, bool tune, Execution exec)
{
    require_labeled(suite);
    GscoreConfig used = cfg;
    if (tune && cfg.method != FitMethod::Kmeans)
        used.tau = tune_tau(suite, val, cfg, target, exec).tau;

    SuiteCorrelation out;
    out.tau = used.tau;
    out.truths = suite_truths(suite, target, exec);
    out.gscores = gscore_values(suite_gscores(suite, val, used, exec));
    out.pearson = pearson(out.gscores, out.truths);
    out.spearman = spearman(out.gscores, out.truths);
    return out;
}

} // namespace oodeval
