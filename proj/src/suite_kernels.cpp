#include "oodeval/suite_kernels.hpp"

#include "oodeval/parallel.hpp"

namespace oodeval {

std::vector<GscoreResult> suite_gscores(const MetaSuite& suite, const std::optional<GaussianParams>& val,
                                        const GscoreConfig& cfg, Execution exec)
{
    cfg.validate();
    std::vector<GscoreResult> out(suite.size());
    detail::for_each_index(suite.size(), exec == Execution::Parallel, [&](std::size_t i) {
        out[i] = compute_gscore(suite[i].scores(), val, cfg);
    });
    return out;
}

std::vector<double> suite_truths(const MetaSuite& suite, const TargetMetric& metric, Execution exec)
{
    std::vector<double> out(suite.size());
    detail::for_each_index(suite.size(), exec == Execution::Parallel, [&](std::size_t i) {
        out[i] = evaluate_metric(suite[i], metric);
    });
    return out;
}

} // namespace oodeval
