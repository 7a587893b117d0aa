#include "oodeval/metrics.hpp"

#include "oodeval/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oodeval {

namespace {

struct Counts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
};

// Cumulative (tp, fp) after admitting the top j tie groups, j = 0..m, where
// groups are distinct scores in descending order. Entry j is the confusion
// count for the threshold "s > v_{j+1}" (and -inf for j = m).
std::vector<Counts> cumulative_counts(const ScoreSet& set)
{
    auto scores = set.scores();
    auto labels = set.labels();
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<Counts> out{Counts{}};
    Counts running;
    for (std::size_t i = 0; i < order.size();) {
        const double v = scores[order[i]];
        for (; i < order.size() && scores[order[i]] == v; ++i) {
            if (labels[order[i]] == Label::Ind)
                ++running.tp;
            else
                ++running.fp;
        }
        out.push_back(running);
    }
    return out;
}

} // namespace

double auroc(const ScoreSet& set)
{
    set.require_both_classes();
    auto scores = set.scores();
    auto labels = set.labels();
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Doubled mid-ranks are integers: a tie group at 0-based positions [a, b)
    // has mid-rank (a + 1 + b) / 2.
    std::int64_t doubled_rank_sum = 0;
    for (std::size_t a = 0; a < order.size();) {
        std::size_t b = a;
        while (b < order.size() && scores[order[b]] == scores[order[a]])
            ++b;
        const auto doubled_rank = static_cast<std::int64_t>(a + 1 + b);
        for (std::size_t k = a; k < b; ++k)
            if (labels[order[k]] == Label::Ind)
                doubled_rank_sum += doubled_rank;
        a = b;
    }
    const auto n_ind = static_cast<std::int64_t>(set.count(Label::Ind));
    const auto n_ood = static_cast<std::int64_t>(set.count(Label::Ood));
    const std::int64_t doubled_u = doubled_rank_sum - n_ind * (n_ind + 1);
    return static_cast<double>(doubled_u) / (2.0 * static_cast<double>(n_ind) * static_cast<double>(n_ood));
}

double fpr_at_tpr(const ScoreSet& set, double q)
{
    if (!(q > 0.0 && q < 1.0))
        throw Error(ErrorCode::Input, "TPR level must lie in (0, 1)");
    set.require_both_classes();
    const auto n_ind = static_cast<double>(set.count(Label::Ind));
    const auto n_ood = static_cast<double>(set.count(Label::Ood));
    // TPR is non-decreasing in j, so the first hit is the largest threshold.
    for (const Counts& c : cumulative_counts(set)) {
        if (static_cast<double>(c.tp) / n_ind >= q)
            return static_cast<double>(c.fp) / n_ood;
    }
    return 1.0; // unreachable: j = m has TPR 1
}

double detection_error(const ScoreSet& set)
{
    set.require_both_classes();
    const auto n_ind = static_cast<double>(set.count(Label::Ind));
    const auto n_ood = static_cast<double>(set.count(Label::Ood));
    double best = 1.0;
    for (const Counts& c : cumulative_counts(set)) {
        const double tpr = static_cast<double>(c.tp) / n_ind;
        const double fpr = static_cast<double>(c.fp) / n_ood;
        best = std::min(best, 0.5 * (1.0 - tpr) + 0.5 * fpr);
    }
    return best;
}

double aupr(const ScoreSet& set)
{
    set.require_both_classes();
    const auto n_ind = static_cast<double>(set.count(Label::Ind));
    const auto counts = cumulative_counts(set);

    auto precision = [](const Counts& c) {
        return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    };
    double prev_recall = 0.0;
    double prev_precision = precision(counts[1]);
    double area = 0.0;
    for (std::size_t j = 1; j < counts.size(); ++j) {
        const double r = static_cast<double>(counts[j].tp) / n_ind;
        const double p = precision(counts[j]);
        area += (r - prev_recall) * (p + prev_precision) * 0.5;
        prev_recall = r;
        prev_precision = p;
    }
    return area;
}

TargetMetric parse_target_metric(std::string_view text)
{
    if (text == "auroc") return TargetMetric::auroc();
    if (text == "de") return TargetMetric::detection_error();
    if (text == "aupr") return TargetMetric::aupr();
    constexpr std::string_view prefix = "fpr@tpr:";
    if (text.starts_with(prefix)) {
        auto rest = text.substr(prefix.size());
        double q = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), q);
        if (ec == std::errc{} && ptr == rest.data() + rest.size() && q > 0.0 && q < 1.0)
            return TargetMetric::fpr_at_tpr(q);
    }
    throw Error(ErrorCode::UnsupportedMetric, "unknown target metric '" + std::string(text) + "'");
}

std::string_view target_metric_key(TargetMetric::Kind kind)
{
    switch (kind) {
    case TargetMetric::Kind::FprAtTpr: return "fpr@tpr";
    case TargetMetric::Kind::Auroc: return "auroc";
    case TargetMetric::Kind::DetectionError: return "de";
    case TargetMetric::Kind::Aupr: return "aupr";
    }
    return "?";
}

std::string target_metric_name(const TargetMetric& m)
{
    std::string out(target_metric_key(m.kind));
    if (m.kind == TargetMetric::Kind::FprAtTpr) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, m.q);
        out += ':';
        out.append(buf, ptr);
    }
    return out;
}

double evaluate_metric(const ScoreSet& set, const TargetMetric& metric)
{
    switch (metric.kind) {
    case TargetMetric::Kind::FprAtTpr: return fpr_at_tpr(set, metric.q);
    case TargetMetric::Kind::Auroc: return auroc(set);
    case TargetMetric::Kind::DetectionError: return detection_error(set);
    case TargetMetric::Kind::Aupr: return aupr(set);
    }
    throw Error(ErrorCode::Config, "unknown target metric");
}

} // namespace oodeval
