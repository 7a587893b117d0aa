#include "oodeval/stats.hpp"

#include "oodeval/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oodeval {

namespace {

void check_pair(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw Error(ErrorCode::Input, "sequences differ in length");
    if (xs.size() < 2)
        throw Error(ErrorCode::Input, "need at least two points");
}

} // namespace

double mean(std::span<const double> values)
{
    if (values.empty())
        throw Error(ErrorCode::Input, "mean of an empty sequence");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values)
{
    if (values.size() < 2)
        throw Error(ErrorCode::Input, "standard deviation needs at least two values");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values)
        ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double pearson(std::span<const double> xs, std::span<const double> ys)
{
    check_pair(xs, ys);
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error(ErrorCode::UndefinedCorrelation, "correlation is undefined for a constant sequence");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> mid_ranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t a = 0; a < order.size();) {
        std::size_t b = a;
        while (b < order.size() && values[order[b]] == values[order[a]])
            ++b;
        const double r = 0.5 * static_cast<double>(a + 1 + b);
        for (std::size_t k = a; k < b; ++k)
            ranks[order[k]] = r;
        a = b;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys)
{
    check_pair(xs, ys);
    const auto rx = mid_ranks(xs);
    const auto ry = mid_ranks(ys);
    return pearson(rx, ry);
}

double rmse(std::span<const double> predicted, std::span<const double> truth)
{
    if (predicted.size() != truth.size())
        throw Error(ErrorCode::Input, "sequences differ in length");
    if (predicted.empty())
        throw Error(ErrorCode::Input, "rmse of an empty sequence");
    double ss = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        ss += (predicted[i] - truth[i]) * (predicted[i] - truth[i]);
    return std::sqrt(ss / static_cast<double>(predicted.size()));
}

} // namespace oodeval
