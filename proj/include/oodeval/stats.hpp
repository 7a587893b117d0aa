#pragma once

#include <span>
#include <vector>

namespace oodeval {

// Product-moment correlation. Requires equal lengths >= 2; throws
// E_UNDEFINED_CORRELATION when either side is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson correlation of mid-ranks (ties share the mean rank).
double spearman(std::span<const double> xs, std::span<const double> ys);

double rmse(std::span<const double> predicted, std::span<const double> truth);

// 1-based mid-ranks.
std::vector<double> mid_ranks(std::span<const double> values);

double mean(std::span<const double> values);

// Sample standard deviation (n - 1 denominator). Requires n >= 2.
double sample_sd(std::span<const double> values);

} // namespace oodeval
