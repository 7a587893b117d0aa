#include "oodeval/dist_model.hpp"

#include "oodeval/error.hpp"
#include "oodeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace oodeval {

FitMethod parse_fit_method(std::string_view name)
{
    if (name == "kmeans") return FitMethod::Kmeans;
    if (name == "gmm") return FitMethod::Gmm;
    if (name == "ude") return FitMethod::Ude;
    throw Error(ErrorCode::Config, "unknown fit method '" + std::string(name) + "'");
}

std::string_view fit_method_name(FitMethod m)
{
    switch (m) {
    case FitMethod::Kmeans: return "kmeans";
    case FitMethod::Gmm: return "gmm";
    case FitMethod::Ude: return "ude";
    }
    return "?";
}

namespace {

double floored_sd(std::span<const double> values)
{
    if (values.size() < 2)
        return kSigmaFloor;
    return std::max(sample_sd(values), kSigmaFloor);
}

// Linear-interpolation percentile of a sorted sample. Mirror symmetric:
// percentile(-x, p) == -percentile(x, 1 - p).
double percentile(std::span<const double> sorted, double p)
{
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct Split {
    std::size_t n_low = 0; // sorted[0, n_low) form the low cluster
    double c_low = 0.0;
    double c_high = 0.0;
};

double range_mean(std::span<const double> sorted, std::size_t begin, std::size_t end)
{
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        s += sorted[i];
    return s / static_cast<double>(end - begin);
}

Split split_at(std::span<const double> sorted, std::size_t n_low)
{
    return {n_low, range_mean(sorted, 0, n_low), range_mean(sorted, n_low, sorted.size())};
}

double split_sse(std::span<const double> sorted, const Split& s)
{
    double sse = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double c = i < s.n_low ? s.c_low : s.c_high;
        sse += (sorted[i] - c) * (sorted[i] - c);
    }
    return sse;
}

// Points at or below the midpoint join the low cluster. Both clusters stay
// non-empty because each centroid lies inside the sample range.
std::size_t assign_low_count(std::span<const double> sorted, double c_low, double c_high)
{
    const double mid = 0.5 * (c_low + c_high);
    auto it = std::upper_bound(sorted.begin(), sorted.end(), mid);
    auto n_low = static_cast<std::size_t>(it - sorted.begin());
    return std::clamp<std::size_t>(n_low, 1, sorted.size() - 1);
}

// Exact 1-D two-means optimum over boundaries between distinct values.
Split best_contiguous_split(std::span<const double> sorted)
{
    const std::size_t n = sorted.size();
    const double centre = mean(sorted);
    std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = sorted[i] - centre;
        s1[i + 1] = s1[i] + v;
        s2[i + 1] = s2[i] + v * v;
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 1;
    for (std::size_t k = 1; k < n; ++k) {
        if (sorted[k] == sorted[k - 1])
            continue;
        const double left = s2[k] - s1[k] * s1[k] / static_cast<double>(k);
        const double rs1 = s1[n] - s1[k];
        const double right = (s2[n] - s2[k]) - rs1 * rs1 / static_cast<double>(n - k);
        if (left + right < best) {
            best = left + right;
            best_k = k;
        }
    }
    return split_at(sorted, best_k);
}

// Lloyd iterations from the given split until the assignment is stable.
Split lloyd(std::span<const double> sorted, Split s, int& iterations, std::vector<double>* trace)
{
    while (iterations < kKmeansMaxIter) {
        const std::size_t n_low = assign_low_count(sorted, s.c_low, s.c_high);
        ++iterations;
        const bool stable = n_low == s.n_low;
        s = split_at(sorted, n_low);
        if (trace)
            trace->push_back(split_sse(sorted, s));
        if (stable)
            break;
    }
    return s;
}

TwoComponentFit degenerate_fit(FitMethod method, double c, bool with_sigmas)
{
    TwoComponentFit fit;
    fit.method = method;
    fit.mu_ind = fit.mu_ood = c;
    if (with_sigmas) {
        fit.sigma_ind = fit.sigma_ood = kSigmaFloor;
    }
    fit.weight_ind = 0.5;
    fit.degenerate = true;
    return fit;
}

} // namespace

TwoComponentFit fit_kmeans2(std::span<const double> scores, std::uint64_t seed, std::vector<double>* sse_trace)
{
    if (scores.size() < 2)
        throw Error(ErrorCode::Input, "two-means needs at least two samples");
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        return degenerate_fit(FitMethod::Kmeans, sorted.front(), false);

    double c_low = percentile(sorted, 0.1);
    double c_high = percentile(sorted, 0.9);
    if (c_low == c_high) {
        // Heavy tie at the percentiles: replace one centroid by a seeded
        // draw among the samples that differ from it.
        std::vector<double> other;
        for (double v : sorted)
            if (v != c_low)
                other.push_back(v);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, other.size() - 1);
        const double v = other[pick(rng)];
        if (v < c_low)
            c_low = v;
        else
            c_high = v;
    }

    int iterations = 0;
    // n_low = 0 is never a valid assignment, so the first pass always counts
    // as a change.
    Split s = lloyd(sorted, Split{0, c_low, c_high}, iterations, sse_trace);
    const Split best = best_contiguous_split(sorted);
    const double tol = 1e-12 * std::max(1.0, split_sse(sorted, best));
    if (split_sse(sorted, best) < split_sse(sorted, s) - tol) {
        int more = 0;
        Split restarted = best;
        restarted.n_low = 0;
        s = lloyd(sorted, restarted, more, nullptr);
        if (split_sse(sorted, s) > split_sse(sorted, best))
            s = best;
        if (sse_trace)
            sse_trace->push_back(split_sse(sorted, s));
        iterations += more;
    }

    TwoComponentFit fit;
    fit.method = FitMethod::Kmeans;
    fit.mu_ind = s.c_high;
    fit.mu_ood = s.c_low;
    fit.weight_ind = static_cast<double>(sorted.size() - s.n_low) / static_cast<double>(sorted.size());
    fit.iterations = iterations;
    return fit;
}

namespace {

struct Mixture {
    double w[2];
    double mu[2];
    double var[2];
};

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double log_normal_pdf(double x, double mu, double var)
{
    const double d = x - mu;
    return -kLogSqrt2Pi - 0.5 * std::log(var) - 0.5 * d * d / var;
}

double log_likelihood(std::span<const double> xs, const Mixture& m)
{
    const double lw0 = std::log(m.w[0]);
    const double lw1 = std::log(m.w[1]);
    double ll = 0.0;
    for (double x : xs) {
        const double a = lw0 + log_normal_pdf(x, m.mu[0], m.var[0]);
        const double b = lw1 + log_normal_pdf(x, m.mu[1], m.var[1]);
        const double hi = std::max(a, b);
        ll += hi + std::log1p(std::exp(std::min(a, b) - hi));
    }
    return ll;
}

// One E+M step. Returns false when a component loses all responsibility.
bool em_step(std::span<const double> xs, Mixture& m)
{
    const double lw0 = std::log(m.w[0]);
    const double lw1 = std::log(m.w[1]);
    double n0 = 0.0, n1 = 0.0, s0 = 0.0, s1 = 0.0;
    std::vector<double> r1(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double a = lw0 + log_normal_pdf(xs[i], m.mu[0], m.var[0]);
        const double b = lw1 + log_normal_pdf(xs[i], m.mu[1], m.var[1]);
        // responsibility of component 1 = 1 / (1 + exp(a - b))
        const double r = 1.0 / (1.0 + std::exp(a - b));
        r1[i] = r;
        n0 += 1.0 - r;
        n1 += r;
        s0 += (1.0 - r) * xs[i];
        s1 += r * xs[i];
    }
    const double n = static_cast<double>(xs.size());
    if (n0 <= 1e-12 * n || n1 <= 1e-12 * n)
        return false;
    const double mu0 = s0 / n0;
    const double mu1 = s1 / n1;
    double v0 = 0.0, v1 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        v0 += (1.0 - r1[i]) * (xs[i] - mu0) * (xs[i] - mu0);
        v1 += r1[i] * (xs[i] - mu1) * (xs[i] - mu1);
    }
    const double floor_var = kSigmaFloor * kSigmaFloor;
    m.w[0] = n0 / n;
    m.w[1] = n1 / n;
    m.mu[0] = mu0;
    m.mu[1] = mu1;
    m.var[0] = std::max(v0 / n0, floor_var);
    m.var[1] = std::max(v1 / n1, floor_var);
    return true;
}

} // namespace

TwoComponentFit fit_gmm2(std::span<const double> scores, std::uint64_t seed, const GmmOptions& options,
                         std::vector<double>* loglik_trace)
{
    if (scores.size() < 4)
        throw Error(ErrorCode::Input, "a two-component mixture needs at least four samples");
    if (!(options.tol > 0.0) || options.max_iter < 0)
        throw Error(ErrorCode::Input, "invalid EM options");

    const TwoComponentFit init = fit_kmeans2(scores, seed);
    if (init.degenerate)
        return degenerate_fit(FitMethod::Gmm, init.mu_ind, true);

    // Initial components from the two-means partition.
    const double mid = 0.5 * (init.mu_ind + init.mu_ood);
    std::vector<double> low, high;
    for (double x : scores)
        (x <= mid ? low : high).push_back(x);
    const double n = static_cast<double>(scores.size());
    Mixture m{};
    m.w[0] = static_cast<double>(low.size()) / n;
    m.w[1] = static_cast<double>(high.size()) / n;
    m.mu[0] = mean(low);
    m.mu[1] = mean(high);
    m.var[0] = floored_sd(low) * floored_sd(low);
    m.var[1] = floored_sd(high) * floored_sd(high);

    double ll = log_likelihood(scores, m);
    if (loglik_trace)
        loglik_trace->push_back(ll);
    int iterations = 0;
    while (iterations < options.max_iter) {
        Mixture next = m;
        if (!em_step(scores, next))
            break;
        ++iterations;
        const double ll_next = log_likelihood(scores, next);
        if (loglik_trace)
            loglik_trace->push_back(ll_next);
        m = next;
        const double gain = ll_next - ll;
        ll = ll_next;
        if (gain < options.tol * std::max(std::abs(ll), std::numeric_limits<double>::min()))
            break;
    }

    const int hi = m.mu[1] >= m.mu[0] ? 1 : 0;
    const int lo = 1 - hi;
    TwoComponentFit fit;
    fit.method = FitMethod::Gmm;
    fit.mu_ind = m.mu[hi];
    fit.mu_ood = m.mu[lo];
    fit.sigma_ind = std::sqrt(m.var[hi]);
    fit.sigma_ood = std::sqrt(m.var[lo]);
    fit.weight_ind = m.w[hi];
    fit.iterations = iterations;
    return fit;
}

GaussianParams fit_val_gaussian(std::span<const double> val_scores)
{
    if (val_scores.size() < 2)
        throw Error(ErrorCode::Input, "validation set needs at least two samples");
    for (double v : val_scores)
        if (!std::isfinite(v))
            throw Error(ErrorCode::Input, "non-finite validation score");
    return {mean(val_scores), floored_sd(val_scores)};
}

namespace {

void check_val(const GaussianParams& val)
{
    if (!std::isfinite(val.mu) || !std::isfinite(val.sigma) || val.sigma < kSigmaFloor)
        throw Error(ErrorCode::Input, "invalid validation Gaussian");
}

void check_tau(double tau)
{
    if (!(tau > 0.0 && tau < 1.0))
        throw Error(ErrorCode::Input, "tau must lie in (0, 1)");
}

} // namespace

double ude_membership(double x, const GaussianParams& val)
{
    check_val(val);
    const double d = x - val.mu;
    return std::exp(-d * d / (2.0 * val.sigma * val.sigma));
}

double ude_lower_bound(const GaussianParams& val, double tau)
{
    check_val(val);
    check_tau(tau);
    return val.mu - val.sigma * std::sqrt(2.0 * std::log(1.0 / tau));
}

std::vector<bool> ude_assign(std::span<const double> scores, const GaussianParams& val, double tau)
{
    const double bound = ude_lower_bound(val, tau);
    std::vector<bool> ind(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        ind[i] = scores[i] >= bound;
    return ind;
}

TwoComponentFit fit_ude(std::span<const double> scores, const GaussianParams& val, double tau)
{
    if (scores.empty())
        throw Error(ErrorCode::Input, "UDE needs a non-empty sample");
    const auto assign = ude_assign(scores, val, tau);
    std::vector<double> ind, ood;
    for (std::size_t i = 0; i < scores.size(); ++i)
        (assign[i] ? ind : ood).push_back(scores[i]);

    TwoComponentFit fit;
    fit.method = FitMethod::Ude;
    fit.weight_ind = static_cast<double>(ind.size()) / static_cast<double>(scores.size());
    if (ind.empty() || ood.empty()) {
        fit.degenerate = true;
        fit.empty_subset = true;
    }
    if (ind.empty()) {
        fit.mu_ind = val.mu;
        fit.sigma_ind = val.sigma;
    } else {
        fit.mu_ind = mean(ind);
        fit.sigma_ind = floored_sd(ind);
    }
    if (ood.empty()) {
        fit.mu_ood = mean(scores);
        fit.sigma_ood = floored_sd(scores);
    } else {
        fit.mu_ood = mean(ood);
        fit.sigma_ood = floored_sd(ood);
    }
    return fit;
}

} // namespace oodeval
