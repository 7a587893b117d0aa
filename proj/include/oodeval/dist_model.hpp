#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace oodeval {

// Lower bound on every fitted standard deviation, in score units.
inline constexpr double kSigmaFloor = 1e-6;

struct GaussianParams {
    double mu = 0.0;
    double sigma = 1.0;

    bool operator==(const GaussianParams&) const = default;
};

enum class FitMethod { Kmeans, Gmm, Ude };

FitMethod parse_fit_method(std::string_view name);
std::string_view fit_method_name(FitMethod m);

/// Two-component description of a score sample. The IND component is the
/// one with the larger mean. Kmeans fits carry no sigmas.
struct TwoComponentFit {
    FitMethod method = FitMethod::Kmeans;
    double mu_ind = 0.0;
    double mu_ood = 0.0;
    std::optional<double> sigma_ind;
    std::optional<double> sigma_ood;
    double weight_ind = 0.5;
    // Components collapsed (identical input, or an empty UDE subset).
    bool degenerate = false;
    // UDE only: one of the two subsets had no samples.
    bool empty_subset = false;
    int iterations = 0;
};

inline constexpr int kKmeansMaxIter = 300;

struct GmmOptions {
    double tol = 1e-8;  // relative log-likelihood improvement
    int max_iter = 200;
};

// 1-D two-means. Lloyd iterations start from the 10th/90th percentiles and
// stop at an assignment fixpoint (or kKmeansMaxIter). In one dimension the
// optimal partition is a contiguous split of the sorted sample; if Lloyd
// stalls in a worse local fixpoint it is restarted from that split.
// `sse_trace`, when given, receives the within-cluster SSE after every
// update step.
TwoComponentFit fit_kmeans2(std::span<const double> scores, std::uint64_t seed,
                            std::vector<double>* sse_trace = nullptr);

// Two-component 1-D Gaussian mixture by EM, initialised from fit_kmeans2.
// Variances are floored at kSigmaFloor^2. `loglik_trace` receives the
// log-likelihood at the initial parameters and after every EM step.
TwoComponentFit fit_gmm2(std::span<const double> scores, std::uint64_t seed, const GmmOptions& options = {},
                         std::vector<double>* loglik_trace = nullptr);

// Mean and n-1 standard deviation (floored) of validation IND scores.
GaussianParams fit_val_gaussian(std::span<const double> val_scores);

// exp(-(x - mu)^2 / (2 sigma^2)); 1 at the mean.
double ude_membership(double x, const GaussianParams& val);

// Score below which a sample's membership drops under tau on the low side:
// mu - sigma * sqrt(2 ln(1/tau)).
double ude_lower_bound(const GaussianParams& val, double tau);

// Unilateral split: a sample joins the IND subset when it is not below
// ude_lower_bound, i.e. its membership is at least tau or it lies above the
// validation mean. Each subset is then summarised by a single Gaussian.
TwoComponentFit fit_ude(std::span<const double> scores, const GaussianParams& val, double tau);

// Per-sample UDE assignment (true = IND subset) used by fit_ude.
std::vector<bool> ude_assign(std::span<const double> scores, const GaussianParams& val, double tau);

} // namespace oodeval
