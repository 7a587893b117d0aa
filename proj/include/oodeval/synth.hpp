#pragma once

#include "oodeval/score_set.hpp"
#include "oodeval/suite.hpp"
#include "oodeval/suite_kernels.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oodeval {

// GAUSSIAN draws scores directly. LOGIT_NORMAL draws a latent Gaussian and
// squashes it through the logistic function, so scores live in (0, 1); its
// mu/sigma fields are latent (logit-space) parameters.
enum class Family { Gaussian, LogitNormal };

Family parse_family(std::string_view name);
std::string_view family_name(Family f);

struct SynthSpec {
    std::string id;
    Family family = Family::Gaussian;
    double mu_ind = 0.0;
    double sigma_ind = 1.0;
    double mu_ood = 0.0;
    double sigma_ood = 1.0;
    std::size_t n_ind = 1;
    std::size_t n_ood = 1;
    std::uint64_t seed = 0;

    void validate() const;
    bool operator==(const SynthSpec&) const = default;
};

// n_ind IND draws followed by n_ood OOD draws, labeled. Deterministic in seed.
ScoreSet gen_score_set(const SynthSpec& spec);

// Unlabeled draws from one component (the validation IND sample).
std::vector<double> gen_component(Family family, double mu, double sigma, std::size_t n, std::uint64_t seed);

// Population AUROC of two Gaussians (also of their logistic images):
// Phi((mu_ind - mu_ood) / sqrt(sigma_ind^2 + sigma_ood^2)).
double gaussian_auroc(double mu_ind, double sigma_ind, double mu_ood, double sigma_ood);

struct SuiteSpec {
    std::uint64_t seed = 0;
    std::size_t n_train = 150;
    std::size_t n_test = 50;
    // Target AUROC interval for the generated sets, inside (0.5, 1].
    double auroc_lo = 0.55;
    double auroc_hi = 1.0;
    Family family = Family::LogitNormal;
    // IND component shared by every set (and by the validation sample).
    double mu_ind = 4.0;
    double sigma_ind = 1.0;
    // Per-set multiplicative jitter on sigma_ind is drawn from
    // [1 - sigma_ind_jitter, 1 + sigma_ind_jitter].
    double sigma_ind_jitter = 0.05;
    // OOD spread drawn uniformly from [sigma_ood_lo, sigma_ood_hi].
    double sigma_ood_lo = 0.8;
    double sigma_ood_hi = 1.6;
    std::size_t n_ind = 1000;
    std::size_t n_ood = 1000;
    // Per-side counts are scaled by a factor in [1 - count_jitter, 1 + count_jitter].
    double count_jitter = 0.1;
    std::size_t val_size = 3000;

    void validate() const;
};

struct SplitSpecs {
    std::vector<SynthSpec> train;
    std::vector<SynthSpec> test;
};

// Per-set generator parameters; ids are "train-NNN" / "test-NNN".
SplitSpecs plan_suite(const SuiteSpec& spec);

std::vector<ScoreSet> generate_sets(std::span<const SynthSpec> specs, Execution exec = Execution::Parallel);

struct GeneratedSuite {
    MetaSuite train;
    MetaSuite test;
    SplitSpecs specs;
};

GeneratedSuite gen_suite(const SuiteSpec& spec, Execution exec = Execution::Parallel);

// Validation IND scores drawn from the suite's shared IND component.
std::vector<double> gen_validation(const SuiteSpec& spec);

struct Ratio {
    std::size_t ind = 1;
    std::size_t ood = 1;

    std::string label() const;
};

Ratio parse_ratio(std::string_view text); // "1:100"

// Down-sample every set of a (roughly) 1:1 suite to IND:OOD = ratio by
// shrinking the majority side. Throws E_INPUT if a side would drop below 2.
MetaSuite downsample_ratio(const MetaSuite& base, Ratio ratio, std::uint64_t seed);

// Down-sample every set to `total` samples split evenly between classes.
MetaSuite downsample_size(const MetaSuite& base, std::size_t total, std::uint64_t seed);

// Each set independently keeps a uniform draw from [min_side, N] samples per
// side (N = that side's size; sides already below min_side are kept whole).
MetaSuite downsample_random_sizes(const MetaSuite& base, std::uint64_t seed, std::size_t min_side = 100);

// Keep `n_ind` IND and `n_ood` OOD samples chosen uniformly without
// replacement; original order is preserved.
ScoreSet downsample_set(const ScoreSet& set, std::size_t n_ind, std::size_t n_ood, std::uint64_t seed);

struct SweepCell {
    std::string axis;  // "ratio" or "size"
    std::string label; // "1:10", "200", ...
    MetaSuite suite;
};

std::vector<SweepCell> ratio_size_sweep(const MetaSuite& base, std::span<const Ratio> ratios,
                                        std::span<const std::size_t> sizes, std::uint64_t seed);

} // namespace oodeval
