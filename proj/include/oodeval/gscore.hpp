#pragma once

#include "oodeval/dist_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace oodeval {

enum class Distance { L2, KlIndOod, KlOodInd, Wasserstein };

Distance parse_distance(std::string_view name);   // l2, kl, kl-rev, wasserstein
std::string_view distance_name(Distance d);

// Default UDE threshold when none has been tuned.
inline constexpr double kDefaultTau = 0.99;

struct GscoreConfig {
    FitMethod method = FitMethod::Ude;
    Distance distance = Distance::Wasserstein;
    double tau = kDefaultTau;  // UDE split threshold; carried but unused by GMM and Kmeans
    std::uint64_t seed = 0;
    GmmOptions gmm{};

    // Throws E_CONFIG for Kmeans paired with anything but L2.
    void validate() const;
};

/// |mu_ind - mu_ood|
double l2_distance(const TwoComponentFit& fit);

/// log(s1/s2) + (s2^2 + (m1 - m2)^2) / (2 s1^2) - 1/2 with (m1, s1) the IND
/// component for KlIndOod and the OOD component for KlOodInd.
/// Throws E_UNSUPPORTED_DISTANCE on fits without sigmas.
double kl_distance(const TwoComponentFit& fit, Distance direction);

/// (mu_ind - mu_ood)^2 + (sigma_ind - sigma_ood)^2, the squared 2-Wasserstein
/// distance between the two Gaussians.
double wasserstein_distance(const TwoComponentFit& fit);

double distance_of(const TwoComponentFit& fit, Distance d);

struct GscoreResult {
    double gscore = 0.0;
    bool degenerate = false;
    TwoComponentFit fit;
};

// Fit per cfg.method, then measure per cfg.distance. Degenerate fits score 0.
// `val` is required for UDE (E_CONFIG otherwise).
GscoreResult compute_gscore(std::span<const double> scores, const std::optional<GaussianParams>& val,
                            const GscoreConfig& cfg);

TwoComponentFit fit_two_components(std::span<const double> scores, const std::optional<GaussianParams>& val,
                                   const GscoreConfig& cfg);

} // namespace oodeval
