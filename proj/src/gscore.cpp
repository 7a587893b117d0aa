#include "oodeval/gscore.hpp"

#include "oodeval/error.hpp"

#include <cmath>
#include <string>

namespace oodeval {

Distance parse_distance(std::string_view name)
{
    if (name == "l2") return Distance::L2;
    if (name == "kl") return Distance::KlIndOod;
    if (name == "kl-rev") return Distance::KlOodInd;
    if (name == "wasserstein") return Distance::Wasserstein;
    throw Error(ErrorCode::Config, "unknown distance '" + std::string(name) + "'");
}

std::string_view distance_name(Distance d)
{
    switch (d) {
    case Distance::L2: return "l2";
    case Distance::KlIndOod: return "kl";
    case Distance::KlOodInd: return "kl-rev";
    case Distance::Wasserstein: return "wasserstein";
    }
    return "?";
}

void GscoreConfig::validate() const
{
    if (method == FitMethod::Kmeans && distance != Distance::L2)
        throw Error(ErrorCode::Config, "kmeans yields no sigmas and only pairs with the l2 distance");
    if (!(tau > 0.0 && tau < 1.0))
        throw Error(ErrorCode::Config, "tau must lie in (0, 1)");
}

namespace {

void require_sigmas(const TwoComponentFit& fit)
{
    if (!fit.sigma_ind || !fit.sigma_ood)
        throw Error(ErrorCode::UnsupportedDistance, "distance needs component sigmas; kmeans fits have none");
}

} // namespace

double l2_distance(const TwoComponentFit& fit)
{
    return std::abs(fit.mu_ind - fit.mu_ood);
}

double kl_distance(const TwoComponentFit& fit, Distance direction)
{
    require_sigmas(fit);
    double m1 = fit.mu_ind, s1 = *fit.sigma_ind;
    double m2 = fit.mu_ood, s2 = *fit.sigma_ood;
    if (direction == Distance::KlOodInd) {
        std::swap(m1, m2);
        std::swap(s1, s2);
    } else if (direction != Distance::KlIndOod) {
        throw Error(ErrorCode::Config, "not a KL direction");
    }
    return std::log(s1 / s2) + (s2 * s2 + (m1 - m2) * (m1 - m2)) / (2.0 * s1 * s1) - 0.5;
}

double wasserstein_distance(const TwoComponentFit& fit)
{
    require_sigmas(fit);
    const double dm = fit.mu_ind - fit.mu_ood;
    const double ds = *fit.sigma_ind - *fit.sigma_ood;
    return dm * dm + ds * ds;
}

double distance_of(const TwoComponentFit& fit, Distance d)
{
    switch (d) {
    case Distance::L2: return l2_distance(fit);
    case Distance::KlIndOod:
    case Distance::KlOodInd: return kl_distance(fit, d);
    case Distance::Wasserstein: return wasserstein_distance(fit);
    }
    throw Error(ErrorCode::Config, "unknown distance");
}

TwoComponentFit fit_two_components(std::span<const double> scores, const std::optional<GaussianParams>& val,
                                   const GscoreConfig& cfg)
{
    cfg.validate();
    switch (cfg.method) {
    case FitMethod::Kmeans: return fit_kmeans2(scores, cfg.seed);
    case FitMethod::Gmm: return fit_gmm2(scores, cfg.seed, cfg.gmm);
    case FitMethod::Ude:
        if (!val)
            throw Error(ErrorCode::Config, "UDE needs a validation Gaussian");
        return fit_ude(scores, *val, cfg.tau);
    }
    throw Error(ErrorCode::Config, "unknown fit method");
}

GscoreResult compute_gscore(std::span<const double> scores, const std::optional<GaussianParams>& val,
                            const GscoreConfig& cfg)
{
    GscoreResult out;
    out.fit = fit_two_components(scores, val, cfg);
    out.degenerate = out.fit.degenerate;
    out.gscore = out.degenerate ? 0.0 : distance_of(out.fit, cfg.distance);
    return out;
}

} // namespace oodeval
