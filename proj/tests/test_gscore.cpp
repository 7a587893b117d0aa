#include "oodeval/error.hpp"
#include "oodeval/gscore.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace oodeval;

namespace {

TwoComponentFit fit_of(double mu_ind, double s_ind, double mu_ood, double s_ood)
{
    TwoComponentFit f;
    f.method = FitMethod::Gmm;
    f.mu_ind = mu_ind;
    f.mu_ood = mu_ood;
    f.sigma_ind = s_ind;
    f.sigma_ood = s_ood;
    return f;
}

std::vector<double> two_clumps(double gap, double sigma, std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> ind(0.8, sigma), ood(0.8 - gap, sigma);
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(ind(rng));
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(ood(rng));
    return out;
}

} // namespace

TEST(Distances, L2)
{
    EXPECT_NEAR(l2_distance(fit_of(0.8, 0.1, 0.2, 0.1)), 0.6, 1e-15);
    EXPECT_EQ(l2_distance(fit_of(0.5, 0.1, 0.5, 0.3)), 0.0);
    const auto f = fit_of(0.9, 0.2, 0.35, 0.2);
    EXPECT_NEAR(wasserstein_distance(f), l2_distance(f) * l2_distance(f), 1e-15);
}

TEST(Distances, Kl)
{
    EXPECT_EQ(kl_distance(fit_of(0.5, 0.1, 0.5, 0.1), Distance::KlIndOod), 0.0);
    EXPECT_NEAR(kl_distance(fit_of(1.0, 1.0, 0.0, 1.0), Distance::KlIndOod), 0.5, 1e-12);
    const auto f = fit_of(0.0, 2.0, 0.0, 1.0);
    EXPECT_NEAR(kl_distance(f, Distance::KlIndOod), std::log(2.0) + 0.125 - 0.5, 1e-12);
    EXPECT_NEAR(kl_distance(f, Distance::KlOodInd), -std::log(2.0) + 2.0 - 0.5, 1e-12);
    EXPECT_NEAR(kl_distance(f, Distance::KlIndOod), 0.31815, 1e-5);
    EXPECT_NEAR(kl_distance(f, Distance::KlOodInd), 0.80685, 1e-5);
}

TEST(Distances, Wasserstein)
{
    EXPECT_EQ(wasserstein_distance(fit_of(0.4, 0.2, 0.4, 0.2)), 0.0);
    EXPECT_NEAR(wasserstein_distance(fit_of(3.0, 1.0, 0.0, 1.0)), 9.0, 1e-12);
    EXPECT_NEAR(wasserstein_distance(fit_of(0.8, 0.1, 0.2, 0.3)), 0.40, 1e-12);
}

TEST(Distances, KmeansHasNoSigmas)
{
    TwoComponentFit k;
    k.mu_ind = 1.0;
    EXPECT_EQ(distance_of(k, Distance::L2), 1.0);
    try {
        wasserstein_distance(k);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedDistance);
    }
    EXPECT_THROW(kl_distance(k, Distance::KlOodInd), Error);
}

TEST(Distances, NamesRoundTrip)
{
    for (Distance d : {Distance::L2, Distance::KlIndOod, Distance::KlOodInd, Distance::Wasserstein})
        EXPECT_EQ(parse_distance(distance_name(d)), d);
    EXPECT_THROW(parse_distance("hellinger"), Error);
}

TEST(Config, KmeansOnlyPairsWithL2)
{
    GscoreConfig cfg;
    cfg.method = FitMethod::Kmeans;
    cfg.distance = Distance::Wasserstein;
    try {
        cfg.validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Config);
    }
    cfg.distance = Distance::L2;
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Gscore, UdeNeedsVal)
{
    GscoreConfig cfg;
    EXPECT_THROW(compute_gscore(std::vector<double>{0.1, 0.2, 0.3, 0.9}, std::nullopt, cfg), Error);
}

TEST(Gscore, IdenticalGeneratorsScoreNearZero)
{
    const auto xs = two_clumps(0.0, 0.05, 2000, 1);
    const GaussianParams val{0.8, 0.05};
    for (auto m : {FitMethod::Kmeans, FitMethod::Gmm, FitMethod::Ude}) {
        GscoreConfig cfg;
        cfg.method = m;
        cfg.distance = Distance::L2;
        cfg.tau = 0.5;
        // A unimodal sample still splits, so the separation is a fraction of sigma.
        EXPECT_LT(compute_gscore(xs, val, cfg).gscore, 0.1) << fit_method_name(m);
    }
}

TEST(Gscore, LargerGapScoresHigher)
{
    const auto a = two_clumps(0.2, 0.05, 2000, 2);
    const auto b = two_clumps(0.6, 0.05, 2000, 3);
    const GaussianParams val{0.8, 0.05};
    for (auto m : {FitMethod::Kmeans, FitMethod::Gmm, FitMethod::Ude}) {
        for (auto d : {Distance::L2, Distance::KlIndOod, Distance::KlOodInd, Distance::Wasserstein}) {
            if (m == FitMethod::Kmeans && d != Distance::L2)
                continue;
            GscoreConfig cfg;
            cfg.method = m;
            cfg.distance = d;
            cfg.tau = 0.05;
            EXPECT_GT(compute_gscore(b, val, cfg).gscore, compute_gscore(a, val, cfg).gscore)
                << fit_method_name(m) << " " << distance_name(d);
        }
    }
}

TEST(Gscore, UdeWassersteinOnSeparatedSet)
{
    std::mt19937_64 rng(10);
    std::normal_distribution<double> ind(0.9, 0.02), ood(0.3, 0.05);
    std::vector<double> xs;
    for (int i = 0; i < 500; ++i)
        xs.push_back(ind(rng));
    for (int i = 0; i < 500; ++i)
        xs.push_back(ood(rng));
    GscoreConfig cfg;
    cfg.tau = 0.05;
    const auto g = compute_gscore(xs, GaussianParams{0.9, 0.02}, cfg);
    EXPECT_NEAR(g.gscore, 0.6 * 0.6 + 0.03 * 0.03, 0.02);
}

TEST(Gscore, DegenerateScoresZero)
{
    GscoreConfig cfg;
    cfg.method = FitMethod::Gmm;
    const auto g = compute_gscore(std::vector<double>(10, 0.4), std::nullopt, cfg);
    EXPECT_TRUE(g.degenerate);
    EXPECT_EQ(g.gscore, 0.0);
}

TEST(Gscore, ShiftInvariant)
{
    const auto xs = two_clumps(0.4, 0.07, 300, 4);
    std::vector<double> shifted;
    for (double x : xs)
        shifted.push_back(x - 2.5);
    for (auto m : {FitMethod::Kmeans, FitMethod::Gmm, FitMethod::Ude}) {
        GscoreConfig cfg;
        cfg.method = m;
        cfg.distance = m == FitMethod::Kmeans ? Distance::L2 : Distance::Wasserstein;
        cfg.tau = 0.3;
        const double g0 = compute_gscore(xs, GaussianParams{0.8, 0.07}, cfg).gscore;
        const double g1 = compute_gscore(shifted, GaussianParams{0.8 - 2.5, 0.07}, cfg).gscore;
        EXPECT_NEAR(g0, g1, 1e-6 * std::max(1.0, g0)) << fit_method_name(m);
    }
}

TEST(Gscore, NonNegativeAndMonotoneInGap)
{
    double prev_l2 = -1, prev_w = -1;
    for (double gap = 0.0; gap < 2.0; gap += 0.1) {
        const auto f = fit_of(gap, 0.3, 0.0, 0.1);
        EXPECT_GE(kl_distance(f, Distance::KlIndOod), 0.0);
        EXPECT_GE(kl_distance(f, Distance::KlOodInd), 0.0);
        EXPECT_GT(l2_distance(f), prev_l2);
        EXPECT_GT(wasserstein_distance(f), prev_w);
        prev_l2 = l2_distance(f);
        prev_w = wasserstein_distance(f);
    }
}
