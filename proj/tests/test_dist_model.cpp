#include "oracles.hpp"

#include "oodeval/dist_model.hpp"
#include "oodeval/error.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <random>

using namespace oodeval;

namespace {

std::vector<double> draws(std::mt19937_64& rng, double mu, double sigma, std::size_t n)
{
    std::normal_distribution<double> d(mu, sigma);
    std::vector<double> out(n);
    for (double& x : out)
        x = d(rng);
    return out;
}

std::vector<double> concat(std::vector<double> a, const std::vector<double>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST(Kmeans, Examples)
{
    const auto fit = fit_kmeans2(std::vector<double>{0, 0, 1, 1}, 0);
    EXPECT_EQ(fit.mu_ood, 0.0);
    EXPECT_EQ(fit.mu_ind, 1.0);
    EXPECT_FALSE(fit.sigma_ind.has_value());
    EXPECT_FALSE(fit.degenerate);

    const auto flat = fit_kmeans2(std::vector<double>{0.3, 0.3, 0.3, 0.3}, 0);
    EXPECT_TRUE(flat.degenerate);
    EXPECT_EQ(flat.mu_ind, 0.3);
    EXPECT_EQ(flat.mu_ood, 0.3);
}

TEST(Kmeans, SeparatedClumpsReachSplitOptimum)
{
    std::mt19937_64 rng(3);
    const auto xs = concat(draws(rng, 0.2, 0.05, 100), draws(rng, 0.8, 0.05, 100));
    const auto fit = fit_kmeans2(xs, 1);
    EXPECT_NEAR(oracle::sse_given_centroids(xs, fit.mu_ood, fit.mu_ind), oracle::best_split_sse(xs), 1e-9);
}

TEST(Kmeans, TiedPercentilesStillSplit)
{
    std::vector<double> xs(50, 0.5);
    xs.push_back(0.9);
    xs.push_back(0.1);
    const auto fit = fit_kmeans2(xs, 7);
    EXPECT_FALSE(fit.degenerate);
    EXPECT_GT(fit.mu_ind, fit.mu_ood);
    EXPECT_NEAR(oracle::sse_given_centroids(xs, fit.mu_ood, fit.mu_ind), oracle::best_split_sse(xs), 1e-12);
}

TEST(Kmeans, SseTraceNonIncreasing)
{
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 50; ++rep) {
        const auto xs = oracle::random_bimodal(rng, 300);
        std::vector<double> trace;
        fit_kmeans2(xs, rep, &trace);
        ASSERT_FALSE(trace.empty());
        for (std::size_t i = 1; i < trace.size(); ++i)
            EXPECT_LE(trace[i], trace[i - 1] + 1e-12);
    }
}

TEST(Gmm, SymmetricClumps)
{
    const auto fit = fit_gmm2(std::vector<double>{0, 0, 0, 10, 10, 10}, 0);
    EXPECT_NEAR(fit.mu_ood, 0.0, 1e-9);
    EXPECT_NEAR(fit.mu_ind, 10.0, 1e-9);
    EXPECT_NEAR(fit.weight_ind, 0.5, 1e-12);
    EXPECT_EQ(*fit.sigma_ind, kSigmaFloor);
}

TEST(Gmm, RecoversGeneratorParameters)
{
    std::mt19937_64 rng(5);
    const auto xs = concat(draws(rng, 0.2, 0.05, 1000), draws(rng, 0.8, 0.05, 1000));
    const auto fit = fit_gmm2(xs, 0);
    EXPECT_NEAR(fit.mu_ood, 0.2, 0.02);
    EXPECT_NEAR(fit.mu_ind, 0.8, 0.02);
    EXPECT_NEAR(*fit.sigma_ood, 0.05, 0.02);
    EXPECT_NEAR(*fit.sigma_ind, 0.05, 0.02);
    EXPECT_NEAR(fit.weight_ind, 0.5, 0.05);
}

TEST(Gmm, MirroredInputMirrorsComponents)
{
    std::mt19937_64 rng(6);
    const auto xs = concat(draws(rng, 0.3, 0.04, 400), draws(rng, 0.75, 0.08, 700));
    const double c = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    std::vector<double> mirrored;
    for (double x : xs)
        mirrored.push_back(2 * c - x);
    const auto a = fit_gmm2(xs, 0);
    const auto b = fit_gmm2(mirrored, 0);
    EXPECT_NEAR(b.mu_ind, 2 * c - a.mu_ood, 1e-6);
    EXPECT_NEAR(b.mu_ood, 2 * c - a.mu_ind, 1e-6);
    EXPECT_NEAR(*b.sigma_ind, *a.sigma_ood, 1e-6);
    EXPECT_NEAR(*b.sigma_ood, *a.sigma_ind, 1e-6);
    EXPECT_NEAR(b.weight_ind, 1 - a.weight_ind, 1e-6);
}

TEST(Gmm, LogLikelihoodNonDecreasing)
{
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const auto xs = oracle::random_bimodal(rng, 400);
        std::vector<double> trace;
        fit_gmm2(xs, rep, {}, &trace);
        for (std::size_t i = 1; i < trace.size(); ++i)
            EXPECT_GE(trace[i], trace[i - 1] - 1e-9);
    }
}

TEST(Gmm, DegenerateAndTooSmall)
{
    EXPECT_TRUE(fit_gmm2(std::vector<double>{1, 1, 1, 1, 1}, 0).degenerate);
    EXPECT_THROW(fit_gmm2(std::vector<double>{1, 2, 3}, 0), Error);
}

TEST(Fits, DeterministicAndOrdered)
{
    std::mt19937_64 rng(8);
    const GaussianParams val{0.8, 0.05};
    for (int rep = 0; rep < 30; ++rep) {
        const auto xs = oracle::random_bimodal(rng, 200);
        for (int k = 0; k < 2; ++k) {
            const auto a = k == 0 ? fit_kmeans2(xs, 9) : fit_gmm2(xs, 9);
            const auto b = k == 0 ? fit_kmeans2(xs, 9) : fit_gmm2(xs, 9);
            EXPECT_EQ(a.mu_ind, b.mu_ind);
            EXPECT_EQ(a.mu_ood, b.mu_ood);
            EXPECT_GE(a.mu_ind, a.mu_ood);
        }
        const auto u = fit_ude(xs, val, 0.5);
        if (!u.degenerate)
            EXPECT_GE(u.mu_ind, u.mu_ood);
    }
}

TEST(ValGaussian, Examples)
{
    const auto flat = fit_val_gaussian(std::vector<double>{0.5, 0.5, 0.5});
    EXPECT_EQ(flat.mu, 0.5);
    EXPECT_EQ(flat.sigma, kSigmaFloor);
    const auto two = fit_val_gaussian(std::vector<double>{0, 1});
    EXPECT_EQ(two.mu, 0.5);
    EXPECT_NEAR(two.sigma, std::sqrt(0.5), 1e-15);
    std::mt19937_64 rng(9);
    const auto big = fit_val_gaussian(draws(rng, 0.7, 0.1, 10000));
    EXPECT_NEAR(big.mu, 0.7, 0.005);
    EXPECT_NEAR(big.sigma, 0.1, 0.005);
    EXPECT_THROW(fit_val_gaussian(std::vector<double>{1.0}), Error);
}

TEST(UdeMembership, Examples)
{
    const GaussianParams val{0.4, 0.2};
    EXPECT_EQ(ude_membership(0.4, val), 1.0);
    EXPECT_NEAR(ude_membership(0.6, val), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(ude_membership(0.6, val), 0.60653, 1e-5);
    for (double tau : {0.05, 0.5, 0.9, 0.99})
        EXPECT_NEAR(ude_membership(0.4 + 0.2 * std::sqrt(2 * std::log(1 / tau)), val), tau, 1e-12);
}

TEST(Ude, AllAtValMeanLeavesOodEmpty)
{
    const GaussianParams val{0.7, 0.1};
    const auto fit = fit_ude(std::vector<double>(20, 0.7), val, 0.9);
    EXPECT_TRUE(fit.degenerate);
    EXPECT_TRUE(fit.empty_subset);
    EXPECT_EQ(fit.weight_ind, 1.0);
}

TEST(Ude, EmptyIndSubsetCopiesVal)
{
    const GaussianParams val{0.9, 0.01};
    const auto fit = fit_ude(std::vector<double>{0.1, 0.2, 0.3}, val, 0.5);
    EXPECT_TRUE(fit.empty_subset);
    EXPECT_EQ(fit.mu_ind, val.mu);
    EXPECT_EQ(*fit.sigma_ind, val.sigma);
    EXPECT_NEAR(fit.mu_ood, 0.2, 1e-15);
}

TEST(Ude, WideBoundRecoversLabels)
{
    // With tau = 0.05 the bound sits 2.45 IND sigmas below the IND mean.
    std::mt19937_64 rng(10);
    const auto ind = draws(rng, 0.9, 0.02, 500);
    const auto ood = draws(rng, 0.3, 0.05, 500);
    const auto xs = concat(ind, ood);
    const GaussianParams val{0.9, 0.02};
    const auto assign = ude_assign(xs, val, 0.05);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        correct += assign[i] == (i < ind.size());
    EXPECT_GE(correct, 990u);
    const auto fit = fit_ude(xs, val, 0.05);
    EXPECT_NEAR(fit.mu_ind, 0.9, 0.02);
    EXPECT_NEAR(fit.mu_ood, 0.3, 0.02);
}

TEST(Ude, HighTauKeepsOnlyTheUpperLobe)
{
    // At tau = 0.99 the bound is mu - 0.1418 sigma, so about 55.6% of the
    // IND draws stay above it; every OOD draw falls below it.
    std::mt19937_64 rng(10);
    const auto ind = draws(rng, 0.9, 0.02, 4000);
    const auto ood = draws(rng, 0.3, 0.05, 4000);
    const GaussianParams val{0.9, 0.02};
    const double z = std::sqrt(2 * std::log(1 / 0.99));
    const double expected = boost::math::cdf(boost::math::complement(boost::math::normal(), -z));
    const auto a_ind = ude_assign(ind, val, 0.99);
    const auto a_ood = ude_assign(ood, val, 0.99);
    const double kept = std::count(a_ind.begin(), a_ind.end(), true) / 4000.0;
    EXPECT_NEAR(kept, expected, 0.025);
    EXPECT_EQ(std::count(a_ood.begin(), a_ood.end(), true), 0);
}

TEST(Ude, SmallTauApproachesEverythingAboveBound)
{
    const GaussianParams val{0.5, 0.1};
    const std::vector<double> xs{0.0, 0.1, 0.2, 0.45, 0.9, 0.99};
    const auto a = ude_assign(xs, val, 1e-12);
    for (std::size_t i = 0; i < xs.size(); ++i)
        EXPECT_EQ(a[i], xs[i] >= ude_lower_bound(val, 1e-12));
    EXPECT_LT(ude_lower_bound(val, 1e-12), 0.0);
    EXPECT_TRUE(std::all_of(a.begin(), a.end(), [](bool b) { return b; }));
}

TEST(Ude, IsOneSided)
{
    const GaussianParams val{0.5, 0.1};
    const auto a = ude_assign(std::vector<double>{0.99, 0.5, 0.3}, val, 0.9);
    EXPECT_TRUE(a[0]);
    EXPECT_TRUE(a[1]);
    EXPECT_FALSE(a[2]);
    EXPECT_THROW(ude_lower_bound(val, 1.0), Error);
    EXPECT_THROW(ude_lower_bound(val, 0.0), Error);
}

TEST(Fits, ShiftEquivariance)
{
    std::mt19937_64 rng(11);
    const double c = 3.0;
    for (int rep = 0; rep < 20; ++rep) {
        const auto xs = oracle::random_bimodal(rng, 300);
        std::vector<double> shifted;
        for (double x : xs)
            shifted.push_back(x + c);
        const auto k0 = fit_kmeans2(xs, 1), k1 = fit_kmeans2(shifted, 1);
        EXPECT_NEAR(k1.mu_ind - c, k0.mu_ind, 1e-9);
        EXPECT_NEAR(k1.mu_ood - c, k0.mu_ood, 1e-9);
        EXPECT_EQ(k1.weight_ind, k0.weight_ind);

        const auto g0 = fit_gmm2(xs, 1), g1 = fit_gmm2(shifted, 1);
        EXPECT_NEAR(g1.mu_ind - c, g0.mu_ind, 1e-6);
        EXPECT_NEAR(*g1.sigma_ind, *g0.sigma_ind, 1e-6);
        EXPECT_NEAR(g1.weight_ind, g0.weight_ind, 1e-6);

        const GaussianParams val{0.6, 0.1}, val_s{0.6 + c, 0.1};
        const auto u0 = fit_ude(xs, val, 0.7), u1 = fit_ude(shifted, val_s, 0.7);
        EXPECT_EQ(u1.weight_ind, u0.weight_ind);
        EXPECT_NEAR(u1.mu_ind - c, u0.mu_ind, 1e-9);
        EXPECT_NEAR(*u1.sigma_ood, *u0.sigma_ood, 1e-9);
    }
}
