#include "oracles.hpp"

#include "oodeval/detectors.hpp"
#include "oodeval/error.hpp"
#include "oodeval/metrics.hpp"
#include "oodeval/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace oodeval;

namespace {

ScoreSet make(std::vector<double> ind, std::vector<double> ood)
{
    std::vector<double> s;
    std::vector<Label> l;
    for (double x : ind) {
        s.push_back(x);
        l.push_back(Label::Ind);
    }
    for (double x : ood) {
        s.push_back(x);
        l.push_back(Label::Ood);
    }
    return ScoreSet("t", std::move(s), std::move(l));
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no oodeval::Error thrown";
    return ErrorCode::Input;
}

} // namespace

TEST(ScoreSet, RejectsEmptyAndNonFinite)
{
    EXPECT_EQ(code_of([] { ScoreSet("x", {}); }), ErrorCode::Input);
    EXPECT_EQ(code_of([] { ScoreSet("x", {0.1, std::nan("")}); }), ErrorCode::Input);
    EXPECT_EQ(code_of([] { ScoreSet("x", {0.1, INFINITY}); }), ErrorCode::Input);
    EXPECT_EQ(code_of([] { ScoreSet("x", {0.1, 0.2}, {Label::Ind}); }), ErrorCode::Input);
}

TEST(ScoreSet, UnlabeledMetricsAreUnsupported)
{
    const ScoreSet s("x", {0.1, 0.2});
    EXPECT_EQ(code_of([&] { auroc(s); }), ErrorCode::UnsupportedMetric);
    const ScoreSet one_class("y", {0.1, 0.2}, {Label::Ind, Label::Ind});
    EXPECT_EQ(code_of([&] { fpr_at_tpr(one_class, 0.95); }), ErrorCode::UnsupportedMetric);
    EXPECT_EQ(code_of([&] { detection_error(one_class); }), ErrorCode::UnsupportedMetric);
    EXPECT_EQ(code_of([&] { aupr(one_class); }), ErrorCode::UnsupportedMetric);
}

TEST(Detectors, Examples)
{
    const std::vector<double> uniform(10, 0.3);
    EXPECT_NEAR(detector_score(uniform, Detector::Msp), 0.1, 1e-15);
    const std::vector<double> zeros(10, 0.0);
    EXPECT_NEAR(detector_score(zeros, Detector::Energy, 1.0), std::log(10.0), 1e-12);
    EXPECT_EQ(detector_score(std::vector<double>{2.0, 1.0, 0.0}, Detector::Mls), 2.0);
    const double odin = detector_score(std::vector<double>{1.0, 0.0}, Detector::OdinT, 1000.0);
    EXPECT_NEAR(odin, 1.0 / (1.0 + std::exp(-0.001)), 1e-15);
    EXPECT_NEAR(odin, 0.50025, 1e-8);
}

TEST(Detectors, StableForLargeLogits)
{
    const std::vector<double> big{1000.0, 999.0};
    EXPECT_NEAR(detector_score(big, Detector::Msp), 1.0 / (1.0 + std::exp(-1.0)), 1e-12);
    EXPECT_NEAR(detector_score(big, Detector::Energy), 1000.0 + std::log1p(std::exp(-1.0)), 1e-9);
}

TEST(Detectors, RejectsBadInput)
{
    EXPECT_EQ(code_of([] { detector_score(std::vector<double>{1.0, NAN}, Detector::Msp); }), ErrorCode::Input);
    EXPECT_EQ(code_of([] { detector_score(std::vector<double>{1.0, 2.0}, Detector::Energy, 0.0); }),
              ErrorCode::Input);
    EXPECT_EQ(code_of([] { detector_score(std::vector<double>{1.0}, Detector::Mls); }), ErrorCode::Input);
    EXPECT_EQ(code_of([] { parse_detector("softmax"); }), ErrorCode::Config);
}

TEST(Detectors, NamesRoundTrip)
{
    for (Detector d : {Detector::Msp, Detector::OdinT, Detector::Energy, Detector::Mls})
        EXPECT_EQ(parse_detector(detector_name(d)), d);
}

TEST(Auroc, Examples)
{
    EXPECT_EQ(auroc(make({0.9, 0.8}, {0.1, 0.2})), 1.0);
    EXPECT_EQ(auroc(make({0.6}, {0.6})), 0.5);
    EXPECT_EQ(auroc(make({0.1}, {0.6})), 0.0);
}

TEST(Auroc, MatchesPairCountOnTiedGrid)
{
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 300; ++rep) {
        const ScoreSet s = oracle::random_grid_set(rng, 200);
        ASSERT_EQ(auroc(s), oracle::pair_count_auroc(s));
    }
}

TEST(Auroc, NegateAndSwapLabels)
{
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 100; ++rep) {
        const ScoreSet s = oracle::random_grid_set(rng, 80);
        std::vector<double> neg;
        std::vector<Label> swapped;
        for (std::size_t i = 0; i < s.size(); ++i) {
            neg.push_back(-s.scores()[i]);
            swapped.push_back(s.labels()[i] == Label::Ind ? Label::Ood : Label::Ind);
        }
        EXPECT_EQ(auroc(ScoreSet("n", neg, swapped)), auroc(s));
    }
}

TEST(FprAtTpr, Examples)
{
    EXPECT_EQ(fpr_at_tpr(make({1, 1, 1}, {0, 0}), 0.95), 0.0);
    const ScoreSet small = make({0.1, 0.5, 0.9, 0.95}, {0.2, 0.6});
    EXPECT_EQ(fpr_at_tpr(small, 0.75), oracle::fpr_at_tpr(small, 0.75));
    EXPECT_EQ(fpr_at_tpr(small, 0.75), 0.5);
}

TEST(FprAtTpr, IdenticalDistributions)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> draws(1000);
    for (double& x : draws)
        x = n(rng);
    const ScoreSet s = make(draws, draws);
    EXPECT_NEAR(fpr_at_tpr(s, 0.95), 0.95, 0.03);
}

TEST(FprAtTpr, RejectsBadQuantile)
{
    const ScoreSet s = make({1}, {0});
    EXPECT_EQ(code_of([&] { fpr_at_tpr(s, 0.0); }), ErrorCode::Input);
    EXPECT_EQ(code_of([&] { fpr_at_tpr(s, 1.0); }), ErrorCode::Input);
}

TEST(FprAtTpr, NonIncreasingAsQDecreases)
{
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const ScoreSet s = oracle::random_grid_set(rng, 60);
        double prev = 1.0;
        for (double q = 0.99; q > 0.0; q -= 0.07) {
            const double v = fpr_at_tpr(s, q);
            EXPECT_LE(v, prev);
            prev = v;
        }
    }
}

TEST(DetectionError, Examples)
{
    EXPECT_EQ(detection_error(make({0.9, 0.8}, {0.1, 0.2})), 0.0);
    EXPECT_EQ(detection_error(make({0.5, 0.5}, {0.5, 0.5})), 0.5);
}

TEST(DetectionError, BoundedAndZeroOnlyWhenSeparable)
{
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 200; ++rep) {
        const ScoreSet s = oracle::random_grid_set(rng, 40);
        const double de = detection_error(s);
        EXPECT_LE(de, 0.5);
        const auto ind = s.scores_of(Label::Ind);
        const auto ood = s.scores_of(Label::Ood);
        const bool separable = *std::min_element(ind.begin(), ind.end()) > *std::max_element(ood.begin(), ood.end());
        EXPECT_EQ(de == 0.0, separable);
        EXPECT_NEAR(de, oracle::detection_error(s), 1e-12);
    }
}

TEST(Aupr, Examples)
{
    EXPECT_EQ(aupr(make({0.9, 0.8}, {0.1, 0.2})), 1.0);
    EXPECT_EQ(aupr(make({0.5, 0.5}, {0.5, 0.5})), 0.5);
}

TEST(Aupr, MatchesSweepOracle)
{
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 200; ++rep) {
        const ScoreSet s = oracle::random_grid_set(rng, 50);
        EXPECT_NEAR(aupr(s), oracle::aupr(s), 1e-12);
    }
}

TEST(Metrics, InvariantUnderIncreasingTransform)
{
    std::mt19937_64 rng(16);
    for (int rep = 0; rep < 100; ++rep) {
        const ScoreSet s = oracle::random_grid_set(rng, 60);
        std::vector<double> distinct(s.scores().begin(), s.scores().end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<double> t;
        for (double x : s.scores()) {
            const auto rank = std::lower_bound(distinct.begin(), distinct.end(), x) - distinct.begin();
            t.push_back(std::exp(0.5 * static_cast<double>(rank)) - 7.0);
        }
        const ScoreSet u("u", t, std::vector<Label>(s.labels().begin(), s.labels().end()));
        EXPECT_EQ(auroc(u), auroc(s));
        EXPECT_EQ(fpr_at_tpr(u, 0.95), fpr_at_tpr(s, 0.95));
        EXPECT_EQ(detection_error(u), detection_error(s));
        EXPECT_EQ(aupr(u), aupr(s));
    }
}

TEST(TargetMetric, ParseAndName)
{
    EXPECT_EQ(parse_target_metric("fpr@tpr:0.95"), TargetMetric::fpr_at_tpr(0.95));
    EXPECT_EQ(parse_target_metric("auroc"), TargetMetric::auroc());
    EXPECT_EQ(parse_target_metric("de"), TargetMetric::detection_error());
    EXPECT_EQ(parse_target_metric("aupr"), TargetMetric::aupr());
    EXPECT_EQ(target_metric_name(TargetMetric::fpr_at_tpr(0.9)), "fpr@tpr:0.9");
    EXPECT_EQ(code_of([] { parse_target_metric("fpr@tpr:1.5"); }), ErrorCode::UnsupportedMetric);
    EXPECT_EQ(code_of([] { parse_target_metric("accuracy"); }), ErrorCode::UnsupportedMetric);
}

TEST(Stats, Examples)
{
    const std::vector<double> xs{1, 2, 3, 4, 5};
    std::vector<double> lin, cube;
    for (double x : xs) {
        lin.push_back(2 * x + 1);
        cube.push_back(x * x * x);
    }
    EXPECT_NEAR(pearson(xs, lin), 1.0, 1e-15);
    EXPECT_NEAR(spearman(xs, lin), 1.0, 1e-15);
    EXPECT_NEAR(spearman(xs, cube), 1.0, 1e-15);
    EXPECT_LT(pearson(xs, cube), 1.0);
    EXPECT_EQ(rmse(xs, xs), 0.0);
    EXPECT_NEAR(rmse(std::vector<double>{1, 2}, std::vector<double>{6, 7}), 5.0, 1e-15);
}

TEST(Stats, ConstantInputIsUndefined)
{
    const std::vector<double> xs{1, 2, 3}, c{4, 4, 4};
    EXPECT_EQ(code_of([&] { pearson(xs, c); }), ErrorCode::UndefinedCorrelation);
    EXPECT_EQ(code_of([&] { spearman(c, xs); }), ErrorCode::UndefinedCorrelation);
    EXPECT_EQ(code_of([&] { pearson(xs, std::vector<double>{1, 2}); }), ErrorCode::Input);
}

TEST(Stats, MidRanksShareTies)
{
    const auto r = mid_ranks(std::vector<double>{3, 1, 3, 2});
    EXPECT_EQ(r, (std::vector<double>{3.5, 1, 3.5, 2}));
}

TEST(Stats, SpearmanInvariantUnderIncreasingTransform)
{
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n;
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(30), y(30), tx(30);
        for (int i = 0; i < 30; ++i) {
            x[i] = n(rng);
            y[i] = x[i] + n(rng);
            tx[i] = std::atan(x[i]) * 5 + 2;
        }
        EXPECT_NEAR(spearman(tx, y), spearman(x, y), 1e-12);
        const double p = pearson(x, y);
        EXPECT_GE(p, -1.0);
        EXPECT_LE(p, 1.0);
    }
}
