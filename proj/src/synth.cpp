#include "oodeval/synth.hpp"

#include "oodeval/error.hpp"
#include "oodeval/parallel.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <random>

namespace oodeval {

Family parse_family(std::string_view name)
{
    if (name == "gaussian") return Family::Gaussian;
    if (name == "logit_normal") return Family::LogitNormal;
    throw Error(ErrorCode::Config, "unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family f)
{
    return f == Family::Gaussian ? "gaussian" : "logit_normal";
}

void SynthSpec::validate() const
{
    if (!(sigma_ind > 0.0) || !(sigma_ood > 0.0) || !std::isfinite(sigma_ind) || !std::isfinite(sigma_ood))
        throw Error(ErrorCode::Generation, "set '" + id + "': sigmas must be positive");
    if (!std::isfinite(mu_ind) || !std::isfinite(mu_ood))
        throw Error(ErrorCode::Generation, "set '" + id + "': means must be finite");
    if (n_ind < 1 || n_ood < 1)
        throw Error(ErrorCode::Generation, "set '" + id + "': each side needs at least one sample");
}

namespace {

double squash(Family family, double latent)
{
    if (family == Family::Gaussian)
        return latent;
    return 1.0 / (1.0 + std::exp(-latent));
}

void draw(std::mt19937_64& rng, Family family, double mu, double sigma, std::size_t n, std::vector<double>& out)
{
    std::normal_distribution<double> dist(mu, sigma);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(squash(family, dist(rng)));
}

} // namespace

ScoreSet gen_score_set(const SynthSpec& spec)
{
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::vector<double> scores;
    scores.reserve(spec.n_ind + spec.n_ood);
    draw(rng, spec.family, spec.mu_ind, spec.sigma_ind, spec.n_ind, scores);
    draw(rng, spec.family, spec.mu_ood, spec.sigma_ood, spec.n_ood, scores);
    std::vector<Label> labels(spec.n_ind, Label::Ind);
    labels.resize(spec.n_ind + spec.n_ood, Label::Ood);
    return ScoreSet(spec.id, std::move(scores), std::move(labels));
}

std::vector<double> gen_component(Family family, double mu, double sigma, std::size_t n, std::uint64_t seed)
{
    if (!(sigma > 0.0))
        throw Error(ErrorCode::Generation, "sigma must be positive");
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(n);
    draw(rng, family, mu, sigma, n, out);
    return out;
}

double gaussian_auroc(double mu_ind, double sigma_ind, double mu_ood, double sigma_ood)
{
    const boost::math::normal standard;
    return boost::math::cdf(standard, (mu_ind - mu_ood) / std::hypot(sigma_ind, sigma_ood));
}

void SuiteSpec::validate() const
{
    if (!(auroc_lo > 0.5 && auroc_lo <= auroc_hi && auroc_hi <= 1.0))
        throw Error(ErrorCode::Generation, "AUROC span must satisfy 0.5 < lo <= hi <= 1");
    if (n_train < 1)
        throw Error(ErrorCode::Generation, "suite needs at least one training set");
    if (!(sigma_ind > 0.0) || !(sigma_ood_lo > 0.0) || sigma_ood_hi < sigma_ood_lo)
        throw Error(ErrorCode::Generation, "invalid component spreads");
    if (!(sigma_ind_jitter >= 0.0 && sigma_ind_jitter < 1.0) || !(count_jitter >= 0.0 && count_jitter < 1.0))
        throw Error(ErrorCode::Generation, "jitter must lie in [0, 1)");
    if (n_ind < 2 || n_ood < 2)
        throw Error(ErrorCode::Generation, "each side needs at least two samples");
}

namespace {

// Largest separation used for a target AUROC of 1: Phi(-9) ~ 1e-19, so no
// realistic sample shows an inverted pair.
constexpr double kMaxZ = 9.0;

std::size_t jittered_count(std::mt19937_64& rng, std::size_t base, double jitter)
{
    std::uniform_real_distribution<double> f(1.0 - jitter, 1.0 + jitter);
    const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(base) * f(rng)));
    return std::max<std::size_t>(n, 2);
}

std::string set_id(const char* prefix, std::size_t i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%03zu", prefix, i);
    return buf;
}

} // namespace

SplitSpecs plan_suite(const SuiteSpec& spec)
{
    spec.validate();
    const boost::math::normal standard;
    SplitSpecs out;
    const std::size_t total = spec.n_train + spec.n_test;
    for (std::size_t i = 0; i < total; ++i) {
        std::mt19937_64 rng(derive_seed(spec.seed, i));
        std::uniform_real_distribution<double> target(spec.auroc_lo, spec.auroc_hi);
        std::uniform_real_distribution<double> ind_scale(1.0 - spec.sigma_ind_jitter, 1.0 + spec.sigma_ind_jitter);
        std::uniform_real_distribution<double> ood_sigma(spec.sigma_ood_lo, spec.sigma_ood_hi);

        const double a = spec.auroc_lo == spec.auroc_hi ? spec.auroc_lo : target(rng);
        SynthSpec s;
        s.family = spec.family;
        s.mu_ind = spec.mu_ind;
        s.sigma_ind = spec.sigma_ind * ind_scale(rng);
        s.sigma_ood = spec.sigma_ood_hi == spec.sigma_ood_lo ? spec.sigma_ood_lo : ood_sigma(rng);
        const double z = a >= 1.0 ? kMaxZ : std::min(kMaxZ, boost::math::quantile(standard, a));
        s.mu_ood = s.mu_ind - z * std::hypot(s.sigma_ind, s.sigma_ood);
        s.n_ind = jittered_count(rng, spec.n_ind, spec.count_jitter);
        s.n_ood = jittered_count(rng, spec.n_ood, spec.count_jitter);
        s.seed = derive_seed(spec.seed ^ 0x5DEECE66DULL, i);
        if (i < spec.n_train) {
            s.id = set_id("train", i);
            out.train.push_back(std::move(s));
        } else {
            s.id = set_id("test", i - spec.n_train);
            out.test.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<ScoreSet> generate_sets(std::span<const SynthSpec> specs, Execution exec)
{
    for (const auto& s : specs)
        s.validate();
    std::vector<std::optional<ScoreSet>> slots(specs.size());
    detail::for_each_index(specs.size(), exec == Execution::Parallel,
                           [&](std::size_t i) { slots[i].emplace(gen_score_set(specs[i])); });
    std::vector<ScoreSet> out;
    out.reserve(specs.size());
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

GeneratedSuite gen_suite(const SuiteSpec& spec, Execution exec)
{
    SplitSpecs specs = plan_suite(spec);
    MetaSuite train(generate_sets(specs.train, exec), true);
    MetaSuite test(generate_sets(specs.test, exec), true);
    return {std::move(train), std::move(test), std::move(specs)};
}

std::vector<double> gen_validation(const SuiteSpec& spec)
{
    spec.validate();
    if (spec.val_size < 2)
        throw Error(ErrorCode::Generation, "validation sample needs at least two scores");
    return gen_component(spec.family, spec.mu_ind, spec.sigma_ind, spec.val_size,
                         derive_seed(spec.seed ^ 0xA11CE5ULL, 0));
}

std::string Ratio::label() const
{
    return std::to_string(ind) + ":" + std::to_string(ood);
}

Ratio parse_ratio(std::string_view text)
{
    const auto colon = text.find(':');
    Ratio r{0, 0};
    if (colon != std::string_view::npos) {
        auto a = text.substr(0, colon);
        auto b = text.substr(colon + 1);
        auto [p1, e1] = std::from_chars(a.data(), a.data() + a.size(), r.ind);
        auto [p2, e2] = std::from_chars(b.data(), b.data() + b.size(), r.ood);
        if (e1 == std::errc{} && e2 == std::errc{} && p1 == a.data() + a.size() && p2 == b.data() + b.size() &&
            r.ind > 0 && r.ood > 0)
            return r;
    }
    throw Error(ErrorCode::Config, "ratio must look like IND:OOD, got '" + std::string(text) + "'");
}

ScoreSet downsample_set(const ScoreSet& set, std::size_t n_ind, std::size_t n_ood, std::uint64_t seed)
{
    auto labels = set.labels();
    std::vector<std::size_t> ind, ood;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == Label::Ind ? ind : ood).push_back(i);
    if (n_ind > ind.size() || n_ood > ood.size())
        throw Error(ErrorCode::Input, "set '" + set.id() + "' is too small for the requested down-sample");

    std::mt19937_64 rng(seed);
    std::shuffle(ind.begin(), ind.end(), rng);
    std::shuffle(ood.begin(), ood.end(), rng);
    std::vector<std::size_t> keep(ind.begin(), ind.begin() + static_cast<std::ptrdiff_t>(n_ind));
    keep.insert(keep.end(), ood.begin(), ood.begin() + static_cast<std::ptrdiff_t>(n_ood));
    std::sort(keep.begin(), keep.end());

    std::vector<double> scores;
    std::vector<Label> kept_labels;
    for (std::size_t i : keep) {
        scores.push_back(set.scores()[i]);
        kept_labels.push_back(labels[i]);
    }
    return ScoreSet(set.id(), std::move(scores), std::move(kept_labels));
}

namespace {

void require_two_per_side(const ScoreSet& s, std::size_t n_ind, std::size_t n_ood)
{
    if (n_ind < 2 || n_ood < 2)
        throw Error(ErrorCode::Input, "down-sampling set '" + s.id() + "' would leave fewer than 2 samples per side");
}

} // namespace

MetaSuite downsample_ratio(const MetaSuite& base, Ratio ratio, std::uint64_t seed)
{
    if (ratio.ind == 0 || ratio.ood == 0)
        throw Error(ErrorCode::Input, "ratio terms must be positive");
    std::vector<ScoreSet> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const ScoreSet& s = base[i];
        const auto n1 = static_cast<double>(s.count(Label::Ind));
        const auto n0 = static_cast<double>(s.count(Label::Ood));
        const double k = std::min(n1 / static_cast<double>(ratio.ind), n0 / static_cast<double>(ratio.ood));
        const auto keep_ind = static_cast<std::size_t>(std::llround(k * static_cast<double>(ratio.ind)));
        const auto keep_ood = static_cast<std::size_t>(std::llround(k * static_cast<double>(ratio.ood)));
        require_two_per_side(s, keep_ind, keep_ood);
        out.push_back(downsample_set(s, keep_ind, keep_ood, derive_seed(seed, i)));
    }
    return MetaSuite(std::move(out), base.labeled());
}

MetaSuite downsample_size(const MetaSuite& base, std::size_t total, std::uint64_t seed)
{
    const std::size_t per_side = total / 2;
    std::vector<ScoreSet> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const ScoreSet& s = base[i];
        const std::size_t keep_ind = std::min(per_side, s.count(Label::Ind));
        const std::size_t keep_ood = std::min(per_side, s.count(Label::Ood));
        require_two_per_side(s, keep_ind, keep_ood);
        out.push_back(downsample_set(s, keep_ind, keep_ood, derive_seed(seed, i)));
    }
    return MetaSuite(std::move(out), base.labeled());
}

MetaSuite downsample_random_sizes(const MetaSuite& base, std::uint64_t seed, std::size_t min_side)
{
    std::vector<ScoreSet> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const ScoreSet& s = base[i];
        std::mt19937_64 rng(derive_seed(seed, i));
        auto pick = [&](std::size_t n) {
            if (n <= min_side)
                return n;
            return std::uniform_int_distribution<std::size_t>(min_side, n)(rng);
        };
        const std::size_t keep_ind = pick(s.count(Label::Ind));
        const std::size_t keep_ood = pick(s.count(Label::Ood));
        require_two_per_side(s, keep_ind, keep_ood);
        out.push_back(downsample_set(s, keep_ind, keep_ood, derive_seed(seed ^ 0xD0E5ULL, i)));
    }
    return MetaSuite(std::move(out), base.labeled());
}

std::vector<SweepCell> ratio_size_sweep(const MetaSuite& base, std::span<const Ratio> ratios,
                                        std::span<const std::size_t> sizes, std::uint64_t seed)
{
    std::vector<SweepCell> cells;
    std::uint64_t cell = 0;
    for (const Ratio& r : ratios)
        cells.push_back({"ratio", r.label(), downsample_ratio(base, r, derive_seed(seed, cell++))});
    for (std::size_t n : sizes)
        cells.push_back({"size", std::to_string(n), downsample_size(base, n, derive_seed(seed, cell++))});
    return cells;
}

} // namespace oodeval
