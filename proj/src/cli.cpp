#include "oodeval/cli.hpp"

#include "oodeval/detectors.hpp"
#include "oodeval/error.hpp"
#include "oodeval/io.hpp"
#include "oodeval/meta_regress.hpp"
#include "oodeval/synth.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <sstream>
#include <vector>

namespace oodeval::cli {

namespace {

namespace fs = std::filesystem;

struct SuiteOptions {
    SuiteSpec spec;
    std::string family = "logit_normal";
    bool random_sizes = false;

    void add_to(CLI::App& app)
    {
        app.add_option("--seed", spec.seed, "Suite seed");
        app.add_option("--n-train", spec.n_train, "Training sets");
        app.add_option("--n-test", spec.n_test, "Test sets");
        app.add_option("--auroc-lo", spec.auroc_lo, "Lower end of the target AUROC span");
        app.add_option("--auroc-hi", spec.auroc_hi, "Upper end of the target AUROC span");
        app.add_option("--family", family, "gaussian | logit_normal");
        app.add_option("--mu-ind", spec.mu_ind, "IND component mean");
        app.add_option("--sigma-ind", spec.sigma_ind, "IND component spread");
        app.add_option("--sigma-ood-lo", spec.sigma_ood_lo, "Smallest OOD spread");
        app.add_option("--sigma-ood-hi", spec.sigma_ood_hi, "Largest OOD spread");
        app.add_option("--n-ind", spec.n_ind, "IND samples per set");
        app.add_option("--n-ood", spec.n_ood, "OOD samples per set");
        app.add_option("--count-jitter", spec.count_jitter, "Relative jitter on per-side counts");
        app.add_option("--val-size", spec.val_size, "Validation IND samples");
        app.add_flag("--random-sizes", random_sizes, "Draw each side's size uniformly from [100, N]");
    }

    SuiteSpec resolved()
    {
        spec.family = parse_family(family);
        return spec;
    }
};

struct GscoreOptions {
    std::string method = "ude";
    std::string distance = "wasserstein";
    std::string metric = "fpr@tpr:0.95";
    std::optional<double> tau;
    std::uint64_t seed = 0;

    void add_to(CLI::App& app)
    {
        app.add_option("--method", method, "kmeans | gmm | ude");
        app.add_option("--distance", distance, "l2 | kl | kl-rev | wasserstein");
        app.add_option("--metric", metric, "fpr@tpr:Q | auroc | de | aupr");
        app.add_option("--tau", tau, "Use this tau instead of tuning");
        app.add_option("--seed", seed, "Seed for the two-means initialisation");
    }

    GscoreConfig config() const
    {
        GscoreConfig cfg;
        cfg.method = parse_fit_method(method);
        cfg.distance = parse_distance(distance);
        cfg.seed = seed;
        if (tau)
            cfg.tau = *tau;
        cfg.validate();
        return cfg;
    }
};

std::optional<GaussianParams> load_val(const std::string& path)
{
    if (path.empty())
        return std::nullopt;
    return fit_val_gaussian(io::parse_score_file(path).scores());
}

void require_val(const GscoreConfig& cfg, const std::optional<GaussianParams>& val)
{
    if (cfg.method == FitMethod::Ude && !val)
        throw Error(ErrorCode::Config, "--val is required for the ude method");
}

std::vector<std::size_t> parse_sizes(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
            throw Error(ErrorCode::Config, "invalid size '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<Ratio> parse_ratios(const std::string& text)
{
    std::vector<Ratio> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_ratio(item));
    return out;
}

// --- synth

void cmd_synth(SuiteOptions& opts, const std::string& out_dir, std::ostream& out)
{
    const SuiteSpec spec = opts.resolved();
    GeneratedSuite suite = gen_suite(spec);
    MetaSuite train = std::move(suite.train);
    MetaSuite test = std::move(suite.test);
    if (opts.random_sizes) {
        train = downsample_random_sizes(train, derive_seed(spec.seed, 0xA991));
        test = downsample_random_sizes(test, derive_seed(spec.seed, 0xA992));
    }

    const fs::path dir(out_dir);
    std::vector<io::ManifestRow> rows;
    auto emit = [&](const MetaSuite& sets, const std::vector<SynthSpec>& specs, const char* split) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            io::ManifestRow row{specs[i], true, split};
            row.spec.n_ind = sets[i].count(Label::Ind);
            row.spec.n_ood = sets[i].count(Label::Ood);
            io::write_score_file(sets[i], dir / "sets" / (sets[i].id() + ".csv"));
            rows.push_back(std::move(row));
        }
    };
    emit(train, suite.specs.train, "train");
    emit(test, suite.specs.test, "test");
    io::write_manifest_file(rows, dir / "manifest.csv");
    io::write_score_file(ScoreSet("val", gen_validation(spec), std::vector<Label>(spec.val_size, Label::Ind)),
                         dir / "val.csv");
    out << "wrote " << rows.size() << " sets to " << dir.string() << "\n";
}

// --- score

void cmd_score(const std::string& logits, const std::string& detector, std::optional<double> temperature,
               const std::string& out_path, std::ostream& out)
{
    const Detector d = parse_detector(detector);
    const double t = temperature.value_or(d == Detector::OdinT ? kDefaultOdinTemperature : 1.0);
    const auto rows = io::parse_logit_file(logits);
    if (rows.empty())
        throw Error(ErrorCode::Input, "logit file has no rows");
    std::vector<double> scores;
    std::vector<Label> labels;
    std::vector<std::string> ids;
    std::size_t known = 0;
    for (const LogitRow& r : rows) {
        scores.push_back(detector_score(r, d, t));
        ids.push_back(r.sample_id);
        if (r.label) {
            ++known;
            labels.push_back(*r.label);
        }
    }
    const fs::path path(out_path);
    if (known == 0) {
        io::write_score_file(ScoreSet(path.stem().string(), std::move(scores)), path, ids);
    } else if (known == rows.size()) {
        io::write_score_file(ScoreSet(path.stem().string(), std::move(scores), std::move(labels)), path, ids);
    } else {
        throw Error(ErrorCode::Input, "logit file mixes unknown and known labels");
    }
    out << "scored " << rows.size() << " samples with " << detector_name(d) << "\n";
}

// --- fit

void cmd_fit(const GscoreOptions& g, const std::string& manifest, const std::string& split, const std::string& val_path,
             const std::string& out_path, std::ostream& out)
{
    const GscoreConfig cfg = g.config();
    const TargetMetric target = parse_target_metric(g.metric);
    const auto val = load_val(val_path);
    require_val(cfg, val);
    const MetaSuite train = io::load_suite(manifest, split, true);

    RegressionModel model;
    if (g.tau || cfg.method == FitMethod::Kmeans) {
        model = train_model(train, val, cfg, target);
    } else {
        model = tune_tau(train, val, cfg, target).model;
    }
    io::write_model_file(model, out_path);
    out << "tau " << io::format_double(model.cfg.tau) << " theta1 " << io::format_double(model.theta1) << " theta0 "
        << io::format_double(model.theta0) << " train_loss " << io::format_double(model.train_loss) << "\n";
}

// --- predict

void cmd_predict(const std::string& model_path, const std::string& val_path, const std::vector<std::string>& files,
                 const std::string& out_path, std::ostream& out)
{
    const RegressionModel model = io::parse_model_file(model_path);
    const auto val = load_val(val_path);
    require_val(model.cfg, val);
    std::vector<io::PredictionRow> rows;
    for (const std::string& f : files) {
        const ScoreSet s = io::parse_score_file(f);
        const Prediction p = predict_detail(model, s.scores(), val);
        rows.push_back({s.id(), p.gscore, p.degenerate, 100.0 * p.value});
    }
    io::write_file_atomic(out_path, io::format_predictions(rows));
    out << "predicted " << rows.size() << " sets\n";
}

// --- eval

void cmd_eval(const std::string& model_path, const std::string& manifest, const std::string& split,
              const std::string& train_manifest, const std::string& train_split, const std::string& val_path,
              const std::string& out_path, std::ostream& out)
{
    const RegressionModel model = io::parse_model_file(model_path);
    const auto val = load_val(val_path);
    require_val(model.cfg, val);
    const MetaSuite test = io::load_suite(manifest, split, true);
    std::vector<std::string> train_ids;
    for (const io::ManifestRow& r : io::parse_manifest_file(train_manifest))
        if (train_split.empty() || r.split == train_split)
            train_ids.push_back(r.spec.id);
    const MetricReport report = evaluate_suite(model, test, val, train_ids);
    io::write_report_file(report, out_path);
    out << "rmse_pct " << io::format_double(report.rmse_pct) << "\n";
}

// --- sweep

void cmd_sweep(SuiteOptions& suite_opts, const GscoreOptions& g, const std::string& ratios, const std::string& sizes,
               const std::string& out_path, std::ostream& out)
{
    const SuiteSpec spec = suite_opts.resolved();
    GscoreConfig cfg = g.config();
    const TargetMetric target = parse_target_metric(g.metric);
    SuiteSpec train_only = spec;
    train_only.n_test = 0;
    const MetaSuite base = gen_suite(train_only).train;
    const std::optional<GaussianParams> val = fit_val_gaussian(gen_validation(spec));

    const auto cells = ratio_size_sweep(base, parse_ratios(ratios), parse_sizes(sizes), derive_seed(spec.seed, 0x5EE9));
    std::vector<io::SweepRow> rows;
    for (const SweepCell& c : cells) {
        const SuiteCorrelation corr = correlate_suite(c.suite, val, cfg, target, !g.tau);
        rows.push_back({c.axis, c.label, c.suite.size(), corr.tau, corr.pearson, corr.spearman});
    }
    io::write_file_atomic(out_path, io::format_sweep(rows));
    out << "swept " << rows.size() << " cells\n";
}

// --- report

void cmd_report(const std::string& report_path, const std::string& out_path, std::ostream& out)
{
    const MetricReport report = io::parse_report_file(report_path);
    std::vector<io::ScatterRow> rows;
    for (const SetRecord& r : report.records) {
        if (!r.truth_pct)
            throw Error(ErrorCode::Input, "report row '" + r.id + "' has no ground truth");
        rows.push_back({r.id, r.gscore, *r.truth_pct});
    }
    io::write_file_atomic(out_path, io::format_scatter(rows));
    out << "wrote " << rows.size() << " scatter points\n";
}

} // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Unsupervised performance prediction for OOD detectors"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled suite");
    SuiteOptions synth_opts;
    std::string synth_out;
    synth_opts.add_to(*synth);
    synth->add_option("--out", synth_out, "Output directory")->required();

    auto* score = app.add_subcommand("score", "Turn a logit file into a score file");
    std::string logits, detector = "msp", score_out;
    std::optional<double> temperature;
    score->add_option("--logits", logits, "Logit CSV")->required();
    score->add_option("--detector", detector, "msp | odin_t | energy | mls");
    score->add_option("--temperature", temperature, "Temperature (odin_t default 1000, energy default 1)");
    score->add_option("--out", score_out, "Score CSV")->required();

    auto* fit = app.add_subcommand("fit", "Train the Gscore regression on a labeled manifest");
    GscoreOptions fit_opts;
    std::string fit_manifest, fit_split = "train", fit_val, fit_out;
    fit_opts.add_to(*fit);
    fit->add_option("--manifest", fit_manifest, "Suite manifest")->required();
    fit->add_option("--split", fit_split, "Manifest split to train on");
    fit->add_option("--val", fit_val, "Validation IND score file");
    fit->add_option("--out", fit_out, "Model file")->required();

    auto* pred = app.add_subcommand("predict", "Predict performance of unlabeled score files");
    std::string pred_model, pred_val, pred_out;
    std::vector<std::string> pred_files;
    pred->add_option("--model", pred_model, "Model file")->required();
    pred->add_option("--val", pred_val, "Validation IND score file");
    pred->add_option("--out", pred_out, "Predictions CSV")->required();
    pred->add_option("files", pred_files, "Score files")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a model on a labeled test manifest");
    std::string eval_model, eval_manifest, eval_split = "test", eval_train, eval_train_split = "train", eval_val,
                                           eval_out;
    eval->add_option("--model", eval_model, "Model file")->required();
    eval->add_option("--manifest", eval_manifest, "Test manifest")->required();
    eval->add_option("--split", eval_split, "Manifest split to evaluate");
    eval->add_option("--train-manifest", eval_train, "Manifest the model was trained on (leakage check)")->required();
    eval->add_option("--train-split", eval_train_split, "Split of the training manifest");
    eval->add_option("--val", eval_val, "Validation IND score file");
    eval->add_option("--out", eval_out, "Report CSV")->required();

    auto* sweep = app.add_subcommand("sweep", "Correlation under IND:OOD ratio and size down-sampling");
    SuiteOptions sweep_suite;
    sweep_suite.spec.count_jitter = 0.0;
    sweep_suite.spec.n_test = 0;
    GscoreOptions sweep_opts;
    std::string ratios = "1:100,1:10,1:1,10:1,100:1", sizes = "1000,500,200,100,50", sweep_out;
    sweep->add_option("--n-train", sweep_suite.spec.n_train, "Sets per cell");
    sweep->add_option("--n-ind", sweep_suite.spec.n_ind, "IND samples per base set");
    sweep->add_option("--n-ood", sweep_suite.spec.n_ood, "OOD samples per base set");
    sweep->add_option("--val-size", sweep_suite.spec.val_size, "Validation IND samples");
    sweep->add_option("--family", sweep_suite.family, "gaussian | logit_normal");
    sweep_opts.add_to(*sweep);
    sweep->add_option("--ratios", ratios, "Comma separated IND:OOD ratios");
    sweep->add_option("--sizes", sizes, "Comma separated set sizes (1:1)");
    sweep->add_option("--out", sweep_out, "Cell CSV")->required();

    auto* report = app.add_subcommand("report", "Scatter data (gscore, truth) from a report");
    std::string report_in, report_out;
    report->add_option("--report", report_in, "Report CSV")->required();
    report->add_option("--out", report_out, "Scatter CSV")->required();

    std::vector<const char*> argv;
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: E_USAGE: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*synth)
            cmd_synth(synth_opts, synth_out, out);
        else if (*score)
            cmd_score(logits, detector, temperature, score_out, out);
        else if (*fit)
            cmd_fit(fit_opts, fit_manifest, fit_split, fit_val, fit_out, out);
        else if (*pred)
            cmd_predict(pred_model, pred_val, pred_files, pred_out, out);
        else if (*eval)
            cmd_eval(eval_model, eval_manifest, eval_split, eval_train, eval_train_split, eval_val, eval_out, out);
        else if (*sweep) {
            sweep_suite.spec.seed = sweep_opts.seed;
            cmd_sweep(sweep_suite, sweep_opts, ratios, sizes, sweep_out, out);
        } else if (*report)
            cmd_report(report_in, report_out, out);
    } catch (const Error& e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: E_INTERNAL: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace oodeval::cli
