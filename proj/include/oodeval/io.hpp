#pragma once

#include "oodeval/meta_regress.hpp"
#include "oodeval/score_set.hpp"
#include "oodeval/synth.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oodeval::io {

namespace fs = std::filesystem;

// Version written to model files and to the format_version column of the
// manifest/report/prediction/sweep/scatter CSVs.
inline constexpr int kFormatVersion = 1;

// Shortest form that is still 17 significant digits ("%.17g"), locale free.
std::string format_double(double v);
// Strict decimal parse; rejects trailing junk, NaN and infinities.
std::optional<double> parse_double(std::string_view text);

// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const fs::path& path, std::string_view content);

// --- score files: header "sample_id,score,label", label in {ind, ood, unknown}
// Labels are case-insensitive on input and written lower case. A file whose
// labels are all "unknown" yields an unlabeled set; mixing unknown with
// known labels is rejected. The set id defaults to the file stem.
ScoreSet parse_score_file(const fs::path& path, std::optional<std::string> id = std::nullopt);
ScoreSet parse_score_text(std::string_view text, std::string id, std::string_view origin = "<memory>");
std::string format_score_file(const ScoreSet& set, std::span<const std::string> sample_ids = {});
void write_score_file(const ScoreSet& set, const fs::path& path, std::span<const std::string> sample_ids = {});

// --- logit files: header "sample_id,label,l_0,...,l_{C-1}", C >= 2
std::vector<LogitRow> parse_logit_file(const fs::path& path);
std::vector<LogitRow> parse_logit_text(std::string_view text, std::string_view origin = "<memory>");
void write_logit_file(std::span<const LogitRow> rows, const fs::path& path);

// --- model files: "key = value" lines
std::string format_model(const RegressionModel& model);
RegressionModel parse_model_text(std::string_view text, std::string_view origin = "<memory>");
void write_model_file(const RegressionModel& model, const fs::path& path);
RegressionModel parse_model_file(const fs::path& path);

// --- suite manifests: one row per set
// id,family,mu_ind,sigma_ind,mu_ood,sigma_ood,n_ind,n_ood,seed,split,format_version
// Rows for externally produced score files use family "external" and may
// leave the generator columns empty.
struct ManifestRow {
    SynthSpec spec;
    bool synthetic = true;
    std::string split; // "train", "test", or anything else the user chooses

    bool operator==(const ManifestRow&) const = default;
};

std::string format_manifest(std::span<const ManifestRow> rows);
std::vector<ManifestRow> parse_manifest_text(std::string_view text, std::string_view origin = "<memory>");
std::vector<ManifestRow> parse_manifest_file(const fs::path& path);
void write_manifest_file(std::span<const ManifestRow> rows, const fs::path& path);

// Score file of a manifest row: <manifest dir>/sets/<id>.csv
fs::path set_path(const fs::path& manifest, std::string_view id);

// Loads the score files of every row with the given split (all rows when
// `split` is empty). The result must be labeled when `labeled` is set.
MetaSuite load_suite(const fs::path& manifest, std::string_view split, bool labeled);

// --- metric reports
// record,id,metric,gscore,truth_pct,predicted_pct,degenerate,value,format_version
// "set" rows carry one test set each; "summary" rows carry rmse_pct,
// pearson and spearman in the value column (empty when undefined).
std::string format_report(const MetricReport& report);
MetricReport parse_report_text(std::string_view text, std::string_view origin = "<memory>");
MetricReport parse_report_file(const fs::path& path);
void write_report_file(const MetricReport& report, const fs::path& path);

// --- predictions: id,gscore,degenerate,predicted_pct,format_version
struct PredictionRow {
    std::string id;
    double gscore = 0.0;
    bool degenerate = false;
    double predicted_pct = 0.0;

    bool operator==(const PredictionRow&) const = default;
};
std::string format_predictions(std::span<const PredictionRow> rows);
std::vector<PredictionRow> parse_predictions_text(std::string_view text, std::string_view origin = "<memory>");

// --- sweep cells: axis,cell,n_sets,tau,pearson,spearman,format_version
struct SweepRow {
    std::string axis;
    std::string cell;
    std::size_t n_sets = 0;
    double tau = 0.0;
    double pearson = 0.0;
    double spearman = 0.0;

    bool operator==(const SweepRow&) const = default;
};
std::string format_sweep(std::span<const SweepRow> rows);
std::vector<SweepRow> parse_sweep_text(std::string_view text, std::string_view origin = "<memory>");

// --- scatter data: id,gscore,truth_pct,format_version
struct ScatterRow {
    std::string id;
    double gscore = 0.0;
    double truth_pct = 0.0;

    bool operator==(const ScatterRow&) const = default;
};
std::string format_scatter(std::span<const ScatterRow> rows);
std::vector<ScatterRow> parse_scatter_text(std::string_view text, std::string_view origin = "<memory>");

std::string read_text_file(const fs::path& path);

} // namespace oodeval::io
