#include "oodeval/io.hpp"

#include "oodeval/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>
#include <unordered_set>

namespace oodeval::io {

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    // from_chars does not take a leading '+'
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::string read_text_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out.flush())
            throw Error(ErrorCode::Io, "write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(ErrorCode::Io, "cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
    }
}

namespace {

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string_view> fields;
};

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

[[noreturn]] void parse_error(std::string_view origin, std::size_t line, const std::string& what)
{
    throw Error(ErrorCode::Parse, std::string(origin) + ":" + std::to_string(line) + ": " + what);
}

// Splits into lines (LF or CRLF). The header is line 1. Only a single
// trailing newline is tolerated; blank lines elsewhere are errors.
std::vector<CsvRow> split_csv(std::string_view text, std::string_view origin)
{
    std::vector<CsvRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            parse_error(origin, line_no, "blank line");
        rows.push_back({line_no, split_fields(line)});
    }
    if (rows.empty())
        parse_error(origin, 1, "missing header");
    return rows;
}

std::string join(std::span<const std::string_view> fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out += ',';
        out += fields[i];
    }
    return out;
}

// Checks the header and the column count of every row; returns the data rows.
std::vector<CsvRow> read_table(std::string_view text, std::span<const std::string_view> header,
                               std::string_view origin)
{
    auto rows = split_csv(text, origin);
    if (!std::equal(rows[0].fields.begin(), rows[0].fields.end(), header.begin(), header.end()))
        parse_error(origin, 1, "expected header '" + join(header) + "'");
    rows.erase(rows.begin());
    for (const CsvRow& r : rows)
        if (r.fields.size() != header.size())
            parse_error(origin, r.line,
                        "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(r.fields.size()));
    return rows;
}

double field_double(const CsvRow& r, std::size_t col, std::string_view name, std::string_view origin)
{
    auto v = parse_double(r.fields[col]);
    if (!v)
        parse_error(origin, r.line, "invalid " + std::string(name) + " '" + std::string(r.fields[col]) + "'");
    return *v;
}

std::optional<double> field_optional_double(const CsvRow& r, std::size_t col, std::string_view name,
                                            std::string_view origin)
{
    if (r.fields[col].empty())
        return std::nullopt;
    return field_double(r, col, name, origin);
}

template <typename T>
T field_integer(const CsvRow& r, std::size_t col, std::string_view name, std::string_view origin)
{
    T v{};
    auto f = r.fields[col];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size())
        parse_error(origin, r.line, "invalid " + std::string(name) + " '" + std::string(f) + "'");
    return v;
}

bool field_bool(const CsvRow& r, std::size_t col, std::string_view name, std::string_view origin)
{
    if (r.fields[col] == "0") return false;
    if (r.fields[col] == "1") return true;
    parse_error(origin, r.line, "invalid " + std::string(name) + " '" + std::string(r.fields[col]) + "'");
}

void check_version(const CsvRow& r, std::size_t col, std::string_view origin)
{
    const auto v = field_integer<int>(r, col, "format_version", origin);
    if (v != kFormatVersion)
        throw Error(ErrorCode::Version, std::string(origin) + ":" + std::to_string(r.line) +
                                            ": unsupported format_version " + std::to_string(v));
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

enum class LabelField { Ind, Ood, Unknown };

LabelField parse_label(const CsvRow& r, std::size_t col, std::string_view origin)
{
    const std::string l = lower(r.fields[col]);
    if (l == "ind") return LabelField::Ind;
    if (l == "ood") return LabelField::Ood;
    if (l == "unknown") return LabelField::Unknown;
    parse_error(origin, r.line, "invalid label '" + std::string(r.fields[col]) + "'");
}

void check_sample_id(const CsvRow& r, std::string_view id, std::unordered_set<std::string>& seen,
                     std::string_view origin)
{
    if (id.empty())
        parse_error(origin, r.line, "empty sample_id");
    if (!seen.insert(std::string(id)).second)
        parse_error(origin, r.line, "duplicate sample_id '" + std::string(id) + "'");
}

constexpr std::string_view kScoreHeader[] = {"sample_id", "score", "label"};

std::string_view label_text(const ScoreSet& set, std::size_t i)
{
    if (!set.labeled())
        return "unknown";
    return set.labels()[i] == Label::Ind ? "ind" : "ood";
}

std::string default_sample_id(std::size_t i)
{
    return "s" + std::to_string(i);
}

} // namespace

ScoreSet parse_score_text(std::string_view text, std::string id, std::string_view origin)
{
    const auto rows = read_table(text, kScoreHeader, origin);
    if (rows.empty())
        parse_error(origin, 2, "no samples");
    std::unordered_set<std::string> seen;
    std::vector<double> scores;
    std::vector<Label> labels;
    std::size_t unknown = 0;
    for (const CsvRow& r : rows) {
        check_sample_id(r, r.fields[0], seen, origin);
        scores.push_back(field_double(r, 1, "score", origin));
        switch (parse_label(r, 2, origin)) {
        case LabelField::Ind: labels.push_back(Label::Ind); break;
        case LabelField::Ood: labels.push_back(Label::Ood); break;
        case LabelField::Unknown: ++unknown; break;
        }
        if (unknown != 0 && !labels.empty())
            parse_error(origin, r.line, "mixes unknown and known labels");
    }
    if (unknown == rows.size())
        return ScoreSet(std::move(id), std::move(scores));
    return ScoreSet(std::move(id), std::move(scores), std::move(labels));
}

ScoreSet parse_score_file(const fs::path& path, std::optional<std::string> id)
{
    return parse_score_text(read_text_file(path), id ? *id : path.stem().string(), path.string());
}

std::string format_score_file(const ScoreSet& set, std::span<const std::string> sample_ids)
{
    if (!sample_ids.empty() && sample_ids.size() != set.size())
        throw Error(ErrorCode::Input, "sample id count does not match the score count");
    std::string out = "sample_id,score,label\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        out += sample_ids.empty() ? default_sample_id(i) : sample_ids[i];
        out += ',';
        out += format_double(set.scores()[i]);
        out += ',';
        out += label_text(set, i);
        out += '\n';
    }
    return out;
}

void write_score_file(const ScoreSet& set, const fs::path& path, std::span<const std::string> sample_ids)
{
    write_file_atomic(path, format_score_file(set, sample_ids));
}

std::vector<LogitRow> parse_logit_text(std::string_view text, std::string_view origin)
{
    auto rows = split_csv(text, origin);
    const auto& header = rows[0].fields;
    if (header.size() < 4 || header[0] != "sample_id" || header[1] != "label")
        parse_error(origin, 1, "expected header 'sample_id,label,l_0,...,l_{C-1}' with C >= 2");
    for (std::size_t c = 2; c < header.size(); ++c)
        if (header[c] != "l_" + std::to_string(c - 2))
            parse_error(origin, 1, "logit column " + std::to_string(c - 2) + " must be named l_" +
                                       std::to_string(c - 2));
    std::unordered_set<std::string> seen;
    std::vector<LogitRow> out;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const CsvRow& r = rows[k];
        if (r.fields.size() != header.size())
            parse_error(origin, r.line, "expected " + std::to_string(header.size()) + " fields, got " +
                                            std::to_string(r.fields.size()));
        check_sample_id(r, r.fields[0], seen, origin);
        LogitRow row;
        row.sample_id = std::string(r.fields[0]);
        switch (parse_label(r, 1, origin)) {
        case LabelField::Ind: row.label = Label::Ind; break;
        case LabelField::Ood: row.label = Label::Ood; break;
        case LabelField::Unknown: break;
        }
        for (std::size_t c = 2; c < header.size(); ++c)
            row.logits.push_back(field_double(r, c, "logit", origin));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<LogitRow> parse_logit_file(const fs::path& path)
{
    return parse_logit_text(read_text_file(path), path.string());
}

void write_logit_file(std::span<const LogitRow> rows, const fs::path& path)
{
    if (rows.empty())
        throw Error(ErrorCode::Input, "no logit rows to write");
    const std::size_t c = rows[0].logits.size();
    if (c < 2)
        throw Error(ErrorCode::Input, "logit rows need at least two classes");
    std::string out = "sample_id,label";
    for (std::size_t i = 0; i < c; ++i)
        out += ",l_" + std::to_string(i);
    out += '\n';
    for (const LogitRow& r : rows) {
        if (r.logits.size() != c)
            throw Error(ErrorCode::Input, "logit rows differ in class count");
        out += r.sample_id;
        out += ',';
        out += !r.label ? "unknown" : (*r.label == Label::Ind ? "ind" : "ood");
        for (double l : r.logits) {
            out += ',';
            out += format_double(l);
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

// --- model files

std::string format_model(const RegressionModel& m)
{
    std::string out;
    auto line = [&](std::string_view key, std::string_view value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    line("format_version", std::to_string(kFormatVersion));
    line("method", fit_method_name(m.cfg.method));
    line("distance", distance_name(m.cfg.distance));
    line("tau", format_double(m.cfg.tau));
    line("theta1", format_double(m.theta1));
    line("theta0", format_double(m.theta0));
    line("target_metric", target_metric_key(m.target.kind));
    if (m.target.kind == TargetMetric::Kind::FprAtTpr)
        line("tpr_q", format_double(m.target.q));
    line("train_loss", format_double(m.train_loss));
    line("n_train", std::to_string(m.n_train));
    line("sigma_floor", format_double(kSigmaFloor));
    line("seed", std::to_string(m.cfg.seed));
    return out;
}

RegressionModel parse_model_text(std::string_view text, std::string_view origin)
{
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find(" = ");
        if (eq == std::string_view::npos)
            parse_error(origin, line_no, "expected 'key = value'");
        std::string key(line.substr(0, eq));
        if (!kv.emplace(key, std::pair{std::string(line.substr(eq + 3)), line_no}).second)
            parse_error(origin, line_no, "duplicate key '" + key + "'");
    }

    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            parse_error(origin, line_no, "missing key '" + key + "'");
        return it->second.first;
    };
    auto get_double = [&](const std::string& key) {
        auto v = parse_double(get(key));
        if (!v)
            parse_error(origin, kv.at(key).second, "invalid number for '" + key + "'");
        return *v;
    };
    auto get_uint = [&](const std::string& key) {
        const std::string& s = get(key);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            parse_error(origin, kv.at(key).second, "invalid integer for '" + key + "'");
        return v;
    };

    if (get_uint("format_version") != static_cast<std::uint64_t>(kFormatVersion))
        throw Error(ErrorCode::Version, std::string(origin) + ": unsupported model format_version '" +
                                            get("format_version") + "'");

    RegressionModel m;
    m.cfg.method = parse_fit_method(get("method"));
    m.cfg.distance = parse_distance(get("distance"));
    m.cfg.tau = get_double("tau");
    m.cfg.seed = get_uint("seed");
    m.theta1 = get_double("theta1");
    m.theta0 = get_double("theta0");
    const std::string& metric = get("target_metric");
    if (metric == "fpr@tpr")
        m.target = TargetMetric::fpr_at_tpr(get_double("tpr_q"));
    else
        m.target = parse_target_metric(metric);
    m.train_loss = get_double("train_loss");
    m.n_train = get_uint("n_train");
    if (get_double("sigma_floor") != kSigmaFloor)
        throw Error(ErrorCode::Config, std::string(origin) + ": model was trained with a different sigma_floor");
    m.cfg.validate();
    if (m.n_train < 2)
        throw Error(ErrorCode::Parse, std::string(origin) + ": n_train must be at least 2");
    if (!(m.target.kind != TargetMetric::Kind::FprAtTpr || (m.target.q > 0.0 && m.target.q < 1.0)))
        throw Error(ErrorCode::Parse, std::string(origin) + ": tpr_q must lie in (0, 1)");
    return m;
}

void write_model_file(const RegressionModel& model, const fs::path& path)
{
    write_file_atomic(path, format_model(model));
}

RegressionModel parse_model_file(const fs::path& path)
{
    return parse_model_text(read_text_file(path), path.string());
}

// --- manifests

namespace {

constexpr std::string_view kManifestHeader[] = {"id",    "family", "mu_ind", "sigma_ind", "mu_ood",        "sigma_ood",
                                                "n_ind", "n_ood",  "seed",   "split",     "format_version"};

} // namespace

std::string format_manifest(std::span<const ManifestRow> rows)
{
    std::string out = join(kManifestHeader) + "\n";
    for (const ManifestRow& r : rows) {
        const SynthSpec& s = r.spec;
        out += s.id + ",";
        if (r.synthetic) {
            out += std::string(family_name(s.family)) + "," + format_double(s.mu_ind) + "," +
                   format_double(s.sigma_ind) + "," + format_double(s.mu_ood) + "," + format_double(s.sigma_ood) +
                   "," + std::to_string(s.n_ind) + "," + std::to_string(s.n_ood) + "," + std::to_string(s.seed);
        } else {
            out += "external,,,,,,,";
        }
        out += "," + r.split + "," + std::to_string(kFormatVersion) + "\n";
    }
    return out;
}

std::vector<ManifestRow> parse_manifest_text(std::string_view text, std::string_view origin)
{
    const auto rows = read_table(text, kManifestHeader, origin);
    std::unordered_set<std::string> seen;
    std::vector<ManifestRow> out;
    for (const CsvRow& r : rows) {
        check_version(r, 10, origin);
        ManifestRow m;
        m.spec.id = std::string(r.fields[0]);
        if (m.spec.id.empty() || m.spec.id.find('/') != std::string::npos)
            parse_error(origin, r.line, "invalid set id '" + m.spec.id + "'");
        if (!seen.insert(m.spec.id).second)
            parse_error(origin, r.line, "duplicate set id '" + m.spec.id + "'");
        m.split = std::string(r.fields[9]);
        if (r.fields[1] == "external") {
            m.synthetic = false;
        } else {
            try {
                m.spec.family = parse_family(r.fields[1]);
            } catch (const Error&) {
                parse_error(origin, r.line, "invalid family '" + std::string(r.fields[1]) + "'");
            }
            m.spec.mu_ind = field_double(r, 2, "mu_ind", origin);
            m.spec.sigma_ind = field_double(r, 3, "sigma_ind", origin);
            m.spec.mu_ood = field_double(r, 4, "mu_ood", origin);
            m.spec.sigma_ood = field_double(r, 5, "sigma_ood", origin);
            m.spec.n_ind = field_integer<std::size_t>(r, 6, "n_ind", origin);
            m.spec.n_ood = field_integer<std::size_t>(r, 7, "n_ood", origin);
            m.spec.seed = field_integer<std::uint64_t>(r, 8, "seed", origin);
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<ManifestRow> parse_manifest_file(const fs::path& path)
{
    return parse_manifest_text(read_text_file(path), path.string());
}

void write_manifest_file(std::span<const ManifestRow> rows, const fs::path& path)
{
    write_file_atomic(path, format_manifest(rows));
}

fs::path set_path(const fs::path& manifest, std::string_view id)
{
    const fs::path dir = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
    return dir / "sets" / (std::string(id) + ".csv");
}

MetaSuite load_suite(const fs::path& manifest, std::string_view split, bool labeled)
{
    std::vector<ScoreSet> sets;
    for (const ManifestRow& r : parse_manifest_file(manifest)) {
        if (!split.empty() && r.split != split)
            continue;
        ScoreSet s = parse_score_file(set_path(manifest, r.spec.id), r.spec.id);
        if (labeled && !s.labeled())
            throw Error(ErrorCode::UnsupportedMetric, "set '" + r.spec.id + "' has no labels");
        sets.push_back(std::move(s));
    }
    if (sets.empty())
        throw Error(ErrorCode::Input, "manifest '" + manifest.string() + "' has no sets with split '" +
                                          std::string(split) + "'");
    return MetaSuite(std::move(sets), labeled);
}

// --- reports

namespace {

constexpr std::string_view kReportHeader[] = {"record",   "id",         "metric", "gscore",        "truth_pct",
                                              "predicted_pct", "degenerate", "value", "format_version"};

std::string optional_text(const std::optional<double>& v)
{
    return v ? format_double(*v) : std::string();
}

} // namespace

std::string format_report(const MetricReport& report)
{
    const std::string metric = target_metric_name(report.metric);
    const std::string version = std::to_string(kFormatVersion);
    std::string out = join(kReportHeader) + "\n";
    for (const SetRecord& r : report.records) {
        out += "set," + r.id + "," + metric + "," + format_double(r.gscore) + "," +
               optional_text(r.truth_pct) + "," + format_double(r.predicted_pct) + "," + (r.degenerate ? "1" : "0") + ",," + version + "\n";
    }
    auto summary = [&](std::string_view name, const std::optional<double>& v) {
        out += "summary," + std::string(name) + "," + metric + ",,,,," + optional_text(v) + "," + version + "\n";
    };
    summary("rmse_pct", report.rmse_pct);
    summary("pearson", report.pearson);
    summary("spearman", report.spearman);
    return out;
}

MetricReport parse_report_text(std::string_view text, std::string_view origin)
{
    const auto rows = read_table(text, kReportHeader, origin);
    MetricReport report;
    bool have_metric = false;
    bool have_rmse = false;
    for (const CsvRow& r : rows) {
        check_version(r, 8, origin);
        TargetMetric metric;
        try {
            metric = parse_target_metric(r.fields[2]);
        } catch (const Error&) {
            parse_error(origin, r.line, "invalid metric '" + std::string(r.fields[2]) + "'");
        }
        if (have_metric && !(metric == report.metric))
            parse_error(origin, r.line, "report mixes metrics");
        report.metric = metric;
        have_metric = true;

        if (r.fields[0] == "set") {
            SetRecord s;
            s.id = std::string(r.fields[1]);
            s.gscore = field_double(r, 3, "gscore", origin);
            s.truth_pct = field_optional_double(r, 4, "truth_pct", origin);
            s.predicted_pct = field_double(r, 5, "predicted_pct", origin);
            s.degenerate = field_bool(r, 6, "degenerate", origin);
            report.records.push_back(std::move(s));
        } else if (r.fields[0] == "summary") {
            const auto v = field_optional_double(r, 7, "value", origin);
            if (r.fields[1] == "rmse_pct") {
                if (!v)
                    parse_error(origin, r.line, "rmse_pct needs a value");
                report.rmse_pct = *v;
                have_rmse = true;
            } else if (r.fields[1] == "pearson") {
                report.pearson = v;
            } else if (r.fields[1] == "spearman") {
                report.spearman = v;
            } else {
                parse_error(origin, r.line, "unknown summary '" + std::string(r.fields[1]) + "'");
            }
        } else {
            parse_error(origin, r.line, "unknown record kind '" + std::string(r.fields[0]) + "'");
        }
    }
    if (!have_rmse)
        parse_error(origin, rows.empty() ? 1 : rows.back().line, "report has no rmse_pct summary");
    return report;
}

MetricReport parse_report_file(const fs::path& path)
{
    return parse_report_text(read_text_file(path), path.string());
}

void write_report_file(const MetricReport& report, const fs::path& path)
{
    write_file_atomic(path, format_report(report));
}

// --- predictions, sweeps, scatter

namespace {

constexpr std::string_view kPredictionHeader[] = {"id", "gscore", "degenerate", "predicted_pct", "format_version"};
constexpr std::string_view kSweepHeader[] = {"axis", "cell", "n_sets", "tau", "pearson", "spearman", "format_version"};
constexpr std::string_view kScatterHeader[] = {"id", "gscore", "truth_pct", "format_version"};

} // namespace

std::string format_predictions(std::span<const PredictionRow> rows)
{
    std::string out = join(kPredictionHeader) + "\n";
    for (const PredictionRow& r : rows)
        out += r.id + "," + format_double(r.gscore) + "," + (r.degenerate ? "1" : "0") + "," +
               format_double(r.predicted_pct) + "," + std::to_string(kFormatVersion) + "\n";
    return out;
}

std::vector<PredictionRow> parse_predictions_text(std::string_view text, std::string_view origin)
{
    std::vector<PredictionRow> out;
    for (const CsvRow& r : read_table(text, kPredictionHeader, origin)) {
        check_version(r, 4, origin);
        PredictionRow p;
        p.id = std::string(r.fields[0]);
        p.gscore = field_double(r, 1, "gscore", origin);
        p.degenerate = field_bool(r, 2, "degenerate", origin);
        p.predicted_pct = field_double(r, 3, "predicted_pct", origin);
        out.push_back(std::move(p));
    }
    return out;
}

std::string format_sweep(std::span<const SweepRow> rows)
{
    std::string out = join(kSweepHeader) + "\n";
    for (const SweepRow& r : rows)
        out += r.axis + "," + r.cell + "," + std::to_string(r.n_sets) + "," + format_double(r.tau) + "," +
               format_double(r.pearson) + "," + format_double(r.spearman) + "," + std::to_string(kFormatVersion) +
               "\n";
    return out;
}

std::vector<SweepRow> parse_sweep_text(std::string_view text, std::string_view origin)
{
    std::vector<SweepRow> out;
    for (const CsvRow& r : read_table(text, kSweepHeader, origin)) {
        check_version(r, 6, origin);
        SweepRow s;
        s.axis = std::string(r.fields[0]);
        s.cell = std::string(r.fields[1]);
        s.n_sets = field_integer<std::size_t>(r, 2, "n_sets", origin);
        s.tau = field_double(r, 3, "tau", origin);
        s.pearson = field_double(r, 4, "pearson", origin);
        s.spearman = field_double(r, 5, "spearman", origin);
        out.push_back(std::move(s));
    }
    return out;
}

std::string format_scatter(std::span<const ScatterRow> rows)
{
    std::string out = join(kScatterHeader) + "\n";
    for (const ScatterRow& r : rows)
        out += r.id + "," + format_double(r.gscore) + "," + format_double(r.truth_pct) + "," +
               std::to_string(kFormatVersion) + "\n";
    return out;
}

std::vector<ScatterRow> parse_scatter_text(std::string_view text, std::string_view origin)
{
    std::vector<ScatterRow> out;
    for (const CsvRow& r : read_table(text, kScatterHeader, origin)) {
        check_version(r, 3, origin);
        out.push_back({std::string(r.fields[0]), field_double(r, 1, "gscore", origin),
                       field_double(r, 2, "truth_pct", origin)});
    }
    return out;
}

} // namespace oodeval::io
