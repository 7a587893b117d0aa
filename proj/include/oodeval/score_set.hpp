#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oodeval {

enum class Label { Ind, Ood };

/// Per-sample OOD scores (higher means more in-distribution) with optional
/// IND/OOD labels. Immutable once constructed.
class ScoreSet {
public:
    ScoreSet(std::string id, std::vector<double> scores);
    ScoreSet(std::string id, std::vector<double> scores, std::vector<Label> labels);

    const std::string& id() const noexcept { return id_; }
    std::span<const double> scores() const noexcept { return scores_; }
    std::size_t size() const noexcept { return scores_.size(); }

    bool labeled() const noexcept { return labels_.has_value(); }
    // Throws E_UNSUPPORTED_METRIC when the set is unlabeled.
    std::span<const Label> labels() const;

    std::size_t count(Label which) const;

    // Throws E_UNSUPPORTED_METRIC unless labels are present with both classes.
    void require_both_classes() const;

    // Scores of one class, in input order.
    std::vector<double> scores_of(Label which) const;

    ScoreSet without_labels() const;
    ScoreSet with_id(std::string id) const;

    bool operator==(const ScoreSet&) const = default;

private:
    std::string id_;
    std::vector<double> scores_;
    std::optional<std::vector<Label>> labels_;
};

struct LogitRow {
    std::string sample_id;
    std::vector<double> logits;
    std::optional<Label> label;
};

} // namespace oodeval
