#include "oodeval/score_set.hpp"

#include "oodeval/error.hpp"

#include <algorithm>
#include <cmath>

namespace oodeval {

namespace {

void check_scores(const std::string& id, const std::vector<double>& scores)
{
    if (scores.empty())
        throw Error(ErrorCode::Input, "score set '" + id + "' is empty");
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!std::isfinite(scores[i]))
            throw Error(ErrorCode::Input,
                        "score set '" + id + "' has a non-finite score at index " + std::to_string(i));
    }
}

} // namespace

ScoreSet::ScoreSet(std::string id, std::vector<double> scores)
    : id_(std::move(id)), scores_(std::move(scores))
{
    check_scores(id_, scores_);
}

ScoreSet::ScoreSet(std::string id, std::vector<double> scores, std::vector<Label> labels)
    : id_(std::move(id)), scores_(std::move(scores)), labels_(std::move(labels))
{
    check_scores(id_, scores_);
    if (labels_->size() != scores_.size())
        throw Error(ErrorCode::Input, "score set '" + id_ + "': label count does not match score count");
}

std::span<const Label> ScoreSet::labels() const
{
    if (!labels_)
        throw Error(ErrorCode::UnsupportedMetric, "score set '" + id_ + "' has no labels");
    return *labels_;
}

std::size_t ScoreSet::count(Label which) const
{
    if (!labels_)
        return 0;
    return static_cast<std::size_t>(std::count(labels_->begin(), labels_->end(), which));
}

void ScoreSet::require_both_classes() const
{
    if (!labels_)
        throw Error(ErrorCode::UnsupportedMetric, "score set '" + id_ + "' has no labels");
    if (count(Label::Ind) == 0 || count(Label::Ood) == 0)
        throw Error(ErrorCode::UnsupportedMetric,
                    "score set '" + id_ + "' needs at least one IND and one OOD sample");
}

std::vector<double> ScoreSet::scores_of(Label which) const
{
    auto labels = this->labels();
    std::vector<double> out;
    for (std::size_t i = 0; i < scores_.size(); ++i)
        if (labels[i] == which)
            out.push_back(scores_[i]);
    return out;
}

ScoreSet ScoreSet::without_labels() const
{
    return ScoreSet(id_, scores_);
}

ScoreSet ScoreSet::with_id(std::string id) const
{
    ScoreSet copy = *this;
    copy.id_ = std::move(id);
    return copy;
}

} // namespace oodeval
