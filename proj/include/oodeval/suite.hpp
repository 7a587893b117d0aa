#pragma once

#include "oodeval/score_set.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oodeval {

/// Ordered collection of score sets with unique ids. A labeled suite has
/// both classes in every set.
class MetaSuite {
public:
    MetaSuite() = default;
    MetaSuite(std::vector<ScoreSet> sets, bool labeled);

    std::span<const ScoreSet> sets() const noexcept { return sets_; }
    std::size_t size() const noexcept { return sets_.size(); }
    bool labeled() const noexcept { return labeled_; }
    const ScoreSet& operator[](std::size_t i) const { return sets_[i]; }

    std::vector<std::string> ids() const;

private:
    std::vector<ScoreSet> sets_;
    bool labeled_ = false;
};

// Throws E_LEAKAGE if any id of `test` also appears in `train_ids`.
void require_disjoint(std::span<const std::string> train_ids, const MetaSuite& test);

// splitmix64 finalizer applied to base + (index + 1) * golden-ratio
// increment. Per-item seeds come from here so that parallel and serial
// loops see identical streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace oodeval
