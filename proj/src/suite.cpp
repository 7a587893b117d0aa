#include "oodeval/suite.hpp"

#include "oodeval/error.hpp"

#include <unordered_set>

namespace oodeval {

MetaSuite::MetaSuite(std::vector<ScoreSet> sets, bool labeled)
    : sets_(std::move(sets)), labeled_(labeled)
{
    std::unordered_set<std::string> seen;
    for (const ScoreSet& s : sets_) {
        if (!seen.insert(s.id()).second)
            throw Error(ErrorCode::Input, "duplicate set id '" + s.id() + "' in suite");
        if (labeled_)
            s.require_both_classes();
    }
}

std::vector<std::string> MetaSuite::ids() const
{
    std::vector<std::string> out;
    out.reserve(sets_.size());
    for (const ScoreSet& s : sets_)
        out.push_back(s.id());
    return out;
}

void require_disjoint(std::span<const std::string> train_ids, const MetaSuite& test)
{
    std::unordered_set<std::string> train(train_ids.begin(), train_ids.end());
    for (const ScoreSet& s : test.sets())
        if (train.contains(s.id()))
            throw Error(ErrorCode::Leakage, "test set '" + s.id() + "' also appears in the training suite");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index)
{
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace oodeval
