#include "defectlab/splits.hpp"

#include <algorithm>
#include <cmath>

#include "defectlab/error.hpp"
#include "defectlab/rng.hpp"

namespace defectlab {

SplitPlan SplitPlan::holdout(double train_fraction, bool stratified, std::uint64_t seed) {
    SplitPlan plan;
    plan.kind = Kind::holdout;
    plan.train_fraction = train_fraction;
    plan.stratified = stratified;
    plan.seed = seed;
    return plan;
}

SplitPlan SplitPlan::kfold(int k, bool stratified, std::uint64_t seed) {
    SplitPlan plan;
    plan.kind = Kind::kfold;
    plan.k = k;
    plan.stratified = stratified;
    plan.seed = seed;
    return plan;
}

namespace {

// The split stream is a function of both the plan seed and the data
// identity, so the same seed on different files produces independent splits.
std::uint64_t split_seed(const Dataset& dataset, const SplitPlan& plan) {
    std::uint64_t content = 0xcbf29ce484222325ULL;
    for (char c : dataset.checksum) content = (content ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    if (dataset.checksum.empty()) content ^= dataset.size() * 0x9e3779b97f4a7c15ULL;
    return derive_seed(plan.seed, content);
}

std::vector<std::vector<std::size_t>> indices_by_class(const Dataset& dataset) {
    std::vector<std::vector<std::size_t>> groups(2);
    for (std::size_t i = 0; i < dataset.size(); ++i)
        groups[dataset.instances[i].label == ClassLabel::defective ? 1 : 0].push_back(i);
    return groups;
}

void validate_plan(const Dataset& dataset, const SplitPlan& plan) {
    if (dataset.instances.empty())
        throw Error(ErrorCode::empty_dataset, "cannot split an empty dataset");
    if (plan.kind == SplitPlan::Kind::holdout) {
        if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0))
            throw Error(ErrorCode::config_error, "holdout train_fraction must lie in (0,1)");
    } else {
        if (plan.k < 2)
            throw Error(ErrorCode::config_error, "kfold requires k >= 2");
        if (static_cast<std::size_t>(plan.k) > dataset.size())
            throw Error(ErrorCode::too_few_instances_for_folds,
                        std::to_string(dataset.size()) + " instances cannot fill " +
                            std::to_string(plan.k) + " folds");
        if (plan.stratified) {
            for (const auto& group : indices_by_class(dataset))
                if (!group.empty() && group.size() < static_cast<std::size_t>(plan.k))
                    throw Error(ErrorCode::too_few_instances_for_folds,
                                "a class with " + std::to_string(group.size()) +
                                    " members cannot be stratified across " +
                                    std::to_string(plan.k) + " folds");
        }
    }
}

std::vector<Split> kfold_splits(const Dataset& dataset, const SplitPlan& plan, Rng& rng) {
    const int k = plan.k;
    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));

    auto deal = [&](std::vector<std::size_t>& group) {
        rng.shuffle(group);
        // near-equal chunks; fold j receives either floor or ceil of n/k
        const std::size_t n = group.size();
        std::size_t begin = 0;
        for (int j = 0; j < k; ++j) {
            const std::size_t len = n / k + (static_cast<std::size_t>(j) < n % k ? 1 : 0);
            folds[static_cast<std::size_t>(j)].insert(folds[static_cast<std::size_t>(j)].end(),
                                                      group.begin() + static_cast<long>(begin),
                                                      group.begin() + static_cast<long>(begin + len));
            begin += len;
        }
    };

    if (plan.stratified) {
        for (auto& group : indices_by_class(dataset))
            if (!group.empty()) deal(group);
    } else {
        std::vector<std::size_t> all(dataset.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        deal(all);
    }

    std::vector<Split> splits(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto& split = splits[static_cast<std::size_t>(j)];
        split.test = folds[static_cast<std::size_t>(j)];
        std::sort(split.test.begin(), split.test.end());
        for (int other = 0; other < k; ++other)
            if (other != j)
                split.train.insert(split.train.end(), folds[static_cast<std::size_t>(other)].begin(),
                                   folds[static_cast<std::size_t>(other)].end());
        std::sort(split.train.begin(), split.train.end());
    }
    return splits;
}

std::vector<Split> holdout_split(const Dataset& dataset, const SplitPlan& plan, Rng& rng) {
    const std::size_t n = dataset.size();
    std::size_t train_target = static_cast<std::size_t>(
        std::llround(plan.train_fraction * static_cast<double>(n)));
    train_target = std::clamp<std::size_t>(train_target, 1, n - 1);

    Split split;
    if (plan.stratified) {
        // largest-remainder apportionment so the train total is exact
        auto groups = indices_by_class(dataset);
        for (auto& group : groups) rng.shuffle(group);
        std::vector<std::size_t> take(groups.size(), 0);
        std::vector<double> remainder(groups.size(), 0.0);
        std::size_t assigned = 0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const double exact = plan.train_fraction * static_cast<double>(groups[g].size());
            take[g] = static_cast<std::size_t>(exact);
            take[g] = std::min(take[g], groups[g].size());
            remainder[g] = exact - static_cast<double>(take[g]);
            assigned += take[g];
        }
        while (assigned < train_target) {
            std::size_t best = groups.size();
            for (std::size_t g = 0; g < groups.size(); ++g)
                if (take[g] < groups[g].size() &&
                    (best == groups.size() || remainder[g] > remainder[best]))
                    best = g;
            if (best == groups.size()) break;
            ++take[best];
            remainder[best] = -1.0;
            ++assigned;
        }
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (std::size_t i = 0; i < groups[g].size(); ++i)
                (i < take[g] ? split.train : split.test).push_back(groups[g][i]);
        }
    } else {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        rng.shuffle(all);
        split.train.assign(all.begin(), all.begin() + static_cast<long>(train_target));
        split.test.assign(all.begin() + static_cast<long>(train_target), all.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    if (split.train.empty() || split.test.empty())
        throw Error(ErrorCode::too_few_instances_for_folds,
                    "holdout split left an empty train or test portion");
    return {split};
}

} // namespace

std::vector<Split> make_splits(const Dataset& dataset, const SplitPlan& plan) {
    validate_plan(dataset, plan);
    Rng rng(split_seed(dataset, plan));
    if (plan.kind == SplitPlan::Kind::kfold) return kfold_splits(dataset, plan, rng);
    return holdout_split(dataset, plan, rng);
}

Dataset subset(const Dataset& dataset, const std::vector<std::size_t>& indices,
               const char* origin_suffix) {
    Dataset out;
    out.schema = dataset.schema;
    out.origin = dataset.origin + origin_suffix;
    out.checksum = dataset.checksum;
    out.instances.reserve(indices.size());
    for (std::size_t idx : indices) out.instances.push_back(dataset.instances[idx]);
    return out;
}

} // namespace defectlab
