#pragma once

#include <cstdint>
#include <vector>

#include "defectlab/dataset.hpp"

namespace defectlab {

struct SplitPlan {
    enum class Kind { holdout, kfold };
    Kind kind = Kind::kfold;
    double train_fraction = 0.7; // holdout only, in (0,1)
    int k = 10;                  // kfold only, >= 2
    bool stratified = true;
    std::uint64_t seed = 0;

    static SplitPlan holdout(double train_fraction, bool stratified, std::uint64_t seed);
    static SplitPlan kfold(int k, bool stratified, std::uint64_t seed);
};

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Index-based splits; instances are never copied. Deterministic under
// (dataset checksum/content, plan.seed). For a k-fold plan the test sets
// partition the index set exactly; stratified folds keep each class within
// one instance of its proportional share.
std::vector<Split> make_splits(const Dataset& dataset, const SplitPlan& plan);

Dataset subset(const Dataset& dataset, const std::vector<std::size_t>& indices,
               const char* origin_suffix = "");

} // namespace defectlab
