#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "defectlab/decision_tree.hpp"
#include "defectlab/model.hpp"

namespace defectlab {

struct ForestParams {
    int n_trees = 100;
    bool bootstrap = true;        // per-tree bootstrap replicate of the training set
    int features_per_split = 0;   // 0 = ceil(sqrt(feature count))
    TreeParams tree;
    std::uint64_t seed = 0;
};

// Bagged CART ensemble with per-split random feature subsets. Score is the
// mean of the trees' leaf scores. Per-tree seeds derive deterministically
// from (seed, tree index).
class RandomForestModel final : public TrainedModel {
public:
    RandomForestModel(const Dataset& train, const ForestParams& params);
    explicit RandomForestModel(const nlohmann::json& artifact);
    // aggregation entry: adopt prebuilt trees
    RandomForestModel(std::vector<std::unique_ptr<DecisionTreeModel>> trees,
                      std::size_t dimension, const ForestParams& params);

    double score(std::span<const double> features) const override;
    std::string kind() const override { return "random_forest"; }
    std::size_t input_dimension() const override { return dimension_; }
    nlohmann::json to_json() const override;

    std::size_t tree_count() const { return trees_.size(); }

private:
    ForestParams params_;
    std::size_t dimension_ = 0;
    std::vector<std::unique_ptr<DecisionTreeModel>> trees_;
};

ModelPtr forest_fit(const Dataset& train, const ForestParams& params = {});

} // namespace defectlab
