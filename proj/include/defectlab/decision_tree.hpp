#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "defectlab/model.hpp"

namespace defectlab {

struct TreeParams {
    int max_depth = 10; // 0 = unlimited
    int min_leaf = 2;   // both sides of every split hold at least this many
};

// Gini impurity of a node holding `positives` out of `total` instances.
double gini_impurity(std::size_t positives, std::size_t total);

struct TreeNode {
    // internal node: feature >= 0, x[feature] <= threshold goes left
    int feature = -1;
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left, right;
    // leaf payload: class counts and Laplace-smoothed Defective fraction
    std::size_t count_defective = 0;
    std::size_t count_total = 0;
    double leaf_score = 0.0;

    bool is_leaf() const { return feature < 0; }
};

// Chooses, per node, the candidate feature indices to consider. Forests use
// this to restrict splits to a random subset; a null sampler means all.
using FeatureSampler = std::function<void(std::vector<int>& candidates)>;

// Greedy CART: at each node the (feature, threshold) pair minimizing the
// weighted Gini impurity over candidate thresholds, which are midpoints of
// consecutive distinct sorted values. Equal-impurity ties resolve to the
// lowest feature index, then the lowest threshold. Leaf scores are
// Laplace-smoothed Defective fractions (d+1)/(n+2).
class DecisionTreeModel final : public TrainedModel {
public:
    DecisionTreeModel(const Dataset& train, const TreeParams& params,
                      const FeatureSampler& sampler = nullptr);
    explicit DecisionTreeModel(const nlohmann::json& artifact);
    // deserialization/aggregation entry: adopt a prebuilt tree
    DecisionTreeModel(std::unique_ptr<TreeNode> root, std::size_t dimension,
                      const TreeParams& params);

    double score(std::span<const double> features) const override;
    std::string kind() const override { return "decision_tree"; }
    std::size_t input_dimension() const override { return dimension_; }
    nlohmann::json to_json() const override;

    const TreeNode& root() const { return *root_; }
    const TreeParams& params() const { return params_; }

private:
    TreeParams params_;
    std::size_t dimension_ = 0;
    std::unique_ptr<TreeNode> root_;
};

ModelPtr tree_fit(const Dataset& train, const TreeParams& params = {});

// Regression tree over a real-valued target (used by classification-by-
// regression): same threshold enumeration, split criterion = weighted sum of
// squared deviations, leaf value = mean target.
struct RegressionTreeNode {
    int feature = -1;
    double threshold = 0.0;
    std::unique_ptr<RegressionTreeNode> left, right;
    double value = 0.0;
    bool is_leaf() const { return feature < 0; }
};

class RegressionTree {
public:
    RegressionTree(const std::vector<std::vector<double>>& rows,
                   const std::vector<double>& targets, const TreeParams& params);
    explicit RegressionTree(const nlohmann::json& artifact);

    double predict(std::span<const double> features) const;
    nlohmann::json to_json() const;

private:
    std::unique_ptr<RegressionTreeNode> root_;
};

nlohmann::json tree_node_to_json(const TreeNode& node);
std::unique_ptr<TreeNode> tree_node_from_json(const nlohmann::json& j);

} // namespace defectlab
