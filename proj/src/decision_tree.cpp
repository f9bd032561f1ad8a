#include "defectlab/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "defectlab/error.hpp"

namespace defectlab {

double gini_impurity(std::size_t positives, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(positives) / static_cast<double>(total);
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

namespace {

// Split quality shared by the greedy builder and by test oracles: the
// impurity-weighted sum n_l*gini_l + n_r*gini_r computed from integer
// counts (normalization by the node size does not change the argmin).
double weighted_gini_cost(std::size_t left_pos, std::size_t left_total,
                          std::size_t right_pos, std::size_t right_total) {
    return static_cast<double>(left_total) * gini_impurity(left_pos, left_total) +
           static_cast<double>(right_total) * gini_impurity(right_pos, right_total);
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double cost = std::numeric_limits<double>::infinity();
};

struct ValueLabel {
    double value;
    int positive;
};

class ClassificationBuilder {
public:
    ClassificationBuilder(const Dataset& train, const TreeParams& params,
                          const FeatureSampler& sampler)
        : params_(params), sampler_(sampler), dimension_(train.feature_count()) {
        rows_.reserve(train.size());
        for (const auto& inst : train.instances) rows_.push_back(&inst);
    }

    std::unique_ptr<TreeNode> build() {
        std::vector<std::size_t> all(rows_.size());
        std::iota(all.begin(), all.end(), 0);
        return grow(all, 1);
    }

private:
    std::unique_ptr<TreeNode> grow(const std::vector<std::size_t>& members, int depth) {
        auto node = std::make_unique<TreeNode>();
        node->count_total = members.size();
        for (std::size_t i : members)
            if (rows_[i]->label == ClassLabel::defective) ++node->count_defective;
        node->leaf_score = (static_cast<double>(node->count_defective) + 1.0) /
                           (static_cast<double>(node->count_total) + 2.0);

        const bool pure =
            node->count_defective == 0 || node->count_defective == node->count_total;
        const bool depth_capped = params_.max_depth > 0 && depth > params_.max_depth;
        if (pure || depth_capped ||
            members.size() < 2 * static_cast<std::size_t>(params_.min_leaf))
            return node;

        const SplitChoice choice = best_split(members);
        if (choice.feature < 0) return node; // no valid split (constant features)

        std::vector<std::size_t> left, right;
        for (std::size_t i : members)
            (rows_[i]->features[static_cast<std::size_t>(choice.feature)] <= choice.threshold
                 ? left
                 : right)
                .push_back(i);
        node->feature = choice.feature;
        node->threshold = choice.threshold;
        node->left = grow(left, depth + 1);
        node->right = grow(right, depth + 1);
        return node;
    }

    SplitChoice best_split(const std::vector<std::size_t>& members) {
        std::vector<int> candidates(dimension_);
        std::iota(candidates.begin(), candidates.end(), 0);
        if (sampler_) sampler_(candidates);
        std::sort(candidates.begin(), candidates.end());

        const std::size_t total = members.size();
        std::size_t total_pos = 0;
        for (std::size_t i : members)
            if (rows_[i]->label == ClassLabel::defective) ++total_pos;

        SplitChoice best;
        std::vector<ValueLabel> column;
        column.reserve(total);
        const std::size_t min_leaf = static_cast<std::size_t>(params_.min_leaf);

        for (int f : candidates) {
            column.clear();
            for (std::size_t i : members)
                column.push_back({rows_[i]->features[static_cast<std::size_t>(f)],
                                  rows_[i]->label == ClassLabel::defective ? 1 : 0});
            std::sort(column.begin(), column.end(),
                      [](const ValueLabel& a, const ValueLabel& b) { return a.value < b.value; });

            std::size_t left_total = 0, left_pos = 0;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                left_total += 1;
                left_pos += static_cast<std::size_t>(column[i].positive);
                if (column[i].value == column[i + 1].value) continue;
                if (left_total < min_leaf || total - left_total < min_leaf) continue;
                const double threshold = column[i].value +
                                         (column[i + 1].value - column[i].value) / 2.0;
                // a midpoint can round onto the lower value; x <= threshold
                // still separates the two distinct values
                const double cost = weighted_gini_cost(left_pos, left_total,
                                                       total_pos - left_pos,
                                                       total - left_total);
                if (cost < best.cost) {
                    best.cost = cost;
                    best.feature = f;
                    best.threshold = threshold;
                }
            }
        }
        return best;
    }

    const TreeParams& params_;
    const FeatureSampler& sampler_;
    std::size_t dimension_;
    std::vector<const Instance*> rows_;
};

const TreeNode* descend(const TreeNode* node, std::span<const double> x) {
    while (!node->is_leaf())
        node = x[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? node->left.get()
                   : node->right.get();
    return node;
}

} // namespace

DecisionTreeModel::DecisionTreeModel(const Dataset& train, const TreeParams& params,
                                     const FeatureSampler& sampler)
    : params_(params), dimension_(train.feature_count()) {
    if (train.instances.empty())
        throw Error(ErrorCode::empty_dataset, "tree_fit on empty dataset");
    ClassificationBuilder builder(train, params_, sampler);
    root_ = builder.build();
    record_metadata(train);
    set_metadata("max_depth", std::to_string(params_.max_depth));
    set_metadata("min_leaf", std::to_string(params_.min_leaf));
}

DecisionTreeModel::DecisionTreeModel(std::unique_ptr<TreeNode> root, std::size_t dimension,
                                     const TreeParams& params)
    : params_(params), dimension_(dimension), root_(std::move(root)) {}

double DecisionTreeModel::score(std::span<const double> features) const {
    return descend(root_.get(), features)->leaf_score;
}

nlohmann::json tree_node_to_json(const TreeNode& node) {
    nlohmann::json j;
    if (node.is_leaf()) {
        j["defective"] = node.count_defective;
        j["total"] = node.count_total;
        j["score"] = node.leaf_score;
    } else {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = tree_node_to_json(*node.left);
        j["right"] = tree_node_to_json(*node.right);
    }
    return j;
}

std::unique_ptr<TreeNode> tree_node_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<TreeNode>();
    if (j.contains("feature")) {
        node->feature = j.at("feature").get<int>();
        node->threshold = j.at("threshold").get<double>();
        node->left = tree_node_from_json(j.at("left"));
        node->right = tree_node_from_json(j.at("right"));
    } else {
        node->count_defective = j.at("defective").get<std::size_t>();
        node->count_total = j.at("total").get<std::size_t>();
        node->leaf_score = j.at("score").get<double>();
    }
    return node;
}

nlohmann::json DecisionTreeModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["max_depth"] = params_.max_depth;
    j["min_leaf"] = params_.min_leaf;
    j["dimension"] = dimension_;
    j["root"] = tree_node_to_json(*root_);
    j["metadata"] = metadata_json();
    return j;
}

DecisionTreeModel::DecisionTreeModel(const nlohmann::json& artifact) {
    params_.max_depth = artifact.at("max_depth").get<int>();
    params_.min_leaf = artifact.at("min_leaf").get<int>();
    dimension_ = artifact.at("dimension").get<std::size_t>();
    root_ = tree_node_from_json(artifact.at("root"));
    restore_metadata(artifact.at("metadata"));
}

ModelPtr tree_fit(const Dataset& train, const TreeParams& params) {
    return std::make_unique<DecisionTreeModel>(train, params);
}

// ---------------------------------------------------------------------------
// Regression tree

namespace {

struct RegressionBuilder {
    const std::vector<std::vector<double>>& rows;
    const std::vector<double>& targets;
    const TreeParams& params;

    std::unique_ptr<RegressionTreeNode> grow(const std::vector<std::size_t>& members,
                                             int depth) {
        auto node = std::make_unique<RegressionTreeNode>();
        double sum = 0.0;
        for (std::size_t i : members) sum += targets[i];
        node->value = sum / static_cast<double>(members.size());

        double ss = 0.0;
        for (std::size_t i : members) {
            const double d = targets[i] - node->value;
            ss += d * d;
        }
        const bool depth_capped = params.max_depth > 0 && depth > params.max_depth;
        if (ss == 0.0 || depth_capped ||
            members.size() < 2 * static_cast<std::size_t>(params.min_leaf))
            return node;

        // best (feature, midpoint) by weighted squared deviation
        int best_feature = -1;
        double best_threshold = 0.0;
        double best_cost = std::numeric_limits<double>::infinity();
        const std::size_t min_leaf = static_cast<std::size_t>(params.min_leaf);

        std::vector<std::pair<double, double>> column; // (value, target)
        for (std::size_t f = 0; f < rows[0].size(); ++f) {
            column.clear();
            for (std::size_t i : members) column.push_back({rows[i][f], targets[i]});
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            double left_sum = 0.0, left_sq = 0.0;
            double total_sum = 0.0, total_sq = 0.0;
            for (const auto& [v, t] : column) {
                total_sum += t;
                total_sq += t * t;
            }
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                left_sum += column[i].second;
                left_sq += column[i].second * column[i].second;
                const std::size_t nl = i + 1;
                const std::size_t nr = column.size() - nl;
                if (column[i].first == column[i + 1].first) continue;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double right_sum = total_sum - left_sum;
                const double right_sq = total_sq - left_sq;
                const double cost =
                    (left_sq - left_sum * left_sum / static_cast<double>(nl)) +
                    (right_sq - right_sum * right_sum / static_cast<double>(nr));
                if (cost < best_cost) {
                    best_cost = cost;
                    best_feature = static_cast<int>(f);
                    best_threshold =
                        column[i].first + (column[i + 1].first - column[i].first) / 2.0;
                }
            }
        }
        if (best_feature < 0) return node;

        std::vector<std::size_t> left, right;
        for (std::size_t i : members)
            (rows[i][static_cast<std::size_t>(best_feature)] <= best_threshold ? left : right)
                .push_back(i);
        node->feature = best_feature;
        node->threshold = best_threshold;
        node->left = grow(left, depth + 1);
        node->right = grow(right, depth + 1);
        return node;
    }
};

nlohmann::json regression_node_to_json(const RegressionTreeNode& node) {
    nlohmann::json j;
    if (node.is_leaf()) {
        j["value"] = node.value;
    } else {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = regression_node_to_json(*node.left);
        j["right"] = regression_node_to_json(*node.right);
    }
    return j;
}

std::unique_ptr<RegressionTreeNode> regression_node_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<RegressionTreeNode>();
    if (j.contains("feature")) {
        node->feature = j.at("feature").get<int>();
        node->threshold = j.at("threshold").get<double>();
        node->left = regression_node_from_json(j.at("left"));
        node->right = regression_node_from_json(j.at("right"));
    } else {
        node->value = j.at("value").get<double>();
    }
    return node;
}

} // namespace

RegressionTree::RegressionTree(const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& targets,
                               const TreeParams& params) {
    if (rows.empty() || rows.size() != targets.size())
        throw Error(ErrorCode::internal_error, "regression tree input shape mismatch");
    RegressionBuilder builder{rows, targets, params};
    std::vector<std::size_t> all(rows.size());
    std::iota(all.begin(), all.end(), 0);
    root_ = builder.grow(all, 1);
}

double RegressionTree::predict(std::span<const double> features) const {
    const RegressionTreeNode* node = root_.get();
    while (!node->is_leaf())
        node = features[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? node->left.get()
                   : node->right.get();
    return node->value;
}

nlohmann::json RegressionTree::to_json() const { return regression_node_to_json(*root_); }

RegressionTree::RegressionTree(const nlohmann::json& artifact) {
    root_ = regression_node_from_json(artifact);
}

} // namespace defectlab
