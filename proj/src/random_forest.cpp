#include "defectlab/random_forest.hpp"

#include <algorithm>
#include <cmath>

#include "defectlab/error.hpp"
#include "defectlab/rng.hpp"

namespace defectlab {

RandomForestModel::RandomForestModel(const Dataset& train, const ForestParams& params)
    : params_(params), dimension_(train.feature_count()) {
    if (train.instances.empty())
        throw Error(ErrorCode::empty_dataset, "forest_fit on empty dataset");
    if (params_.n_trees < 1)
        throw Error(ErrorCode::config_error, "forest needs n_trees >= 1");

    const int mtry = params_.features_per_split > 0
                         ? params_.features_per_split
                         : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(dimension_))));

    trees_.reserve(static_cast<std::size_t>(params_.n_trees));
    for (int tree_index = 0; tree_index < params_.n_trees; ++tree_index) {
        Rng rng(derive_seed(params_.seed, 0xf0f0ULL + static_cast<std::uint64_t>(tree_index)));

        Dataset replicate;
        const Dataset* fit_on = &train;
        if (params_.bootstrap) {
            replicate.schema = train.schema;
            replicate.checksum = train.checksum;
            replicate.origin = train.origin;
            replicate.instances.reserve(train.size());
            for (std::size_t i = 0; i < train.size(); ++i)
                replicate.instances.push_back(train.instances[rng.uniform_below(train.size())]);
            fit_on = &replicate;
        }

        FeatureSampler sampler;
        if (static_cast<std::size_t>(mtry) < dimension_) {
            sampler = [&rng, mtry](std::vector<int>& candidates) {
                // partial Fisher-Yates: first mtry entries are the sample
                for (int i = 0; i < mtry; ++i) {
                    const std::size_t j =
                        static_cast<std::size_t>(i) +
                        rng.uniform_below(candidates.size() - static_cast<std::size_t>(i));
                    std::swap(candidates[static_cast<std::size_t>(i)], candidates[j]);
                }
                candidates.resize(static_cast<std::size_t>(mtry));
            };
        }
        trees_.push_back(std::make_unique<DecisionTreeModel>(*fit_on, params_.tree, sampler));
    }

    record_metadata(train);
    set_metadata("n_trees", std::to_string(params_.n_trees));
    set_metadata("features_per_split", std::to_string(mtry));
    set_metadata("bootstrap", params_.bootstrap ? "true" : "false");
}

RandomForestModel::RandomForestModel(std::vector<std::unique_ptr<DecisionTreeModel>> trees,
                                     std::size_t dimension, const ForestParams& params)
    : params_(params), dimension_(dimension), trees_(std::move(trees)) {
    if (trees_.empty())
        throw Error(ErrorCode::config_error, "forest needs at least one tree");
}

double RandomForestModel::score(std::span<const double> features) const {
    double sum = 0.0;
    for (const auto& tree : trees_) sum += tree->score(features);
    return sum / static_cast<double>(trees_.size());
}

nlohmann::json RandomForestModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["n_trees"] = params_.n_trees;
    j["bootstrap"] = params_.bootstrap;
    j["features_per_split"] = params_.features_per_split;
    j["max_depth"] = params_.tree.max_depth;
    j["min_leaf"] = params_.tree.min_leaf;
    j["seed"] = params_.seed;
    j["dimension"] = dimension_;
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : trees_) trees.push_back(tree->to_json());
    j["trees"] = std::move(trees);
    j["metadata"] = metadata_json();
    return j;
}

RandomForestModel::RandomForestModel(const nlohmann::json& artifact) {
    params_.n_trees = artifact.at("n_trees").get<int>();
    params_.bootstrap = artifact.at("bootstrap").get<bool>();
    params_.features_per_split = artifact.at("features_per_split").get<int>();
    params_.tree.max_depth = artifact.at("max_depth").get<int>();
    params_.tree.min_leaf = artifact.at("min_leaf").get<int>();
    params_.seed = artifact.at("seed").get<std::uint64_t>();
    dimension_ = artifact.at("dimension").get<std::size_t>();
    for (const auto& tree : artifact.at("trees"))
        trees_.push_back(std::make_unique<DecisionTreeModel>(tree));
    restore_metadata(artifact.at("metadata"));
}

ModelPtr forest_fit(const Dataset& train, const ForestParams& params) {
    return std::make_unique<RandomForestModel>(train, params);
}

} // namespace defectlab
