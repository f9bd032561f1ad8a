#include "defectlab/bagging.hpp"

#include "defectlab/error.hpp"
#include "defectlab/resampling.hpp"
#include "defectlab/rng.hpp"

namespace defectlab {

BaggingModel::BaggingModel(const Dataset& train, const BaggingParams& params)
    : params_(params), dimension_(train.feature_count()) {
    if (train.instances.empty())
        throw Error(ErrorCode::empty_dataset, "bagging_fit on empty dataset");
    if (params_.n_rounds < 1)
        throw Error(ErrorCode::config_error, "bagging needs n_rounds >= 1");

    models_.reserve(static_cast<std::size_t>(params_.n_rounds));
    for (int round = 0; round < params_.n_rounds; ++round) {
        const std::uint64_t round_seed =
            derive_seed(params_.seed, 0xba660ULL + static_cast<std::uint64_t>(round));
        if (params_.bootstrap_replicates) {
            Dataset replicate = bootstrap_sample(train, train.size(), round_seed);
            models_.push_back(fit_learner(replicate, params_.inner,
                                          derive_seed(round_seed, 1)));
        } else {
            models_.push_back(fit_learner(train, params_.inner, derive_seed(round_seed, 1)));
        }
    }

    record_metadata(train);
    set_metadata("n_rounds", std::to_string(params_.n_rounds));
    set_metadata("inner", learner_kind_name(params_.inner.kind));
}

double BaggingModel::score(std::span<const double> features) const {
    double sum = 0.0;
    for (const auto& model : models_) sum += model->score(features);
    return sum / static_cast<double>(models_.size());
}

double BaggingModel::threshold() const { return models_.front()->threshold(); }

nlohmann::json BaggingModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["n_rounds"] = params_.n_rounds;
    j["bootstrap_replicates"] = params_.bootstrap_replicates;
    j["inner_spec"] = learner_spec_to_json(params_.inner);
    j["seed"] = params_.seed;
    j["dimension"] = dimension_;
    nlohmann::json models = nlohmann::json::array();
    for (const auto& model : models_) models.push_back(model->to_json());
    j["models"] = std::move(models);
    j["metadata"] = metadata_json();
    return j;
}

BaggingModel::BaggingModel(const nlohmann::json& artifact) {
    params_.n_rounds = artifact.at("n_rounds").get<int>();
    params_.bootstrap_replicates = artifact.at("bootstrap_replicates").get<bool>();
    params_.inner = learner_spec_from_json(artifact.at("inner_spec"));
    params_.seed = artifact.at("seed").get<std::uint64_t>();
    dimension_ = artifact.at("dimension").get<std::size_t>();
    for (const auto& model : artifact.at("models"))
        models_.push_back(model_from_json(model));
    restore_metadata(artifact.at("metadata"));
}

ModelPtr bagging_fit(const Dataset& train, const BaggingParams& params) {
    return std::make_unique<BaggingModel>(train, params);
}

} // namespace defectlab
