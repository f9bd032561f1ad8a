#include "defectlab/stacking.hpp"

#include <algorithm>

#include "defectlab/error.hpp"
#include "defectlab/rng.hpp"
#include "defectlab/splits.hpp"

namespace defectlab {

namespace {

void validate_spec(const EnsembleSpec& spec) {
    if (spec.stage1.empty())
        throw Error(ErrorCode::config_error, "ensemble stage1 must not be empty");
}

FeatureSchema meta_schema(const FeatureSchema& base, std::size_t learners,
                          EnsembleSpec::Stage2::MetaInput mode) {
    FeatureSchema schema;
    schema.label_name = base.label_name;
    if (mode == EnsembleSpec::Stage2::MetaInput::features_plus_scores)
        schema.attributes = base.attributes;
    for (std::size_t l = 0; l < learners; ++l)
        schema.attributes.push_back({"stage1_score_" + std::to_string(l)});
    return schema;
}

} // namespace

StackedModel::StackedModel(const Dataset& train, const EnsembleSpec& spec,
                           StackingAudit* audit)
    : spec_(spec), dimension_(train.feature_count()) {
    validate_spec(spec_);
    if (!spec_.stage2)
        throw Error(ErrorCode::config_error, "StackedModel requires a stage-2 learner");
    const std::size_t n = train.size();
    const std::size_t learners = spec_.stage1.size();
    if (n < static_cast<std::size_t>(kStackingFolds) && !spec_.meta_insample)
        throw Error(ErrorCode::fold_too_small,
                    "stacking needs at least " + std::to_string(kStackingFolds) +
                        " training instances for out-of-fold scoring");

    // meta-feature matrix: one score column per stage-1 learner
    std::vector<std::vector<double>> meta_scores(learners, std::vector<double>(n, 0.0));

    if (audit) {
        audit->insample = spec_.meta_insample;
        audit->fold_of_instance.assign(n, -1);
        audit->scored_by_fold.assign(n, -1);
        audit->fold_train_indices.clear();
    }

    if (spec_.meta_insample) {
        // paper-faithful wiring: full-data models score their own training set
        for (std::size_t l = 0; l < learners; ++l) {
            ModelPtr model = fit_learner(train, spec_.stage1[l],
                                         derive_seed(spec_.seed, 1000 + l));
            for (std::size_t i = 0; i < n; ++i)
                meta_scores[l][i] = model->score(train.instances[i].features);
            stage1_.push_back(std::move(model));
        }
    } else {
        // internal stratified k-fold; each instance is scored by the model
        // fit on the complement of its fold
        SplitPlan plan = SplitPlan::kfold(kStackingFolds, true, derive_seed(spec_.seed, 7));
        // degrade to unstratified folding when a class is too small to deal
        try {
            (void)make_splits(train, plan);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::too_few_instances_for_folds) throw;
            plan.stratified = false;
        }
        const std::vector<Split> folds = make_splits(train, plan);

        if (audit) {
            audit->fold_train_indices.resize(folds.size());
            for (std::size_t f = 0; f < folds.size(); ++f) {
                audit->fold_train_indices[f] = folds[f].train;
                for (std::size_t idx : folds[f].test)
                    audit->fold_of_instance[idx] = static_cast<int>(f);
            }
        }

        for (std::size_t l = 0; l < learners; ++l) {
            const std::uint64_t learner_seed = derive_seed(spec_.seed, 1000 + l);
            for (std::size_t f = 0; f < folds.size(); ++f) {
                const Dataset fold_train = subset(train, folds[f].train);
                ModelPtr model = fit_learner(fold_train, spec_.stage1[l],
                                             derive_seed(learner_seed, f));
                for (std::size_t idx : folds[f].test) {
                    meta_scores[l][idx] = model->score(train.instances[idx].features);
                    if (audit && l == 0) audit->scored_by_fold[idx] = static_cast<int>(f);
                }
            }
            // refit on the full stage training data for predict-time scoring
            stage1_.push_back(fit_learner(train, spec_.stage1[l], learner_seed));
        }
    }

    // assemble the meta training set
    Dataset meta_train;
    meta_train.schema = meta_schema(train.schema, learners, spec_.stage2->meta_input);
    meta_train.origin = train.origin + "+meta";
    meta_train.checksum = train.checksum;
    meta_train.instances.resize(n);
    const bool with_features =
        spec_.stage2->meta_input == EnsembleSpec::Stage2::MetaInput::features_plus_scores;
    for (std::size_t i = 0; i < n; ++i) {
        Instance& inst = meta_train.instances[i];
        if (with_features) inst.features = train.instances[i].features;
        for (std::size_t l = 0; l < learners; ++l)
            inst.features.push_back(meta_scores[l][i]);
        inst.label = train.instances[i].label;
    }

    meta_ = fit_learner(meta_train, spec_.stage2->learner, derive_seed(spec_.seed, 2000));

    record_metadata(train);
    set_metadata("stage1_count", std::to_string(learners));
    set_metadata("meta_input", with_features ? "features_plus_scores" : "scores_only");
    set_metadata("meta_insample", spec_.meta_insample ? "true" : "false");
}

std::vector<double> StackedModel::meta_vector(std::span<const double> features) const {
    std::vector<double> meta;
    if (spec_.stage2->meta_input == EnsembleSpec::Stage2::MetaInput::features_plus_scores)
        meta.assign(features.begin(), features.end());
    for (const auto& model : stage1_) meta.push_back(model->score(features));
    return meta;
}

double StackedModel::score(std::span<const double> features) const {
    const std::vector<double> meta = meta_vector(features);
    return meta_->score(meta);
}

nlohmann::json StackedModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["spec"] = ensemble_spec_to_json(spec_);
    j["dimension"] = dimension_;
    nlohmann::json stage1 = nlohmann::json::array();
    for (const auto& model : stage1_) stage1.push_back(model->to_json());
    j["stage1_models"] = std::move(stage1);
    j["meta_model"] = meta_->to_json();
    j["metadata"] = metadata_json();
    return j;
}

StackedModel::StackedModel(const nlohmann::json& artifact) {
    spec_ = ensemble_spec_from_json(artifact.at("spec"));
    dimension_ = artifact.at("dimension").get<std::size_t>();
    for (const auto& model : artifact.at("stage1_models"))
        stage1_.push_back(model_from_json(model));
    meta_ = model_from_json(artifact.at("meta_model"));
    restore_metadata(artifact.at("metadata"));
}

// ---------------------------------------------------------------------------

FlatEnsembleModel::FlatEnsembleModel(const Dataset& train, const EnsembleSpec& spec)
    : spec_(spec), dimension_(train.feature_count()) {
    validate_spec(spec_);
    for (std::size_t l = 0; l < spec_.stage1.size(); ++l)
        stage1_.push_back(fit_learner(train, spec_.stage1[l],
                                      derive_seed(spec_.seed, 1000 + l)));
    if (spec_.combine == EnsembleSpec::Combine::average_score) {
        for (const auto& model : stage1_)
            if (model->threshold() != stage1_.front()->threshold())
                throw Error(ErrorCode::config_error,
                            "average_score requires a common stage-1 threshold; "
                            "mix of margin and probability learners");
    }
    record_metadata(train);
    set_metadata("combine", spec_.combine == EnsembleSpec::Combine::average_score
                                ? "average_score"
                                : "majority_vote");
}

double FlatEnsembleModel::score(std::span<const double> features) const {
    if (spec_.combine == EnsembleSpec::Combine::average_score) {
        double sum = 0.0;
        for (const auto& model : stage1_) sum += model->score(features);
        return sum / static_cast<double>(stage1_.size());
    }
    std::size_t votes = 0;
    for (const auto& model : stage1_)
        if (model->predict(features).label == ClassLabel::defective) ++votes;
    return static_cast<double>(votes) / static_cast<double>(stage1_.size());
}

double FlatEnsembleModel::threshold() const {
    return spec_.combine == EnsembleSpec::Combine::average_score
               ? stage1_.front()->threshold()
               : 0.5;
}

nlohmann::json FlatEnsembleModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["spec"] = ensemble_spec_to_json(spec_);
    j["dimension"] = dimension_;
    nlohmann::json stage1 = nlohmann::json::array();
    for (const auto& model : stage1_) stage1.push_back(model->to_json());
    j["stage1_models"] = std::move(stage1);
    j["metadata"] = metadata_json();
    return j;
}

FlatEnsembleModel::FlatEnsembleModel(const nlohmann::json& artifact) {
    spec_ = ensemble_spec_from_json(artifact.at("spec"));
    dimension_ = artifact.at("dimension").get<std::size_t>();
    for (const auto& model : artifact.at("stage1_models"))
        stage1_.push_back(model_from_json(model));
    restore_metadata(artifact.at("metadata"));
}

// ---------------------------------------------------------------------------

ModelPtr stacked_fit(const Dataset& train, const EnsembleSpec& spec, StackingAudit* audit) {
    validate_spec(spec);
    if (spec.stage2) return std::make_unique<StackedModel>(train, spec, audit);
    return std::make_unique<FlatEnsembleModel>(train, spec);
}

nlohmann::json ensemble_spec_to_json(const EnsembleSpec& spec) {
    nlohmann::json j;
    nlohmann::json stage1 = nlohmann::json::array();
    for (const auto& learner : spec.stage1) stage1.push_back(learner_spec_to_json(learner));
    j["stage1"] = std::move(stage1);
    j["combine"] = spec.combine == EnsembleSpec::Combine::average_score ? "average_score"
                                                                        : "majority_vote";
    if (spec.stage2) {
        j["stage2"]["learner"] = learner_spec_to_json(spec.stage2->learner);
        j["stage2"]["meta_input"] =
            spec.stage2->meta_input == EnsembleSpec::Stage2::MetaInput::scores_only
                ? "scores_only"
                : "features_plus_scores";
    }
    j["meta_insample"] = spec.meta_insample;
    j["seed"] = spec.seed;
    return j;
}

EnsembleSpec ensemble_spec_from_json(const nlohmann::json& j) {
    EnsembleSpec spec;
    spec.stage1.clear();
    for (const auto& learner : j.at("stage1"))
        spec.stage1.push_back(learner_spec_from_json(learner));
    if (j.contains("combine"))
        spec.combine = j.at("combine").get<std::string>() == "majority_vote"
                           ? EnsembleSpec::Combine::majority_vote
                           : EnsembleSpec::Combine::average_score;
    if (j.contains("stage2") && !j.at("stage2").is_null()) {
        EnsembleSpec::Stage2 stage2;
        stage2.learner = learner_spec_from_json(j.at("stage2").at("learner"));
        if (j.at("stage2").contains("meta_input"))
            stage2.meta_input =
                j.at("stage2").at("meta_input").get<std::string>() == "scores_only"
                    ? EnsembleSpec::Stage2::MetaInput::scores_only
                    : EnsembleSpec::Stage2::MetaInput::features_plus_scores;
        spec.stage2 = stage2;
    } else {
        spec.stage2.reset();
    }
    if (j.contains("meta_insample")) spec.meta_insample = j.at("meta_insample").get<bool>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
}

EnsembleSpec predefined_pipeline(const std::string& name) {
    EnsembleSpec spec;
    spec.stage2 = EnsembleSpec::Stage2{};
    spec.stage2->learner = LearnerSpec::of(LearnerSpec::Kind::knn);
    spec.stage2->meta_input = EnsembleSpec::Stage2::MetaInput::features_plus_scores;
    if (name == "cm1_default") {
        spec.stage1 = {LearnerSpec::of(LearnerSpec::Kind::cbr),
                       LearnerSpec::of(LearnerSpec::Kind::knn)};
        return spec;
    }
    if (name == "kc2_default" || name == "pc1_default") {
        spec.stage1 = {LearnerSpec::bagged(LearnerSpec::of(LearnerSpec::Kind::knn), 10),
                       LearnerSpec::of(LearnerSpec::Kind::knn)};
        return spec;
    }
    throw Error(ErrorCode::unknown_pipeline_name, "no predefined pipeline named '" + name + "'");
}

} // namespace defectlab
