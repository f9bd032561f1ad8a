#pragma once

#include <optional>
#include <vector>

#include "defectlab/learner_spec.hpp"

namespace defectlab {

// Declarative description of a stacked pipeline: stage-1 base learners, a
// combination rule (flat mode only), and an optional stage-2 meta-learner.
struct EnsembleSpec {
    std::vector<LearnerSpec> stage1;

    enum class Combine { average_score, majority_vote };
    Combine combine = Combine::average_score;

    struct Stage2 {
        LearnerSpec learner; // default KNN
        enum class MetaInput { scores_only, features_plus_scores };
        MetaInput meta_input = MetaInput::features_plus_scores;
    };
    std::optional<Stage2> stage2 = Stage2{};

    // Paper-faithful switch: score stage-1 training instances in-sample
    // instead of out-of-fold.
    bool meta_insample = false;

    std::uint64_t seed = 0;
};

nlohmann::json ensemble_spec_to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_spec_from_json(const nlohmann::json& j);

// cm1_default, kc2_default, pc1_default. Throws UnknownPipelineName.
EnsembleSpec predefined_pipeline(const std::string& name);

// Number of internal out-of-fold folds used when building meta-features.
constexpr int kStackingFolds = 5;

// Fold bookkeeping captured during stacked_fit, for auditing the
// out-of-fold discipline.
struct StackingAudit {
    bool insample = false;
    std::vector<int> fold_of_instance;                    // training index -> fold
    std::vector<std::vector<std::size_t>> fold_train_indices; // fold -> stage-1 training rows
    std::vector<int> scored_by_fold;                      // training index -> fold of scoring model
};

// Two-stage stacking. Stage 1: fit each base learner on the full stage
// training data; build each learner's meta-feature column for every training
// instance via internal stratified 5-fold out-of-fold prediction. Stage 2:
// fit the meta-learner on the meta inputs selected by meta_input. Without a
// stage 2, the stage-1 scores are combined by the flat rule.
ModelPtr stacked_fit(const Dataset& train, const EnsembleSpec& spec,
                     StackingAudit* audit = nullptr);

class StackedModel final : public TrainedModel {
public:
    StackedModel(const Dataset& train, const EnsembleSpec& spec, StackingAudit* audit);
    explicit StackedModel(const nlohmann::json& artifact);

    double score(std::span<const double> features) const override;
    double threshold() const override { return meta_->threshold(); }
    std::string kind() const override { return "stacked"; }
    std::size_t input_dimension() const override { return dimension_; }
    nlohmann::json to_json() const override;

private:
    std::vector<double> meta_vector(std::span<const double> features) const;

    EnsembleSpec spec_;
    std::size_t dimension_ = 0;
    std::vector<ModelPtr> stage1_;
    ModelPtr meta_;
};

// Flat ensemble (no meta-learner): average_score requires a common stage-1
// threshold; majority_vote counts each learner's own label decision.
class FlatEnsembleModel final : public TrainedModel {
public:
    FlatEnsembleModel(const Dataset& train, const EnsembleSpec& spec);
    explicit FlatEnsembleModel(const nlohmann::json& artifact);

    double score(std::span<const double> features) const override;
    double threshold() const override;
    std::string kind() const override { return "flat_ensemble"; }
    std::size_t input_dimension() const override { return dimension_; }
    nlohmann::json to_json() const override;

private:
    EnsembleSpec spec_;
    std::size_t dimension_ = 0;
    std::vector<ModelPtr> stage1_;
};

} // namespace defectlab
