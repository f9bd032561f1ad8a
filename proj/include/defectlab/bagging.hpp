#pragma once

#include <vector>

#include "defectlab/learner_spec.hpp"

namespace defectlab {

struct BaggingParams {
    int n_rounds = 10;
    bool bootstrap_replicates = true; // off: every replicate == train (test hook)
    LearnerSpec inner;                // defaults to KNN with module defaults
    std::uint64_t seed = 0;
};

// Bootstrap aggregation: one inner model per bootstrap replicate (replicate
// size = training size); score = mean of inner scores. All inner models
// share a kind, so the decision threshold is the inner threshold.
class BaggingModel final : public TrainedModel {
public:
    BaggingModel(const Dataset& train, const BaggingParams& params);
    explicit BaggingModel(const nlohmann::json& artifact);

    double score(std::span<const double> features) const override;
    double threshold() const override;
    std::string kind() const override { return "bagging"; }
    std::size_t input_dimension() const override { return dimension_; }
    nlohmann::json to_json() const override;

    std::size_t round_count() const { return models_.size(); }

private:
    BaggingParams params_;
    std::size_t dimension_ = 0;
    std::vector<ModelPtr> models_;
};

ModelPtr bagging_fit(const Dataset& train, const BaggingParams& params = {});

} // namespace defectlab
