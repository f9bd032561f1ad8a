#pragma once

#include <cstdint>
#include <vector>

#include "defectlab/model.hpp"

namespace defectlab {

struct SvmParams {
    double lambda = 1e-2; // L2 regularization strength
    int epochs = 200;
    std::uint64_t seed = 0; // epoch shuffling; order is part of the seed surface
};

// Linear SVM trained by deterministic sub-gradient descent on the primal
// hinge loss (Pegasos-style step sizes), labels coded Defective=+1.
// Features are standardized internally with training-set mean/std, so
// predictions are invariant to per-feature affine rescaling of the inputs.
// Score is the signed margin; threshold 0.
class LinearSvmModel final : public TrainedModel {
public:
    LinearSvmModel(const Dataset& train, const SvmParams& params);
    explicit LinearSvmModel(const nlohmann::json& artifact);

    double score(std::span<const double> features) const override;
    double threshold() const override { return 0.0; }
    std::string kind() const override { return "svm"; }
    std::size_t input_dimension() const override { return weights_.size(); }
    nlohmann::json to_json() const override;

private:
    SvmParams params_;
    std::vector<double> weights_;
    double bias_ = 0.0;
    std::vector<double> mean_, inv_std_;
};

ModelPtr svm_fit(const Dataset& train, const SvmParams& params = {});

} // namespace defectlab
