#pragma once

#include <array>
#include <vector>

#include "defectlab/model.hpp"

namespace defectlab {

// Gaussian naive Bayes for numeric features. Per-class means and variances
// with log-prior weighting; the score is the Defective posterior obtained by
// passing the log-posterior difference through the logistic function.
// Variances are floored at 1e-9 * (global feature variance + 1e-12) so
// constant features contribute equal likelihoods to both classes.
class GaussianNbModel final : public TrainedModel {
public:
    explicit GaussianNbModel(const Dataset& train);
    explicit GaussianNbModel(const nlohmann::json& artifact);

    double score(std::span<const double> features) const override;
    std::string kind() const override { return "gnb"; }
    std::size_t input_dimension() const override { return mean_[0].size(); }
    nlohmann::json to_json() const override;

private:
    // index 0 = NonDefective, 1 = Defective
    std::array<std::vector<double>, 2> mean_;
    std::array<std::vector<double>, 2> var_;
    std::array<double, 2> log_prior_ = {0.0, 0.0};
};

ModelPtr gnb_fit(const Dataset& train);

} // namespace defectlab
