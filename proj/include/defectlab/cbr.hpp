#pragma once

#include <vector>

#include "defectlab/decision_tree.hpp"
#include "defectlab/model.hpp"

namespace defectlab {

struct CbrParams {
    enum class Inner { ols, regression_tree };
    Inner inner = Inner::ols;
    TreeParams tree; // regression_tree inner only
};

// Classification by regression: regress the +-1-coded label (Defective = +1)
// on the features, then classify by the sign of the regression output. For
// two classes the per-class regressions are mirror images, so one signed
// model carries both. The OLS normal system is ridge-damped by 1e-8 on the
// diagonal to tolerate exactly collinear (derived) metric columns.
// Score is the regression output through the logistic function, so the 0.5
// threshold coincides with the sign rule.
class CbrModel final : public TrainedModel {
public:
    CbrModel(const Dataset& train, const CbrParams& params);
    explicit CbrModel(const nlohmann::json& artifact);

    double score(std::span<const double> features) const override;
    std::string kind() const override { return "cbr"; }
    std::size_t input_dimension() const override { return dimension_; }
    nlohmann::json to_json() const override;

    // raw regression output (signed), before the logistic squash
    double regression_output(std::span<const double> features) const;

private:
    CbrParams params_;
    std::size_t dimension_ = 0;
    std::vector<double> coefficients_; // intercept first (ols inner)
    std::unique_ptr<RegressionTree> tree_;
};

ModelPtr cbr_fit(const Dataset& train, const CbrParams& params = {});

constexpr double kCbrRidge = 1e-8;

} // namespace defectlab
