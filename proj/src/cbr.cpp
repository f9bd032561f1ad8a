#include "defectlab/cbr.hpp"

#include <cmath>

#include "defectlab/error.hpp"
#include "defectlab/linalg.hpp"

namespace defectlab {

CbrModel::CbrModel(const Dataset& train, const CbrParams& params)
    : params_(params), dimension_(train.feature_count()) {
    const std::size_t defective = train.count(ClassLabel::defective);
    if (train.instances.empty())
        throw Error(ErrorCode::empty_dataset, "cbr_fit on empty dataset");
    if (defective == 0 || defective == train.size())
        throw Error(ErrorCode::single_class_dataset, "cbr_fit requires both classes");

    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    rows.reserve(train.size());
    targets.reserve(train.size());
    for (const auto& inst : train.instances) {
        rows.push_back(inst.features);
        targets.push_back(inst.label == ClassLabel::defective ? 1.0 : -1.0);
    }

    if (params_.inner == CbrParams::Inner::ols) {
        coefficients_ = ridge_least_squares(rows, targets, kCbrRidge);
    } else {
        tree_ = std::make_unique<RegressionTree>(rows, targets, params_.tree);
    }

    record_metadata(train);
    set_metadata("inner", params_.inner == CbrParams::Inner::ols ? "ols" : "regression_tree");
}

double CbrModel::regression_output(std::span<const double> features) const {
    if (tree_) return tree_->predict(features);
    double out = coefficients_[0];
    for (std::size_t f = 0; f < dimension_; ++f) out += coefficients_[f + 1] * features[f];
    return out;
}

double CbrModel::score(std::span<const double> features) const {
    const double raw = regression_output(features);
    return 1.0 / (1.0 + std::exp(-raw));
}

nlohmann::json CbrModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["inner"] = params_.inner == CbrParams::Inner::ols ? "ols" : "regression_tree";
    j["dimension"] = dimension_;
    if (tree_) {
        j["tree"] = tree_->to_json();
        j["tree_max_depth"] = params_.tree.max_depth;
        j["tree_min_leaf"] = params_.tree.min_leaf;
    } else {
        j["coefficients"] = coefficients_;
    }
    j["metadata"] = metadata_json();
    return j;
}

CbrModel::CbrModel(const nlohmann::json& artifact) {
    params_.inner = artifact.at("inner").get<std::string>() == "ols"
                        ? CbrParams::Inner::ols
                        : CbrParams::Inner::regression_tree;
    dimension_ = artifact.at("dimension").get<std::size_t>();
    if (params_.inner == CbrParams::Inner::ols) {
        coefficients_ = artifact.at("coefficients").get<std::vector<double>>();
    } else {
        params_.tree.max_depth = artifact.at("tree_max_depth").get<int>();
        params_.tree.min_leaf = artifact.at("tree_min_leaf").get<int>();
        tree_ = std::make_unique<RegressionTree>(artifact.at("tree"));
    }
    restore_metadata(artifact.at("metadata"));
}

ModelPtr cbr_fit(const Dataset& train, const CbrParams& params) {
    return std::make_unique<CbrModel>(train, params);
}

} // namespace defectlab
