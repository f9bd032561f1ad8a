#include "defectlab/linear_svm.hpp"

#include <cmath>
#include <numeric>

#include "defectlab/error.hpp"
#include "defectlab/rng.hpp"

namespace defectlab {

LinearSvmModel::LinearSvmModel(const Dataset& train, const SvmParams& params)
    : params_(params) {
    const std::size_t n = train.size();
    const std::size_t d = train.feature_count();
    if (n == 0) throw Error(ErrorCode::empty_dataset, "svm_fit on empty dataset");
    const std::size_t defective = train.count(ClassLabel::defective);
    if (defective == 0 || defective == n)
        throw Error(ErrorCode::single_class_dataset, "svm_fit requires both classes");
    if (params_.lambda <= 0.0 || params_.epochs < 1)
        throw Error(ErrorCode::config_error, "svm lambda must be > 0 and epochs >= 1");

    // standardization fitted on training data only
    mean_.assign(d, 0.0);
    inv_std_.assign(d, 1.0);
    for (std::size_t f = 0; f < d; ++f) {
        double sum = 0.0;
        for (const auto& inst : train.instances) sum += inst.features[f];
        mean_[f] = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& inst : train.instances) {
            const double c = inst.features[f] - mean_[f];
            ss += c * c;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        inv_std_[f] = sd > 0.0 ? 1.0 / sd : 1.0;
    }

    std::vector<double> x(n * d);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& inst = train.instances[i];
        for (std::size_t f = 0; f < d; ++f)
            x[i * d + f] = (inst.features[f] - mean_[f]) * inv_std_[f];
        y[i] = inst.label == ClassLabel::defective ? 1.0 : -1.0;
    }

    weights_.assign(d, 0.0);
    bias_ = 0.0;

    Rng rng(derive_seed(params_.seed, 0x73766dULL));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::size_t t = 0;
    for (int epoch = 0; epoch < params_.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t idx : order) {
            ++t;
            const double eta = 1.0 / (params_.lambda * static_cast<double>(t));
            const double* row = x.data() + idx * d;
            double margin = bias_;
            for (std::size_t f = 0; f < d; ++f) margin += weights_[f] * row[f];
            const double shrink = 1.0 - eta * params_.lambda;
            for (std::size_t f = 0; f < d; ++f) weights_[f] *= shrink;
            if (y[idx] * margin < 1.0) {
                for (std::size_t f = 0; f < d; ++f) weights_[f] += eta * y[idx] * row[f];
                bias_ += eta * y[idx]; // bias unregularized
            }
        }
    }

    record_metadata(train);
    set_metadata("lambda", std::to_string(params_.lambda));
    set_metadata("epochs", std::to_string(params_.epochs));
}

double LinearSvmModel::score(std::span<const double> features) const {
    double margin = bias_;
    for (std::size_t f = 0; f < weights_.size(); ++f)
        margin += weights_[f] * (features[f] - mean_[f]) * inv_std_[f];
    return margin;
}

nlohmann::json LinearSvmModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["lambda"] = params_.lambda;
    j["epochs"] = params_.epochs;
    j["seed"] = params_.seed;
    j["weights"] = weights_;
    j["bias"] = bias_;
    j["mean"] = mean_;
    j["inv_std"] = inv_std_;
    j["metadata"] = metadata_json();
    return j;
}

LinearSvmModel::LinearSvmModel(const nlohmann::json& artifact) {
    params_.lambda = artifact.at("lambda").get<double>();
    params_.epochs = artifact.at("epochs").get<int>();
    params_.seed = artifact.at("seed").get<std::uint64_t>();
    weights_ = artifact.at("weights").get<std::vector<double>>();
    bias_ = artifact.at("bias").get<double>();
    mean_ = artifact.at("mean").get<std::vector<double>>();
    inv_std_ = artifact.at("inv_std").get<std::vector<double>>();
    restore_metadata(artifact.at("metadata"));
}

ModelPtr svm_fit(const Dataset& train, const SvmParams& params) {
    return std::make_unique<LinearSvmModel>(train, params);
}

} // namespace defectlab
