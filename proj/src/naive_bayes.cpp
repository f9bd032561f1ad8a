#include "defectlab/naive_bayes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "defectlab/error.hpp"

namespace defectlab {

namespace {

// Sum in value-sorted order, so results do not depend on instance order.
double ordered_sum(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

} // namespace

GaussianNbModel::GaussianNbModel(const Dataset& train) {
    const std::size_t n = train.size();
    const std::size_t d = train.feature_count();
    std::array<std::size_t, 2> counts = {0, 0};
    for (const auto& inst : train.instances)
        ++counts[inst.label == ClassLabel::defective ? 1 : 0];
    if (counts[0] == 0 || counts[1] == 0)
        throw Error(ErrorCode::single_class_dataset, "gnb_fit requires both classes");

    for (int c = 0; c < 2; ++c) {
        mean_[c].assign(d, 0.0);
        var_[c].assign(d, 0.0);
        log_prior_[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(n));
    }

    std::vector<double> scratch;
    for (std::size_t f = 0; f < d; ++f) {
        // global variance first, for the floor
        scratch.clear();
        for (const auto& inst : train.instances) scratch.push_back(inst.features[f]);
        const double global_mean = ordered_sum(scratch) / static_cast<double>(n);
        scratch.clear();
        for (const auto& inst : train.instances) {
            const double c = inst.features[f] - global_mean;
            scratch.push_back(c * c);
        }
        const double global_var = ordered_sum(scratch) / static_cast<double>(n);
        const double floor = 1e-9 * (global_var + 1e-12);

        for (int c = 0; c < 2; ++c) {
            const ClassLabel want = c ? ClassLabel::defective : ClassLabel::non_defective;
            scratch.clear();
            for (const auto& inst : train.instances)
                if (inst.label == want) scratch.push_back(inst.features[f]);
            const double mean = ordered_sum(scratch) / static_cast<double>(counts[c]);
            scratch.clear();
            for (const auto& inst : train.instances)
                if (inst.label == want) {
                    const double diff = inst.features[f] - mean;
                    scratch.push_back(diff * diff);
                }
            const double var = ordered_sum(scratch) / static_cast<double>(counts[c]);
            mean_[c][f] = mean;
            var_[c][f] = std::max(var, floor);
        }
    }

    record_metadata(train);
    set_metadata("variance_floor", "1e-9*(global_var+1e-12)");
}

double GaussianNbModel::score(std::span<const double> features) const {
    std::array<double, 2> log_post = {log_prior_[0], log_prior_[1]};
    for (int c = 0; c < 2; ++c) {
        for (std::size_t f = 0; f < features.size(); ++f) {
            const double diff = features[f] - mean_[c][f];
            log_post[c] -= 0.5 * (std::log(kTwoPi * var_[c][f]) + diff * diff / var_[c][f]);
        }
    }
    const double margin = log_post[1] - log_post[0];
    return 1.0 / (1.0 + std::exp(-margin));
}

nlohmann::json GaussianNbModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["mean_non_defective"] = mean_[0];
    j["mean_defective"] = mean_[1];
    j["var_non_defective"] = var_[0];
    j["var_defective"] = var_[1];
    j["log_prior_non_defective"] = log_prior_[0];
    j["log_prior_defective"] = log_prior_[1];
    j["metadata"] = metadata_json();
    return j;
}

GaussianNbModel::GaussianNbModel(const nlohmann::json& artifact) {
    mean_[0] = artifact.at("mean_non_defective").get<std::vector<double>>();
    mean_[1] = artifact.at("mean_defective").get<std::vector<double>>();
    var_[0] = artifact.at("var_non_defective").get<std::vector<double>>();
    var_[1] = artifact.at("var_defective").get<std::vector<double>>();
    log_prior_[0] = artifact.at("log_prior_non_defective").get<double>();
    log_prior_[1] = artifact.at("log_prior_defective").get<double>();
    restore_metadata(artifact.at("metadata"));
}

ModelPtr gnb_fit(const Dataset& train) {
    return std::make_unique<GaussianNbModel>(train);
}

} // namespace defectlab
