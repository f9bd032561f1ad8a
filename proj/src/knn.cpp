#include "defectlab/knn.hpp"

#include <algorithm>
#include <cmath>

#include "defectlab/error.hpp"

namespace defectlab {

namespace {

struct Standardizer {
    std::vector<double> mean, inv_std;
};

Standardizer fit_standardizer(const Dataset& train) {
    const std::size_t d = train.feature_count();
    const std::size_t n = train.size();
    Standardizer s;
    s.mean.assign(d, 0.0);
    s.inv_std.assign(d, 1.0);
    for (std::size_t f = 0; f < d; ++f) {
        double sum = 0.0;
        for (const auto& inst : train.instances) sum += inst.features[f];
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& inst : train.instances) {
            const double c = inst.features[f] - mean;
            ss += c * c;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        s.mean[f] = mean;
        s.inv_std[f] = sd > 0.0 ? 1.0 / sd : 1.0;
    }
    return s;
}

} // namespace

KnnModel::KnnModel(const Dataset& train, const KnnParams& params) : params_(params) {
    if (train.instances.empty())
        throw Error(ErrorCode::empty_dataset, "knn_fit on empty dataset");
    if (params.k < 1 || static_cast<std::size_t>(params.k) > train.size())
        throw Error(ErrorCode::k_too_large,
                    "k=" + std::to_string(params.k) + " with " +
                        std::to_string(train.size()) + " training instances");
    dimension_ = train.feature_count();
    matrix_.reserve(train.size() * dimension_);
    labels_.reserve(train.size());
    if (params_.standardize) {
        auto s = fit_standardizer(train);
        mean_ = std::move(s.mean);
        inv_std_ = std::move(s.inv_std);
    }
    for (const auto& inst : train.instances) {
        for (std::size_t f = 0; f < dimension_; ++f) {
            double v = inst.features[f];
            if (params_.standardize) v = (v - mean_[f]) * inv_std_[f];
            matrix_.push_back(v);
        }
        labels_.push_back(inst.label);
    }
    record_metadata(train);
    set_metadata("k", std::to_string(params_.k));
    set_metadata("weighting", params_.weighting == KnnParams::Weighting::uniform
                                  ? "uniform"
                                  : "inverse_distance");
    set_metadata("standardize", params_.standardize ? "true" : "false");
}

void KnnModel::standardize_in_place(std::vector<double>& x) const {
    for (std::size_t f = 0; f < dimension_; ++f) x[f] = (x[f] - mean_[f]) * inv_std_[f];
}

double KnnModel::score(std::span<const double> features) const {
    const std::size_t n = labels_.size();
    std::vector<double> query(features.begin(), features.end());
    if (params_.standardize) standardize_in_place(query);

    std::vector<double> dist2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = matrix_.data() + i * dimension_;
        double acc = 0.0;
        for (std::size_t f = 0; f < dimension_; ++f) {
            const double diff = query[f] - row[f];
            acc += diff * diff;
        }
        dist2[i] = acc;
    }

    // k-th smallest squared distance, then take the whole <= tier so
    // boundary ties never depend on training order
    const std::size_t k = static_cast<std::size_t>(params_.k);
    std::vector<double> partial(dist2);
    std::nth_element(partial.begin(), partial.begin() + static_cast<long>(k - 1), partial.end());
    const double kth = partial[k - 1];

    std::vector<double> def_dists, non_dists;
    bool any_zero = false;
    std::size_t zero_def = 0, zero_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (dist2[i] > kth) continue;
        const double d = std::sqrt(dist2[i]);
        (labels_[i] == ClassLabel::defective ? def_dists : non_dists).push_back(d);
        if (dist2[i] == 0.0) {
            any_zero = true;
            ++zero_total;
            if (labels_[i] == ClassLabel::defective) ++zero_def;
        }
    }

    double score;
    if (params_.weighting == KnnParams::Weighting::inverse_distance) {
        if (any_zero) {
            // exact matches dominate any finite weight
            score = static_cast<double>(zero_def) / static_cast<double>(zero_total);
        } else {
            // sum in value order so the result ignores training order
            std::sort(def_dists.begin(), def_dists.end());
            std::sort(non_dists.begin(), non_dists.end());
            double wd = 0.0, wn = 0.0;
            for (double d : def_dists) wd += 1.0 / d;
            for (double d : non_dists) wn += 1.0 / d;
            score = wd / (wd + wn);
        }
    } else {
        score = static_cast<double>(def_dists.size()) /
                static_cast<double>(def_dists.size() + non_dists.size());
    }

    if (score == 0.5) {
        // exact vote tie: smaller summed distance wins, NonDefective on equal
        std::sort(def_dists.begin(), def_dists.end());
        std::sort(non_dists.begin(), non_dists.end());
        double sd = 0.0, sn = 0.0;
        for (double d : def_dists) sd += d;
        for (double d : non_dists) sn += d;
        if (!(sd < sn)) score = std::nextafter(0.5, 0.0);
    }
    return score;
}

nlohmann::json KnnModel::to_json() const {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = kind();
    j["k"] = params_.k;
    j["weighting"] = params_.weighting == KnnParams::Weighting::uniform ? "uniform"
                                                                        : "inverse_distance";
    j["standardize"] = params_.standardize;
    j["dimension"] = dimension_;
    j["matrix"] = matrix_;
    nlohmann::json labels = nlohmann::json::array();
    for (ClassLabel l : labels_) labels.push_back(l == ClassLabel::defective ? 1 : 0);
    j["labels"] = std::move(labels);
    if (params_.standardize) {
        j["mean"] = mean_;
        j["inv_std"] = inv_std_;
    }
    j["metadata"] = metadata_json();
    return j;
}

KnnModel::KnnModel(const nlohmann::json& artifact) {
    params_.k = artifact.at("k").get<int>();
    params_.weighting = artifact.at("weighting").get<std::string>() == "uniform"
                            ? KnnParams::Weighting::uniform
                            : KnnParams::Weighting::inverse_distance;
    params_.standardize = artifact.at("standardize").get<bool>();
    dimension_ = artifact.at("dimension").get<std::size_t>();
    matrix_ = artifact.at("matrix").get<std::vector<double>>();
    for (const auto& l : artifact.at("labels"))
        labels_.push_back(l.get<int>() ? ClassLabel::defective : ClassLabel::non_defective);
    if (params_.standardize) {
        mean_ = artifact.at("mean").get<std::vector<double>>();
        inv_std_ = artifact.at("inv_std").get<std::vector<double>>();
    }
    restore_metadata(artifact.at("metadata"));
}

ModelPtr knn_fit(const Dataset& train, const KnnParams& params) {
    return std::make_unique<KnnModel>(train, params);
}

} // namespace defectlab
