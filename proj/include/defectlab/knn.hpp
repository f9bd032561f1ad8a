#pragma once

#include <cstdint>
#include <vector>

#include "defectlab/model.hpp"

namespace defectlab {

struct KnnParams {
    int k = 5; // positive; odd by default so votes rarely tie
    enum class Weighting { uniform, inverse_distance };
    Weighting weighting = Weighting::uniform;
    // Raw features by default (no preprocessing); standardization is opt-in
    // because Halstead metrics dwarf the count metrics in raw scale.
    bool standardize = false;
};

// Exact k-nearest-neighbour classifier, Euclidean distance.
//
// Neighbour selection takes every point whose distance is <= the k-th
// smallest distance (boundary ties are all included), which makes
// predictions independent of training-instance order. Score is the
// (optionally inverse-distance weighted) Defective fraction of that set.
// An exact 0.5 vote is broken toward the class with the smaller summed
// neighbour distance, toward NonDefective when equal.
class KnnModel final : public TrainedModel {
public:
    KnnModel(const Dataset& train, const KnnParams& params);
    explicit KnnModel(const nlohmann::json& artifact);

    double score(std::span<const double> features) const override;
    std::string kind() const override { return "knn"; }
    std::size_t input_dimension() const override { return dimension_; }
    nlohmann::json to_json() const override;

    const KnnParams& params() const { return params_; }

private:
    void standardize_in_place(std::vector<double>& x) const;

    KnnParams params_;
    std::size_t dimension_ = 0;
    std::vector<double> matrix_; // row-major training features
    std::vector<ClassLabel> labels_;
    std::vector<double> mean_, inv_std_; // standardize mode only
};

ModelPtr knn_fit(const Dataset& train, const KnnParams& params = {});

} // namespace defectlab
