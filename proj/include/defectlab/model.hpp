#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>

#include "defectlab/dataset.hpp"

#include "json.hpp"

namespace defectlab {

struct Prediction {
    ClassLabel label;
    double score; // higher = more likely Defective
};

// Uniform fitted-classifier contract. predict() derives the label from the
// score and the model's threshold, so score/label consistency holds for
// every implementation by construction.
class TrainedModel {
public:
    virtual ~TrainedModel() = default;

    Prediction predict(std::span<const double> features) const {
        const double s = score(features);
        return {s >= threshold() ? ClassLabel::defective : ClassLabel::non_defective, s};
    }

    virtual double score(std::span<const double> features) const = 0;

    // 0.5 for probability-like scores; 0 for margin scores.
    virtual double threshold() const { return 0.5; }

    virtual std::string kind() const = 0;

    virtual std::size_t input_dimension() const = 0;

    // Versioned, self-describing artifact with hyperparameters and training
    // checksum embedded; round-trip is lossless for predictions.
    virtual nlohmann::json to_json() const = 0;

    const std::map<std::string, std::string>& metadata() const { return metadata_; }

protected:
    void record_metadata(const Dataset& train) {
        metadata_["training_size"] = std::to_string(train.size());
        metadata_["training_checksum"] = train.checksum;
        metadata_["training_origin"] = train.origin;
    }
    void set_metadata(const std::string& key, const std::string& value) {
        metadata_[key] = value;
    }
    nlohmann::json metadata_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, v] : metadata_) j[k] = v;
        return j;
    }
    void restore_metadata(const nlohmann::json& j) {
        for (auto it = j.begin(); it != j.end(); ++it)
            metadata_[it.key()] = it.value().get<std::string>();
    }

    std::map<std::string, std::string> metadata_;
};

using ModelPtr = std::unique_ptr<TrainedModel>;

// Reconstructs any serialized model from its artifact (dispatches on "kind";
// rejects unknown kinds and format versions).
ModelPtr model_from_json(const nlohmann::json& artifact);

constexpr int kModelFormatVersion = 1;

} // namespace defectlab
