#include "defectlab/bagging.hpp"
#include "defectlab/error.hpp"
#include "defectlab/naive_bayes.hpp"
#include "defectlab/stacking.hpp"

namespace defectlab {

ModelPtr model_from_json(const nlohmann::json& artifact) {
    const int version = artifact.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw Error(ErrorCode::data_error,
                    "unsupported model format version " + std::to_string(version));
    const std::string kind = artifact.at("kind").get<std::string>();
    if (kind == "knn") return std::make_unique<KnnModel>(artifact);
    if (kind == "gnb") return std::make_unique<GaussianNbModel>(artifact);
    if (kind == "decision_tree") return std::make_unique<DecisionTreeModel>(artifact);
    if (kind == "svm") return std::make_unique<LinearSvmModel>(artifact);
    if (kind == "random_forest") return std::make_unique<RandomForestModel>(artifact);
    if (kind == "cbr") return std::make_unique<CbrModel>(artifact);
    if (kind == "bagging") return std::make_unique<BaggingModel>(artifact);
    if (kind == "stacked") return std::make_unique<StackedModel>(artifact);
    if (kind == "flat_ensemble") return std::make_unique<FlatEnsembleModel>(artifact);
    throw Error(ErrorCode::data_error, "unknown model kind '" + kind + "'");
}

} // namespace defectlab
