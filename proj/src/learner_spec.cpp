#include "defectlab/learner_spec.hpp"

#include "defectlab/bagging.hpp"
#include "defectlab/error.hpp"
#include "defectlab/naive_bayes.hpp"
#include "defectlab/rng.hpp"

namespace defectlab {

LearnerSpec LearnerSpec::of(Kind kind) {
    LearnerSpec spec;
    spec.kind = kind;
    return spec;
}

LearnerSpec LearnerSpec::bagged(LearnerSpec inner, int rounds) {
    LearnerSpec spec;
    spec.kind = Kind::bagging;
    spec.bagging_rounds = rounds;
    spec.bagging_inner = std::make_shared<LearnerSpec>(std::move(inner));
    return spec;
}

const char* learner_kind_name(LearnerSpec::Kind kind) {
    switch (kind) {
    case LearnerSpec::Kind::knn: return "knn";
    case LearnerSpec::Kind::gnb: return "gnb";
    case LearnerSpec::Kind::decision_tree: return "decision_tree";
    case LearnerSpec::Kind::svm: return "svm";
    case LearnerSpec::Kind::random_forest: return "random_forest";
    case LearnerSpec::Kind::cbr: return "cbr";
    case LearnerSpec::Kind::bagging: return "bagging";
    }
    return "unknown";
}

LearnerSpec::Kind learner_kind_from_name(const std::string& name) {
    if (name == "knn") return LearnerSpec::Kind::knn;
    if (name == "gnb" || name == "naive_bayes") return LearnerSpec::Kind::gnb;
    if (name == "decision_tree" || name == "tree") return LearnerSpec::Kind::decision_tree;
    if (name == "svm") return LearnerSpec::Kind::svm;
    if (name == "random_forest" || name == "forest") return LearnerSpec::Kind::random_forest;
    if (name == "cbr" || name == "classification_by_regression") return LearnerSpec::Kind::cbr;
    if (name == "bagging") return LearnerSpec::Kind::bagging;
    throw Error(ErrorCode::config_error, "unknown learner kind '" + name + "'");
}

ModelPtr fit_learner(const Dataset& train, const LearnerSpec& spec, std::uint64_t seed) {
    switch (spec.kind) {
    case LearnerSpec::Kind::knn:
        return knn_fit(train, spec.knn);
    case LearnerSpec::Kind::gnb:
        return gnb_fit(train);
    case LearnerSpec::Kind::decision_tree:
        return tree_fit(train, spec.tree);
    case LearnerSpec::Kind::svm: {
        SvmParams params = spec.svm;
        params.seed = seed;
        return svm_fit(train, params);
    }
    case LearnerSpec::Kind::random_forest: {
        ForestParams params = spec.forest;
        params.seed = seed;
        return forest_fit(train, params);
    }
    case LearnerSpec::Kind::cbr:
        return cbr_fit(train, spec.cbr);
    case LearnerSpec::Kind::bagging: {
        BaggingParams params;
        params.n_rounds = spec.bagging_rounds;
        params.bootstrap_replicates = spec.bagging_bootstrap_replicates;
        params.inner = spec.bagging_inner ? *spec.bagging_inner : LearnerSpec{};
        params.seed = seed;
        return bagging_fit(train, params);
    }
    }
    throw Error(ErrorCode::internal_error, "unhandled learner kind");
}

nlohmann::json learner_spec_to_json(const LearnerSpec& spec) {
    nlohmann::json j;
    j["kind"] = learner_kind_name(spec.kind);
    switch (spec.kind) {
    case LearnerSpec::Kind::knn:
        j["k"] = spec.knn.k;
        j["weighting"] = spec.knn.weighting == KnnParams::Weighting::uniform
                             ? "uniform"
                             : "inverse_distance";
        j["standardize"] = spec.knn.standardize;
        break;
    case LearnerSpec::Kind::gnb:
        break;
    case LearnerSpec::Kind::decision_tree:
        j["max_depth"] = spec.tree.max_depth;
        j["min_leaf"] = spec.tree.min_leaf;
        break;
    case LearnerSpec::Kind::svm:
        j["lambda"] = spec.svm.lambda;
        j["epochs"] = spec.svm.epochs;
        break;
    case LearnerSpec::Kind::random_forest:
        j["n_trees"] = spec.forest.n_trees;
        j["bootstrap"] = spec.forest.bootstrap;
        j["features_per_split"] = spec.forest.features_per_split;
        j["max_depth"] = spec.forest.tree.max_depth;
        j["min_leaf"] = spec.forest.tree.min_leaf;
        break;
    case LearnerSpec::Kind::cbr:
        j["inner"] = spec.cbr.inner == CbrParams::Inner::ols ? "ols" : "regression_tree";
        if (spec.cbr.inner == CbrParams::Inner::regression_tree) {
            j["max_depth"] = spec.cbr.tree.max_depth;
            j["min_leaf"] = spec.cbr.tree.min_leaf;
        }
        break;
    case LearnerSpec::Kind::bagging:
        j["n_rounds"] = spec.bagging_rounds;
        j["bootstrap_replicates"] = spec.bagging_bootstrap_replicates;
        j["inner"] = learner_spec_to_json(spec.bagging_inner ? *spec.bagging_inner
                                                             : LearnerSpec{});
        break;
    }
    return j;
}

LearnerSpec learner_spec_from_json(const nlohmann::json& j) {
    LearnerSpec spec;
    spec.kind = learner_kind_from_name(j.at("kind").get<std::string>());
    switch (spec.kind) {
    case LearnerSpec::Kind::knn:
        if (j.contains("k")) spec.knn.k = j.at("k").get<int>();
        if (j.contains("weighting"))
            spec.knn.weighting = j.at("weighting").get<std::string>() == "uniform"
                                     ? KnnParams::Weighting::uniform
                                     : KnnParams::Weighting::inverse_distance;
        if (j.contains("standardize")) spec.knn.standardize = j.at("standardize").get<bool>();
        break;
    case LearnerSpec::Kind::gnb:
        break;
    case LearnerSpec::Kind::decision_tree:
        if (j.contains("max_depth")) spec.tree.max_depth = j.at("max_depth").get<int>();
        if (j.contains("min_leaf")) spec.tree.min_leaf = j.at("min_leaf").get<int>();
        break;
    case LearnerSpec::Kind::svm:
        if (j.contains("lambda")) spec.svm.lambda = j.at("lambda").get<double>();
        if (j.contains("epochs")) spec.svm.epochs = j.at("epochs").get<int>();
        break;
    case LearnerSpec::Kind::random_forest:
        if (j.contains("n_trees")) spec.forest.n_trees = j.at("n_trees").get<int>();
        if (j.contains("bootstrap")) spec.forest.bootstrap = j.at("bootstrap").get<bool>();
        if (j.contains("features_per_split"))
            spec.forest.features_per_split = j.at("features_per_split").get<int>();
        if (j.contains("max_depth")) spec.forest.tree.max_depth = j.at("max_depth").get<int>();
        if (j.contains("min_leaf")) spec.forest.tree.min_leaf = j.at("min_leaf").get<int>();
        break;
    case LearnerSpec::Kind::cbr:
        if (j.contains("inner"))
            spec.cbr.inner = j.at("inner").get<std::string>() == "ols"
                                 ? CbrParams::Inner::ols
                                 : CbrParams::Inner::regression_tree;
        if (j.contains("max_depth")) spec.cbr.tree.max_depth = j.at("max_depth").get<int>();
        if (j.contains("min_leaf")) spec.cbr.tree.min_leaf = j.at("min_leaf").get<int>();
        break;
    case LearnerSpec::Kind::bagging:
        if (j.contains("n_rounds")) spec.bagging_rounds = j.at("n_rounds").get<int>();
        if (j.contains("bootstrap_replicates"))
            spec.bagging_bootstrap_replicates = j.at("bootstrap_replicates").get<bool>();
        if (j.contains("inner"))
            spec.bagging_inner =
                std::make_shared<LearnerSpec>(learner_spec_from_json(j.at("inner")));
        break;
    }
    return spec;
}

} // namespace defectlab
