#pragma once

#include <memory>
#include <string>

#include "defectlab/cbr.hpp"
#include "defectlab/decision_tree.hpp"
#include "defectlab/knn.hpp"
#include "defectlab/linear_svm.hpp"
#include "defectlab/model.hpp"
#include "defectlab/random_forest.hpp"

namespace defectlab {

// Declarative description of a single base learner; the unit stage-1 lists,
// bagging rounds, and meta-learners are specified in.
struct LearnerSpec {
    enum class Kind { knn, gnb, decision_tree, svm, random_forest, cbr, bagging };
    Kind kind = Kind::knn;

    KnnParams knn;
    TreeParams tree;
    SvmParams svm;
    ForestParams forest;
    CbrParams cbr;

    // bagging only
    int bagging_rounds = 10;
    bool bagging_bootstrap_replicates = true; // off: every replicate == train (test hook)
    std::shared_ptr<LearnerSpec> bagging_inner; // null = KNN with defaults

    static LearnerSpec of(Kind kind);
    static LearnerSpec bagged(LearnerSpec inner, int rounds);
};

const char* learner_kind_name(LearnerSpec::Kind kind);
LearnerSpec::Kind learner_kind_from_name(const std::string& name);

// Fits the described learner. Seeded learners (svm, random_forest, bagging)
// take their stream from `seed`; the seeds stored inside the params structs
// are overridden so one master seed drives a whole pipeline.
ModelPtr fit_learner(const Dataset& train, const LearnerSpec& spec, std::uint64_t seed);

nlohmann::json learner_spec_to_json(const LearnerSpec& spec);
LearnerSpec learner_spec_from_json(const nlohmann::json& j);

} // namespace defectlab
