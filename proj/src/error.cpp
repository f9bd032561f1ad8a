#include "defectlab/error.hpp"

namespace defectlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::malformed_header: return "MalformedHeader";
    case ErrorCode::arity_mismatch: return "ArityMismatch";
    case ErrorCode::non_numeric_feature: return "NonNumericFeature";
    case ErrorCode::unknown_label_value: return "UnknownLabelValue";
    case ErrorCode::missing_value: return "MissingValue";
    case ErrorCode::empty_dataset: return "EmptyDataset";
    case ErrorCode::single_class_dataset: return "SingleClassDataset";
    case ErrorCode::too_few_instances_for_folds: return "TooFewInstancesForFolds";
    case ErrorCode::mismatched_schemas: return "MismatchedSchemas";
    case ErrorCode::k_too_large: return "KTooLarge";
    case ErrorCode::fold_too_small: return "FoldTooSmall";
    case ErrorCode::unknown_pipeline_name: return "UnknownPipelineName";
    case ErrorCode::single_class_actuals: return "SingleClassActuals";
    case ErrorCode::mismatched_reports: return "MismatchedReports";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::data_error: return "DataError";
    case ErrorCode::checksum_mismatch: return "ChecksumMismatch";
    case ErrorCode::internal_error: return "InternalError";
    }
    return "UnknownError";
}

const char* Error::category() const {
    switch (code_) {
    case ErrorCode::config_error:
    case ErrorCode::unknown_pipeline_name:
        return "config";
    case ErrorCode::internal_error:
        return "internal";
    default:
        return "data";
    }
}

} // namespace defectlab
