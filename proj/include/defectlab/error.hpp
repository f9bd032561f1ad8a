#pragma once

#include <stdexcept>
#include <string>

namespace defectlab {

// Error taxonomy shared by the whole library. The CLI maps categories to
// exit codes (config = 2, data = 3, internal = 4).
enum class ErrorCode {
    // ingestion
    malformed_header,
    arity_mismatch,
    non_numeric_feature,
    unknown_label_value,
    missing_value,
    // datasets / splits
    empty_dataset,
    single_class_dataset,
    too_few_instances_for_folds,
    mismatched_schemas,
    // learners
    k_too_large,
    fold_too_small,
    unknown_pipeline_name,
    // evaluation
    single_class_actuals,
    mismatched_reports,
    // harness
    config_error,
    data_error,
    checksum_mismatch,
    internal_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

    // config | data | internal, for CLI exit-code mapping
    const char* category() const;

private:
    ErrorCode code_;
};

} // namespace defectlab
