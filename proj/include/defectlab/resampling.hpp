#pragma once

#include <cstdint>

#include "defectlab/dataset.hpp"

namespace defectlab {

struct ResampleSpec {
    enum class Strategy {
        balance_to_majority,
        ratio, // up-sample minority until it reaches target_minority_fraction
    };
    Strategy strategy = Strategy::balance_to_majority;
    double target_minority_fraction = 0.5; // ratio strategy, in (0, 0.5]
    // Number of independent repetitions averaged by the harness's
    // repeated-run mode; not consumed by balance_classes itself.
    int observations_param = 7;
    std::uint64_t seed = 0;
};

// Uniform sampling with replacement; output has exactly `size` instances and
// origin tag suffixed "+bootstrap". Deterministic under seed.
Dataset bootstrap_sample(const Dataset& dataset, std::size_t size, std::uint64_t seed);

// Up-samples the minority class with replacement until the class counts
// agree with the spec's strategy. All original instances pass through
// unchanged; no feature vector is ever synthesized. The output order is
// shuffled deterministically by the spec seed.
Dataset balance_classes(const Dataset& dataset, const ResampleSpec& spec);

// Sensitivity-analysis alternative: drop majority instances (without
// replacement) until the classes are balanced.
Dataset downsample_majority(const Dataset& dataset, std::uint64_t seed);

struct LeakageReport {
    std::size_t duplicate_count = 0;         // test instances with an exact twin in train
    double duplicate_fraction_of_test = 0.0;
};

// Counts test instances whose exact feature vector (bitwise) also occurs in
// train. Throws MismatchedSchemas when the feature schemas differ.
LeakageReport leakage_audit(const Dataset& train, const Dataset& test);

// Test instances whose vector occurs in the balanced train portion but not
// in the raw (pre-resampling) train portion. Pure resampling never
// synthesizes vectors, so under a split-then-balance protocol this is
// structurally zero.
LeakageReport resampling_induced_duplicates(const Dataset& raw_train,
                                            const Dataset& balanced_train,
                                            const Dataset& test);

// Splits the train/test duplicates into resampling-induced ones (the test
// vector is unique in the raw dataset, so only duplication could have put a
// twin in train) and natural ones (the raw data already repeats the vector).
struct LeakageBreakdown {
    std::size_t total = 0;
    std::size_t resampling_induced = 0;
    std::size_t natural = 0;
    double total_fraction = 0.0;
    double induced_fraction = 0.0;
};

LeakageBreakdown leakage_breakdown(const Dataset& raw, const Dataset& train,
                                   const Dataset& test);

} // namespace defectlab
