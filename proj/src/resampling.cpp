#include "defectlab/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_set>

#include "defectlab/error.hpp"
#include "defectlab/rng.hpp"

namespace defectlab {

namespace {

struct FeatureVectorHash {
    std::size_t operator()(const std::vector<double>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (double d : v) {
            std::uint64_t bits;
            std::memcpy(&bits, &d, sizeof bits);
            for (int shift = 0; shift < 64; shift += 8) {
                h ^= (bits >> shift) & 0xffu;
                h *= 0x100000001b3ULL;
            }
        }
        return static_cast<std::size_t>(h);
    }
};

struct FeatureVectorEq {
    bool operator()(const std::vector<double>& a, const std::vector<double>& b) const {
        if (a.size() != b.size()) return false;
        // bitwise equality, so -0.0 != 0.0 and NaN payloads matter;
        // ingestion guarantees finite values anyway
        return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
    }
};

using VectorSet = std::unordered_set<std::vector<double>, FeatureVectorHash, FeatureVectorEq>;

VectorSet vector_set(const Dataset& dataset) {
    VectorSet set;
    set.reserve(dataset.size() * 2);
    for (const auto& inst : dataset.instances) set.insert(inst.features);
    return set;
}

} // namespace

Dataset bootstrap_sample(const Dataset& dataset, std::size_t size, std::uint64_t seed) {
    if (dataset.instances.empty())
        throw Error(ErrorCode::empty_dataset, "bootstrap_sample of empty dataset");
    Rng rng(seed);
    Dataset out;
    out.schema = dataset.schema;
    out.checksum = dataset.checksum;
    out.origin = dataset.origin + "+bootstrap";
    out.instances.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        out.instances.push_back(dataset.instances[rng.uniform_below(dataset.size())]);
    return out;
}

Dataset balance_classes(const Dataset& dataset, const ResampleSpec& spec) {
    const std::size_t defective = dataset.count(ClassLabel::defective);
    const std::size_t non_defective = dataset.size() - defective;
    if (defective == 0 || non_defective == 0)
        throw Error(ErrorCode::single_class_dataset,
                    "balance_classes requires both classes present (origin '" +
                        dataset.origin + "')");

    const ClassLabel minority_label =
        defective <= non_defective ? ClassLabel::defective : ClassLabel::non_defective;
    const std::size_t minority = std::min(defective, non_defective);
    const std::size_t majority = std::max(defective, non_defective);

    std::size_t minority_target = majority;
    if (spec.strategy == ResampleSpec::Strategy::ratio) {
        if (!(spec.target_minority_fraction > 0.0 && spec.target_minority_fraction <= 0.5))
            throw Error(ErrorCode::config_error,
                        "target_minority_fraction must lie in (0, 0.5]");
        const double f = spec.target_minority_fraction;
        minority_target = static_cast<std::size_t>(
            std::llround(f * static_cast<double>(majority) / (1.0 - f)));
        // never reduce a class
        minority_target = std::max(minority_target, minority);
    }

    std::vector<std::size_t> minority_indices;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        if (dataset.instances[i].label == minority_label) minority_indices.push_back(i);

    Rng rng(derive_seed(spec.seed, 0x62616c616eULL));
    Dataset out;
    out.schema = dataset.schema;
    out.checksum = dataset.checksum;
    out.origin = dataset.origin + "+balanced";
    out.instances = dataset.instances;
    out.instances.reserve(dataset.size() + (minority_target - minority));
    for (std::size_t i = minority; i < minority_target; ++i) {
        const std::size_t pick = minority_indices[rng.uniform_below(minority_indices.size())];
        out.instances.push_back(dataset.instances[pick]);
    }
    rng.shuffle(out.instances);
    return out;
}

Dataset downsample_majority(const Dataset& dataset, std::uint64_t seed) {
    const std::size_t defective = dataset.count(ClassLabel::defective);
    const std::size_t non_defective = dataset.size() - defective;
    if (defective == 0 || non_defective == 0)
        throw Error(ErrorCode::single_class_dataset,
                    "downsample_majority requires both classes present");
    const ClassLabel majority_label =
        defective > non_defective ? ClassLabel::defective : ClassLabel::non_defective;
    const std::size_t keep = std::min(defective, non_defective);

    std::vector<std::size_t> majority_indices;
    std::vector<std::size_t> minority_indices;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        (dataset.instances[i].label == majority_label ? majority_indices : minority_indices)
            .push_back(i);

    Rng rng(derive_seed(seed, 0x646f776eULL));
    rng.shuffle(majority_indices);
    majority_indices.resize(keep);

    std::vector<std::size_t> all = minority_indices;
    all.insert(all.end(), majority_indices.begin(), majority_indices.end());
    std::sort(all.begin(), all.end());

    Dataset out;
    out.schema = dataset.schema;
    out.checksum = dataset.checksum;
    out.origin = dataset.origin + "+downsampled";
    out.instances.reserve(all.size());
    for (std::size_t idx : all) out.instances.push_back(dataset.instances[idx]);
    rng.shuffle(out.instances);
    return out;
}

LeakageReport leakage_audit(const Dataset& train, const Dataset& test) {
    if (train.schema.attributes.size() != test.schema.attributes.size())
        throw Error(ErrorCode::mismatched_schemas,
                    "leakage_audit requires matching feature schemas");
    const VectorSet train_vectors = vector_set(train);
    LeakageReport report;
    for (const auto& inst : test.instances)
        if (train_vectors.count(inst.features)) ++report.duplicate_count;
    report.duplicate_fraction_of_test =
        test.instances.empty() ? 0.0
                               : static_cast<double>(report.duplicate_count) /
                                     static_cast<double>(test.size());
    return report;
}

LeakageReport resampling_induced_duplicates(const Dataset& raw_train,
                                            const Dataset& balanced_train,
                                            const Dataset& test) {
    const VectorSet raw_vectors = vector_set(raw_train);
    const VectorSet balanced_vectors = vector_set(balanced_train);
    LeakageReport report;
    for (const auto& inst : test.instances)
        if (balanced_vectors.count(inst.features) && !raw_vectors.count(inst.features))
            ++report.duplicate_count;
    report.duplicate_fraction_of_test =
        test.instances.empty() ? 0.0
                               : static_cast<double>(report.duplicate_count) /
                                     static_cast<double>(test.size());
    return report;
}

} // namespace defectlab
