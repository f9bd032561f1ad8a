#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace defectlab {

enum class ClassLabel : int {
    non_defective = 0,
    defective = 1,
};

inline const char* class_label_name(ClassLabel label) {
    return label == ClassLabel::defective ? "defective" : "non_defective";
}

inline ClassLabel other_class(ClassLabel label) {
    return label == ClassLabel::defective ? ClassLabel::non_defective
                                          : ClassLabel::defective;
}

struct Attribute {
    std::string name;
    // All feature attributes in the supported subset are numeric.
};

// Ordered feature attributes plus the (excluded) label attribute name.
struct FeatureSchema {
    std::vector<Attribute> attributes;
    std::string label_name;

    std::size_t feature_count() const { return attributes.size(); }
    bool operator==(const FeatureSchema&) const = default;
};

// The 21 canonical PROMISE metric names, in canonical order.
const std::vector<std::string>& promise_attribute_names();

struct Instance {
    std::vector<double> features;
    ClassLabel label = ClassLabel::non_defective;
};

struct Dataset {
    FeatureSchema schema;
    std::vector<Instance> instances;
    std::string origin;    // e.g. "CM1", suffixed by transforms ("+bootstrap")
    std::string checksum;  // content hash of the source file, hex

    std::size_t size() const { return instances.size(); }
    std::size_t feature_count() const { return schema.feature_count(); }

    std::size_t count(ClassLabel label) const;
};

struct ClassDistribution {
    double defective_fraction = 0.0;
    double non_defective_fraction = 0.0;
};

// Fractions in [0,1] summing to 1 (within 1e-12). Throws EmptyDataset.
ClassDistribution class_distribution(const Dataset& dataset);

// Schema validation. Violations are data, not failures.
struct SchemaViolation {
    enum class Kind {
        wrong_attribute_count,
        missing_attribute,
        unexpected_attribute,
        duplicate_attribute,
        label_in_features,
    };
    Kind kind;
    std::string detail;
};

// strict_promise: the 21 names must match the canonical PROMISE names,
// case-insensitively and whitespace-trimmed. Lenient: any 21 unique numeric
// features.
std::vector<SchemaViolation> validate_schema(const Dataset& dataset,
                                             bool strict_promise);

// FNV-1a 64-bit over a byte buffer, lowercase hex. Used for dataset and
// spec checksums; identity, not cryptography.
std::string fnv1a64_hex(std::span<const unsigned char> bytes);
std::string fnv1a64_hex(const std::string& text);

// Case-insensitive, whitespace-trimmed attribute-name comparison.
std::string normalize_attribute_name(const std::string& name);

} // namespace defectlab
