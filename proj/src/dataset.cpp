#include "defectlab/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "defectlab/error.hpp"

namespace defectlab {

const std::vector<std::string>& promise_attribute_names() {
    static const std::vector<std::string> names = {
        "loc", "v(g)", "ev(g)", "iv(g)", "n", "v", "l", "d", "i", "e", "b",
        "t", "loCode", "loComment", "loBlank", "loCodeandComment", "uniq_op",
        "uniq_opnd", "total_op", "total_opnd", "branchCount"};
    return names;
}

std::size_t Dataset::count(ClassLabel label) const {
    std::size_t n = 0;
    for (const auto& inst : instances)
        if (inst.label == label) ++n;
    return n;
}

ClassDistribution class_distribution(const Dataset& dataset) {
    if (dataset.instances.empty())
        throw Error(ErrorCode::empty_dataset, "class_distribution of empty dataset");
    const double n = static_cast<double>(dataset.size());
    const double d = static_cast<double>(dataset.count(ClassLabel::defective));
    return {d / n, (n - d) / n};
}

std::string normalize_attribute_name(const std::string& name) {
    std::size_t begin = 0;
    std::size_t end = name.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(name[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(name[end - 1]))) --end;
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(name[i]))));
    return out;
}

std::vector<SchemaViolation> validate_schema(const Dataset& dataset,
                                             bool strict_promise) {
    using Kind = SchemaViolation::Kind;
    std::vector<SchemaViolation> violations;
    const auto& attrs = dataset.schema.attributes;

    std::set<std::string> seen;
    for (const auto& attr : attrs) {
        const std::string norm = normalize_attribute_name(attr.name);
        if (!seen.insert(norm).second)
            violations.push_back({Kind::duplicate_attribute, attr.name});
        if (norm == normalize_attribute_name(dataset.schema.label_name))
            violations.push_back({Kind::label_in_features, attr.name});
    }

    const std::size_t expected = promise_attribute_names().size();
    if (attrs.size() != expected)
        violations.push_back({Kind::wrong_attribute_count,
                              "expected " + std::to_string(expected) + " features, found " +
                                  std::to_string(attrs.size())});

    if (strict_promise) {
        std::set<std::string> present;
        for (const auto& attr : attrs)
            present.insert(normalize_attribute_name(attr.name));
        std::set<std::string> canonical;
        for (const auto& name : promise_attribute_names()) {
            canonical.insert(normalize_attribute_name(name));
            if (!present.count(normalize_attribute_name(name)))
                violations.push_back({Kind::missing_attribute, name});
        }
        for (const auto& attr : attrs)
            if (!canonical.count(normalize_attribute_name(attr.name)))
                violations.push_back({Kind::unexpected_attribute, attr.name});
    }
    return violations;
}

std::string fnv1a64_hex(std::span<const unsigned char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string fnv1a64_hex(const std::string& text) {
    return fnv1a64_hex(std::span<const unsigned char>(
        reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

} // namespace defectlab
