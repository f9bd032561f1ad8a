#include "defectlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "defectlab/error.hpp"

namespace defectlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool iequals_prefix(const std::string& line, const char* keyword) {
    const std::size_t n = std::strlen(keyword);
    if (line.size() < n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (std::tolower(static_cast<unsigned char>(line[i])) != keyword[i]) return false;
    return true;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

double parse_numeric_cell(const std::string& cell, std::size_t line_no) {
    const std::string t = trim(cell);
    if (t.empty())
        throw Error(ErrorCode::non_numeric_feature,
                    "empty numeric cell at line " + std::to_string(line_no));
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw Error(ErrorCode::non_numeric_feature,
                    "unparseable numeric cell '" + t + "' at line " + std::to_string(line_no));
    if (!std::isfinite(value))
        throw Error(ErrorCode::non_numeric_feature,
                    "non-finite value '" + t + "' at line " + std::to_string(line_no));
    return value;
}

bool contains_ci(const std::vector<std::string>& set, const std::string& value) {
    const std::string v = lower(value);
    for (const auto& s : set)
        if (lower(s) == v) return true;
    return false;
}

ClassLabel parse_label_cell(const std::string& cell, const ParseOptions& options,
                            std::size_t line_no) {
    const std::string t = trim(cell);
    if (contains_ci(options.truthy, t)) return ClassLabel::defective;
    if (contains_ci(options.falsy, t)) return ClassLabel::non_defective;
    throw Error(ErrorCode::unknown_label_value,
                "label value '" + t + "' at line " + std::to_string(line_no) +
                    " matches neither the truthy nor the falsy set");
}

// Shared row-consuming logic once the schema is known.
struct RowReader {
    const FeatureSchema& schema;
    const ParseOptions& options;
    std::vector<Instance>& out;

    // Returns false when the row was dropped (missing value + drop flag).
    bool consume(const std::vector<std::string>& cells, std::size_t line_no) {
        const std::size_t expected = schema.feature_count() + 1;
        if (cells.size() != expected)
            throw Error(ErrorCode::arity_mismatch,
                        "row at line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, header declares " +
                            std::to_string(expected));
        for (const auto& cell : cells) {
            if (trim(cell) == "?") {
                if (options.drop_missing) return false;
                throw Error(ErrorCode::missing_value,
                            "missing value '?' at line " + std::to_string(line_no) +
                                " (re-run ingestion with drop-missing to skip such rows)");
            }
        }
        Instance inst;
        inst.features.reserve(schema.feature_count());
        for (std::size_t i = 0; i < schema.feature_count(); ++i)
            inst.features.push_back(parse_numeric_cell(cells[i], line_no));
        inst.label = parse_label_cell(cells.back(), options, line_no);
        out.push_back(std::move(inst));
        return true;
    }
};

} // namespace

Dataset parse_arff(std::istream& source, const ParseOptions& options) {
    Dataset dataset;
    dataset.origin = options.origin;

    struct Declared {
        std::string name;
        bool nominal = false;
        std::vector<std::string> values;
    };
    std::vector<Declared> declared;
    bool seen_data = false;

    std::string raw;
    std::size_t line_no = 0;
    std::vector<std::string> data_lines;
    std::vector<std::size_t> data_line_numbers;

    while (std::getline(source, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '%') continue;

        if (!seen_data) {
            if (iequals_prefix(line, "@relation")) {
                continue;
            } else if (iequals_prefix(line, "@attribute")) {
                std::string rest = trim(line.substr(std::strlen("@attribute")));
                // name is either quoted or runs to the first whitespace
                std::string name;
                std::size_t pos = 0;
                if (!rest.empty() && (rest[0] == '\'' || rest[0] == '"')) {
                    const char quote = rest[0];
                    std::size_t close = rest.find(quote, 1);
                    if (close == std::string::npos)
                        throw Error(ErrorCode::malformed_header,
                                    "unterminated attribute name at line " +
                                        std::to_string(line_no));
                    name = rest.substr(1, close - 1);
                    pos = close + 1;
                } else {
                    while (pos < rest.size() &&
                           !std::isspace(static_cast<unsigned char>(rest[pos])))
                        ++pos;
                    name = rest.substr(0, pos);
                }
                std::string type = trim(rest.substr(pos));
                if (name.empty() || type.empty())
                    throw Error(ErrorCode::malformed_header,
                                "malformed @attribute at line " + std::to_string(line_no));
                Declared d;
                d.name = name;
                const std::string type_l = lower(type);
                if (type_l == "numeric" || type_l == "real" || type_l == "integer") {
                    d.nominal = false;
                } else if (type.front() == '{' && type.back() == '}') {
                    d.nominal = true;
                    for (auto& v : split_commas(type.substr(1, type.size() - 2)))
                        d.values.push_back(v);
                    if (d.values.size() != 2)
                        throw Error(ErrorCode::malformed_header,
                                    "nominal attribute '" + name + "' at line " +
                                        std::to_string(line_no) +
                                        " must have exactly 2 values in the supported subset");
                } else {
                    throw Error(ErrorCode::malformed_header,
                                "unsupported attribute type '" + type + "' at line " +
                                    std::to_string(line_no));
                }
                declared.push_back(std::move(d));
            } else if (iequals_prefix(line, "@data")) {
                seen_data = true;
            } else {
                throw Error(ErrorCode::malformed_header,
                            "unexpected header line " + std::to_string(line_no) + ": " + line);
            }
        } else {
            data_lines.push_back(line);
            data_line_numbers.push_back(line_no);
        }
    }

    if (!seen_data)
        throw Error(ErrorCode::malformed_header, "no @data section found");
    if (declared.size() < 2)
        throw Error(ErrorCode::malformed_header,
                    "need at least one feature attribute and a label attribute");
    for (std::size_t i = 0; i + 1 < declared.size(); ++i)
        if (declared[i].nominal)
            throw Error(ErrorCode::malformed_header,
                        "nominal attribute '" + declared[i].name +
                            "' is only supported as the final (label) attribute");

    dataset.schema.label_name = declared.back().name;
    for (std::size_t i = 0; i + 1 < declared.size(); ++i)
        dataset.schema.attributes.push_back({declared[i].name});

    // A declared nominal label narrows the truthy/falsy sets to its two
    // values when they are recognizable; unknown pairs still go through the
    // configured sets so UnknownLabelValue stays precise.
    RowReader reader{dataset.schema, options, dataset.instances};
    for (std::size_t i = 0; i < data_lines.size(); ++i)
        reader.consume(split_commas(data_lines[i]), data_line_numbers[i]);

    if (dataset.instances.empty())
        throw Error(ErrorCode::empty_dataset, "ARFF file declares no data rows");
    return dataset;
}

Dataset parse_csv(std::istream& source, bool has_header, const ParseOptions& options) {
    Dataset dataset;
    dataset.origin = options.origin;

    std::string raw;
    std::size_t line_no = 0;
    bool schema_ready = false;

    std::optional<RowReader> reader;
    auto ensure_schema = [&](std::size_t column_count) {
        if (column_count < 2)
            throw Error(ErrorCode::malformed_header,
                        "CSV needs at least one feature column and a label column");
        for (std::size_t i = 0; i + 1 < column_count; ++i)
            dataset.schema.attributes.push_back({"f" + std::to_string(i)});
        dataset.schema.label_name = "defects";
        schema_ready = true;
        reader.emplace(RowReader{dataset.schema, options, dataset.instances});
    };

    while (std::getline(source, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto cells = split_commas(line);
        if (!schema_ready) {
            if (has_header) {
                if (cells.size() < 2)
                    throw Error(ErrorCode::malformed_header,
                                "CSV header needs at least two columns");
                for (std::size_t i = 0; i + 1 < cells.size(); ++i)
                    dataset.schema.attributes.push_back({cells[i]});
                dataset.schema.label_name = cells.back();
                schema_ready = true;
                reader.emplace(RowReader{dataset.schema, options, dataset.instances});
                continue;
            }
            ensure_schema(cells.size());
        }
        reader->consume(cells, line_no);
    }

    if (!schema_ready)
        throw Error(ErrorCode::malformed_header, "empty CSV source");
    if (dataset.instances.empty())
        throw Error(ErrorCode::empty_dataset, "CSV contains no data rows");
    return dataset;
}

namespace {

std::string origin_from_path(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

bool has_extension_ci(const std::string& path, const char* ext) {
    std::string e = std::filesystem::path(path).extension().string();
    std::transform(e.begin(), e.end(), e.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e == ext;
}

} // namespace

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::data_error, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string file_checksum(const std::string& path) {
    return fnv1a64_hex(read_file_bytes(path));
}

Dataset parse_arff_file(const std::string& path, const ParseOptions& options) {
    const std::string bytes = read_file_bytes(path);
    std::istringstream in(bytes);
    ParseOptions opts = options;
    if (opts.origin.empty()) opts.origin = origin_from_path(path);
    Dataset dataset = parse_arff(in, opts);
    dataset.checksum = fnv1a64_hex(bytes);
    return dataset;
}

Dataset parse_csv_file(const std::string& path, bool has_header,
                       const ParseOptions& options) {
    const std::string bytes = read_file_bytes(path);
    std::istringstream in(bytes);
    ParseOptions opts = options;
    if (opts.origin.empty()) opts.origin = origin_from_path(path);
    Dataset dataset = parse_csv(in, has_header, opts);
    dataset.checksum = fnv1a64_hex(bytes);
    return dataset;
}

Dataset load_dataset(const std::string& path, const ParseOptions& options) {
    if (has_extension_ci(path, ".csv")) return parse_csv_file(path, true, options);
    return parse_arff_file(path, options);
}

void write_csv(const Dataset& dataset, std::ostream& out) {
    for (std::size_t i = 0; i < dataset.schema.attributes.size(); ++i) {
        if (i) out << ',';
        out << dataset.schema.attributes[i].name;
    }
    out << ',' << dataset.schema.label_name << '\n';
    char buf[64];
    for (const auto& inst : dataset.instances) {
        for (double v : inst.features) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        out << (inst.label == ClassLabel::defective ? "true" : "false") << '\n';
    }
}

ChecksumManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::data_error, "cannot open manifest: " + path);
    ChecksumManifest manifest;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream row(t);
        std::string checksum, filename;
        row >> checksum >> filename;
        if (checksum.empty() || filename.empty())
            throw Error(ErrorCode::data_error, "malformed manifest line: " + line);
        manifest[filename] = checksum;
    }
    return manifest;
}

std::string manifest_mismatch_warning(const ChecksumManifest& manifest,
                                      const std::string& filename,
                                      const std::string& checksum) {
    auto it = manifest.find(filename);
    if (it == manifest.end())
        return "warning: " + filename + " is not listed in the checksum manifest";
    if (it->second != checksum)
        return "warning: checksum of " + filename + " (" + checksum +
               ") differs from manifest entry (" + it->second + ")";
    return "";
}

} // namespace defectlab
