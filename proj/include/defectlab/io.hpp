#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "defectlab/dataset.hpp"

namespace defectlab {

// Label-cell mapping and missing-value policy for both parsers.
struct ParseOptions {
    // Cells (case-insensitive) mapping to Defective / NonDefective.
    std::vector<std::string> truthy = {"true", "yes", "y", "1"};
    std::vector<std::string> falsy = {"false", "no", "n", "0"};
    // '?' cells: reject with MissingValue by default; drop the row when set.
    bool drop_missing = false;
    // Origin tag recorded on the dataset (defaults to the file stem).
    std::string origin;
};

// ARFF subset: '@relation', numeric '@attribute' declarations, one final
// binary-nominal (or numeric) label attribute, '@data' with comma-separated
// rows. '%' comments and blank lines are permitted. No sparse rows, no
// date/string attributes.
Dataset parse_arff(std::istream& source, const ParseOptions& options = {});

// Comma-separated values; the final column is the label. Without a header,
// features are named f0..f{n-1} and the label "defects".
Dataset parse_csv(std::istream& source, bool has_header,
                  const ParseOptions& options = {});

// File-path conveniences; fill in checksum and default origin from the path.
Dataset load_dataset(const std::string& path, const ParseOptions& options = {});
Dataset parse_arff_file(const std::string& path, const ParseOptions& options = {});
Dataset parse_csv_file(const std::string& path, bool has_header,
                       const ParseOptions& options = {});

// CSV with header; values written with 17 significant digits so a re-parse
// reproduces the feature matrix bit-exactly.
void write_csv(const Dataset& dataset, std::ostream& out);

std::string read_file_bytes(const std::string& path);
std::string file_checksum(const std::string& path);

// Checksum manifest ("<fnv1a64 hex>  <filename>" per line).
using ChecksumManifest = std::map<std::string, std::string>;
ChecksumManifest load_manifest(const std::string& path);

// Empty string when the file is listed and matches; otherwise a warning line.
std::string manifest_mismatch_warning(const ChecksumManifest& manifest,
                                      const std::string& filename,
                                      const std::string& checksum);

} // namespace defectlab
