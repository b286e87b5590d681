#pragma once

// JSONL serialization of sample records and the run manifest shared by the
// command-line tool and the Python module.

#include <istream>
#include <string>
#include <vector>

#include "hypertree/sampler.hpp"

namespace hypertree {

inline constexpr int kSampleFormatVersion = 1;

const char* library_version();

/// One line, no trailing newline. Vertices are 1-based; big integers are
/// decimal strings.
std::string record_to_json(const SampleRecord& r);
/// Throws ParseError (line 1) on malformed input.
SampleRecord record_from_json(const std::string& line);

/// Reads every non-blank line; ParseError carries the line number.
std::vector<SampleRecord> read_records(std::istream& in);

}  // namespace hypertree
