#pragma once

// Complex file formats.
//
// Text: first non-comment line `n=<int>`, then one triangle per line as three
// space-separated 1-based vertex labels. `#` starts a comment; blank lines
// are ignored. Vertex order within a line is free; triples are canonicalized.
//
// JSON: {"n": <int>, "faces": [[i, j, k], ...]} with 1-based labels.

#include <filesystem>
#include <string>
#include <string_view>

#include "hypertree/complex.hpp"

namespace hypertree {

enum class ComplexFormat { Text, Json };

/// Parses either format (JSON if the first non-blank character is '{').
/// Throws ParseError with a line number.
Complex2 parse_complex(std::string_view content);

Complex2 read_complex(const std::filesystem::path& path);

std::string format_complex(const Complex2& c, ComplexFormat format = ComplexFormat::Text);

/// Throws std::runtime_error if the file cannot be written.
void write_complex(const Complex2& c, const std::filesystem::path& path,
                   ComplexFormat format = ComplexFormat::Text);

}  // namespace hypertree
