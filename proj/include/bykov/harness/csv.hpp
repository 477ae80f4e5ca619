#pragma once

#include "bykov/real.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bykov::harness {

/// A table of already formatted cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// `x` rounded to double and printed like %.17g, so a parse recovers that double bit
/// for bit. NaN becomes an empty cell.
std::string format_real(Real x);

/// RFC-4180 text with LF line endings; fields holding a comma, quote or line break
/// are quoted.
std::string to_csv(const CsvTable& table);

/// Writes `content` to `path` through a sibling temp file and a rename.
/// Throws IoError on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

inline void emit_csv(const CsvTable& table, const std::filesystem::path& path) {
    write_file_atomic(path, to_csv(table));
}

} // namespace bykov::harness
