#pragma once

#include <string>

namespace bql {

// Write bytes to path atomically: write to a temp file in the same directory,
// then rename over the target, so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& bytes);

// Read a whole file into a string; throws std::runtime_error on failure.
std::string read_file(const std::string& path);

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

}  // namespace bql
