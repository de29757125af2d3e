#pragma once

#include <istream>
#include <string>

#include "prodigy/problems.hpp"

namespace prodigy {

/// Reads the SVMlight/LIBSVM sparse text format: one sample per line,
/// `label index:value index:value ...` with 1-based, increasing-or-not
/// indices. Everything from '#' to the end of the line is ignored. Labels
/// may be arbitrary numbers; they are remapped to contiguous ids in
/// ascending order of the original value. Throws std::runtime_error with
/// the offending line number on malformed input, and on an empty file.
Dataset load_libsvm(const std::string& path);
Dataset load_libsvm_stream(std::istream& in, const std::string& origin);

}  // namespace prodigy
