#pragma once

#include <string>

#include "infharm/rat_matrix.hpp"

namespace infharm {

// JSON array of rows.  Entries may be integers, floats with an exact decimal
// expansion, or "p/q" strings; all three convert to exact rationals (floats
// via their decimal text, never through binary double).  Throws IoError on
// malformed input.
RatMatrix read_matrix_json(const std::string& text);
RatMatrix read_matrix_file(const std::string& path);

// Inverse of read_matrix_json: integer entries as JSON numbers when they fit,
// everything else as "p/q" strings.  Round-trips to the identical matrix.
std::string write_matrix_json(const RatMatrix& m);

}  // namespace infharm
