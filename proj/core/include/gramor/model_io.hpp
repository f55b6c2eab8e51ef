#pragma once

#include <string>

#include "gramor/lti.hpp"
#include "gramor/matrix.hpp"

namespace gramor {

// Model files are JSON objects {"n":…, "m":…, "o":…, "A":[[rows]],
// "B":[[rows]], "C":[[rows]]} with numbers that round-trip exactly.
// Validation failures name the offending field.
LtiSystem read_system(const std::string& path);
void write_system(const std::string& path, const LtiSystem& sys);

// Bare JSON array-of-rows, the same layout the model matrix fields use;
// used for symmetrizers and gramian exports.
Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& a);

}  // namespace gramor
