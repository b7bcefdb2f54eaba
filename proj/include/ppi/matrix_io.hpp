#pragma once

#include <string>

#include "json.hpp"
#include "ppi/isometry.hpp"
#include "ppi/matrix_ops.hpp"

namespace ppi {

// Matrix file format: {"rows": r, "cols": c, "entries": [[[re, im], ...], ...]}
// with entries row-major. Serialized doubles round-trip bit-exactly.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& doc);

Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const Matrix& m, const std::string& path);

// {"n": ..., "p": int or "inf", "a": ..., "per_power": [...], "geo0": ..., "alg0": ...}
nlohmann::json report_to_json(const IndexReport& r);

}  // namespace ppi
