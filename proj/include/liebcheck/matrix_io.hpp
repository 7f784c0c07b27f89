#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "liebcheck/hermitian.hpp"

namespace liebcheck {

/// {"dim": n, "re": [n*n row-major], "im": [n*n row-major]}. "im" is left
/// out when every imaginary part is exactly zero.
nlohmann::json matrix_to_json(const HermitianMatrix& m);

/// Parses the matrix format and symmetrizes. Throws ParseError naming
/// `context` and the offending field.
HermitianMatrix matrix_from_json(const nlohmann::json& j, const std::string& context);

/// Throws IoError if the file cannot be opened, ParseError otherwise.
HermitianMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const HermitianMatrix& m, const std::filesystem::path& path);

/// Canonical text of a JSON value: sorted keys, two-space indent, shortest
/// round-trip doubles, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

/// Writes through a sibling temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace liebcheck
