#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmfineq/inequalities.hpp"
#include "gmfineq/search.hpp"

namespace gmfineq {

using Json = nlohmann::json;

// All parsers throw ParseError on malformed input.

/// {"n": int, "real": [[...]], "imag": [[...]]}; "imag" is omitted when zero
/// and defaults to zero when absent.
Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

/// {"n": int, "elements": [[images]...], "character": [{"re", "im"}...]}.
/// Images are 0-based. Readers also accept "generators" (image lists) in
/// place of "elements", and "trivial" / "sign" / "cyclic:K" in place of an
/// explicit character array.
Json character_to_json(const LinearCharacter& chi);
LinearCharacter character_from_json(const Json& j);

/// Replay file for a list of matrices: {"matrices": [matrix, ...]}, plus
/// optional context keys that readers ignore.
Json instance_to_json(std::span<const Matrix> matrices);
std::vector<Matrix> instance_from_json(const Json& j);

Json report_to_json(const SlackReport& r);
SlackReport report_from_json(const Json& j);
/// One compact JSON object, no trailing newline.
std::string report_line(const SlackReport& r);

/// Counts per verdict and the worst report.
Json summary_to_json(const SearchResult& result);
/// Deterministic: wall_time and the full report list are left out.
Json search_result_to_json(const SearchResult& result);

std::string read_text_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);
/// Writes a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace gmfineq
