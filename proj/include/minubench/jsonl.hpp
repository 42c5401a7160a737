#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "minubench/types.hpp"

namespace minubench {

/// Lossless textual form: one JSON object per line with keys finger_id,
/// impression_id, width, height, resolution, minutiae. theta is written with
/// full round-trip precision; reading canonicalizes it into [0, 2*pi).
std::string template_to_json_line(const MinutiaeTemplate& t);
MinutiaeTemplate template_from_json_line(const std::string& line);

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<MinutiaeTemplate>& templates);

/// Parse errors name the offending 1-based line number.
std::vector<MinutiaeTemplate> read_jsonl(const std::filesystem::path& path);

}  // namespace minubench
