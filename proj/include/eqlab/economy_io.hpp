#pragma once

#include "eqlab/economy.hpp"

#include <filesystem>
#include <string>

namespace eqlab {

/// JSON with keys "L", "mode" ("first" | "second"), "consumers" and
/// "producers". Good indices are 1-based on disk.
Economy economy_from_json(const std::string& text);
std::string economy_to_json(const Economy& economy);

/// Throws IoError if the file cannot be read or parsed.
Economy load_economy(const std::filesystem::path& path);
void save_economy(const Economy& economy, const std::filesystem::path& path);

}  // namespace eqlab
