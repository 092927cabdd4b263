#pragma once

// Line-oriented configuration format. Grammar and defaults: docs/config_format.md.
//
//   pipe r_mm=137.956
//   robot Ds_mm=80 LR_mm=200 input_rpm=120 k=20 j=2
//   segment straight len_mm=550
//   segment bend theta_deg=90 R_mm=418.788 roll_deg=0

#include <filesystem>
#include <string>
#include <string_view>

#include "ood/traversal.hpp"

namespace ood {

/// Throws ParseError (with line number) or ValidationError.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

/// Emits text that parse_config() reads back to an equal configuration.
std::string serialize_config(const SimConfig& config);

bool operator==(const SimConfig& a, const SimConfig& b);

}  // namespace ood
