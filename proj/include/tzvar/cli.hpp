#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tzvar/date.hpp"
#include "tzvar/panel.hpp"
#include "tzvar/pipeline.hpp"

namespace tzvar {

inline constexpr const char* kVersion = "0.1.0";

// Parsed run configuration. Relative data paths resolve against the config file.
struct RunConfig {
  std::filesystem::path markets_path;
  std::filesystem::path returns_path;
  AlignmentPolicy alignment = AlignmentPolicy::Intersect;
  std::optional<Date> start;
  std::optional<Date> end;
  PipelineOptions pipeline;
  std::size_t window_length = 150;
  std::size_t window_step = 5;
  std::filesystem::path output_dir = "out";
};

// Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// Canonical JSON of the effective configuration (post-override); hashed into the manifest.
std::string canonical_config(const RunConfig& cfg);
std::uint64_t fnv1a64(std::string_view bytes);

// Exit codes: 0 ok, 1 config, 2 data, 3 estimation.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace tzvar
