#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pawsim/experiments.hpp"

namespace pawsim::cli {

using Json = nlohmann::ordered_json;

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitResourceCap = 3,
  kExitAllFailed = 4,
};

/// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutDirEnv = "PAWSIM_OUT_DIR";

// ---------------------------------------------------------------------------
// Configuration files

/// Throws Error(Config) naming the offending field. Unknown keys are
/// rejected; absent keys keep the preset's defaults.
experiments::ExperimentConfig parse_config(const Json& doc);
/// Canonical form listing every field.
Json serialize_config(const experiments::ExperimentConfig& cfg);
/// Raw JSON document of a config file; unreadable or malformed input is a config error.
Json read_config_json(const std::filesystem::path& path);
/// Reads and parses a file; unreadable or malformed JSON is a config error.
experiments::ExperimentConfig load_config(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Serialization

/// 17 significant digits ("%.17g"); NaN becomes an empty field.
std::string format_real(double v);
/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);
/// Header reading_index,reading_value,<columns>; CRLF line endings.
std::string series_csv(const experiments::Series& s);
Json point_json(const experiments::PointRecord& p);
/// One row per point: index, grid parameters, ok, failure, then every scalar seen.
std::string sweep_summary_csv(const experiments::ExperimentResult& r);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Commands

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<long long> max_dim;
  std::optional<std::uint64_t> seed;
};

/// Executes the preset in `config_path`, writes series CSVs, summary.json and
/// manifest.json. Progress and errors go to `err`.
int cmd_run(const std::string& config_path, const RunOptions& opts, std::ostream& err);
/// Like cmd_run, but requires a declared grid and also writes
/// sweep_summary.csv and one point_<i>.json per grid point.
int cmd_sweep(const std::string& config_path, const RunOptions& opts, std::ostream& err);
/// Sorted preset names with descriptions and topics.
int cmd_list_presets(std::ostream& out);

}  // namespace pawsim::cli
