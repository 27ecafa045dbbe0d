#include <Eigen/Core>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "pawsim/cli.hpp"

namespace pawsim::cli {

using experiments::ExperimentConfig;
using experiments::ExperimentResult;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kExitIo = 1;

std::string eigen_version() {
  return std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
}

void emit_error(std::ostream& err, int code, std::string_view kind, std::string_view message) {
  Json j;
  j["error"] = {{"exit_code", code}, {"kind", kind}, {"message", message}};
  err << j.dump() << '\n';
}

/// Restores the global dimension cap on scope exit.
class CapGuard {
 public:
  explicit CapGuard(std::optional<long long> cap) : previous_(max_total_dim()) {
    if (cap) set_max_total_dim(static_cast<Index>(*cap));
  }
  ~CapGuard() { set_max_total_dim(previous_); }
  CapGuard(const CapGuard&) = delete;
  CapGuard& operator=(const CapGuard&) = delete;

 private:
  Index previous_;
};

struct Artifact {
  std::string path;
  std::string digest;
  std::size_t bytes;
};

class Writer {
 public:
  explicit Writer(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

  void write(const std::string& name, const std::string& content, bool listed = true) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    if (listed) artifacts_.push_back({name, sha256_hex(content), content.size()});
  }

  const std::vector<Artifact>& artifacts() const { return artifacts_; }
  const std::filesystem::path& dir() const { return dir_; }

  /// Re-reads every listed artifact and compares digests.
  void verify() const {
    for (const auto& a : artifacts_) {
      if (sha256_file(dir_ / a.path) != a.digest) throw std::runtime_error("digest mismatch for " + a.path);
    }
  }

 private:
  std::filesystem::path dir_;
  std::vector<Artifact> artifacts_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string series_file(const ExperimentConfig& cfg, std::size_t index, const std::string& series) {
  return cfg.preset + "_p" + std::to_string(index) + "_" + series + ".csv";
}

Json point_with_files(const ExperimentConfig& cfg, const experiments::PointRecord& p) {
  Json j = point_json(p);
  Json files = Json::array();
  for (const auto& s : p.series) files.push_back(series_file(cfg, p.index, s.name));
  j["series_files"] = std::move(files);
  return j;
}

int exit_code_for(const ExperimentResult& r, bool sweep) {
  std::size_t capped = 0;
  for (const auto& p : r.points) {
    if (!p.ok && p.failure_kind == ErrorKind::SpaceTooLarge) ++capped;
  }
  const bool all_failed = r.failed_count() == r.points.size();
  if (all_failed) return capped > 0 ? kExitResourceCap : kExitAllFailed;
  if (!sweep && capped > 0) return kExitResourceCap;
  return kExitOk;
}

int execute(const std::string& config_path, const RunOptions& opts, std::ostream& err, bool sweep) {
  ExperimentConfig cfg;
  try {
    const Json doc = read_config_json(config_path);
    if (sweep) {
      const bool declared = doc.is_object() && doc.contains("sweep") && doc.at("sweep").is_object() && !doc.at("sweep").empty();
      if (!declared) throw Error(ErrorKind::Config, "field 'sweep': a sweep needs a declared, nonempty grid");
    }
    cfg = parse_config(doc);
    if (opts.max_dim && *opts.max_dim < 2) throw Error(ErrorKind::Config, "field '--max-dim': must be >= 2");
  } catch (const Error& e) {
    emit_error(err, kExitConfig, to_string(e.kind()), e.what());
    return kExitConfig;
  }
  if (opts.seed) cfg.seed_spec.rng_seed = *opts.seed;

  std::string out_dir = cfg.output_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) out_dir = env;
  if (opts.out_dir) out_dir = *opts.out_dir;

  const CapGuard cap(opts.max_dim);
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  try {
    result = experiments::run_experiment(cfg);
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::SpaceTooLarge ? kExitResourceCap : kExitConfig;
    emit_error(err, code, to_string(e.kind()), e.what());
    return code;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    Writer w(out_dir);
    Json points = Json::array();
    for (const auto& p : result.points) {
      for (const auto& s : p.series) w.write(series_file(cfg, p.index, s.name), series_csv(s));
      if (sweep) w.write("point_" + std::to_string(p.index) + ".json", dump(point_with_files(cfg, p)));
      points.push_back(point_with_files(cfg, p));
    }
    if (sweep) w.write("sweep_summary.csv", sweep_summary_csv(result));

    Json summary;
    summary["schema_version"] = experiments::kSchemaVersion;
    summary["tool"] = {{"name", "pawsim"}, {"version", kToolVersion}, {"eigen", eigen_version()}};
    summary["command"] = sweep ? "sweep" : "run";
    summary["config"] = serialize_config(cfg);
    summary["point_count"] = result.points.size();
    summary["failed_count"] = result.failed_count();
    summary["points"] = std::move(points);
    w.write("summary.json", dump(summary));

    Json manifest;
    manifest["config_path"] = config_path;
    Json resolved = serialize_config(cfg);
    resolved["output"]["dir"] = out_dir;
    manifest["resolved_config"] = std::move(resolved);
    manifest["output_dir"] = out_dir;
    manifest["max_total_dim"] = max_total_dim();
    Json artifacts = Json::array();
    for (const auto& a : w.artifacts()) artifacts.push_back({{"path", a.path}, {"sha256", a.digest}, {"bytes", a.bytes}});
    manifest["artifacts"] = std::move(artifacts);
    w.write("manifest.json", dump(manifest), false);
    w.verify();
  } catch (const std::exception& e) {
    emit_error(err, kExitIo, "io", e.what());
    return kExitIo;
  }

  err << "pawsim: " << (sweep ? "sweep" : "run") << " " << cfg.preset << ": " << result.points.size() << " point(s), "
      << result.failed_count() << " failed, " << std::fixed << std::setprecision(3) << seconds << " s\n";
  const int code = exit_code_for(result, sweep);
  if (code != kExitOk) {
    std::string first;
    for (const auto& p : result.points) {
      if (!p.ok) {
        first = p.failure;
        break;
      }
    }
    emit_error(err, code, code == kExitResourceCap ? "space too large" : "all points failed", first);
  }
  return code;
}

}  // namespace

int cmd_run(const std::string& config_path, const RunOptions& opts, std::ostream& err) {
  return execute(config_path, opts, err, false);
}

int cmd_sweep(const std::string& config_path, const RunOptions& opts, std::ostream& err) {
  return execute(config_path, opts, err, true);
}

int cmd_list_presets(std::ostream& out) {
  std::size_t width = 0;
  for (const auto& p : experiments::presets()) width = std::max(width, p.name.size());
  for (const auto& p : experiments::presets()) {
    out << std::left << std::setw(static_cast<int>(width + 2)) << p.name << p.description << " [" << p.topic << "]\n";
  }
  return kExitOk;
}

}  // namespace pawsim::cli
