#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pawsim/clock.hpp"
#include "pawsim/constraint.hpp"
#include "pawsim/hilbert.hpp"
#include "pawsim/paw.hpp"

namespace pawsim::experiments {

inline constexpr int kSchemaVersion = 1;

/// Sweep values are numbers or names.
using ParamValue = std::variant<double, std::string>;

enum class ParamType { Integer, Real, Text };

struct UniverseParams {
  Index clock_dim = 8;
  double clock_spacing = 1.0;
  std::vector<Index> rest_dims{4};
  /// Clock level matched by each rest basis state; empty selects the
  /// preset's default assignment.
  std::vector<int> rest_levels;
  double coupling = 0.0;
};

struct SeedSpec {
  /// "uniform", "basis0" or "random".
  std::string kind = "uniform";
  std::uint64_t rng_seed = 0;
};

struct PresetOptions {
  int records = 2;
  int windows = 4;
  std::string repartition = "identity";
  std::string regime = "separation";
  double g_star = 0.05;
  double g_sep = 0.5;
  double g_att = 0.5;
};

struct SweepAxis {
  std::string name;
  std::vector<ParamValue> values;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string preset;
  UniverseParams universe;
  /// Cartesian grid, last axis varying fastest. Empty means the preset default.
  std::vector<SweepAxis> sweep;
  SeedSpec seed_spec;
  std::string output_dir = "out";
  PresetOptions options;
};

/// One time series sampled at clock readings. Absent values are NaN.
struct Series {
  std::string name;
  std::vector<std::size_t> reading_index;
  std::vector<double> reading_value;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  void add_column(std::string column, std::vector<double> values) {
    columns.emplace_back(std::move(column), std::move(values));
  }
};

struct PointRecord {
  std::size_t index = 0;
  std::vector<std::pair<std::string, ParamValue>> params;
  bool ok = true;
  std::string failure;
  std::optional<ErrorKind> failure_kind;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<Series> series;

  void set(std::string key, double value) { scalars.emplace_back(std::move(key), value); }
  void label(std::string key, std::string value) { labels.emplace_back(std::move(key), std::move(value)); }
  /// Throws std::out_of_range if absent.
  double scalar(std::string_view key) const;
  const Series& series_named(std::string_view name) const;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<PointRecord> points;

  std::size_t failed_count() const;
};

// ---------------------------------------------------------------------------
// Registry and configuration

struct PresetInfo {
  std::string name;
  std::string description;
  std::string topic;
  std::vector<std::pair<std::string, ParamType>> sweep_schema;
};

/// Sorted by name.
const std::vector<PresetInfo>& presets();
const PresetInfo* find_preset(std::string_view name);

/// The named preset's defaults. Throws Error(Config) for an unknown name.
ExperimentConfig default_config(std::string_view preset);

/// Throws Error(Config) naming the offending field.
void validate(const ExperimentConfig& cfg);

using GridPoint = std::vector<std::pair<std::string, ParamValue>>;

/// The configured grid, or the preset's default grid when none is set.
std::vector<SweepAxis> effective_sweep(const ExperimentConfig& cfg);
std::vector<GridPoint> expand_grid(const std::vector<SweepAxis>& axes);

/// cfg with one grid point's overrides applied.
ExperimentConfig apply_point(const ExperimentConfig& cfg, const GridPoint& point);

/// Independent stream for a grid point, derived from the configured seed.
std::uint64_t point_seed(std::uint64_t base, std::size_t point_index);

// ---------------------------------------------------------------------------
// Metrics

struct Readability {
  /// Mean trace distance of the subsystem's conditional states from their time average.
  double score = 0.0;
  /// S(average) - mean S(conditional): mutual information between the reading and the subsystem.
  double holevo = 0.0;
  std::vector<std::optional<double>> distances;
};

/// `subsystem` lists rest-space factors; all of them means the whole rest.
Readability readability(const Trajectory& t, const FactorSet& subsystem);

/// Largest number of rest levels that share a residue modulo the clock dimension.
int aliasing_multiplicity(std::span<const int> levels, Index clock_dim);

// ---------------------------------------------------------------------------
// Clock ambiguity

struct RepartitionReport {
  double spectrum_deviation = 0.0;
  std::size_t kernel_dim_original = 0;
  std::size_t kernel_dim_repartitioned = 0;
  double norm_deviation = 0.0;
  /// 1 - min_k fidelity(A_k, B_k).
  double divergence = 0.0;
  /// 1 - min_k fidelity(A_k, B_{-k mod N}).
  double reversed_divergence = 0.0;
  /// fidelity(A_k, B_l), row k.
  std::vector<std::vector<double>> pairwise;
  /// Partition B against its own rest Hamiltonian Tr_C(H')/N, forward and with readings reversed.
  double forward_emergent_min = 0.0;
  double reversed_emergent_min = 0.0;
  Trajectory original;
  Trajectory repartitioned;
};

/// Describes the same universe in the factorization rotated by W: H' = W H W^+,
/// state' = W state, both conditioned on the same clock model. Throws
/// InvalidRepartition unless W is unitary within 1e-10.
RepartitionReport compare_partitions(const UniverseSpec& u, const PureState& state, const MatrixXc& w);

// ---------------------------------------------------------------------------
// Named experiments. Each maps its grid to one record per point; a point
// that throws is recorded with its reason.

ExperimentResult emergent_basic(const ExperimentConfig& cfg);
ExperimentResult readability_scan(const ExperimentConfig& cfg);
ExperimentResult record_arrow(const ExperimentConfig& cfg);
ExperimentResult clock_ambiguity(const ExperimentConfig& cfg);
ExperimentResult size_scan(const ExperimentConfig& cfg);
ExperimentResult cosmo_toy(const ExperimentConfig& cfg);

/// Dispatches on cfg.preset.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace pawsim::experiments
