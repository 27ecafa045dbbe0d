#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "pawsim/experiments.hpp"

namespace pawsim::experiments {

double PointRecord::scalar(std::string_view key) const {
  for (const auto& [k, v] : scalars) {
    if (k == key) return v;
  }
  throw std::out_of_range("no scalar named " + std::string(key));
}

const Series& PointRecord::series_named(std::string_view name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("no series named " + std::string(name));
}

std::size_t ExperimentResult::failed_count() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return !p.ok; }));
}

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Config, "field '" + field + "': " + what);
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

void check_value(const std::string& field, ParamType type, const ParamValue& v) {
  switch (type) {
    case ParamType::Text:
      if (!std::holds_alternative<std::string>(v)) config_error(field, "expected a string");
      return;
    case ParamType::Integer:
      if (!std::holds_alternative<double>(v) || !is_integer(std::get<double>(v))) {
        config_error(field, "expected an integer");
      }
      return;
    case ParamType::Real:
      if (!std::holds_alternative<double>(v) || !std::isfinite(std::get<double>(v))) {
        config_error(field, "expected a finite number");
      }
      return;
  }
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.schema_version != kSchemaVersion) {
    config_error("schema_version", "unsupported version " + std::to_string(cfg.schema_version));
  }
  if (cfg.preset.empty()) config_error("preset", "missing");
  const PresetInfo* info = find_preset(cfg.preset);
  if (!info) config_error("preset", "unknown preset '" + cfg.preset + "'");

  const auto& u = cfg.universe;
  if (u.clock_dim < 2) config_error("universe.clock_dim", "must be >= 2");
  if (!(u.clock_spacing > 0.0) || !std::isfinite(u.clock_spacing)) {
    config_error("universe.clock_spacing", "must be positive");
  }
  if (u.rest_dims.empty()) config_error("universe.rest_dims", "must list at least one factor");
  for (Index d : u.rest_dims) {
    if (d < 2) config_error("universe.rest_dims", "every factor must be >= 2");
  }
  if (!(u.coupling >= 0.0) || !std::isfinite(u.coupling)) config_error("universe.coupling", "must be >= 0");

  static const std::set<std::string> seed_kinds{"uniform", "basis0", "random"};
  if (!seed_kinds.count(cfg.seed_spec.kind)) config_error("seed_spec.kind", "unknown kind '" + cfg.seed_spec.kind + "'");
  if (cfg.output_dir.empty()) config_error("output.dir", "must not be empty");

  const auto& o = cfg.options;
  // One window would span the whole clock and leave the flip clock-independent.
  if (o.records < 2 || o.records > 6) config_error("options.records", "must be in 2..6");
  if (o.windows < 1) config_error("options.windows", "must be >= 1");
  static const std::set<std::string> repartitions{"identity", "swap", "local", "random"};
  if (!repartitions.count(o.repartition)) config_error("options.repartition", "unknown repartition '" + o.repartition + "'");
  static const std::set<std::string> regimes{"none", "separation", "attraction"};
  if (!regimes.count(o.regime)) config_error("options.regime", "unknown regime '" + o.regime + "'");
  for (const auto& [name, value] : {std::pair{"options.g_star", o.g_star}, std::pair{"options.g_sep", o.g_sep},
                                    std::pair{"options.g_att", o.g_att}}) {
    if (!(value >= 0.0) || !std::isfinite(value)) config_error(name, "must be >= 0");
  }

  std::set<std::string> seen;
  for (const auto& axis : cfg.sweep) {
    const std::string field = "sweep." + axis.name;
    const auto it = std::find_if(info->sweep_schema.begin(), info->sweep_schema.end(),
                                 [&](const auto& entry) { return entry.first == axis.name; });
    if (it == info->sweep_schema.end()) config_error(field, "not a sweep parameter of preset '" + cfg.preset + "'");
    if (!seen.insert(axis.name).second) config_error(field, "declared twice");
    if (axis.values.empty()) config_error(field, "grid is empty");
    for (const auto& v : axis.values) {
      check_value(field, it->second, v);
      if (axis.name == "records" && (std::get<double>(v) < 2 || std::get<double>(v) > 6)) {
        config_error(field, "must be in 2..6");
      }
    }
  }
}

std::vector<SweepAxis> effective_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep.empty()) return cfg.sweep;
  return default_config(cfg.preset).sweep;
}

std::vector<GridPoint> expand_grid(const std::vector<SweepAxis>& axes) {
  std::vector<GridPoint> out{GridPoint{}};
  for (const auto& axis : axes) {
    std::vector<GridPoint> next;
    next.reserve(out.size() * axis.values.size());
    for (const auto& prefix : out) {
      for (const auto& v : axis.values) {
        GridPoint p = prefix;
        p.emplace_back(axis.name, v);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

std::vector<Index> factor_rest_dim(Index dim) {
  if (dim >= 4 && dim % 2 == 0) return {2, dim / 2};
  return {dim};
}

}  // namespace

ExperimentConfig apply_point(const ExperimentConfig& cfg, const GridPoint& point) {
  ExperimentConfig out = cfg;
  for (const auto& [name, value] : point) {
    if (name == "coupling") {
      out.universe.coupling = std::get<double>(value);
    } else if (name == "clock_dim") {
      out.universe.clock_dim = static_cast<Index>(std::get<double>(value));
    } else if (name == "rest_dim") {
      out.universe.rest_dims = factor_rest_dim(static_cast<Index>(std::get<double>(value)));
    } else if (name == "records") {
      out.options.records = static_cast<int>(std::get<double>(value));
    } else if (name == "repartition") {
      out.options.repartition = std::get<std::string>(value);
    } else if (name == "regime") {
      out.options.regime = std::get<std::string>(value);
    } else {
      throw Error(ErrorKind::Config, "field 'sweep." + name + "': unknown sweep parameter");
    }
  }
  return out;
}

std::uint64_t point_seed(std::uint64_t base, std::size_t point_index) {
  // splitmix64 finalizer over (base, index).
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(point_index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace pawsim::experiments
