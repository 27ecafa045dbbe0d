#include <fstream>
#include <set>
#include <sstream>

#include "pawsim/cli.hpp"

namespace pawsim::cli {

using experiments::ExperimentConfig;
using experiments::ParamValue;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Config, "field '" + field + "': " + what);
}

void reject_unknown(const Json& obj, const std::string& prefix, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) fail(prefix + key, "unknown field");
  }
}

const Json& object_at(const Json& doc, const std::string& key, const std::string& field) {
  const Json& v = doc.at(key);
  if (!v.is_object()) fail(field, "expected an object");
  return v;
}

long long integer(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<long long>();
}

double real(const Json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::string text(const Json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

template <typename T>
std::vector<T> integer_list(const Json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(static_cast<T>(integer(v[i], field + "[" + std::to_string(i) + "]")));
  return out;
}

}  // namespace

ExperimentConfig parse_config(const Json& doc) {
  if (!doc.is_object()) fail("<root>", "expected a JSON object");
  reject_unknown(doc, "", {"schema_version", "preset", "universe", "sweep", "seed_spec", "output", "options"});
  if (!doc.contains("preset")) fail("preset", "missing required field");
  const std::string preset = text(doc.at("preset"), "preset");
  if (!experiments::find_preset(preset)) fail("preset", "unknown preset '" + preset + "'");
  ExperimentConfig cfg = experiments::default_config(preset);

  if (doc.contains("schema_version")) cfg.schema_version = static_cast<int>(integer(doc.at("schema_version"), "schema_version"));

  if (doc.contains("universe")) {
    const Json& u = object_at(doc, "universe", "universe");
    reject_unknown(u, "universe.", {"clock_dim", "clock_spacing", "rest_dims", "rest_levels", "coupling"});
    if (u.contains("clock_dim")) cfg.universe.clock_dim = integer(u.at("clock_dim"), "universe.clock_dim");
    if (u.contains("clock_spacing")) cfg.universe.clock_spacing = real(u.at("clock_spacing"), "universe.clock_spacing");
    if (u.contains("rest_dims")) cfg.universe.rest_dims = integer_list<Index>(u.at("rest_dims"), "universe.rest_dims");
    if (u.contains("rest_levels")) cfg.universe.rest_levels = integer_list<int>(u.at("rest_levels"), "universe.rest_levels");
    if (u.contains("coupling")) cfg.universe.coupling = real(u.at("coupling"), "universe.coupling");
  }

  if (doc.contains("sweep")) {
    const Json& s = object_at(doc, "sweep", "sweep");
    cfg.sweep.clear();
    for (const auto& [name, values] : s.items()) {
      const std::string field = "sweep." + name;
      if (!values.is_array()) fail(field, "expected an array of values");
      experiments::SweepAxis axis{name, {}};
      for (const auto& v : values) {
        if (v.is_number()) {
          axis.values.emplace_back(v.get<double>());
        } else if (v.is_string()) {
          axis.values.emplace_back(v.get<std::string>());
        } else {
          fail(field, "values must be numbers or strings");
        }
      }
      cfg.sweep.push_back(std::move(axis));
    }
  }

  if (doc.contains("seed_spec")) {
    const Json& s = object_at(doc, "seed_spec", "seed_spec");
    reject_unknown(s, "seed_spec.", {"kind", "rng_seed"});
    if (s.contains("kind")) cfg.seed_spec.kind = text(s.at("kind"), "seed_spec.kind");
    if (s.contains("rng_seed")) {
      const Json& v = s.at("rng_seed");
      if (!v.is_number_unsigned()) fail("seed_spec.rng_seed", "expected a non-negative integer");
      cfg.seed_spec.rng_seed = v.get<std::uint64_t>();
    }
  }

  if (doc.contains("output")) {
    const Json& o = object_at(doc, "output", "output");
    reject_unknown(o, "output.", {"dir"});
    if (o.contains("dir")) cfg.output_dir = text(o.at("dir"), "output.dir");
  }

  if (doc.contains("options")) {
    const Json& o = object_at(doc, "options", "options");
    reject_unknown(o, "options.", {"records", "windows", "repartition", "regime", "g_star", "g_sep", "g_att"});
    auto& opt = cfg.options;
    if (o.contains("records")) opt.records = static_cast<int>(integer(o.at("records"), "options.records"));
    if (o.contains("windows")) opt.windows = static_cast<int>(integer(o.at("windows"), "options.windows"));
    if (o.contains("repartition")) opt.repartition = text(o.at("repartition"), "options.repartition");
    if (o.contains("regime")) opt.regime = text(o.at("regime"), "options.regime");
    if (o.contains("g_star")) opt.g_star = real(o.at("g_star"), "options.g_star");
    if (o.contains("g_sep")) opt.g_sep = real(o.at("g_sep"), "options.g_sep");
    if (o.contains("g_att")) opt.g_att = real(o.at("g_att"), "options.g_att");
  }

  experiments::validate(cfg);
  return cfg;
}

namespace {

Json param_json(const ParamValue& v) {
  if (const double* d = std::get_if<double>(&v)) return *d;
  return std::get<std::string>(v);
}

}  // namespace

Json serialize_config(const ExperimentConfig& cfg) {
  Json doc;
  doc["schema_version"] = cfg.schema_version;
  doc["preset"] = cfg.preset;
  const auto& u = cfg.universe;
  doc["universe"] = {{"clock_dim", u.clock_dim},
                     {"clock_spacing", u.clock_spacing},
                     {"rest_dims", u.rest_dims},
                     {"rest_levels", u.rest_levels},
                     {"coupling", u.coupling}};
  Json sweep = Json::object();
  for (const auto& axis : cfg.sweep) {
    Json values = Json::array();
    for (const auto& v : axis.values) values.push_back(param_json(v));
    sweep[axis.name] = std::move(values);
  }
  doc["sweep"] = std::move(sweep);
  doc["seed_spec"] = {{"kind", cfg.seed_spec.kind}, {"rng_seed", cfg.seed_spec.rng_seed}};
  doc["output"] = {{"dir", cfg.output_dir}};
  const auto& o = cfg.options;
  doc["options"] = {{"records", o.records}, {"windows", o.windows}, {"repartition", o.repartition},
                    {"regime", o.regime},   {"g_star", o.g_star},   {"g_sep", o.g_sep},
                    {"g_att", o.g_att}};
  return doc;
}

Json read_config_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("<file>", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    fail("<file>", std::string("malformed JSON: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_config_json(path)); }

}  // namespace pawsim::cli
