#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pawsim/cli.hpp"

namespace pawsim::cli {

namespace {

constexpr const char* kCrlf = "\r\n";

std::string param_text(const experiments::ParamValue& v) {
  if (const double* d = std::get_if<double>(&v)) return format_real(*d);
  return std::get<std::string>(v);
}

Json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string series_csv(const experiments::Series& s) {
  std::string out = "reading_index,reading_value";
  for (const auto& [name, values] : s.columns) out += "," + csv_field(name);
  out += kCrlf;
  for (std::size_t row = 0; row < s.reading_index.size(); ++row) {
    out += std::to_string(s.reading_index[row]) + "," + format_real(s.reading_value[row]);
    for (const auto& [name, values] : s.columns) out += "," + (row < values.size() ? format_real(values[row]) : "");
    out += kCrlf;
  }
  return out;
}

Json point_json(const experiments::PointRecord& p) {
  Json j;
  j["index"] = p.index;
  Json params = Json::object();
  for (const auto& [name, value] : p.params) {
    if (const double* d = std::get_if<double>(&value)) {
      params[name] = *d;
    } else {
      params[name] = std::get<std::string>(value);
    }
  }
  j["params"] = std::move(params);
  j["ok"] = p.ok;
  if (!p.ok) {
    j["failure"] = p.failure;
    j["failure_kind"] = p.failure_kind ? std::string(to_string(*p.failure_kind)) : std::string("internal");
  }
  Json scalars = Json::object();
  for (const auto& [k, v] : p.scalars) scalars[k] = real_json(v);
  j["scalars"] = std::move(scalars);
  Json labels = Json::object();
  for (const auto& [k, v] : p.labels) labels[k] = v;
  j["labels"] = std::move(labels);
  return j;
}

std::string sweep_summary_csv(const experiments::ExperimentResult& r) {
  std::vector<std::string> param_names;
  std::vector<std::string> scalar_names;
  std::vector<std::string> label_names;
  auto remember = [](std::vector<std::string>& names, const std::string& n) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  };
  for (const auto& p : r.points) {
    for (const auto& [k, v] : p.params) remember(param_names, k);
    for (const auto& [k, v] : p.scalars) {
      // A scalar echoing a grid parameter would duplicate its column.
      if (std::find(param_names.begin(), param_names.end(), k) == param_names.end()) remember(scalar_names, k);
    }
    for (const auto& [k, v] : p.labels) remember(label_names, k);
  }

  std::string out = "index";
  for (const auto& n : param_names) out += "," + csv_field(n);
  out += ",ok,failure";
  for (const auto& n : label_names) out += "," + csv_field(n);
  for (const auto& n : scalar_names) out += "," + csv_field(n);
  out += kCrlf;
  for (const auto& p : r.points) {
    out += std::to_string(p.index);
    for (const auto& n : param_names) {
      out += ",";
      for (const auto& [k, v] : p.params) {
        if (k == n) out += csv_field(param_text(v));
      }
    }
    out += p.ok ? ",1," : ",0,";
    out += csv_field(p.failure);
    for (const auto& n : label_names) {
      out += ",";
      for (const auto& [k, v] : p.labels) {
        if (k == n) out += csv_field(v);
      }
    }
    for (const auto& n : scalar_names) {
      out += ",";
      for (const auto& [k, v] : p.scalars) {
        if (k == n) out += format_real(v);
      }
    }
    out += kCrlf;
  }
  return out;
}

}  // namespace pawsim::cli
