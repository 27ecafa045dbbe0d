#include <algorithm>
#include <future>
#include <random>
#include <thread>

#include "common.hpp"

namespace pawsim::experiments::internal {

ExperimentResult run_grid(const ExperimentConfig& cfg, const PointBody& body) {
  validate(cfg);
  const auto grid = expand_grid(effective_sweep(cfg));
  ExperimentResult result{cfg, std::vector<PointRecord>(grid.size())};

  auto run_one = [&](std::size_t i) {
    PointRecord r;
    r.index = i;
    r.params = grid[i];
    try {
      body(apply_point(cfg, grid[i]), r, point_seed(cfg.seed_spec.rng_seed, i));
    } catch (const Error& e) {
      r.ok = false;
      r.failure = e.what();
      r.failure_kind = e.kind();
    } catch (const std::exception& e) {
      r.ok = false;
      r.failure = e.what();
    }
    if (!r.ok) {
      r.scalars.clear();
      r.labels.clear();
      r.series.clear();
    }
    return r;
  };

  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < grid.size(); begin += workers) {
    const std::size_t end = std::min(grid.size(), begin + workers);
    if (end - begin == 1) {
      result.points[begin] = run_one(begin);
      continue;
    }
    std::vector<std::future<PointRecord>> pending;
    for (std::size_t i = begin; i < end; ++i) pending.push_back(std::async(std::launch::async, run_one, i));
    for (std::size_t i = begin; i < end; ++i) result.points[i] = pending[i - begin].get();
  }
  return result;
}

std::vector<int> default_levels(Index dim) {
  std::vector<int> out(static_cast<std::size_t>(dim));
  for (Index j = 0; j < dim; ++j) out[std::size_t(j)] = static_cast<int>(j);
  return out;
}

std::vector<int> levels_for(const UniverseParams& u, Index dim) {
  if (u.rest_levels.empty()) return default_levels(dim);
  if (static_cast<Index>(u.rest_levels.size()) != dim) {
    throw Error(ErrorKind::Config, "field 'universe.rest_levels': expected " + std::to_string(dim) + " levels, got " +
                                       std::to_string(u.rest_levels.size()));
  }
  return u.rest_levels;
}

std::vector<int> with_silent_prefix(const std::vector<int>& levels, Index leading_dim) {
  std::vector<int> out;
  out.reserve(levels.size() * static_cast<std::size_t>(leading_dim));
  for (Index a = 0; a < leading_dim; ++a) out.insert(out.end(), levels.begin(), levels.end());
  return out;
}

PureState seed_state(const SeedSpec& spec, const CompositeSpace& space, std::uint64_t stream) {
  if (spec.kind == "basis0") return PureState::basis(space, 0);
  if (spec.kind == "random") {
    std::mt19937_64 rng(stream);
    return random_state<double>(space, rng);
  }
  return PureState::normalized(space, VectorXc::Ones(space.total_dim()));
}

MatrixXc lowering(Index d) {
  MatrixXc l = MatrixXc::Zero(d, d);
  for (Index j = 0; j + 1 < d; ++j) l(j, j + 1) = 1.0;
  return l;
}

MatrixXc hopping(Index d) {
  const MatrixXc l = lowering(d);
  return l + l.adjoint();
}

MatrixXc pauli_x() { return hopping(2); }

MatrixXc window_projector(const ClockModel& clock, Index begin, Index end) {
  const MatrixXc& t = clock.time_basis_matrix();
  const MatrixXc cols = t.middleCols(begin, end - begin);
  return cols * cols.adjoint();
}

std::vector<std::pair<Index, Index>> reading_windows(Index n, int count) {
  if (count < 1 || n < count) throw Error(ErrorKind::ClockTooSmall, "fewer readings than windows");
  const Index width = n / count;
  std::vector<std::pair<Index, Index>> out;
  for (int w = 0; w < count; ++w) {
    const Index begin = w * width;
    const Index end = w + 1 == count ? n : begin + width;
    out.emplace_back(begin, end);
  }
  return out;
}

MatrixXc clock_product(const MatrixXc& clock_op, const MatrixXc& rest_op) {
  return pawsim::detail::kron(clock_op, rest_op);
}

Series series_for(std::string name, const Trajectory& t) {
  Series s;
  s.name = std::move(name);
  for (std::size_t k = 0; k < t.size(); ++k) {
    s.reading_index.push_back(k);
    s.reading_value.push_back(t.readings[k]);
  }
  return s;
}

std::vector<double> values_or_nan(const std::vector<std::optional<double>>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x ? *x : kAbsent);
  return out;
}

double min_present(const std::vector<std::optional<double>>& v) {
  double m = kAbsent;
  for (const auto& x : v) {
    if (x && (std::isnan(m) || *x < m)) m = *x;
  }
  return m;
}

CompositeSpace checked_full_space(Index clock_dim, const std::vector<Index>& rest_dims) {
  std::vector<Index> dims{clock_dim};
  dims.insert(dims.end(), rest_dims.begin(), rest_dims.end());
  return CompositeSpace(std::move(dims));
}

}  // namespace pawsim::experiments::internal
