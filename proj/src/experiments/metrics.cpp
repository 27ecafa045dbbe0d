#include <algorithm>
#include <map>

#include "pawsim/experiments.hpp"

namespace pawsim::experiments {

namespace {

DensityOperator branch_reduction(const PureState& branch, const FactorSet& subsystem) {
  if (subsystem.size() == branch.space().num_factors()) return DensityOperator::from_pure(branch);
  return reduced_state(branch, subsystem);
}

}  // namespace

Readability readability(const Trajectory& t, const FactorSet& subsystem) {
  Readability out;
  out.distances.assign(t.size(), std::nullopt);
  const auto first = t.first_supported();
  if (!first) throw Error(ErrorKind::InvalidArgument, "trajectory has no supported reading");

  FactorSet sub = subsystem;
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  const CompositeSpace& rest = t.branches[*first]->space();
  if (sub.empty() || sub.back() >= rest.num_factors()) {
    throw Error(ErrorKind::DegeneratePartition, "readability subsystem must name rest factors");
  }

  std::vector<std::pair<std::size_t, DensityOperator>> reductions;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t.branches[k]) reductions.emplace_back(k, branch_reduction(*t.branches[k], sub));
  }
  const CompositeSpace& space = reductions.front().second.space();
  const Index d = space.total_dim();
  MatrixXc mean = MatrixXc::Zero(d, d);
  for (const auto& [k, rho] : reductions) mean += rho.matrix();
  mean /= static_cast<double>(reductions.size());
  const DensityOperator average(detail::unchecked, space, mean);

  double distance_sum = 0.0;
  double entropy_sum = 0.0;
  for (const auto& [k, rho] : reductions) {
    const double dist = trace_distance(rho, average);
    out.distances[k] = dist;
    distance_sum += dist;
    entropy_sum += von_neumann_entropy(rho);
  }
  const double n = static_cast<double>(reductions.size());
  out.score = distance_sum / n;
  out.holevo = std::max(0.0, von_neumann_entropy(average) - entropy_sum / n);
  return out;
}

int aliasing_multiplicity(std::span<const int> levels, Index clock_dim) {
  if (clock_dim < 1) throw Error(ErrorKind::ClockTooSmall, "clock dimension must be positive");
  std::map<long long, std::vector<int>> distinct;
  int best = 0;
  for (int level : levels) {
    const long long residue = ((level % clock_dim) + clock_dim) % clock_dim;
    auto& seen = distinct[residue];
    if (std::find(seen.begin(), seen.end(), level) != seen.end()) continue;
    seen.push_back(level);
    best = std::max(best, static_cast<int>(seen.size()));
  }
  return best;
}

}  // namespace pawsim::experiments
