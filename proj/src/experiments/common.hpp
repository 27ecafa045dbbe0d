#pragma once

// Shared building blocks for the named experiments. Not installed.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "pawsim/experiments.hpp"

namespace pawsim::experiments::internal {

inline constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

/// Runs `body` on every grid point of cfg (concurrently when cores allow)
/// and returns records in grid order.
using PointBody = std::function<void(const ExperimentConfig& resolved, PointRecord& record, std::uint64_t stream)>;
ExperimentResult run_grid(const ExperimentConfig& cfg, const PointBody& body);

std::vector<int> default_levels(Index dim);
/// Configured levels (or the default) for a matched block of dimension `dim`.
std::vector<int> levels_for(const UniverseParams& u, Index dim);
/// Repeats `levels` for every state of `leading_dim` leading basis states, which carry no energy.
std::vector<int> with_silent_prefix(const std::vector<int>& levels, Index leading_dim);

PureState seed_state(const SeedSpec& spec, const CompositeSpace& space, std::uint64_t stream);

/// Symmetric hopping sum_j |j><j+1| + h.c.; the Pauli X for d = 2.
MatrixXc hopping(Index d);
/// sum_j |j><j+1|.
MatrixXc lowering(Index d);
MatrixXc pauli_x();

/// Projector onto the clock time states with readings in [begin, end).
MatrixXc window_projector(const ClockModel& clock, Index begin, Index end);

/// `count` consecutive windows of floor(N / count) readings each; the
/// remainder joins the last window.
std::vector<std::pair<Index, Index>> reading_windows(Index n, int count);

/// clock_op (x) rest_op on the full space.
MatrixXc clock_product(const MatrixXc& clock_op, const MatrixXc& rest_op);

/// reading_index and reading_value filled from the trajectory.
Series series_for(std::string name, const Trajectory& t);

std::vector<double> values_or_nan(const std::vector<std::optional<double>>& v);
double min_present(const std::vector<std::optional<double>>& v);

/// Fails the point unless the full space fits under the cap; call before
/// building dense operators.
CompositeSpace checked_full_space(Index clock_dim, const std::vector<Index>& rest_dims);

}  // namespace pawsim::experiments::internal
