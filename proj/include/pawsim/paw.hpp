#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pawsim/clock.hpp"
#include "pawsim/hilbert.hpp"

namespace pawsim {

/// Branches whose squared norm falls below this are unsupported readings.
inline constexpr double kSupportFloor = 1e-14;

struct StepDiagnostic {
  bool supported = true;
  std::string note;
};

/// Conditional states of the rest, one per clock reading.
struct Trajectory {
  std::vector<double> readings;
  /// Normalized conditional state, or nullopt for an unsupported reading.
  std::vector<std::optional<PureState>> branches;
  /// Squared branch norms before normalization; they sum to 1.
  std::vector<double> branch_weights;
  std::vector<StepDiagnostic> diagnostics;

  std::size_t size() const { return readings.size(); }
  std::size_t supported_count() const;
  std::optional<std::size_t> first_supported() const;
};

/// Branch k = (<t_k| (x) 1) state, renormalized. The clock must be factor 0
/// of the state's space.
Trajectory condition(const PureState& state, const ClockModel& clock, double floor = kSupportFloor);

/// Entry k = fidelity(branch_k, exp(-i h_r (p_k - p_a)) branch_a), with a
/// the first supported reading. Unsupported readings give nullopt.
std::vector<std::optional<double>> emergent_fidelity(const Trajectory& t, const HermitianOperator& h_r);

/// Same comparison against an explicit reference state placed at reading p_0.
std::vector<std::optional<double>> emergent_fidelity(const Trajectory& t, const HermitianOperator& h_r,
                                                     const PureState& anchor);

struct PairwiseFidelity {
  double min = 1.0;
  double max = 1.0;
};

/// Extremes of fidelity over all pairs of supported branches.
PairwiseFidelity pairwise_branch_fidelity(const Trajectory& t);

struct SeparabilityReport {
  double min_pairwise = 1.0;
  double max_pairwise = 1.0;
  std::vector<std::optional<double>> emergent;
  std::size_t supported = 0;
  /// Fewer than two supported readings: no ordering can be read off.
  bool degenerate = false;
};

/// Conditions chi (x) phi and reports how much the branches differ.
SeparabilityReport separability_demo(const ClockModel& clock, const PureState& chi, const PureState& phi,
                                     const HermitianOperator& h_r);

struct EntanglementSeries {
  /// True for a clock-vs-rest cut: only `global_entropy` is meaningful.
  bool global = false;
  double global_entropy = 0.0;
  /// Branch entropies across the cut inside the rest, per reading.
  std::vector<std::optional<double>> per_reading;
};

/// `cut` lists full-space factors on one side. {0} (or its complement)
/// gives the clock-rest entropy; a proper subset of rest factors gives
/// per-branch entropies. Cuts mixing the clock with part of the rest throw
/// DegeneratePartition.
EntanglementSeries entanglement_series(const PureState& state, const ClockModel& clock, const FactorSet& cut);

}  // namespace pawsim
