#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pawsim/clock.hpp"
#include "pawsim/hilbert.hpp"

namespace pawsim {

inline constexpr double kDefaultKernelTolerance = 1e-10;

/// A timeless universe: clock factor first, then the rest factors.
/// H = h_c (x) 1 + 1 (x) h_r + g h_i.
struct UniverseSpec {
  ClockModel clock;
  CompositeSpace rest;
  HermitianOperator h_r;
  HermitianOperator h_i;
  double g = 0.0;

  CompositeSpace full_space() const { return clock.space().concat(rest); }
  Index rest_dim() const { return rest.total_dim(); }
};

/// Validates shapes (IncompatibleSpec on mismatch). When g > 0 the
/// interaction must act nontrivially on the clock and on at least one rest
/// factor. A missing interaction is the zero operator.
UniverseSpec make_universe(ClockModel clock, HermitianOperator h_r, std::optional<HermitianOperator> h_i = std::nullopt,
                           double g = 0.0);

/// True unless `op` = 1 on `factor` (x) something on the other factors.
bool acts_nontrivially_on(const CompositeSpace& space, const MatrixXc& op, std::size_t factor);

HermitianOperator total_hamiltonian(const UniverseSpec& u);
/// h_c (x) 1 + 1 (x) h_r, the interaction-free part.
HermitianOperator free_hamiltonian(const UniverseSpec& u);

struct MatchedRest {
  HermitianOperator h_r;
  /// Some level appears more than once.
  bool degenerate = false;
};

/// Diagonal h_r with eigenvalues -level_j * spacing, so every rest level has
/// a clock partner with E_c + E_r = 0. Levels outside 0..N-1 would alias
/// across the clock period and throw UnresolvableEnergy.
MatchedRest matched_rest_hamiltonian(const ClockModel& clock, const CompositeSpace& rest, std::span<const int> levels);
MatchedRest matched_rest_hamiltonian(const ClockModel& clock, Index dim_r, std::span<const int> levels);

struct HistoryState {
  PureState state;
  std::vector<Complex> weights;
  PureState seed;
  /// ||H state|| against total_hamiltonian at construction.
  double residual = 0.0;
};

/// sum_k a_k |t_k> (x) exp(-i h_r p_k) seed, normalized.
/// Throws EmptyHistory when the weights (or their sum) vanish.
HistoryState build_history_state(const UniverseSpec& u, const PureState& seed, std::span<const Complex> weights);

/// History state whose branches follow the clock-conditioned Hamiltonian
/// h_r + g <t_k|h_i|t_k>: the step arriving at reading k is generated by
/// reading k's Hamiltonian over one tick, starting from the seed at p_0.
/// Identical to build_history_state when g = 0.
HistoryState build_conditional_history_state(const UniverseSpec& u, const PureState& seed,
                                             std::span<const Complex> weights);

/// (<t_k| (x) 1) h_i (|t_k> (x) 1) on the rest space.
MatrixXc conditioned_interaction(const UniverseSpec& u, Index reading);

std::vector<Complex> uniform_weights(const ClockModel& clock);

/// ||H s||.
double constraint_residual(const UniverseSpec& u, const PureState& s);

/// Numerical kernel of the total Hamiltonian.
std::vector<PureState> physical_states(const UniverseSpec& u, double tol = kDefaultKernelTolerance);

struct EnergyMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of h_c (x) 1 + 1 (x) h_r in s.
EnergyMoments complementarity_check(const UniverseSpec& u, const PureState& s);

/// max |Tr_R(H)/dim_r - h_c - (Tr h_r / dim_r) 1|: how far the partial
/// trace of the full Hamiltonian sits from the declared clock Hamiltonian.
double clock_trace_shift(const UniverseSpec& u);

}  // namespace pawsim
