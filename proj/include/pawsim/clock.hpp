#pragma once

#include <vector>

#include "pawsim/hilbert.hpp"

namespace pawsim {

/// Finite cyclic clock: equally spaced energies {n * spacing}, a time basis
/// given by the discrete Fourier transform of the energy basis, and the
/// time operator whose eigenvalues are the readings 2*pi*k / (N * spacing).
///
/// Time states tick forward under the clock's own Schroedinger evolution:
/// exp(-i H_c p_1) |t_k> = |t_{k+1 mod N}>.
class ClockModel {
 public:
  Index dim() const { return dim_; }
  double spacing() const { return spacing_; }
  /// Reading increment p_1 - p_0.
  double tick() const { return readings_.size() > 1 ? readings_[1] : 0.0; }
  double period() const { return 2.0 * M_PI / spacing_; }

  const CompositeSpace& space() const { return space_; }
  const HermitianOperator& hamiltonian() const { return h_c_; }
  const HermitianOperator& time_operator() const { return p_c_; }
  const std::vector<double>& readings() const { return readings_; }
  const std::vector<PureState>& time_basis() const { return time_basis_; }
  /// Time states as columns.
  const MatrixXc& time_basis_matrix() const { return time_matrix_; }

 private:
  ClockModel(Index dim, double spacing, MatrixXc time_matrix);

  Index dim_;
  double spacing_;
  CompositeSpace space_;
  MatrixXc time_matrix_;
  std::vector<double> readings_;
  std::vector<PureState> time_basis_;
  HermitianOperator h_c_;
  HermitianOperator p_c_;

  friend ClockModel build_clock(Index dim_c, double spacing);
  friend ClockModel cyclic_shift(const ClockModel& clock, Index shift);
};

/// Throws ClockTooSmall for dim_c < 2 and InvalidArgument for non-positive spacing.
ClockModel build_clock(Index dim_c, double spacing);

/// Same clock with time states relabelled |t_k> -> |t_{k+shift mod N}>;
/// readings keep their values.
ClockModel cyclic_shift(const ClockModel& clock, Index shift);

/// Canonical value of <[H_c, P_c]> for a pair in which time states advance
/// under exp(-i H_c t).
inline const Complex kCanonicalCommutator{0.0, -1.0};

/// |<s|[H_c, P_c]|s> - kCanonicalCommutator|.
double commutator_defect(const ClockModel& clock, const PureState& s);

/// Gaussian envelope over the energy basis, amplitude ~ exp(-(E_n - center)^2 / (4 width^2)),
/// optionally translated in time so the packet sits at `time_center`.
/// Throws DegenerateEnvelope if no finite amplitude survives.
PureState gaussian_clock_state(const ClockModel& clock, double center, double width, double time_center = 0.0);

}  // namespace pawsim
