#include "pawsim/clock.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pawsim {

namespace {

MatrixXc fourier_basis(Index n) {
  MatrixXc t(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index k = 0; k < n; ++k) {
    for (Index e = 0; e < n; ++e) {
      // Reduce e*k mod n first so large clocks keep exact phases.
      const double phase = -2.0 * M_PI * static_cast<double>((e * k) % n) / static_cast<double>(n);
      t(e, k) = std::polar(norm, phase);
    }
  }
  return t;
}

HermitianOperator energy_hamiltonian(const CompositeSpace& space, double spacing) {
  RVector<double> levels(space.total_dim());
  for (Index n = 0; n < levels.size(); ++n) levels[n] = static_cast<double>(n) * spacing;
  return HermitianOperator::diagonal(space, levels);
}

}  // namespace

ClockModel::ClockModel(Index dim, double spacing, MatrixXc time_matrix)
    : dim_(dim),
      spacing_(spacing),
      space_({dim}),
      time_matrix_(std::move(time_matrix)),
      h_c_(energy_hamiltonian(space_, spacing)),
      p_c_(HermitianOperator::zero(space_)) {
  readings_.resize(static_cast<std::size_t>(dim));
  for (Index k = 0; k < dim; ++k) {
    readings_[static_cast<std::size_t>(k)] = 2.0 * M_PI * static_cast<double>(k) / (static_cast<double>(dim) * spacing);
  }
  time_basis_.reserve(readings_.size());
  for (Index k = 0; k < dim; ++k) time_basis_.emplace_back(detail::unchecked, space_, time_matrix_.col(k));

  RVector<double> p(dim);
  for (Index k = 0; k < dim; ++k) p[k] = readings_[static_cast<std::size_t>(k)];
  p_c_ = HermitianOperator(space_, time_matrix_ * p.cast<Complex>().asDiagonal() * time_matrix_.adjoint());
}

ClockModel build_clock(Index dim_c, double spacing) {
  if (dim_c < 2) throw Error(ErrorKind::ClockTooSmall, "clock dimension " + std::to_string(dim_c) + " < 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorKind::InvalidArgument, "clock spacing must be positive and finite");
  }
  // Check the cap before allocating any dense matrices.
  CompositeSpace check({dim_c});
  return ClockModel(dim_c, spacing, fourier_basis(dim_c));
}

ClockModel cyclic_shift(const ClockModel& clock, Index shift) {
  const Index n = clock.dim();
  const Index s = ((shift % n) + n) % n;
  MatrixXc shifted(n, n);
  for (Index k = 0; k < n; ++k) shifted.col(k) = clock.time_basis_matrix().col((k + s) % n);
  return ClockModel(n, clock.spacing(), std::move(shifted));
}

double commutator_defect(const ClockModel& clock, const PureState& s) {
  if (!(s.space() == clock.space())) throw Error(ErrorKind::ShapeMismatch, "state does not live on the clock");
  // <s|[H,P]|s> = <Hs|Ps> - <Ps|Hs> = 2i Im <Hs|Ps>.
  const VectorXc hs = clock.hamiltonian().matrix() * s.amplitudes();
  const VectorXc ps = clock.time_operator().matrix() * s.amplitudes();
  const Complex value = hs.dot(ps) - ps.dot(hs);
  return std::abs(value - kCanonicalCommutator);
}

PureState gaussian_clock_state(const ClockModel& clock, double center, double width, double time_center) {
  if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "envelope width must be positive");
  const Index n = clock.dim();
  std::vector<double> log_amp(static_cast<std::size_t>(n));
  double peak = -std::numeric_limits<double>::infinity();
  for (Index e = 0; e < n; ++e) {
    const double d = static_cast<double>(e) * clock.spacing() - center;
    const double l = -(d * d) / (4.0 * width * width);
    log_amp[static_cast<std::size_t>(e)] = l;
    if (l > peak) peak = l;
  }
  if (!std::isfinite(peak) || !std::isfinite(time_center)) {
    throw Error(ErrorKind::DegenerateEnvelope, "envelope is numerically zero everywhere");
  }
  VectorXc amp(n);
  for (Index e = 0; e < n; ++e) {
    const double mag = std::exp(log_amp[static_cast<std::size_t>(e)] - peak);
    amp[e] = std::polar(mag, -static_cast<double>(e) * clock.spacing() * time_center);
  }
  return PureState::normalized(clock.space(), std::move(amp));
}

}  // namespace pawsim
