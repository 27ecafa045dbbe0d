#include "pawsim/constraint.hpp"

#include <cmath>
#include <string>

namespace pawsim {

namespace {

// Row-major (clock-major) flattening of a clock x rest amplitude table.
VectorXc flatten(const MatrixXc& table) {
  VectorXc v(table.size());
  const Index dr = table.cols();
  for (Index n = 0; n < table.rows(); ++n) v.segment(n * dr, dr) = table.row(n).transpose();
  return v;
}

void check_history_inputs(const UniverseSpec& u, const PureState& seed, std::span<const Complex> weights) {
  if (!(seed.space() == u.rest)) throw Error(ErrorKind::IncompatibleSpec, "seed does not live on the rest space");
  if (static_cast<Index>(weights.size()) != u.clock.dim()) {
    throw Error(ErrorKind::IncompatibleSpec, "need one weight per clock reading");
  }
  bool any = false;
  for (const Complex& w : weights) any = any || std::abs(w) > 0.0;
  if (!any) throw Error(ErrorKind::EmptyHistory, "all weights are zero");
}

// sum_k a_k |t_k> (x) branch_k from branches given as columns.
HistoryState assemble(const UniverseSpec& u, const PureState& seed, std::span<const Complex> weights,
                      const MatrixXc& branches) {
  const MatrixXc& t = u.clock.time_basis_matrix();
  VectorXc a(static_cast<Index>(weights.size()));
  for (std::size_t k = 0; k < weights.size(); ++k) a[Index(k)] = weights[k];
  const MatrixXc table = t * a.asDiagonal() * branches.transpose();
  VectorXc psi = flatten(table);
  const double n = psi.norm();
  if (!(n > 1e-300)) throw Error(ErrorKind::EmptyHistory, "history state has zero norm");
  PureState state(detail::unchecked, u.full_space(), psi / n);
  const double residual = constraint_residual(u, state);
  return HistoryState{std::move(state), std::vector<Complex>(weights.begin(), weights.end()), seed, residual};
}

}  // namespace

bool acts_nontrivially_on(const CompositeSpace& space, const MatrixXc& op, std::size_t factor) {
  const FactorSet f{factor};
  const FactorSet others = space.complement(f);
  const Index d = space.factor_dim(factor);
  const MatrixXc reduced = partial_trace_matrix<double>(space, op, others) / static_cast<double>(d);
  const auto of = detail::offsets(space, f);
  const auto oo = detail::offsets(space, others);
  const double scale = std::max(1.0, detail::max_abs<double>(op));
  for (std::size_t a = 0; a < of.size(); ++a) {
    for (std::size_t b = 0; b < of.size(); ++b) {
      for (std::size_t s = 0; s < oo.size(); ++s) {
        for (std::size_t t = 0; t < oo.size(); ++t) {
          const Complex expected = a == b ? reduced(Index(s), Index(t)) : Complex(0);
          if (std::abs(op(of[a] + oo[s], of[b] + oo[t]) - expected) > 1e-12 * scale) return true;
        }
      }
    }
  }
  return false;
}

UniverseSpec make_universe(ClockModel clock, HermitianOperator h_r, std::optional<HermitianOperator> h_i, double g) {
  if (!(g >= 0.0) || !std::isfinite(g)) throw Error(ErrorKind::IncompatibleSpec, "coupling must be finite and >= 0");
  CompositeSpace rest = h_r.space();
  CompositeSpace full = clock.space().concat(rest);
  HermitianOperator interaction = h_i ? std::move(*h_i) : HermitianOperator::zero(full);
  if (!(interaction.space() == full)) {
    throw Error(ErrorKind::IncompatibleSpec, "interaction must act on the full clock (x) rest space");
  }
  if (g > 0.0) {
    if (!acts_nontrivially_on(full, interaction.matrix(), 0)) {
      throw Error(ErrorKind::IncompatibleSpec, "interaction does not act on the clock");
    }
    bool touches_rest = false;
    for (std::size_t f = 1; f < full.num_factors() && !touches_rest; ++f) {
      touches_rest = acts_nontrivially_on(full, interaction.matrix(), f);
    }
    if (!touches_rest) throw Error(ErrorKind::IncompatibleSpec, "interaction does not act on any rest factor");
  }
  return UniverseSpec{std::move(clock), std::move(rest), std::move(h_r), std::move(interaction), g};
}

HermitianOperator free_hamiltonian(const UniverseSpec& u) {
  const Index dr = u.rest_dim();
  const Index n = u.clock.dim();
  MatrixXc h = detail::kron(u.clock.hamiltonian().matrix(), MatrixXc(MatrixXc::Identity(dr, dr)));
  h += detail::kron(MatrixXc(MatrixXc::Identity(n, n)), u.h_r.matrix());
  return HermitianOperator(u.full_space(), std::move(h));
}

HermitianOperator total_hamiltonian(const UniverseSpec& u) {
  HermitianOperator h = free_hamiltonian(u);
  if (u.g == 0.0) return h;
  return HermitianOperator(u.full_space(), h.matrix() + u.g * u.h_i.matrix());
}

MatchedRest matched_rest_hamiltonian(const ClockModel& clock, const CompositeSpace& rest, std::span<const int> levels) {
  if (static_cast<Index>(levels.size()) != rest.total_dim()) {
    throw Error(ErrorKind::IncompatibleSpec, "need one level per rest basis state");
  }
  RVector<double> e(rest.total_dim());
  std::vector<bool> seen(static_cast<std::size_t>(clock.dim()), false);
  bool degenerate = false;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const int level = levels[j];
    if (level < 0 || level >= clock.dim()) {
      throw Error(ErrorKind::UnresolvableEnergy,
                  "level " + std::to_string(level) + " outside clock band 0.." + std::to_string(clock.dim() - 1));
    }
    degenerate = degenerate || seen[static_cast<std::size_t>(level)];
    seen[static_cast<std::size_t>(level)] = true;
    e[Index(j)] = -static_cast<double>(level) * clock.spacing();
  }
  return MatchedRest{HermitianOperator::diagonal(rest, e), degenerate};
}

MatchedRest matched_rest_hamiltonian(const ClockModel& clock, Index dim_r, std::span<const int> levels) {
  return matched_rest_hamiltonian(clock, CompositeSpace({dim_r}), levels);
}

std::vector<Complex> uniform_weights(const ClockModel& clock) {
  return std::vector<Complex>(static_cast<std::size_t>(clock.dim()),
                              Complex(1.0 / std::sqrt(static_cast<double>(clock.dim())), 0.0));
}

HistoryState build_history_state(const UniverseSpec& u, const PureState& seed, std::span<const Complex> weights) {
  check_history_inputs(u, seed, weights);
  const Spectrum rest_spec = spectrum(u.h_r);
  const auto& p = u.clock.readings();
  MatrixXc branches(u.rest_dim(), u.clock.dim());
  for (Index k = 0; k < u.clock.dim(); ++k) {
    branches.col(k) = evolve(rest_spec, p[std::size_t(k)], seed).amplitudes();
  }
  return assemble(u, seed, weights, branches);
}

MatrixXc conditioned_interaction(const UniverseSpec& u, Index reading) {
  const Index n = u.clock.dim();
  const Index dr = u.rest_dim();
  const VectorXc tk = u.clock.time_basis_matrix().col(reading);
  MatrixXc out = MatrixXc::Zero(dr, dr);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Complex c = std::conj(tk[a]) * tk[b];
      if (c == Complex(0)) continue;
      out += c * u.h_i.matrix().block(a * dr, b * dr, dr, dr);
    }
  }
  return out;
}

HistoryState build_conditional_history_state(const UniverseSpec& u, const PureState& seed,
                                             std::span<const Complex> weights) {
  if (u.g == 0.0) return build_history_state(u, seed, weights);
  check_history_inputs(u, seed, weights);
  const double dt = u.clock.tick();
  MatrixXc branches(u.rest_dim(), u.clock.dim());
  VectorXc current = seed.amplitudes();
  branches.col(0) = current;
  for (Index k = 1; k < u.clock.dim(); ++k) {
    const HermitianOperator h_k(u.rest, u.h_r.matrix() + u.g * conditioned_interaction(u, k));
    current = propagator(spectrum(h_k), dt) * current;
    branches.col(k) = current;
  }
  return assemble(u, seed, weights, branches);
}

double constraint_residual(const UniverseSpec& u, const PureState& s) {
  if (!(s.space() == u.full_space())) throw Error(ErrorKind::IncompatibleSpec, "state does not live on the full space");
  return (total_hamiltonian(u).matrix() * s.amplitudes()).norm();
}

std::vector<PureState> physical_states(const UniverseSpec& u, double tol) {
  return kernel(total_hamiltonian(u), tol);
}

EnergyMoments complementarity_check(const UniverseSpec& u, const PureState& s) {
  if (!(s.space() == u.full_space())) throw Error(ErrorKind::IncompatibleSpec, "state does not live on the full space");
  const HermitianOperator h0 = free_hamiltonian(u);
  const VectorXc hs = h0.matrix() * s.amplitudes();
  const double mean = s.amplitudes().dot(hs).real();
  const double second = hs.squaredNorm();
  return EnergyMoments{mean, std::max(0.0, second - mean * mean)};
}

double clock_trace_shift(const UniverseSpec& u) {
  const CompositeSpace full = u.full_space();
  const double dr = static_cast<double>(u.rest_dim());
  const MatrixXc traced = partial_trace_matrix<double>(full, total_hamiltonian(u).matrix(), FactorSet{0}) / dr;
  const Complex shift = u.h_r.matrix().trace() / dr;
  MatrixXc expected = u.clock.hamiltonian().matrix();
  expected.diagonal().array() += shift;
  return detail::max_abs<double>(MatrixXc(traced - expected));
}

}  // namespace pawsim
