#include <random>

#include "common.hpp"

namespace pawsim::experiments {

using namespace internal;

namespace {

constexpr double kUnitaryTolerance = 1e-10;

double min_fidelity(const std::vector<std::optional<double>>& v) {
  const double m = min_present(v);
  return std::isnan(m) ? 0.0 : m;
}

}  // namespace

RepartitionReport compare_partitions(const UniverseSpec& u, const PureState& state, const MatrixXc& w) {
  const CompositeSpace full = u.full_space();
  if (!(state.space() == full)) throw Error(ErrorKind::IncompatibleSpec, "state does not live on the full space");
  if (w.rows() != full.total_dim() || w.cols() != full.total_dim()) {
    throw Error(ErrorKind::InvalidRepartition, "repartition unitary has the wrong shape");
  }
  if (!is_unitary<double>(w, kUnitaryTolerance)) throw Error(ErrorKind::InvalidRepartition, "W is not unitary");

  const HermitianOperator h = total_hamiltonian(u);
  const HermitianOperator h_b(full, w * h.matrix() * w.adjoint());
  const Spectrum spec_a = spectrum(h);
  const Spectrum spec_b = spectrum(h_b);

  RepartitionReport r;
  r.spectrum_deviation = (spec_a.values - spec_b.values).cwiseAbs().maxCoeff();
  r.kernel_dim_original = kernel(spec_a, kDefaultKernelTolerance).size();
  r.kernel_dim_repartitioned = kernel(spec_b, kDefaultKernelTolerance).size();

  const VectorXc moved = w * state.amplitudes();
  r.norm_deviation = std::abs(moved.norm() - state.amplitudes().norm());
  const PureState state_b(detail::unchecked, full, moved);

  r.original = condition(state, u.clock);
  r.repartitioned = condition(state_b, u.clock);
  const std::size_t n = r.original.size();
  r.pairwise.assign(n, std::vector<double>(n, kAbsent));
  double same = 1.0;
  double reversed = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      if (r.original.branches[k] && r.repartitioned.branches[l]) {
        r.pairwise[k][l] = fidelity(*r.original.branches[k], *r.repartitioned.branches[l]);
      }
    }
    // A reading supported on one side only counts as total divergence.
    const auto f_same = r.pairwise[k][k];
    const auto f_rev = r.pairwise[k][(n - k) % n];
    same = std::min(same, std::isnan(f_same) ? (r.original.branches[k] || r.repartitioned.branches[k] ? 0.0 : 1.0) : f_same);
    reversed = std::min(reversed, std::isnan(f_rev) ? 0.0 : f_rev);
  }
  r.divergence = 1.0 - same;
  r.reversed_divergence = 1.0 - reversed;

  // Partition B reads its own rest Hamiltonian off the rotated total.
  const double dc = static_cast<double>(u.clock.dim());
  const HermitianOperator h_rest_b(u.rest, partial_trace_matrix<double>(full, h_b.matrix(), full.complement({0})) / dc);
  if (r.repartitioned.first_supported()) {
    r.forward_emergent_min = min_fidelity(emergent_fidelity(r.repartitioned, h_rest_b));
    r.reversed_emergent_min = min_fidelity(emergent_fidelity(r.repartitioned, -1.0 * h_rest_b));
  }
  return r;
}

ExperimentResult clock_ambiguity(const ExperimentConfig& cfg) {
  return run_grid(cfg, [](const ExperimentConfig& c, PointRecord& rec, std::uint64_t stream) {
    const UniverseParams& p = c.universe;
    const CompositeSpace full = checked_full_space(p.clock_dim, p.rest_dims);
    const ClockModel clock = build_clock(p.clock_dim, p.clock_spacing);
    const CompositeSpace rest(p.rest_dims);
    const MatchedRest matched = matched_rest_hamiltonian(clock, rest, levels_for(p, rest.total_dim()));
    const UniverseSpec u = make_universe(clock, matched.h_r);
    std::mt19937_64 rng(stream);
    const PureState seed = seed_state(c.seed_spec, rest, rng());
    const HistoryState hist = build_history_state(u, seed, uniform_weights(clock));

    const Index d = full.total_dim();
    const Index n = clock.dim();
    const Index dr = rest.total_dim();
    const std::string& kind = c.options.repartition;
    MatrixXc w;
    if (kind == "identity") {
      w = MatrixXc::Identity(d, d);
    } else if (kind == "swap") {
      if (dr != n) throw Error(ErrorKind::InvalidRepartition, "swap needs equal clock and rest dimensions");
      w = MatrixXc::Zero(d, d);
      for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) w(b * n + a, a * n + b) = 1.0;
      }
    } else if (kind == "local") {
      w = clock_product(MatrixXc::Identity(n, n), haar_unitary<double>(dr, rng));
    } else {
      w = haar_unitary<double>(d, rng);
    }

    const RepartitionReport r = compare_partitions(u, hist.state, w);

    Series fidelities = series_for("pairwise", r.original);
    for (Index l = 0; l < n; ++l) {
      std::vector<double> col;
      for (Index k = 0; k < n; ++k) col.push_back(r.pairwise[std::size_t(k)][std::size_t(l)]);
      fidelities.add_column("fidelity_b" + std::to_string(l), std::move(col));
    }
    rec.series.push_back(std::move(fidelities));

    rec.label("repartition", kind);
    rec.set("spectrum_deviation", r.spectrum_deviation);
    rec.set("kernel_dim_original", static_cast<double>(r.kernel_dim_original));
    rec.set("kernel_dim_repartitioned", static_cast<double>(r.kernel_dim_repartitioned));
    rec.set("norm_deviation", r.norm_deviation);
    rec.set("divergence", r.divergence);
    rec.set("reversed_divergence", r.reversed_divergence);
    rec.set("forward_emergent_min", r.forward_emergent_min);
    rec.set("reversed_emergent_min", r.reversed_emergent_min);
    rec.set("residual", hist.residual);
  });
}

}  // namespace pawsim::experiments
