#include "common.hpp"

namespace pawsim::experiments {

using namespace internal;

namespace {

constexpr Index kOracleDimLimit = 1024;

}  // namespace

ExperimentResult emergent_basic(const ExperimentConfig& cfg) {
  return run_grid(cfg, [](const ExperimentConfig& c, PointRecord& rec, std::uint64_t stream) {
    const UniverseParams& p = c.universe;
    const CompositeSpace full = checked_full_space(p.clock_dim, p.rest_dims);
    const ClockModel clock = build_clock(p.clock_dim, p.clock_spacing);
    const CompositeSpace rest(p.rest_dims);
    const auto levels = levels_for(p, rest.total_dim());
    const MatchedRest matched = matched_rest_hamiltonian(clock, rest, levels);

    const HermitianOperator rest_op = embed<double>(rest, 0, hopping(rest.factor_dim(0)));
    const HermitianOperator h_i(full, clock_product(clock.time_operator().matrix(), rest_op.matrix()));
    const UniverseSpec u = make_universe(clock, matched.h_r, h_i, p.coupling);

    const PureState seed = seed_state(c.seed_spec, rest, stream);
    const HistoryState hist = build_conditional_history_state(u, seed, uniform_weights(clock));
    const Trajectory t = condition(hist.state, clock);
    const auto fid = emergent_fidelity(t, u.h_r);

    Series s = series_for("trajectory", t);
    s.add_column("branch_weight", t.branch_weights);
    s.add_column("emergent_fidelity", values_or_nan(fid));
    std::vector<std::optional<double>> energy;
    for (const auto& b : t.branches) {
      energy.push_back(b ? std::optional<double>(expectation(u.h_r, *b)) : std::nullopt);
    }
    s.add_column("rest_energy", values_or_nan(energy));
    if (rest.num_factors() > 1) {
      s.add_column("branch_entropy", values_or_nan(entanglement_series(hist.state, clock, FactorSet{1}).per_reading));
    }
    rec.series.push_back(std::move(s));

    rec.set("residual", hist.residual);
    if (full.total_dim() <= kOracleDimLimit) {
      const Spectrum spec = spectrum(total_hamiltonian(u));
      const auto ker = kernel(spec, kDefaultKernelTolerance);
      rec.set("spectral_radius", spec.spectral_radius());
      rec.set("relative_residual", hist.residual / spec.spectral_radius());
      rec.set("kernel_dim", static_cast<double>(ker.size()));
      if (u.g == 0.0) {
        // Span of history states seeded by each rest basis state against the numerical kernel.
        std::vector<PureState> histories;
        for (Index r = 0; r < rest.total_dim(); ++r) {
          histories.push_back(build_history_state(u, PureState::basis(rest, r), uniform_weights(clock)).state);
        }
        rec.set("oracle_fidelity", mutual_projection_fidelity(histories, ker));
      }
    }
    rec.set("min_emergent_fidelity", min_present(fid));
    rec.set("clock_rest_entropy", entanglement_entropy(hist.state, FactorSet{0}));
    rec.set("clock_trace_shift", clock_trace_shift(u));
    rec.set("degenerate_levels", matched.degenerate ? 1.0 : 0.0);
    const EnergyMoments m = complementarity_check(u, hist.state);
    rec.set("free_energy_mean", m.mean);
    rec.set("free_energy_variance", m.variance);
  });
}

}  // namespace pawsim::experiments
