#include "common.hpp"

namespace pawsim::experiments {

using namespace internal;

// Rest factor 0 is the probe R'; the remaining factors form R'', which carries
// the matched levels. The interaction P_C (x) X_{R'} lets the probe pick up
// the clock reading.
ExperimentResult readability_scan(const ExperimentConfig& cfg) {
  return run_grid(cfg, [](const ExperimentConfig& c, PointRecord& rec, std::uint64_t stream) {
    const UniverseParams& p = c.universe;
    if (p.rest_dims.size() < 2) {
      throw Error(ErrorKind::IncompatibleSpec, "readability needs a probe factor and at least one further rest factor");
    }
    const CompositeSpace full = checked_full_space(p.clock_dim, p.rest_dims);
    const ClockModel clock = build_clock(p.clock_dim, p.clock_spacing);
    const CompositeSpace rest(p.rest_dims);
    const CompositeSpace probe = rest.subspace({0});
    const CompositeSpace bulk = rest.subspace(rest.complement({0}));

    const auto levels = with_silent_prefix(levels_for(p, bulk.total_dim()), probe.total_dim());
    const MatchedRest matched = matched_rest_hamiltonian(clock, rest, levels);
    const HermitianOperator probe_op = embed<double>(rest, 0, hopping(probe.total_dim()));
    const HermitianOperator h_i(full, clock_product(clock.time_operator().matrix(), probe_op.matrix()));
    const UniverseSpec u = make_universe(clock, matched.h_r, h_i, p.coupling);

    const PureState seed = tensor(PureState::basis(probe, 0), seed_state(c.seed_spec, bulk, stream));
    const HistoryState hist = build_conditional_history_state(u, seed, uniform_weights(clock));
    const Trajectory t = condition(hist.state, clock);
    const Readability r = readability(t, FactorSet{0});

    std::vector<std::optional<double>> excitation;
    for (const auto& b : t.branches) {
      if (!b) {
        excitation.emplace_back(std::nullopt);
        continue;
      }
      const DensityOperator rho = reduced_state(*b, FactorSet{0});
      excitation.emplace_back(1.0 - rho.matrix()(0, 0).real());
    }
    Series s = series_for("probe", t);
    s.add_column("trace_distance", values_or_nan(r.distances));
    s.add_column("probe_excitation", values_or_nan(excitation));
    rec.series.push_back(std::move(s));

    rec.set("coupling", u.g);
    rec.set("readability", r.score);
    rec.set("holevo", r.holevo);
    rec.set("residual", hist.residual);
    rec.set("min_emergent_fidelity", min_present(emergent_fidelity(t, u.h_r)));
    rec.set("clock_rest_entropy", entanglement_entropy(hist.state, FactorSet{0}));
  });
}

}  // namespace pawsim::experiments
