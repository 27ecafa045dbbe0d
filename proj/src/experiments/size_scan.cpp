#include "common.hpp"

namespace pawsim::experiments {

using namespace internal;

// Rest level j sits at energy -j * spacing for j = 0..dim_r - 1, so levels at
// or above the clock dimension have no partner in the clock band. The
// physical state is the kernel projection of the history state seeded by
// the configured rest state; its branches are compared with that seed's
// intended evolution.
ExperimentResult size_scan(const ExperimentConfig& cfg) {
  return run_grid(cfg, [](const ExperimentConfig& c, PointRecord& rec, std::uint64_t stream) {
    const UniverseParams& p = c.universe;
    const CompositeSpace full = checked_full_space(p.clock_dim, p.rest_dims);
    const ClockModel clock = build_clock(p.clock_dim, p.clock_spacing);
    const CompositeSpace rest(p.rest_dims);
    const auto levels = levels_for(p, rest.total_dim());
    RVector<double> energies(rest.total_dim());
    for (Index j = 0; j < energies.size(); ++j) energies[j] = -levels[std::size_t(j)] * clock.spacing();
    const UniverseSpec u = make_universe(clock, HermitianOperator::diagonal(rest, energies));

    const PureState seed = seed_state(c.seed_spec, rest, stream);
    const HistoryState hist = build_history_state(u, seed, uniform_weights(clock));
    const auto ker = physical_states(u);
    if (ker.empty()) throw Error(ErrorKind::EmptyHistory, "no physical state");
    VectorXc projected = VectorXc::Zero(full.total_dim());
    for (const auto& v : ker) projected += v.amplitudes().dot(hist.state.amplitudes()) * v.amplitudes();
    const double weight = projected.squaredNorm();
    if (!(weight > 1e-20)) throw Error(ErrorKind::EmptyHistory, "no physical state overlaps the history state");
    const PureState physical(detail::unchecked, full, projected / std::sqrt(weight));

    const Trajectory t = condition(physical, clock);
    const auto intended = emergent_fidelity(t, u.h_r, seed);
    const auto anchored = emergent_fidelity(t, u.h_r);

    Series s = series_for("fidelity", t);
    s.add_column("branch_weight", t.branch_weights);
    s.add_column("emergent_fidelity", values_or_nan(intended));
    s.add_column("anchored_fidelity", values_or_nan(anchored));
    rec.series.push_back(std::move(s));

    rec.set("clock_dim", static_cast<double>(clock.dim()));
    rec.set("rest_dim", static_cast<double>(rest.total_dim()));
    rec.set("aliasing_multiplicity", aliasing_multiplicity(levels, clock.dim()));
    rec.set("min_emergent_fidelity", min_present(intended));
    rec.set("min_anchored_fidelity", min_present(anchored));
    rec.set("kernel_dim", static_cast<double>(ker.size()));
    rec.set("physical_weight", weight);
    rec.set("history_residual", hist.residual);
    rec.set("physical_residual", constraint_residual(u, physical));
    rec.set("readability", readability(t, FactorSet{0}).score);
  });
}

}  // namespace pawsim::experiments
