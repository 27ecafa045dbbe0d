#include "common.hpp"

namespace pawsim::experiments {

using namespace internal;

// Clock = expansion mode; rest factor 0 is galaxy R', the remaining factors
// form galaxy R''. The galaxies exchange an excitation through
// V = L (x) L^+ + L^+ (x) L, switched by the clock's reading windows with a
// weight that falls (separation) or rises (attraction) across the period.
ExperimentResult cosmo_toy(const ExperimentConfig& cfg) {
  return run_grid(cfg, [](const ExperimentConfig& c, PointRecord& rec, std::uint64_t stream) {
    const UniverseParams& p = c.universe;
    if (p.rest_dims.size() != 2 || p.rest_dims[0] != p.rest_dims[1]) {
      throw Error(ErrorKind::IncompatibleSpec, "cosmo_toy needs two galaxy factors of equal dimension");
    }
    const CompositeSpace full = checked_full_space(p.clock_dim, p.rest_dims);
    const ClockModel clock = build_clock(p.clock_dim, p.clock_spacing);
    const CompositeSpace rest(p.rest_dims);
    const CompositeSpace galaxy = rest.subspace({0});
    const Index dg = galaxy.total_dim();

    const auto levels = with_silent_prefix(levels_for(p, dg), dg);
    const MatchedRest matched = matched_rest_hamiltonian(clock, rest, levels);

    const std::string& regime = c.options.regime;
    const int count = c.options.windows;
    const double g = regime == "separation" ? c.options.g_sep : regime == "attraction" ? c.options.g_att : 0.0;
    const MatrixXc l = lowering(dg);
    const MatrixXc v = pawsim::detail::kron(l, MatrixXc(l.adjoint())) + pawsim::detail::kron(MatrixXc(l.adjoint()), l);
    const auto windows = reading_windows(clock.dim(), count);
    MatrixXc h_i = MatrixXc::Zero(full.total_dim(), full.total_dim());
    for (int w = 0; w < count; ++w) {
      const double weight = regime == "attraction" ? double(w + 1) / count : double(count - w) / count;
      const auto [begin, end] = windows[std::size_t(w)];
      h_i += weight * clock_product(window_projector(clock, begin, end), v);
    }
    const UniverseSpec u = make_universe(clock, matched.h_r, HermitianOperator(full, h_i), g);

    const PureState plus = PureState::normalized(galaxy, VectorXc::Ones(dg));
    const PureState second = c.seed_spec.kind == "uniform" ? plus : seed_state(c.seed_spec, galaxy, stream);
    const PureState seed = tensor(PureState::basis(galaxy, 0), second);
    const HistoryState hist = build_conditional_history_state(u, seed, uniform_weights(clock));
    const Trajectory t = condition(hist.state, clock);

    const Readability r1 = readability(t, FactorSet{0});
    const Readability r2 = readability(t, FactorSet{1});
    const auto ent = entanglement_series(hist.state, clock, FactorSet{1}).per_reading;
    std::vector<std::optional<double>> population;
    for (const auto& b : t.branches) {
      if (!b) {
        population.emplace_back(std::nullopt);
        continue;
      }
      const DensityOperator rho = reduced_state(*b, FactorSet{0});
      population.emplace_back(1.0 - rho.matrix()(0, 0).real());
    }

    // Per-step departure from free evolution: 1 - F(branch_k, exp(-i h_r dp) branch_{k-1}).
    const CMatrix<double> free_step = propagator(spectrum(u.h_r), clock.tick());
    std::vector<std::optional<double>> activity(t.size(), std::nullopt);
    double early = 0.0, late = 0.0;
    const std::size_t half = t.size() / 2;
    for (std::size_t k = 1; k < t.size(); ++k) {
      if (!t.branches[k] || !t.branches[k - 1]) continue;
      const PureState expected(detail::unchecked, rest, free_step * t.branches[k - 1]->amplitudes());
      const double a = std::max(0.0, 1.0 - fidelity(*t.branches[k], expected));
      activity[k] = a;
      (k <= half ? early : late) += a;
    }

    Series s = series_for("galaxies", t);
    s.add_column("galaxy_entanglement", values_or_nan(ent));
    s.add_column("probe_population", values_or_nan(population));
    s.add_column("probe_distance", values_or_nan(r1.distances));
    s.add_column("interaction_activity", values_or_nan(activity));
    rec.series.push_back(std::move(s));

    std::string realized = "static";
    if (early + late > 1e-12) realized = early > late ? "separation" : "attraction";

    rec.label("regime", regime);
    rec.label("realized_regime", realized);
    rec.set("coupling", g);
    rec.set("readability_probe", r1.score);
    rec.set("readability_partner", r2.score);
    rec.set("holevo_probe", r1.holevo);
    rec.set("early_activity", early);
    rec.set("late_activity", late);
    rec.set("residual", hist.residual);
  });
}

}  // namespace pawsim::experiments
