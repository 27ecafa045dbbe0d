#include <Eigen/Eigenvalues>

#include "common.hpp"

namespace pawsim::experiments {

using namespace internal;

namespace {

double shannon(const RVector<double>& p) {
  double s = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s -= p[i] * std::log(p[i]);
  }
  return s;
}

}  // namespace

// Rest = m record qubits followed by the configured matched factors. Record j
// is rotated by Pi_{window j} (x) kappa_j X_j with kappa_j chosen so that a
// unit coupling completes the flip over its window.
ExperimentResult record_arrow(const ExperimentConfig& cfg) {
  return run_grid(cfg, [](const ExperimentConfig& c, PointRecord& rec, std::uint64_t stream) {
    const UniverseParams& p = c.universe;
    const int m = c.options.records;
    std::vector<Index> rest_dims(static_cast<std::size_t>(m), 2);
    rest_dims.insert(rest_dims.end(), p.rest_dims.begin(), p.rest_dims.end());
    const CompositeSpace full = checked_full_space(p.clock_dim, rest_dims);
    if (p.clock_dim < 2 * m) {
      throw Error(ErrorKind::ClockTooSmall, "need at least two readings per record window");
    }
    const ClockModel clock = build_clock(p.clock_dim, p.clock_spacing);
    const CompositeSpace rest(rest_dims);
    FactorSet records(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) records[std::size_t(j)] = std::size_t(j);
    const CompositeSpace matched_part = rest.subspace(rest.complement(records));
    const Index register_dim = rest.dim_of(records);

    const auto levels = with_silent_prefix(levels_for(p, matched_part.total_dim()), register_dim);
    const MatchedRest matched = matched_rest_hamiltonian(clock, rest, levels);

    const auto windows = reading_windows(clock.dim(), m);
    MatrixXc h_i = MatrixXc::Zero(full.total_dim(), full.total_dim());
    for (int j = 0; j < m; ++j) {
      const auto [begin, end] = windows[std::size_t(j)];
      const Index steps = end - std::max<Index>(begin, 1);
      const double kappa = M_PI / (2.0 * static_cast<double>(steps) * clock.tick());
      h_i += kappa * clock_product(window_projector(clock, begin, end), embed<double>(rest, std::size_t(j), pauli_x()).matrix());
    }
    const UniverseSpec u = make_universe(clock, matched.h_r, HermitianOperator(full, h_i), p.coupling);

    const PureState seed = tensor(PureState::basis(rest.subspace(records), 0), seed_state(c.seed_spec, matched_part, stream));
    const HistoryState hist = build_conditional_history_state(u, seed, uniform_weights(clock));
    const Trajectory t = condition(hist.state, clock);

    std::vector<std::optional<double>> count, register_entropy;
    for (const auto& b : t.branches) {
      if (!b) {
        count.emplace_back(std::nullopt);
        register_entropy.emplace_back(std::nullopt);
        continue;
      }
      double n = 0.0;
      for (int j = 0; j < m; ++j) n += reduced_state(*b, FactorSet{std::size_t(j)}).matrix()(1, 1).real();
      count.emplace_back(n);
      const DensityOperator reg = reduced_state(*b, records);
      register_entropy.emplace_back(shannon(reg.matrix().diagonal().real()));
    }

    // Clock-rest entropy of the history truncated after reading k, from the
    // Gram matrix of the weighted branches.
    const Index n = clock.dim();
    const Index dr = rest.total_dim();
    MatrixXc weighted(dr, n);
    for (Index k = 0; k < n; ++k) {
      weighted.col(k) = t.branches[std::size_t(k)] ? VectorXc(std::sqrt(t.branch_weights[std::size_t(k)]) *
                                                              t.branches[std::size_t(k)]->amplitudes())
                                                    : VectorXc(VectorXc::Zero(dr));
    }
    std::vector<double> prefix_entropy;
    for (Index k = 0; k < n; ++k) {
      const MatrixXc gram = weighted.leftCols(k + 1).adjoint() * weighted.leftCols(k + 1);
      const double tr = gram.trace().real();
      if (!(tr > 0.0)) {
        prefix_entropy.push_back(kAbsent);
        continue;
      }
      Eigen::SelfAdjointEigenSolver<MatrixXc> es(gram / tr, Eigen::EigenvaluesOnly);
      prefix_entropy.push_back(shannon(es.eigenvalues()));
    }

    FactorSet register_cut;
    for (std::size_t r : records) register_cut.push_back(r + 1);

    Series s = series_for("records", t);
    s.add_column("set_records", values_or_nan(count));
    s.add_column("record_shannon_entropy", values_or_nan(register_entropy));
    s.add_column("record_bulk_entropy", values_or_nan(entanglement_series(hist.state, clock, register_cut).per_reading));
    s.add_column("prefix_clock_rest_entropy", prefix_entropy);
    rec.series.push_back(std::move(s));

    double min_increment = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < count.size(); ++k) {
      if (count[k] && count[k - 1]) min_increment = std::min(min_increment, *count[k] - *count[k - 1]);
    }
    rec.set("records", m);
    rec.set("initial_count", count.front().value_or(kAbsent));
    rec.set("final_count", count.back().value_or(kAbsent));
    rec.set("min_increment", min_increment);
    rec.set("monotone", min_increment >= -1e-9 ? 1.0 : 0.0);
    rec.set("clock_rest_entropy", entanglement_entropy(hist.state, FactorSet{0}));
    rec.set("residual", hist.residual);
  });
}

}  // namespace pawsim::experiments
