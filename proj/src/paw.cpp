#include "pawsim/paw.hpp"

#include <algorithm>
#include <cmath>

namespace pawsim {

std::size_t Trajectory::supported_count() const {
  return static_cast<std::size_t>(std::count_if(branches.begin(), branches.end(), [](const auto& b) { return b.has_value(); }));
}

std::optional<std::size_t> Trajectory::first_supported() const {
  for (std::size_t k = 0; k < branches.size(); ++k) {
    if (branches[k]) return k;
  }
  return std::nullopt;
}

namespace {

CompositeSpace rest_space_of(const PureState& state, const ClockModel& clock) {
  const auto& dims = state.space().factor_dims();
  if (dims.size() < 2 || dims.front() != clock.dim()) {
    throw Error(ErrorKind::ShapeMismatch, "clock must be factor 0 of a space with at least one rest factor");
  }
  return CompositeSpace(std::vector<Index>(dims.begin() + 1, dims.end()));
}

}  // namespace

Trajectory condition(const PureState& state, const ClockModel& clock, double floor) {
  const CompositeSpace rest = rest_space_of(state, clock);
  const Index n = clock.dim();
  const Index dr = rest.total_dim();
  // table(e, r) = amplitude of |e>_C |r>_R; branch_k = T^H table.
  MatrixXc table(n, dr);
  for (Index e = 0; e < n; ++e) table.row(e) = state.amplitudes().segment(e * dr, dr).transpose();
  const MatrixXc projected = clock.time_basis_matrix().adjoint() * table;

  Trajectory t;
  t.readings = clock.readings();
  t.branches.reserve(std::size_t(n));
  t.branch_weights.reserve(std::size_t(n));
  t.diagnostics.reserve(std::size_t(n));
  for (Index k = 0; k < n; ++k) {
    VectorXc b = projected.row(k).transpose();
    const double w = b.squaredNorm();
    t.branch_weights.push_back(w);
    if (w < floor) {
      t.branches.emplace_back(std::nullopt);
      t.diagnostics.push_back({false, "unsupported reading"});
    } else {
      t.branches.emplace_back(PureState(detail::unchecked, rest, b / std::sqrt(w)));
      t.diagnostics.push_back({true, ""});
    }
  }
  return t;
}

namespace {

std::vector<std::optional<double>> fidelity_against(const Trajectory& t, const Spectrum& spec, const PureState& anchor,
                                                    double anchor_reading) {
  std::vector<std::optional<double>> out;
  out.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!t.branches[k]) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const PureState reference = evolve(spec, t.readings[k] - anchor_reading, anchor);
    out.emplace_back(fidelity(*t.branches[k], reference));
  }
  return out;
}

}  // namespace

std::vector<std::optional<double>> emergent_fidelity(const Trajectory& t, const HermitianOperator& h_r) {
  const auto anchor = t.first_supported();
  if (!anchor) throw Error(ErrorKind::InvalidArgument, "trajectory has no supported reading");
  return fidelity_against(t, spectrum(h_r), *t.branches[*anchor], t.readings[*anchor]);
}

std::vector<std::optional<double>> emergent_fidelity(const Trajectory& t, const HermitianOperator& h_r,
                                                     const PureState& anchor) {
  if (!(anchor.space() == h_r.space())) throw Error(ErrorKind::ShapeMismatch, "anchor does not live on the rest space");
  return fidelity_against(t, spectrum(h_r), anchor, t.readings.empty() ? 0.0 : t.readings.front());
}

PairwiseFidelity pairwise_branch_fidelity(const Trajectory& t) {
  PairwiseFidelity out;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (!t.branches[a]) continue;
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      if (!t.branches[b]) continue;
      const double f = fidelity(*t.branches[a], *t.branches[b]);
      out.min = std::min(out.min, f);
      out.max = std::max(out.max, f);
    }
  }
  return out;
}

SeparabilityReport separability_demo(const ClockModel& clock, const PureState& chi, const PureState& phi,
                                     const HermitianOperator& h_r) {
  const Trajectory t = condition(tensor(chi, phi), clock);
  const PairwiseFidelity pf = pairwise_branch_fidelity(t);
  SeparabilityReport r;
  r.min_pairwise = pf.min;
  r.max_pairwise = pf.max;
  r.emergent = emergent_fidelity(t, h_r);
  r.supported = t.supported_count();
  r.degenerate = r.supported < 2;
  return r;
}

EntanglementSeries entanglement_series(const PureState& state, const ClockModel& clock, const FactorSet& cut) {
  const CompositeSpace rest = rest_space_of(state, clock);
  const FactorSet side = validate_partition(state.space(), cut);
  const FactorSet other = state.space().complement(side);
  EntanglementSeries out;
  if (side == FactorSet{0} || other == FactorSet{0}) {
    out.global = true;
    out.global_entropy = entanglement_entropy(state, FactorSet{0});
    return out;
  }
  if (std::find(side.begin(), side.end(), 0) != side.end()) {
    throw Error(ErrorKind::DegeneratePartition, "cut mixes the clock with part of the rest");
  }
  FactorSet rest_side;
  for (std::size_t f : side) rest_side.push_back(f - 1);
  rest_side = validate_partition(rest, rest_side);

  const Trajectory t = condition(state, clock);
  out.per_reading.reserve(t.size());
  for (const auto& b : t.branches) {
    if (b) {
      out.per_reading.emplace_back(entanglement_entropy(*b, rest_side));
    } else {
      out.per_reading.emplace_back(std::nullopt);
    }
  }
  return out;
}

}  // namespace pawsim
