#include <doctest.h>

#include <algorithm>
#include <random>

#include "pawsim/constraint.hpp"

using namespace pawsim;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Config;
}

// Sorted sum set {E_c + E_r}: spectrum of the interaction-free Hamiltonian.
std::vector<double> sum_set(const RVector<double>& a, const RVector<double>& b) {
  std::vector<double> out;
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) out.push_back(a[i] + b[j]);
  std::sort(out.begin(), out.end());
  return out;
}

UniverseSpec matched_universe(Index n, Index dr) {
  const ClockModel c = build_clock(n, 1.0);
  std::vector<int> levels(static_cast<std::size_t>(dr));
  for (Index j = 0; j < dr; ++j) levels[std::size_t(j)] = int(j);
  return make_universe(c, matched_rest_hamiltonian(c, dr, levels).h_r);
}

}  // namespace

TEST_CASE("interaction-free spectrum is the sum set") {
  std::mt19937_64 rng(17);
  for (Index n : {2, 3}) {
    for (Index dr : {2, 3}) {
      const ClockModel c = build_clock(n, 0.9);
      const auto h_r = random_hermitian<double>(CompositeSpace{dr}, rng);
      const UniverseSpec u = make_universe(c, h_r);
      const Spectrum sp = spectrum(total_hamiltonian(u));
      const auto oracle = sum_set(spectrum(c.hamiltonian()).values, spectrum(h_r).values);
      for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(std::abs(sp.values[Index(i)] - oracle[i]) < 1e-12);
    }
  }
}

TEST_CASE("two-level clock against its mirror") {
  // h_c = diag(0, 1); h_r = diag(0, -1): sum set {0, -1, 1, 0}.
  const ClockModel c = build_clock(2, 1.0);
  const std::vector<int> levels{0, 1};
  const MatchedRest m = matched_rest_hamiltonian(c, 2, levels);
  CHECK(m.h_r.matrix()(0, 0) == Complex(0.0));
  CHECK(m.h_r.matrix()(1, 1) == Complex(-1.0));
  CHECK(!m.degenerate);
  const UniverseSpec u = make_universe(c, m.h_r);
  const Spectrum sp = spectrum(total_hamiltonian(u));
  CHECK(sp.values[0] == doctest::Approx(-1.0));
  CHECK(std::abs(sp.values[1]) < 1e-15);
  CHECK(std::abs(sp.values[2]) < 1e-15);
  CHECK(sp.values[3] == doctest::Approx(1.0));
}

TEST_CASE("zero rest Hamiltonian repeats the clock spectrum") {
  const ClockModel c = build_clock(4, 1.0);
  const UniverseSpec u = make_universe(c, HermitianOperator::zero(CompositeSpace{3}));
  const Spectrum sp = spectrum(total_hamiltonian(u));
  for (Index i = 0; i < 12; ++i) CHECK(sp.values[i] == doctest::Approx(double(i / 3)));
}

TEST_CASE("matched rest Hamiltonian") {
  const ClockModel c = build_clock(6, 1.0);
  const std::vector<int> degenerate{0, 0};
  const MatchedRest d = matched_rest_hamiltonian(c, 2, degenerate);
  CHECK(d.degenerate);
  CHECK(d.h_r.matrix().norm() == 0.0);

  const std::vector<int> outside{0, 6};
  CHECK(kind_of([&] { matched_rest_hamiltonian(c, 2, outside); }) == ErrorKind::UnresolvableEnergy);
  const std::vector<int> negative{-1, 0};
  CHECK(kind_of([&] { matched_rest_hamiltonian(c, 2, negative); }) == ErrorKind::UnresolvableEnergy);

  for (Index dr : {2, 3, 6}) {
    const UniverseSpec u = matched_universe(6, dr);
    CHECK(physical_states(u).size() == std::size_t(dr));
  }
}

TEST_CASE("history state by hand: N = 2, matched qubit, seed |0>") {
  const UniverseSpec u = matched_universe(2, 2);
  const CompositeSpace rest{2};
  const HistoryState h = build_history_state(u, PureState::basis(rest, 0), uniform_weights(u.clock));
  // Branches are both |0> (it has zero energy); sum_k |t_k>/sqrt2 = |0>_C.
  VectorXc expected = VectorXc::Zero(4);
  expected[0] = 1.0;
  CHECK((h.state.amplitudes() - expected).norm() < 1e-15);
  CHECK(h.residual < 1e-15);

  const HistoryState h1 = build_history_state(u, PureState::basis(rest, 1), uniform_weights(u.clock));
  // Branch k = e^{i p_k}|1>; sum_k e^{i pi k} |t_k> / sqrt2 = |1>_C.
  expected.setZero();
  expected[3] = 1.0;
  CHECK(fidelity(h1.state, PureState(u.full_space(), expected)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("matched history states lie in the kernel") {
  std::mt19937_64 rng(29);
  for (Index n : {4, 8, 16}) {
    const UniverseSpec u = matched_universe(n, std::min<Index>(n, 8));
    const double radius = spectrum(total_hamiltonian(u)).spectral_radius();
    const auto ker = physical_states(u);
    const CMatrix<double> span = orthonormal_span(ker);
    for (int trial = 0; trial < 5; ++trial) {
      const HistoryState h = build_history_state(u, random_state<double>(u.rest, rng), uniform_weights(u.clock));
      CHECK(h.residual < 1e-10 * radius);
      CHECK(projection_weight(span, h.state) >= 1.0 - 1e-9);
      const EnergyMoments m = complementarity_check(u, h.state);
      CHECK(std::abs(m.mean) < 1e-10);
      CHECK(m.variance < 1e-10);
    }
    // Non-uniform weights leave the kernel; the residual says by how much.
    std::vector<Complex> w(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::polar(1.0 + double(k), 0.3 * double(k));
    const HistoryState weighted = build_history_state(u, random_state<double>(u.rest, rng), w);
    CHECK(weighted.residual > 1e-3);
    CHECK(weighted.residual == doctest::Approx(constraint_residual(u, weighted.state)).epsilon(1e-12));
  }
}

TEST_CASE("unmatched spectra give a reported residual") {
  const ClockModel c = build_clock(8, 1.0);
  RVector<double> e(2);
  e << 0.0, -std::sqrt(2.0);
  const UniverseSpec u = make_universe(c, HermitianOperator::diagonal(CompositeSpace{2}, e));
  const HistoryState h =
      build_history_state(u, PureState::normalized(CompositeSpace{2}, VectorXc::Ones(2)), uniform_weights(c));
  CHECK(h.residual > 1e-3);
  CHECK(h.residual == doctest::Approx(constraint_residual(u, h.state)));

  RVector<double> offset(2);
  offset << 0.5, 0.25;
  CHECK(physical_states(make_universe(c, HermitianOperator::diagonal(CompositeSpace{2}, offset))).empty());
}

TEST_CASE("history errors") {
  const UniverseSpec u = matched_universe(4, 2);
  const PureState seed = PureState::basis(u.rest, 0);
  const std::vector<Complex> zeros(4, 0.0);
  CHECK(kind_of([&] { build_history_state(u, seed, zeros); }) == ErrorKind::EmptyHistory);
  const std::vector<Complex> short_weights(3, 1.0);
  CHECK(kind_of([&] { build_history_state(u, seed, short_weights); }) == ErrorKind::IncompatibleSpec);
  CHECK(kind_of([&] { build_history_state(u, PureState::basis(CompositeSpace{3}, 0), uniform_weights(u.clock)); }) ==
        ErrorKind::IncompatibleSpec);
}

TEST_CASE("universe validation") {
  const ClockModel c = build_clock(4, 1.0);
  const HermitianOperator h_r = HermitianOperator::zero(CompositeSpace{2, 2});
  const CompositeSpace full{4, 2, 2};
  // Acts only on the clock.
  const HermitianOperator clock_only = embed<double>(full, 0, c.time_operator().matrix());
  CHECK(kind_of([&] { make_universe(c, h_r, clock_only, 0.1); }) == ErrorKind::IncompatibleSpec);
  // Acts only on the rest.
  MatrixXc x = MatrixXc::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const HermitianOperator rest_only = embed<double>(full, 2, x);
  CHECK(kind_of([&] { make_universe(c, h_r, rest_only, 0.1); }) == ErrorKind::IncompatibleSpec);
  // Genuine coupling.
  const HermitianOperator coupled(full, detail::kron(c.time_operator().matrix(), embed<double>(CompositeSpace{2, 2}, 0, x).matrix()));
  CHECK_NOTHROW(make_universe(c, h_r, coupled, 0.1));
  // Any interaction is allowed at g = 0.
  CHECK_NOTHROW(make_universe(c, h_r, clock_only, 0.0));
  CHECK(kind_of([&] { make_universe(c, h_r, HermitianOperator::zero(CompositeSpace{4, 4}), 0.0); }) ==
        ErrorKind::IncompatibleSpec);
  CHECK(kind_of([&] { make_universe(c, h_r, coupled, -1.0); }) == ErrorKind::IncompatibleSpec);
}

TEST_CASE("complementarity for a nonphysical product of ground states") {
  const ClockModel c = build_clock(4, 1.0);
  RVector<double> e(3);
  e << -2.0, 0.5, 1.0;
  const UniverseSpec u = make_universe(c, HermitianOperator::diagonal(CompositeSpace{3}, e));
  const PureState ground = tensor(PureState::basis(c.space(), 0), PureState::basis(u.rest, 0));
  const EnergyMoments m = complementarity_check(u, ground);
  CHECK(m.mean == doctest::Approx(0.0 + -2.0));
  CHECK(m.variance < 1e-12);
}

TEST_CASE("complementarity bound for a physical state at g > 0") {
  // Build h_i so that a chosen vector v is annihilated by H0 + g h_i:
  // h_i = -(a v^+ + v a^+ - (v^+ a) v v^+) / g with a = H0 v.
  std::mt19937_64 rng(31);
  const ClockModel c = build_clock(4, 1.0);
  const std::vector<int> levels{0, 1, 3};
  const MatchedRest m = matched_rest_hamiltonian(c, 3, levels);
  const UniverseSpec u0 = make_universe(c, m.h_r);
  const CompositeSpace full = u0.full_space();
  const double g = 0.25;
  const PureState v = random_state<double>(full, rng);
  const VectorXc a = free_hamiltonian(u0).matrix() * v.amplitudes();
  const Complex va = v.amplitudes().dot(a);
  const MatrixXc hi = -(a * v.amplitudes().adjoint() + v.amplitudes() * a.adjoint() -
                        va * v.amplitudes() * v.amplitudes().adjoint()) / g;
  const UniverseSpec u = make_universe(c, m.h_r, HermitianOperator(full, hi), g);
  CHECK(constraint_residual(u, v) < 1e-12);
  const EnergyMoments mo = complementarity_check(u, v);
  const double norm = spectrum(u.h_i).spectral_radius();
  CHECK(std::abs(mo.mean) <= g * norm + 1e-12);
  CHECK(std::abs(mo.mean) > 1e-6);
}

TEST_CASE("conditional history reduces to the exact one at g = 0 and tracks the reading-dependent Hamiltonian") {
  const ClockModel c = build_clock(8, 1.0);
  const CompositeSpace rest{2, 2};
  const std::vector<int> levels{0, 1, 2, 3};
  const MatchedRest m = matched_rest_hamiltonian(c, rest, levels);
  MatrixXc x = MatrixXc::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const MatrixXc local = embed<double>(rest, 0, x).matrix();
  const HermitianOperator hi(c.space().concat(rest), detail::kron(c.time_operator().matrix(), local));
  const PureState seed = PureState::normalized(rest, VectorXc::Ones(4));

  const UniverseSpec u0 = make_universe(c, m.h_r, hi, 0.0);
  const HistoryState exact = build_history_state(u0, seed, uniform_weights(c));
  const HistoryState cond = build_conditional_history_state(u0, seed, uniform_weights(c));
  CHECK((exact.state.amplitudes() - cond.state.amplitudes()).norm() == 0.0);

  const UniverseSpec u = make_universe(c, m.h_r, hi, 0.1);
  for (Index k = 0; k < 8; ++k) {
    CHECK((conditioned_interaction(u, k) - c.readings()[std::size_t(k)] * local).cwiseAbs().maxCoeff() < 1e-12);
  }
  const HistoryState h = build_conditional_history_state(u, seed, uniform_weights(c));
  CHECK(h.residual > 1e-6);
}

TEST_CASE("clock trace shift is zero without interaction") {
  const UniverseSpec u = matched_universe(5, 3);
  CHECK(clock_trace_shift(u) < 1e-14);
}
