#pragma once

// Dense complex linear algebra over small composite Hilbert spaces.
//
// Factor order is Kronecker order: factor 0 is the most significant digit of
// a flat basis index. All value types are templated on the real scalar and
// aliased for double at the bottom of this header.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pawsim/error.hpp"

namespace pawsim {

using Index = Eigen::Index;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr Index kDefaultMaxTotalDim = 4096;

// Validation tolerances applied at construction time.
inline constexpr double kStateNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

namespace detail {
inline std::atomic<Index> g_max_total_dim{kDefaultMaxTotalDim};
struct Unchecked {};
inline constexpr Unchecked unchecked{};
}  // namespace detail

inline Index max_total_dim() { return detail::g_max_total_dim.load(std::memory_order_relaxed); }

inline void set_max_total_dim(Index cap) {
  if (cap < 2) throw Error(ErrorKind::InvalidArgument, "dimension cap must be at least 2");
  detail::g_max_total_dim.store(cap, std::memory_order_relaxed);
}

/// Sorted, duplicate-free factor positions (zero-based).
using FactorSet = std::vector<std::size_t>;

/// Ordered tensor-factor dimensions of a Hilbert space.
class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<Index> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw Error(ErrorKind::InvalidArgument, "space needs at least one factor");
    const Index cap = max_total_dim();
    total_ = 1;
    for (Index d : dims_) {
      if (d < 2) throw Error(ErrorKind::InvalidArgument, "factor dimension " + std::to_string(d) + " < 2");
      if (d > cap || total_ > cap / d) {
        throw Error(ErrorKind::SpaceTooLarge,
                    "total dimension exceeds cap " + std::to_string(cap));
      }
      total_ *= d;
    }
  }
  CompositeSpace(std::initializer_list<Index> dims) : CompositeSpace(std::vector<Index>(dims)) {}

  const std::vector<Index>& factor_dims() const { return dims_; }
  std::size_t num_factors() const { return dims_.size(); }
  Index factor_dim(std::size_t i) const { return dims_.at(i); }
  Index total_dim() const { return total_; }

  /// Stride of each factor's digit in the flat index.
  std::vector<Index> strides() const {
    std::vector<Index> s(dims_.size(), 1);
    for (std::size_t f = dims_.size() - 1; f > 0; --f) s[f - 1] = s[f] * dims_[f];
    return s;
  }

  CompositeSpace concat(const CompositeSpace& other) const {
    std::vector<Index> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return CompositeSpace(std::move(d));
  }

  CompositeSpace subspace(const FactorSet& factors) const {
    std::vector<Index> d;
    for (std::size_t f : factors) d.push_back(dims_.at(f));
    return CompositeSpace(std::move(d));
  }

  Index dim_of(const FactorSet& factors) const {
    Index n = 1;
    for (std::size_t f : factors) n *= dims_.at(f);
    return n;
  }

  FactorSet complement(const FactorSet& factors) const {
    FactorSet out;
    for (std::size_t f = 0; f < dims_.size(); ++f) {
      if (std::find(factors.begin(), factors.end(), f) == factors.end()) out.push_back(f);
    }
    return out;
  }

  friend bool operator==(const CompositeSpace& a, const CompositeSpace& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

/// Normalizes `keep` and rejects empty, full, or out-of-range selections.
inline FactorSet validate_partition(const CompositeSpace& space, FactorSet keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty() || keep.size() >= space.num_factors()) {
    throw Error(ErrorKind::DegeneratePartition, "keep set must be a nonempty proper subset of factors");
  }
  if (keep.back() >= space.num_factors()) {
    throw Error(ErrorKind::DegeneratePartition, "factor index " + std::to_string(keep.back()) + " out of range");
  }
  return keep;
}

namespace detail {

// Flat-index offsets for every digit combination of `factors`, enumerated
// with the first listed factor most significant.
inline std::vector<Index> offsets(const CompositeSpace& space, const FactorSet& factors) {
  const auto strides = space.strides();
  std::vector<Index> out{0};
  for (std::size_t f : factors) {
    std::vector<Index> next;
    next.reserve(out.size() * static_cast<std::size_t>(space.factor_dim(f)));
    for (Index base : out) {
      for (Index digit = 0; digit < space.factor_dim(f); ++digit) next.push_back(base + digit * strides[f]);
    }
    out = std::move(next);
  }
  return out;
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> kron(const Eigen::MatrixBase<Derived>& a,
                                           const Eigen::MatrixBase<Derived>& b) {
  CMatrix<typename Derived::RealScalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
Real max_abs(const CMatrix<Real>& m) {
  return m.size() == 0 ? Real(0) : m.cwiseAbs().maxCoeff();
}

template <typename Real>
Real hermitian_defect(const CMatrix<Real>& m) {
  return max_abs<Real>(CMatrix<Real>(m - m.adjoint()));
}

template <typename Real>
Real entropy_of(const RVector<Real>& probabilities) {
  Real s = 0;
  for (Index i = 0; i < probabilities.size(); ++i) {
    const Real p = probabilities[i];
    if (p > Real(0)) s -= p * std::log(p);
  }
  return s;
}

}  // namespace detail

/// Normalized amplitude vector over a CompositeSpace.
template <typename Real>
class BasicPureState {
 public:
  using Scalar = std::complex<Real>;
  using VectorType = CVector<Real>;

  BasicPureState(CompositeSpace space, VectorType amplitudes)
      : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.total_dim()) {
      throw Error(ErrorKind::ShapeMismatch, "amplitude length does not match space dimension");
    }
    if (std::abs(amplitudes_.norm() - Real(1)) > Real(kStateNormTolerance)) {
      throw Error(ErrorKind::InvalidArgument, "state is not normalized");
    }
  }

  BasicPureState(detail::Unchecked, CompositeSpace space, VectorType amplitudes)
      : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {}

  /// Rescales to unit norm; a zero vector is rejected.
  static BasicPureState normalized(CompositeSpace space, VectorType amplitudes) {
    const Real n = amplitudes.norm();
    if (!(n > Real(0)) || !std::isfinite(n)) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero vector");
    if (amplitudes.size() != space.total_dim()) {
      throw Error(ErrorKind::ShapeMismatch, "amplitude length does not match space dimension");
    }
    return BasicPureState(detail::unchecked, std::move(space), amplitudes / n);
  }

  static BasicPureState basis(CompositeSpace space, Index index) {
    VectorType v = VectorType::Zero(space.total_dim());
    if (index < 0 || index >= v.size()) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
    v[index] = Scalar(1);
    return BasicPureState(detail::unchecked, std::move(space), std::move(v));
  }

  const CompositeSpace& space() const { return space_; }
  const VectorType& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }

 private:
  CompositeSpace space_;
  VectorType amplitudes_;
};

/// Hermitian matrix over a CompositeSpace. Stored exactly Hermitian:
/// inputs within tolerance are symmetrized on construction.
template <typename Real>
class BasicHermitianOperator {
 public:
  using Scalar = std::complex<Real>;
  using MatrixType = CMatrix<Real>;

  BasicHermitianOperator(CompositeSpace space, MatrixType matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim()) {
      throw Error(ErrorKind::ShapeMismatch, "operator shape does not match space dimension");
    }
    const Real scale = detail::max_abs<Real>(matrix_);
    if (detail::hermitian_defect<Real>(matrix_) > Real(kHermitianTolerance) * scale) {
      throw Error(ErrorKind::InvalidArgument, "operator is not Hermitian");
    }
    MatrixType sym = (matrix_ + matrix_.adjoint()) / Real(2);
    matrix_ = std::move(sym);
  }

  static BasicHermitianOperator identity(const CompositeSpace& space) {
    return BasicHermitianOperator(space, MatrixType::Identity(space.total_dim(), space.total_dim()));
  }
  static BasicHermitianOperator zero(const CompositeSpace& space) {
    return BasicHermitianOperator(space, MatrixType::Zero(space.total_dim(), space.total_dim()));
  }
  static BasicHermitianOperator diagonal(const CompositeSpace& space, const RVector<Real>& values) {
    if (values.size() != space.total_dim()) throw Error(ErrorKind::ShapeMismatch, "diagonal length mismatch");
    return BasicHermitianOperator(space, values.template cast<Scalar>().asDiagonal().toDenseMatrix());
  }

  const CompositeSpace& space() const { return space_; }
  const MatrixType& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

  friend BasicHermitianOperator operator+(const BasicHermitianOperator& a, const BasicHermitianOperator& b) {
    if (!(a.space_ == b.space_)) throw Error(ErrorKind::ShapeMismatch, "operators live on different spaces");
    return BasicHermitianOperator(a.space_, a.matrix_ + b.matrix_);
  }
  friend BasicHermitianOperator operator*(Real s, const BasicHermitianOperator& a) {
    return BasicHermitianOperator(a.space_, s * a.matrix_);
  }

 private:
  CompositeSpace space_;
  MatrixType matrix_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a CompositeSpace.
template <typename Real>
class BasicDensityOperator {
 public:
  using MatrixType = CMatrix<Real>;

  BasicDensityOperator(CompositeSpace space, MatrixType matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    validate();
  }

  BasicDensityOperator(detail::Unchecked, CompositeSpace space, MatrixType matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {}

  static BasicDensityOperator from_pure(const BasicPureState<Real>& s) {
    return BasicDensityOperator(detail::unchecked, s.space(), s.amplitudes() * s.amplitudes().adjoint());
  }

  static BasicDensityOperator maximally_mixed(const CompositeSpace& space) {
    const Index d = space.total_dim();
    return BasicDensityOperator(detail::unchecked, space,
                                MatrixType::Identity(d, d) / static_cast<Real>(d));
  }

  /// Throws unless Hermitian within 1e-12, trace 1 within 1e-12 and the
  /// smallest eigenvalue is at least -1e-10.
  void validate() const {
    if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim()) {
      throw Error(ErrorKind::ShapeMismatch, "density shape does not match space dimension");
    }
    if (detail::hermitian_defect<Real>(matrix_) > Real(kHermitianTolerance)) {
      throw Error(ErrorKind::InvalidArgument, "density operator is not Hermitian");
    }
    if (std::abs(matrix_.trace() - std::complex<Real>(1)) > Real(kTraceTolerance)) {
      throw Error(ErrorKind::InvalidArgument, "density operator trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<MatrixType> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::SpectralFailure, "density eigenvalues did not converge");
    if (es.eigenvalues().minCoeff() < -Real(kPositivityTolerance)) {
      throw Error(ErrorKind::InvalidArgument, "density operator has a negative eigenvalue");
    }
  }

  const CompositeSpace& space() const { return space_; }
  const MatrixType& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

 private:
  CompositeSpace space_;
  MatrixType matrix_;
};

/// Ascending eigenvalues with the matching orthonormal eigenvectors (columns).
template <typename Real>
struct BasicSpectrum {
  CompositeSpace space;
  RVector<Real> values;
  CMatrix<Real> vectors;

  Real spectral_radius() const { return values.size() == 0 ? Real(0) : values.cwiseAbs().maxCoeff(); }
};

// ---------------------------------------------------------------------------
// Composition

template <typename Real>
BasicHermitianOperator<Real> tensor(const BasicHermitianOperator<Real>& a, const BasicHermitianOperator<Real>& b) {
  CompositeSpace space = a.space().concat(b.space());
  return BasicHermitianOperator<Real>(std::move(space), detail::kron(a.matrix(), b.matrix()));
}

template <typename Real>
BasicPureState<Real> tensor(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  CompositeSpace space = a.space().concat(b.space());
  return BasicPureState<Real>(detail::unchecked, std::move(space), detail::kron(a.amplitudes(), b.amplitudes()));
}

template <typename Real>
BasicDensityOperator<Real> tensor(const BasicDensityOperator<Real>& a, const BasicDensityOperator<Real>& b) {
  CompositeSpace space = a.space().concat(b.space());
  return BasicDensityOperator<Real>(detail::unchecked, std::move(space), detail::kron(a.matrix(), b.matrix()));
}

/// Embeds `op`, acting on factor `factor` of `space`, as op on that factor
/// and identity elsewhere.
template <typename Real>
BasicHermitianOperator<Real> embed(const CompositeSpace& space, std::size_t factor, const CMatrix<Real>& op) {
  if (factor >= space.num_factors() || op.rows() != space.factor_dim(factor) || op.cols() != op.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "local operator does not fit the selected factor");
  }
  CMatrix<Real> out = CMatrix<Real>::Identity(1, 1);
  for (std::size_t f = 0; f < space.num_factors(); ++f) {
    const Index d = space.factor_dim(f);
    const CMatrix<Real> local = f == factor ? op : CMatrix<Real>(CMatrix<Real>::Identity(d, d));
    out = detail::kron(out, local);
  }
  return BasicHermitianOperator<Real>(space, std::move(out));
}

// ---------------------------------------------------------------------------
// Partial traces

/// Unnormalized partial trace of an arbitrary operator, keeping `keep`.
template <typename Real>
CMatrix<Real> partial_trace_matrix(const CompositeSpace& space, const CMatrix<Real>& m, const FactorSet& keep) {
  const FactorSet kept = validate_partition(space, keep);
  const auto ok = detail::offsets(space, kept);
  const auto ot = detail::offsets(space, space.complement(kept));
  const Index dk = static_cast<Index>(ok.size());
  CMatrix<Real> out = CMatrix<Real>::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a) {
    for (Index b = 0; b < dk; ++b) {
      std::complex<Real> acc(0);
      for (Index t : ot) acc += m(ok[a] + t, ok[b] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

template <typename Real>
BasicDensityOperator<Real> partial_trace(const BasicDensityOperator<Real>& rho, const FactorSet& keep) {
  const FactorSet kept = validate_partition(rho.space(), keep);
  return BasicDensityOperator<Real>(detail::unchecked, rho.space().subspace(kept),
                                    partial_trace_matrix<Real>(rho.space(), rho.matrix(), kept));
}

/// Reduced state of a pure state on the factors in `keep`.
template <typename Real>
BasicDensityOperator<Real> reduced_state(const BasicPureState<Real>& s, const FactorSet& keep) {
  const FactorSet kept = validate_partition(s.space(), keep);
  const auto ok = detail::offsets(s.space(), kept);
  const auto ot = detail::offsets(s.space(), s.space().complement(kept));
  CMatrix<Real> m(static_cast<Index>(ok.size()), static_cast<Index>(ot.size()));
  for (std::size_t a = 0; a < ok.size(); ++a) {
    for (std::size_t t = 0; t < ot.size(); ++t) m(Index(a), Index(t)) = s.amplitudes()[ok[a] + ot[t]];
  }
  return BasicDensityOperator<Real>(detail::unchecked, s.space().subspace(kept), m * m.adjoint());
}

// ---------------------------------------------------------------------------
// Spectral operations

template <typename Real>
BasicSpectrum<Real> spectrum(const BasicHermitianOperator<Real>& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::SpectralFailure, "self-adjoint eigensolver reported code " +
                                                std::to_string(static_cast<int>(es.info())));
  }
  return BasicSpectrum<Real>{h.space(), es.eigenvalues(), es.eigenvectors()};
}

/// exp(-i H t) assembled from a precomputed spectrum.
template <typename Real>
CMatrix<Real> propagator(const BasicSpectrum<Real>& spec, Real t) {
  CVector<Real> phases(spec.values.size());
  for (Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(Real(1), -spec.values[i] * t);
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}

template <typename Real>
BasicPureState<Real> evolve(const BasicSpectrum<Real>& spec, Real t, const BasicPureState<Real>& s) {
  if (!(spec.space == s.space())) throw Error(ErrorKind::ShapeMismatch, "state and Hamiltonian spaces differ");
  CVector<Real> coeffs = spec.vectors.adjoint() * s.amplitudes();
  for (Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= std::polar(Real(1), -spec.values[i] * t);
  return BasicPureState<Real>(detail::unchecked, s.space(), spec.vectors * coeffs);
}

/// Returns exp(-i H t) s (hbar = 1).
template <typename Real>
BasicPureState<Real> evolve(const BasicHermitianOperator<Real>& h, Real t, const BasicPureState<Real>& s) {
  if (!(h.space() == s.space())) throw Error(ErrorKind::ShapeMismatch, "state and Hamiltonian spaces differ");
  return evolve(spectrum(h), t, s);
}

/// Orthonormal basis of the eigenspace with |eigenvalue| <= tol * spectral radius.
template <typename Real>
std::vector<BasicPureState<Real>> kernel(const BasicSpectrum<Real>& spec, Real tol) {
  if (!(tol > Real(0))) throw Error(ErrorKind::InvalidArgument, "kernel tolerance must be positive");
  const Real threshold = tol * spec.spectral_radius();
  std::vector<BasicPureState<Real>> out;
  for (Index i = 0; i < spec.values.size(); ++i) {
    if (std::abs(spec.values[i]) <= threshold) {
      out.emplace_back(detail::unchecked, spec.space, spec.vectors.col(i));
    }
  }
  return out;
}

template <typename Real>
std::vector<BasicPureState<Real>> kernel(const BasicHermitianOperator<Real>& h, Real tol) {
  return kernel(spectrum(h), tol);
}

// ---------------------------------------------------------------------------
// Scalar diagnostics

template <typename Real>
std::complex<Real> inner(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  if (!(a.space() == b.space())) throw Error(ErrorKind::ShapeMismatch, "states live on different spaces");
  return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2, computed against the operands' own norms so that a state
/// compared with itself gives exactly 1.
template <typename Real>
Real fidelity(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  const std::complex<Real> ab = inner(a, b);
  const Real aa = a.amplitudes().dot(a.amplitudes()).real();
  const Real bb = b.amplitudes().dot(b.amplitudes()).real();
  return std::min(Real(1), std::norm(ab) / (aa * bb));
}

template <typename Real>
Real expectation(const BasicHermitianOperator<Real>& h, const BasicPureState<Real>& s) {
  if (!(h.space() == s.space())) throw Error(ErrorKind::ShapeMismatch, "state and operator spaces differ");
  return s.amplitudes().dot(h.matrix() * s.amplitudes()).real();
}

template <typename Real>
Real von_neumann_entropy(const BasicDensityOperator<Real>& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(rho.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SpectralFailure, "density eigenvalues did not converge");
  return detail::entropy_of<Real>(es.eigenvalues());
}

/// Von Neumann entropy (natural log) across the cut separating `side`
/// from the remaining factors.
template <typename Real>
Real entanglement_entropy(const BasicPureState<Real>& s, const FactorSet& side) {
  const FactorSet a = validate_partition(s.space(), side);
  const FactorSet b = s.space().complement(a);
  const FactorSet& smaller = s.space().dim_of(a) <= s.space().dim_of(b) ? a : b;
  return von_neumann_entropy(reduced_state(s, smaller));
}

template <typename Real>
Real trace_distance(const BasicDensityOperator<Real>& a, const BasicDensityOperator<Real>& b) {
  if (!(a.space() == b.space())) throw Error(ErrorKind::ShapeMismatch, "density operators live on different spaces");
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(CMatrix<Real>(a.matrix() - b.matrix()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SpectralFailure, "difference eigenvalues did not converge");
  return std::min(Real(1), es.eigenvalues().cwiseAbs().sum() / Real(2));
}

template <typename Real>
bool is_unitary(const CMatrix<Real>& u, Real tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix<Real> defect = u.adjoint() * u - CMatrix<Real>::Identity(u.rows(), u.cols());
  return detail::max_abs<Real>(defect) <= tol;
}

// ---------------------------------------------------------------------------
// Subspaces spanned by lists of states

/// Orthonormal basis (columns) of span{states}, dropping directions whose
/// singular value is below rank_tol times the largest one.
template <typename Real>
CMatrix<Real> orthonormal_span(const std::vector<BasicPureState<Real>>& states, Real rank_tol = Real(1e-12)) {
  if (states.empty()) return CMatrix<Real>();
  CMatrix<Real> m(states.front().dim(), static_cast<Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) m.col(Index(i)) = states[i].amplitudes();
  Eigen::BDCSVD<CMatrix<Real>> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv[rank] > rank_tol * sv[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Squared norm of the projection of s onto the span of `basis` columns.
template <typename Real>
Real projection_weight(const CMatrix<Real>& basis, const BasicPureState<Real>& s) {
  if (basis.cols() == 0) return Real(0);
  return (basis.adjoint() * s.amplitudes()).squaredNorm() / s.amplitudes().squaredNorm();
}

/// Smallest projection weight of any state of either list onto the span of
/// the other; 1 means the two spans coincide.
template <typename Real>
Real mutual_projection_fidelity(const std::vector<BasicPureState<Real>>& a,
                                const std::vector<BasicPureState<Real>>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? Real(1) : Real(0);
  const CMatrix<Real> span_a = orthonormal_span(a);
  const CMatrix<Real> span_b = orthonormal_span(b);
  Real worst = Real(1);
  for (const auto& s : a) worst = std::min(worst, projection_weight(span_b, s));
  for (const auto& s : b) worst = std::min(worst, projection_weight(span_a, s));
  // Spans of different dimension cannot coincide even if every listed
  // vector projects well (e.g. a list containing repeated vectors).
  if (span_a.cols() != span_b.cols()) worst = std::min(worst, Real(0));
  return worst;
}

// ---------------------------------------------------------------------------
// Random generation (deterministic for a given engine state)

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
template <typename Real, typename Engine>
CMatrix<Real> haar_unitary(Index dim, Engine& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CMatrix<Real> z(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      z(i, j) = std::complex<Real>(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix<Real>> qr(z);
  CMatrix<Real> q = qr.householderQ();
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const std::complex<Real> d = r(j, j);
    const Real mag = std::abs(d);
    if (mag > Real(0)) q.col(j) *= d / mag;
  }
  return q;
}

template <typename Real, typename Engine>
BasicPureState<Real> random_state(const CompositeSpace& space, Engine& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CVector<Real> v(space.total_dim());
  for (Index i = 0; i < v.size(); ++i) {
    const Real re = normal(rng);
    const Real im = normal(rng);
    v[i] = std::complex<Real>(re, im);
  }
  return BasicPureState<Real>::normalized(space, std::move(v));
}

template <typename Real, typename Engine>
BasicHermitianOperator<Real> random_hermitian(const CompositeSpace& space, Engine& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  const Index d = space.total_dim();
  CMatrix<Real> m(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      m(i, j) = std::complex<Real>(re, im);
    }
  }
  return BasicHermitianOperator<Real>(space, CMatrix<Real>((m + m.adjoint()) / Real(2)));
}

// ---------------------------------------------------------------------------

using Complex = std::complex<double>;
using VectorXc = CVector<double>;
using MatrixXc = CMatrix<double>;
using PureState = BasicPureState<double>;
using HermitianOperator = BasicHermitianOperator<double>;
using DensityOperator = BasicDensityOperator<double>;
using Spectrum = BasicSpectrum<double>;

}  // namespace pawsim
