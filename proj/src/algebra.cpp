#include "nclp/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nclp {

// ---------------------------------------------------------------------------
// descriptor

AlgebraDescriptor::AlgebraDescriptor(std::vector<int> dims, std::vector<double> weights)
    : block_dims(std::move(dims)), trace_weights(std::move(weights)) {
  validate();
}

AlgebraDescriptor AlgebraDescriptor::full(int n, double weight) {
  return AlgebraDescriptor({n}, {weight});
}

AlgebraDescriptor AlgebraDescriptor::direct_sum(const std::vector<AlgebraDescriptor>& parts) {
  AlgebraDescriptor out;
  for (const auto& p : parts) {
    out.block_dims.insert(out.block_dims.end(), p.block_dims.begin(), p.block_dims.end());
    out.trace_weights.insert(out.trace_weights.end(), p.trace_weights.begin(),
                             p.trace_weights.end());
  }
  out.validate();
  return out;
}

int AlgebraDescriptor::coord_dim() const {
  int d = 0;
  for (int n : block_dims) d += n * n;
  return d;
}

void AlgebraDescriptor::validate() const {
  if (block_dims.empty() || block_dims.size() != trace_weights.size())
    throw std::invalid_argument("algebra descriptor: dims/weights length mismatch");
  for (int n : block_dims)
    if (n < 1) throw std::invalid_argument("algebra descriptor: block dim must be >= 1");
  for (double t : trace_weights)
    if (!(t > 0.0)) throw std::invalid_argument("algebra descriptor: trace weight must be > 0");
}

// ---------------------------------------------------------------------------
// element basics

AlgebraElement::AlgebraElement(AlgebraDescriptor alg, std::vector<Matrix> blks)
    : algebra(std::move(alg)), blocks(std::move(blks)) {
  if (static_cast<int>(blocks.size()) != algebra.num_blocks())
    throw DimensionMismatch("element: wrong number of blocks");
  for (int i = 0; i < algebra.num_blocks(); ++i) {
    const int n = algebra.block_dims[i];
    if (blocks[i].rows() != n || blocks[i].cols() != n)
      throw DimensionMismatch("element: block shape does not match the algebra");
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& alg) {
  std::vector<Matrix> blks;
  blks.reserve(alg.num_blocks());
  for (int n : alg.block_dims) blks.push_back(Matrix::Zero(n, n));
  return AlgebraElement(alg, std::move(blks));
}

AlgebraElement AlgebraElement::identity(const AlgebraDescriptor& alg) {
  std::vector<Matrix> blks;
  blks.reserve(alg.num_blocks());
  for (int n : alg.block_dims) blks.push_back(Matrix::Identity(n, n));
  return AlgebraElement(alg, std::move(blks));
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out = *this;
  for (auto& b : out.blocks) b = b.adjoint().eval();
  return out;
}

AlgebraElement AlgebraElement::block_transpose() const {
  AlgebraElement out = *this;
  for (auto& b : out.blocks) b = b.transpose().eval();
  return out;
}

Complex AlgebraElement::trace() const {
  Complex t = 0;
  for (int i = 0; i < algebra.num_blocks(); ++i) t += algebra.trace_weights[i] * blocks[i].trace();
  return t;
}

Complex AlgebraElement::inner(const AlgebraElement& rhs) const {
  Complex s = 0;
  for (int i = 0; i < algebra.num_blocks(); ++i)
    s += algebra.trace_weights[i] * (blocks[i].adjoint() * rhs.blocks[i]).trace();
  return s;
}

Complex AlgebraElement::pairing(const AlgebraElement& rhs) const {
  Complex s = 0;
  for (int i = 0; i < algebra.num_blocks(); ++i)
    s += algebra.trace_weights[i] * (blocks[i] * rhs.blocks[i]).trace();
  return s;
}

double AlgebraElement::norm2() const { return std::sqrt(std::abs(inner(*this).real())); }

double AlgebraElement::op_norm() const {
  double m = 0;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(b);
    if (svd.singularValues().size() > 0) m = std::max(m, svd.singularValues()(0));
  }
  return m;
}

bool AlgebraElement::same_shape(const AlgebraElement& o) const {
  return algebra.block_dims == o.algebra.block_dims;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (!same_shape(o)) throw DimensionMismatch("operator+: shape mismatch");
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i] += o.blocks[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (!same_shape(o)) throw DimensionMismatch("operator-: shape mismatch");
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i] -= o.blocks[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& b : blocks) b *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.same_shape(b)) throw DimensionMismatch("operator*: shape mismatch");
  AlgebraElement out = a;
  for (size_t i = 0; i < out.blocks.size(); ++i) out.blocks[i] = a.blocks[i] * b.blocks[i];
  return out;
}

// ---------------------------------------------------------------------------
// coordinates

Vector coords(const AlgebraElement& x) {
  Vector v(x.algebra.coord_dim());
  int k = 0;
  for (int i = 0; i < x.algebra.num_blocks(); ++i) {
    const double s = std::sqrt(x.algebra.trace_weights[i]);
    const int n = x.algebra.block_dims[i];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) v(k++) = s * x.blocks[i](r, c);
  }
  return v;
}

AlgebraElement from_coords(const AlgebraDescriptor& alg, const Vector& v) {
  if (v.size() != alg.coord_dim()) throw DimensionMismatch("from_coords: bad length");
  AlgebraElement x = AlgebraElement::zero(alg);
  int k = 0;
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const double s = 1.0 / std::sqrt(alg.trace_weights[i]);
    const int n = alg.block_dims[i];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) x.blocks[i](r, c) = s * v(k++);
  }
  return x;
}

std::vector<AlgebraElement> matrix_unit_basis(const AlgebraDescriptor& alg) {
  std::vector<AlgebraElement> out;
  out.reserve(alg.coord_dim());
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const int n = alg.block_dims[i];
    const double s = 1.0 / std::sqrt(alg.trace_weights[i]);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        AlgebraElement e = AlgebraElement::zero(alg);
        e.blocks[i](r, c) = s;
        out.push_back(std::move(e));
      }
  }
  return out;
}

std::vector<AlgebraElement> hermitian_basis(const AlgebraDescriptor& alg) {
  std::vector<AlgebraElement> out;
  out.reserve(alg.coord_dim());
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const int n = alg.block_dims[i];
    const double s = 1.0 / std::sqrt(alg.trace_weights[i]);
    for (int r = 0; r < n; ++r) {
      AlgebraElement e = AlgebraElement::zero(alg);
      e.blocks[i](r, r) = s;
      out.push_back(std::move(e));
    }
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) {
        AlgebraElement e = AlgebraElement::zero(alg);
        e.blocks[i](r, c) = s * M_SQRT1_2;
        e.blocks[i](c, r) = s * M_SQRT1_2;
        out.push_back(e);
        AlgebraElement f = AlgebraElement::zero(alg);
        f.blocks[i](r, c) = Complex(0, s * M_SQRT1_2);
        f.blocks[i](c, r) = Complex(0, -s * M_SQRT1_2);
        out.push_back(std::move(f));
      }
  }
  return out;
}

std::vector<int> transpose_permutation(const AlgebraDescriptor& alg) {
  std::vector<int> p(alg.coord_dim());
  int base = 0;
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const int n = alg.block_dims[i];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) p[base + r * n + c] = base + c * n + r;
    base += n * n;
  }
  return p;
}

AlgebraElement functional_density(const AlgebraDescriptor& alg,
                                  const std::function<Complex(const AlgebraElement&)>& f) {
  // f(x) = tau(e x); in coordinates c(e) = S fvec with S the transpose swap.
  const auto basis = matrix_unit_basis(alg);
  Vector fvec(alg.coord_dim());
  for (size_t k = 0; k < basis.size(); ++k) fvec(static_cast<int>(k)) = f(basis[k]);
  const auto p = transpose_permutation(alg);
  Vector c(alg.coord_dim());
  for (int k = 0; k < alg.coord_dim(); ++k) c(p[k]) = fvec(k);
  return from_coords(alg, c);
}

// ---------------------------------------------------------------------------
// predicates

CheckResult is_hermitian(const AlgebraElement& x, double tol) {
  const double r = (x - x.adjoint()).op_norm();
  return {r <= scaled_tol(tol, x.op_norm()), r};
}

double min_eigenvalue(const AlgebraElement& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : x.blocks) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return m;
}

CheckResult is_positive(const AlgebraElement& x, double tol) {
  const auto herm = is_hermitian(x, tol);
  if (!herm.ok) return {false, herm.residual};
  AlgebraElement h = x;
  for (auto& b : h.blocks) b = ((b + b.adjoint()) / 2.0).eval();
  const double lo = min_eigenvalue(h);
  const double t = scaled_tol(tol, x.op_norm());
  return {lo >= -t, std::max(herm.residual, std::max(0.0, -lo))};
}

CheckResult is_projection(const AlgebraElement& x, double tol) {
  const double r = std::max((x * x - x).op_norm(), (x - x.adjoint()).op_norm());
  return {r <= scaled_tol(tol, std::max(1.0, x.op_norm())), r};
}

CheckResult is_partial_isometry(const AlgebraElement& x, double tol) {
  const AlgebraElement p = x.adjoint() * x;
  return is_projection(p, tol);
}

// ---------------------------------------------------------------------------
// functional calculus / polar / supports

AlgebraElement functional_calculus(const AlgebraElement& x, ScalarFn fn, double alpha,
                                   double tol) {
  const double scale = x.op_norm();
  const double t = scaled_tol(tol, scale);
  const auto herm = is_hermitian(x, tol);
  if (!herm.ok)
    throw NotPositive("functional calculus: input is not Hermitian (residual " +
                      std::to_string(herm.residual) + ")");
  // The zeroing cutoff is a noise floor, not a rank decision: it keeps
  // exact kernels exact without disturbing genuinely small spectrum (the
  // power round-trip must hold to 1e-10).
  const double noise = 1e-12 * scale;
  AlgebraElement out = x;
  for (auto& b : out.blocks) {
    Matrix h = (b + b.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    if (fn == ScalarFn::Power && ev.minCoeff() < -t)
      throw NotPositive("functional calculus: spectrum reaches " + std::to_string(ev.minCoeff()));
    Eigen::VectorXd fv(ev.size());
    for (int k = 0; k < ev.size(); ++k) {
      const double lam = ev(k);
      if (fn == ScalarFn::AbsPart) {
        fv(k) = std::abs(lam);
      } else {
        fv(k) = (lam <= noise) ? 0.0 : std::pow(lam, alpha);
      }
    }
    b = es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
  }
  return out;
}

AlgebraElement fc_power(const AlgebraElement& x, double alpha, double tol) {
  return functional_calculus(x, ScalarFn::Power, alpha, tol);
}

AlgebraElement support_power(const AlgebraElement& psd, double alpha, double tol) {
  const double t = scaled_tol(tol, psd.op_norm());
  AlgebraElement out = psd;
  for (auto& b : out.blocks) {
    Matrix h = (b + b.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    Eigen::VectorXd fv(ev.size());
    for (int k = 0; k < ev.size(); ++k) fv(k) = (ev(k) > t) ? std::pow(ev(k), alpha) : 0.0;
    b = es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
  }
  return out;
}

PolarDecomposition polar(const AlgebraElement& x, double tol) {
  const double scale = x.op_norm();
  PolarDecomposition out{AlgebraElement::zero(x.algebra), AlgebraElement::zero(x.algebra)};
  for (int i = 0; i < x.algebra.num_blocks(); ++i) {
    const Matrix& b = x.blocks[i];
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thr = scaled_tol(tol, scale);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > thr) ++rank;
    const Matrix u = svd.matrixU().leftCols(rank);
    const Matrix v = svd.matrixV().leftCols(rank);
    out.isometry.blocks[i] = u * v.adjoint();
    out.positive.blocks[i] =
        svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
  }
  return out;
}

SupportPair supports(const AlgebraElement& x, double tol) {
  const double scale = x.op_norm();
  SupportPair out{AlgebraElement::zero(x.algebra), AlgebraElement::zero(x.algebra)};
  for (int i = 0; i < x.algebra.num_blocks(); ++i) {
    Eigen::JacobiSVD<Matrix> svd(x.blocks[i], Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thr = scaled_tol(tol, scale);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > thr) ++rank;
    const Matrix u = svd.matrixU().leftCols(rank);
    const Matrix v = svd.matrixV().leftCols(rank);
    out.left.blocks[i] = u * u.adjoint();
    out.right.blocks[i] = v * v.adjoint();
  }
  return out;
}

AlgebraElement support_projection(const AlgebraElement& psd, double tol) {
  return support_power(psd, 0.0, tol);
}

AlgebraElement modular_phase(const AlgebraElement& psd, double t, double tol) {
  const double thr = scaled_tol(tol, psd.op_norm());
  AlgebraElement out = psd;
  for (auto& b : out.blocks) {
    Matrix h = (b + b.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    Vector ph(ev.size());
    for (int k = 0; k < ev.size(); ++k) {
      if (ev(k) > thr) {
        const double a = t * std::log(ev(k));
        ph(k) = Complex(std::cos(a), std::sin(a));
      } else {
        ph(k) = 1.0;  // identity off the support
      }
    }
    b = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  }
  return out;
}

// ---------------------------------------------------------------------------
// random generation

AlgebraElement random_element(const AlgebraDescriptor& alg, CounterRng& rng) {
  AlgebraElement x = AlgebraElement::zero(alg);
  for (auto& b : x.blocks)
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) b(r, c) = rng.cnormal();
  return x;
}

AlgebraElement random_hermitian(const AlgebraDescriptor& alg, CounterRng& rng) {
  AlgebraElement x = random_element(alg, rng);
  for (auto& b : x.blocks) b = ((b + b.adjoint()) / 2.0).eval();
  return x;
}

AlgebraElement random_psd(const AlgebraDescriptor& alg, CounterRng& rng) {
  AlgebraElement x = random_element(alg, rng);
  for (auto& b : x.blocks) b = (b * b.adjoint()).eval();
  return x;
}

AlgebraElement random_density(const AlgebraDescriptor& alg, CounterRng& rng, double floor) {
  AlgebraElement d = random_psd(alg, rng);
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const int n = alg.block_dims[i];
    d.blocks[i] += floor * d.blocks[i].trace().real() / n * Matrix::Identity(n, n);
  }
  const double tr = d.trace().real();
  d *= Complex(1.0 / tr, 0);
  return d;
}

AlgebraElement random_unitary(const AlgebraDescriptor& alg, CounterRng& rng) {
  const AlgebraElement g = random_element(alg, rng);
  AlgebraElement u = AlgebraElement::zero(alg);
  for (int i = 0; i < alg.num_blocks(); ++i) {
    Eigen::JacobiSVD<Matrix> svd(g.blocks[i], Eigen::ComputeFullU | Eigen::ComputeFullV);
    u.blocks[i] = svd.matrixU() * svd.matrixV().adjoint();
  }
  return u;
}

AlgebraElement random_projection(const AlgebraDescriptor& alg, CounterRng& rng,
                                 std::vector<int> ranks) {
  if (ranks.empty())
    for (int n : alg.block_dims) ranks.push_back(rng.uniform_int(0, n));
  const AlgebraElement h = random_hermitian(alg, rng);
  AlgebraElement p = AlgebraElement::zero(alg);
  for (int i = 0; i < alg.num_blocks(); ++i) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.blocks[i]);
    const int r = std::clamp(ranks[i], 0, alg.block_dims[i]);
    if (r > 0) {
      const Matrix v = es.eigenvectors().rightCols(r);
      p.blocks[i] = v * v.adjoint();
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// span utilities

namespace {

// Orthonormal span accumulator over trace coordinates (modified
// Gram-Schmidt, two passes).
class SpanBuilder {
 public:
  explicit SpanBuilder(int dim) : dim_(dim), q_(dim, 0) {}

  bool add(Vector v, double residual_threshold = 1e-8) {
    // the residual test is relative to the candidate's original norm, so
    // that a numerically-zero product (pure noise) cannot be lifted into a
    // spurious direction by normalization
    const double n0 = v.norm();
    if (n0 < residual_threshold) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < q_.cols(); ++j) v -= q_.col(j).dot(v) * q_.col(j);
    const double r = v.norm();
    if (r <= residual_threshold * std::max(1.0, n0)) return false;
    q_.conservativeResize(dim_, q_.cols() + 1);
    q_.col(q_.cols() - 1) = v / r;
    return true;
  }

  int size() const { return static_cast<int>(q_.cols()); }
  const Matrix& q() const { return q_; }

 private:
  int dim_;
  Matrix q_;
};

std::vector<AlgebraElement> span_to_elements(const AlgebraDescriptor& alg, const Matrix& q) {
  std::vector<AlgebraElement> out;
  out.reserve(q.cols());
  for (int j = 0; j < q.cols(); ++j) out.push_back(from_coords(alg, q.col(j)));
  return out;
}

Matrix basis_matrix(const std::vector<AlgebraElement>& basis) {
  if (basis.empty()) return Matrix();
  Matrix q(basis[0].algebra.coord_dim(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j) q.col(static_cast<int>(j)) = coords(basis[j]);
  return q;
}

// Nullspace of a stacked constraint matrix, with a tolerance-band guard on
// the rank decision.
Matrix nullspace(const Matrix& m, double tol) {
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  if (smax < 1e-14) return Matrix::Identity(m.cols(), m.cols());
  const double thr = scaled_tol(tol, smax);
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > thr / 8 && sv(k) < thr * 8) {
      std::ostringstream os;
      os << "rank decision inside the tolerance band: singular value " << sv(k)
         << " vs threshold " << thr << " (gap factor " << sv(k) / thr << ")";
      throw DegenerateBasis(os.str());
    }
  }
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thr) ++rank;
  const int full = static_cast<int>(m.cols());
  if (rank >= full) return Matrix(full, 0);
  return svd.matrixV().rightCols(full - rank);
}

}  // namespace

AlgebraElement project_onto_span(const std::vector<AlgebraElement>& basis,
                                 const AlgebraElement& x) {
  if (basis.empty()) return AlgebraElement::zero(x.algebra);
  // spanning sets need not be orthonormal or independent
  const Matrix m = basis_matrix(basis);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double thr = (sv.size() && sv(0) > 0) ? 1e-10 * sv(0) : 1.0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thr) ++rank;
  const Matrix q = svd.matrixU().leftCols(rank);
  const Vector v = coords(x);
  return from_coords(x.algebra, (q * (q.adjoint() * v)).eval());
}

double distance_to_span(const std::vector<AlgebraElement>& basis, const AlgebraElement& x) {
  return (x - project_onto_span(basis, x)).norm2();
}

CheckResult subalgebra_closure_check(const SubalgebraBasis& sub, double tol) {
  double worst = 0.0;
  // orthonormality
  for (size_t a = 0; a < sub.basis.size(); ++a)
    for (size_t b = 0; b < sub.basis.size(); ++b) {
      const Complex g = sub.basis[a].inner(sub.basis[b]);
      worst = std::max(worst, std::abs(g - (a == b ? Complex(1) : Complex(0))));
    }
  // closure under adjoints and products, and the unit
  for (const auto& a : sub.basis) worst = std::max(worst, distance_to_span(sub.basis, a.adjoint()));
  for (const auto& a : sub.basis)
    for (const auto& b : sub.basis)
      worst = std::max(worst, distance_to_span(sub.basis, a * b));
  worst = std::max(worst, distance_to_span(sub.basis, sub.unit));
  for (const auto& a : sub.basis)
    worst = std::max(worst, (sub.unit * a - a).norm2() + (a * sub.unit - a).norm2());
  return {worst <= scaled_tol(tol, 1.0) * 100, worst};
}

SubalgebraBasis commutant(const AlgebraDescriptor& alg, std::span<const AlgebraElement> gens,
                          double tol) {
  // Blockwise: Y commutes with every generator and every adjoint.
  SubalgebraBasis out;
  out.parent = alg;
  out.unit = AlgebraElement::identity(alg);
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const int n = alg.block_dims[i];
    std::vector<Matrix> cons;
    for (const auto& g : gens) {
      cons.push_back(g.blocks[i]);
      cons.push_back(g.blocks[i].adjoint());
    }
    Matrix m(static_cast<int>(cons.size()) * n * n, n * n);
    for (size_t ci = 0; ci < cons.size(); ++ci) {
      const Matrix& g = cons[ci];
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          Matrix e = Matrix::Zero(n, n);
          e(r, c) = 1.0;
          const Matrix comm = g * e - e * g;
          for (int rr = 0; rr < n; ++rr)
            for (int cc = 0; cc < n; ++cc)
              m(static_cast<int>(ci) * n * n + rr * n + cc, r * n + c) = comm(rr, cc);
        }
    }
    const Matrix null = nullspace(m, tol);
    // re-orthonormalize (already orthonormal from SVD) and embed
    for (int j = 0; j < null.cols(); ++j) {
      AlgebraElement e = AlgebraElement::zero(alg);
      const double s = 1.0 / std::sqrt(alg.trace_weights[i]);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) e.blocks[i](r, c) = s * null(r * n + c, j);
      out.basis.push_back(std::move(e));
    }
  }
  return out;
}

SubalgebraBasis bicommutant(const AlgebraDescriptor& alg, std::span<const AlgebraElement> gens,
                            double tol) {
  const SubalgebraBasis first = commutant(alg, gens, tol);
  return commutant(alg, first.basis, tol);
}

SubalgebraBasis generated_algebra(const AlgebraDescriptor& alg,
                                  std::span<const AlgebraElement> gens, bool include_parent_unit,
                                  double tol) {
  SpanBuilder span(alg.coord_dim());
  if (include_parent_unit) span.add(coords(AlgebraElement::identity(alg)));
  for (const auto& g : gens) {
    span.add(coords(g));
    span.add(coords(g.adjoint()));
  }
  // close under products until stable
  bool grew = true;
  while (grew) {
    grew = false;
    auto elems = span_to_elements(alg, span.q());
    for (size_t a = 0; a < elems.size() && !grew; ++a)
      for (size_t b = 0; b < elems.size() && !grew; ++b) {
        if (span.add(coords(elems[a] * elems[b]))) grew = true;
        if (!grew && span.add(coords((elems[a] * elems[b]).adjoint()))) grew = true;
      }
  }
  SubalgebraBasis out;
  out.parent = alg;
  out.basis = span_to_elements(alg, span.q());

  if (include_parent_unit) {
    out.unit = AlgebraElement::identity(alg);
  } else {
    // The unit of the generated algebra is the support of any faithful
    // positive element, e.g. sum a_k a_k^*.
    AlgebraElement s = AlgebraElement::zero(alg);
    for (const auto& a : out.basis) s += a * a.adjoint();
    out.unit = support_projection(s, tol);
    const double r = distance_to_span(out.basis, out.unit);
    if (r > 1e-6)
      throw NotSubalgebra("generated algebra: computed unit is " + std::to_string(r) +
                          " away from the span");
  }
  return out;
}

SubalgebraBasis center_of(const SubalgebraBasis& sub, double tol) {
  const int m = sub.dim();
  SubalgebraBasis out;
  out.parent = sub.parent;
  out.unit = sub.unit;
  if (m == 0) return out;
  const int d = sub.parent.coord_dim();
  Matrix cons(static_cast<long>(m) * d, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) {
      const AlgebraElement comm = sub.basis[k] * sub.basis[j] - sub.basis[j] * sub.basis[k];
      cons.block(static_cast<long>(j) * d, k, d, 1) = coords(comm);
    }
  const Matrix null = nullspace(cons, tol);
  const Matrix q = basis_matrix(sub.basis);
  for (int j = 0; j < null.cols(); ++j)
    out.basis.push_back(from_coords(sub.parent, (q * null.col(j)).eval()));
  return out;
}

std::vector<AlgebraElement> minimal_central_projections(const SubalgebraBasis& sub, double tol) {
  const SubalgebraBasis z = center_of(sub, tol);
  const int m = z.dim();
  if (m == 0) return {};

  for (int attempt = 0; attempt < 8; ++attempt) {
    CounterRng rng(0xA1B2C3D4ULL, "minimal-central-projections", attempt);
    AlgebraElement g = AlgebraElement::zero(sub.parent);
    for (const auto& b : z.basis) {
      const Complex c = rng.cnormal();
      g += c * b + std::conj(c) * b.adjoint();
    }
    // spectral projections of a generic central Hermitian element
    struct Cluster {
      double value;
      AlgebraElement proj;
    };
    std::vector<std::pair<double, std::pair<int, int>>> eigs;  // value, (block, index)
    std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
    for (const auto& b : g.blocks) solvers.emplace_back(b);
    for (int i = 0; i < sub.parent.num_blocks(); ++i)
      for (int k = 0; k < sub.parent.block_dims[i]; ++k)
        eigs.push_back({solvers[i].eigenvalues()(k), {i, k}});
    std::sort(eigs.begin(), eigs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const double scale = std::max(1.0, g.op_norm());
    const double cluster_tol = 1e-7 * scale;
    std::vector<Cluster> clusters;
    for (const auto& [val, idx] : eigs) {
      if (clusters.empty() || std::abs(val - clusters.back().value) > cluster_tol) {
        clusters.push_back({val, AlgebraElement::zero(sub.parent)});
      }
      const auto [bi, ki] = idx;
      const Vector v = solvers[bi].eigenvectors().col(ki);
      clusters.back().proj.blocks[bi] += v * v.adjoint();
      clusters.back().value = val;  // representative
    }
    std::vector<AlgebraElement> projs;
    for (auto& c : clusters)
      if (std::abs(c.value) > 1e-7 * scale) projs.push_back(std::move(c.proj));

    if (static_cast<int>(projs.size()) != m) continue;  // degenerate draw, retry
    // validate: each is a projection inside the center span, they are
    // orthogonal, and they sum to the unit
    bool ok = true;
    AlgebraElement sum = AlgebraElement::zero(sub.parent);
    for (const auto& p : projs) {
      if (!is_projection(p, 1e-7).ok || distance_to_span(z.basis, p) > 1e-6) ok = false;
      sum += p;
    }
    if ((sum - sub.unit).op_norm() > 1e-7) ok = false;
    if (!ok) continue;

    // deterministic order: by block of first support, then diagonal pattern
    std::sort(projs.begin(), projs.end(), [](const AlgebraElement& a, const AlgebraElement& b) {
      const Vector va = coords(a), vb = coords(b);
      for (int k = 0; k < va.size(); ++k) {
        const double da = va(k).real(), db = vb(k).real();
        if (std::abs(da - db) > 1e-7) return da > db;
      }
      return false;
    });
    return projs;
  }
  throw DegenerateBasis("minimal central projections: could not separate summands");
}

}  // namespace nclp
