#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nclp/errors.hpp"
#include "nclp/rng.hpp"
#include "nclp/tol.hpp"

namespace nclp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A finite-dimensional von Neumann algebra: a direct sum of full matrix
// blocks M_{n_i} carrying the weighted trace  tau(x) = sum_i t_i Tr(x_i).
struct AlgebraDescriptor {
  std::vector<int> block_dims;
  std::vector<double> trace_weights;

  AlgebraDescriptor() = default;
  AlgebraDescriptor(std::vector<int> dims, std::vector<double> weights);

  static AlgebraDescriptor full(int n, double weight = 1.0);
  static AlgebraDescriptor direct_sum(const std::vector<AlgebraDescriptor>& parts);

  int num_blocks() const { return static_cast<int>(block_dims.size()); }
  int coord_dim() const;  // sum of n_i^2
  void validate() const;  // throws std::invalid_argument

  bool operator==(const AlgebraDescriptor& o) const {
    return block_dims == o.block_dims && trace_weights == o.trace_weights;
  }
};

// Element of such an algebra: one dense complex matrix per block.
class AlgebraElement {
 public:
  AlgebraDescriptor algebra;
  std::vector<Matrix> blocks;

  AlgebraElement() = default;
  AlgebraElement(AlgebraDescriptor alg, std::vector<Matrix> blks);

  static AlgebraElement zero(const AlgebraDescriptor& alg);
  static AlgebraElement identity(const AlgebraDescriptor& alg);

  AlgebraElement adjoint() const;
  AlgebraElement block_transpose() const;  // entrywise transpose per block
  Complex trace() const;                   // weighted trace tau
  Complex inner(const AlgebraElement& rhs) const;  // tau(this^* rhs)
  Complex pairing(const AlgebraElement& rhs) const;  // tau(this * rhs), bilinear
  double norm2() const;    // sqrt(tau(x^* x)), the weighted L^2 norm
  double op_norm() const;  // largest singular value over blocks
  bool same_shape(const AlgebraElement& o) const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(Complex s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= Complex(s, 0); }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Complex(-1, 0); }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
};

// --- trace-orthonormal coordinates ------------------------------------
//
// coords() maps an element to C^D isometrically for the weighted inner
// product tau(a^* b): block-major, row-major within a block, entry
// (i, r, c) carrying sqrt(t_i) x_i(r, c).

Vector coords(const AlgebraElement& x);
AlgebraElement from_coords(const AlgebraDescriptor& alg, const Vector& v);
std::vector<AlgebraElement> matrix_unit_basis(const AlgebraDescriptor& alg);
std::vector<AlgebraElement> hermitian_basis(const AlgebraDescriptor& alg);

// Permutation p with coords(x)[p[k]] = coords of the (i, c, r) entry;
// realizes the bilinear pairing tau(xy) = coords(x)^T S coords(y).
std::vector<int> transpose_permutation(const AlgebraDescriptor& alg);

// Density e of a linear functional f w.r.t. tau:  f(x) = tau(e x) for all x.
AlgebraElement functional_density(const AlgebraDescriptor& alg,
                                  const std::function<Complex(const AlgebraElement&)>& f);

// --- predicates (all report margins) -----------------------------------

CheckResult is_hermitian(const AlgebraElement& x, double tol = default_tol());
CheckResult is_positive(const AlgebraElement& x, double tol = default_tol());
CheckResult is_projection(const AlgebraElement& x, double tol = default_tol());
CheckResult is_partial_isometry(const AlgebraElement& x, double tol = default_tol());
double min_eigenvalue(const AlgebraElement& hermitian);

// --- functional calculus, polar, supports ------------------------------

enum class ScalarFn { Power, AbsPart };

// Spectral functional calculus on (near-)Hermitian input.  Power requires
// the spectrum to be >= -tol (throws NotPositive otherwise) and maps
// eigenvalues below the rank cutoff to 0, so f(0) = 0 is exact.
AlgebraElement functional_calculus(const AlgebraElement& x, ScalarFn fn,
                                   double alpha = 1.0, double tol = default_tol());
AlgebraElement fc_power(const AlgebraElement& x, double alpha, double tol = default_tol());

// lambda^alpha on the support, 0 on the kernel; alpha may be negative.
AlgebraElement support_power(const AlgebraElement& psd, double alpha,
                             double tol = default_tol());

struct PolarDecomposition {
  AlgebraElement isometry;  // partial isometry w with w^* w = support(|x|)
  AlgebraElement positive;  // |x| = (x^* x)^{1/2}
};
PolarDecomposition polar(const AlgebraElement& x, double tol = default_tol());

struct SupportPair {
  AlgebraElement left, right;
};
SupportPair supports(const AlgebraElement& x, double tol = default_tol());
AlgebraElement support_projection(const AlgebraElement& psd, double tol = default_tol());

// d^{it} as a unitary on the support of d (identity off the support).
AlgebraElement modular_phase(const AlgebraElement& psd, double t, double tol = default_tol());

// --- random generation --------------------------------------------------

AlgebraElement random_element(const AlgebraDescriptor& alg, CounterRng& rng);
AlgebraElement random_hermitian(const AlgebraDescriptor& alg, CounterRng& rng);
AlgebraElement random_psd(const AlgebraDescriptor& alg, CounterRng& rng);
// Normalized strictly positive density: tau(d) = 1, d >= floor > 0.
AlgebraElement random_density(const AlgebraDescriptor& alg, CounterRng& rng,
                              double floor = 0.05);
AlgebraElement random_unitary(const AlgebraDescriptor& alg, CounterRng& rng);
// Projection with the given rank in each block (rank picked at random when
// ranks is empty).
AlgebraElement random_projection(const AlgebraDescriptor& alg, CounterRng& rng,
                                 std::vector<int> ranks = {});

// --- subalgebras ---------------------------------------------------------

// A *-subalgebra given by a trace-orthonormal basis of its linear span.
struct SubalgebraBasis {
  AlgebraDescriptor parent;
  std::vector<AlgebraElement> basis;
  AlgebraElement unit;

  int dim() const { return static_cast<int>(basis.size()); }
};

// Residual of closure under products and adjoints plus orthonormality.
CheckResult subalgebra_closure_check(const SubalgebraBasis& sub, double tol = default_tol());

AlgebraElement project_onto_span(const std::vector<AlgebraElement>& basis,
                                 const AlgebraElement& x);
double distance_to_span(const std::vector<AlgebraElement>& basis, const AlgebraElement& x);

// Commutant of S (together with S^*) inside the algebra; always unital.
// Throws DegenerateBasis when a rank decision falls inside the tolerance band.
SubalgebraBasis commutant(const AlgebraDescriptor& alg,
                          std::span<const AlgebraElement> gens,
                          double tol = default_tol());
SubalgebraBasis bicommutant(const AlgebraDescriptor& alg,
                            std::span<const AlgebraElement> gens,
                            double tol = default_tol());

// *-algebra generated by gens (span closure under products and adjoints).
// With include_parent_unit the identity of the parent is adjoined;
// otherwise the unit is the support of the generated algebra itself.
SubalgebraBasis generated_algebra(const AlgebraDescriptor& alg,
                                  std::span<const AlgebraElement> gens,
                                  bool include_parent_unit = false,
                                  double tol = default_tol());

SubalgebraBasis center_of(const SubalgebraBasis& sub, double tol = default_tol());
std::vector<AlgebraElement> minimal_central_projections(const SubalgebraBasis& sub,
                                                        double tol = default_tol());

}  // namespace nclp
