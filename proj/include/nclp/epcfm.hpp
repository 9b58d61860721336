#pragma once

#include <array>
#include <functional>
#include <map>

#include "nclp/lp.hpp"

namespace nclp {

// Nonnegative function on the positive L^p cone, evaluated on the matrix
// representative h = phi^{1/p}.
using ConeFunctional = std::function<double(const AlgebraElement&)>;

using Vec3 = std::array<double, 3>;

// Continuous finite measure on L^p(M_2)_+ built from a function on the
// Bloch sphere satisfying f(n) + f(-n) = c: f = c/2 + u with u odd.
struct BlochCFM {
  double c = 1.0;
  // odd polynomial u in (n_x, n_y, n_z): exponent triple -> coefficient,
  // every total degree odd
  std::map<std::array<int, 3>, double> odd_poly;
  double p = 1.0;

  void validate() const;  // throws std::invalid_argument / NotPositive
  double f(const Vec3& n) const;       // c/2 + u(n)
  double u(const Vec3& n) const;
  double sup_abs_u() const;            // max over a dense deterministic grid
  ConeFunctional evaluator() const;
};

// Bloch vector of a 2x2 projection q = (1 + n.sigma)/2 and back.
Vec3 bloch_vector(const Matrix& rank_one_projection);
Matrix bloch_projection(const Vec3& n);

// rho(h) = alpha f(n) + beta f(-n) for h = alpha q + beta q^perp; at a
// degenerate spectrum the value alpha c is basis-independent.
double cfm_eval(const BlochCFM& rho, const AlgebraElement& h);

struct CFMAxiomsReport {
  double homogeneity = 0.0;
  double orthogonal_additivity = 0.0;
  double boundedness_estimate = 0.0;  // sup rho(h)/||h||_p seen
  double boundedness_residual = 0.0;  // excess over the supplied bound, if any
  double continuity = 0.0;
  bool passed(double tol = 1e-8) const;
};
// Samples scalars, orthogonal pairs and convergent sequences (including
// spectrum-degenerating paths).  bound_hint, when nonnegative, is a proven
// upper bound for ||rho|| used to turn the estimate into a residual.
CFMAxiomsReport cfm_check_axioms(const AlgebraDescriptor& alg, const ConeFunctional& rho,
                                 double p, int trials, std::uint64_t seed,
                                 double bound_hint = -1.0);
CFMAxiomsReport cfm_check_axioms(const BlochCFM& rho, int trials, std::uint64_t seed);

// Theoretical norm bound for a Bloch c.f.m. (used as the boundedness hint).
double bloch_norm_bound(const BlochCFM& rho, const AlgebraDescriptor& alg);

struct NonlinearityWitness {
  AlgebraElement h1, h2;
  double gap = 0.0;
};
// Max additivity gap over pairs of rank-one projections on a 32 x 16 sphere
// grid (the derived closed-form witness pair is always included); throws
// NoWitnessFound when every gap is below the threshold.
NonlinearityWitness nonlinearity_witness(const BlochCFM& rho, double p,
                                         double threshold = 1e-8, bool parallel = true);

// Linear c.f.m. from a positive L^q element: rho(xi) = tau(xi eta).
ConeFunctional cfm_from_functional(const AlgebraElement& eta);

struct LinearFit {
  AlgebraElement density;  // Hermitian eta with rho(h) ~ tau(h eta)
  double residual = 0.0;   // rms misfit over the standard grid
};
// Least-squares fit of an L^q density to rho on the deterministic standard
// grid; a near-zero residual certifies a linear extension, a residual
// bounded away from zero certifies a non-extendable c.f.m.
LinearFit fit_linear(const AlgebraDescriptor& alg, const ConeFunctional& rho, double p);

// The standard grid itself (unit p-norm positives, deterministic).
std::vector<AlgebraElement> fit_grid(const AlgebraDescriptor& alg, double p);

}  // namespace nclp
