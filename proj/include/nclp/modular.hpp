#pragma once

#include <optional>

#include "nclp/jordan.hpp"
#include "nclp/lp.hpp"
#include "nclp/projections.hpp"

namespace nclp {

// Finite-dimensional modular data for a faithful state: the density is
// strictly positive definite (throws NotFaithful otherwise) and the block
// eigendecompositions are cached.
class ModularContext {
 public:
  ModularContext(AlgebraDescriptor alg, StateDensity phi, double tol = default_tol());

  const AlgebraDescriptor& algebra() const { return algebra_; }
  const StateDensity& state() const { return phi_; }

  // sigma_t(x) = d^{it} x d^{-it}
  AlgebraElement modular_auto(double t, const AlgebraElement& x) const;
  // rho_t = (sigma_t + sigma_{-t}) / 2
  AlgebraElement cosine_family(double t, const AlgebraElement& x) const;
  // Closed form of the sech-weighted average of sigma_t: entry (j,k) in the
  // eigenbasis of d picks up 2 sqrt(d_j d_k) / (d_j + d_k).
  AlgebraElement phi_transform(const AlgebraElement& x) const;
  // tau(d^{1/4} a^* d^{1/2} b d^{1/4}); positive sesquilinear,
  // conjugate-linear in a.
  Complex self_polar_form(const AlgebraElement& a, const AlgebraElement& b) const;

 private:
  AlgebraDescriptor algebra_;
  StateDensity phi_;
  std::vector<Matrix> vecs_;           // eigenvectors per block
  std::vector<Eigen::VectorXd> vals_;  // eigenvalues per block
};

// Independent quadrature routes for the two closed forms above (adaptive
// Simpson on |t| <= 20; sech(pi t) is below 1e-27 beyond that).
AlgebraElement phi_transform_quadrature(const ModularContext& ctx, const AlgebraElement& x,
                                        double target = 1e-8);
Complex self_polar_quadrature(const ModularContext& ctx, const AlgebraElement& a,
                              const AlgebraElement& b, double target = 1e-8);

// Connes cocycle (D phi : D psi)_t = d_phi^{it} d_psi^{-it}.
AlgebraElement connes_cocycle(const StateDensity& phi, const StateDensity& psi, double t,
                              double tol = default_tol());

struct AnticocycleReport {
  double cocycle_residual = 0.0;  // (D(psi a^-1) : D(phi a^-1))_t vs a((Dphi:Dpsi)_{-t})
  double modaut_residual = 0.0;   // sigma_t^{phi a^-1} vs a sigma_{-t}^phi a^-1
};
AnticocycleReport check_anticocycle(const JordanMono& alpha, const StateDensity& phi,
                                    const StateDensity& psi, double t,
                                    double tol = default_tol());

// Pullback density of x -> phi(L(x)) for a linear map L given as superop.
StateDensity pullback_state(const Superop& op, const StateDensity& phi);

struct HSReport {
  double cond2_residual = 0.0;  // self-polar forms agree on the image
  double cond3_residual = 0.0;  // cosine families agree on the image
  bool conditions_hold = false;
  // The projection solved from the self-polar identity, whenever the Gram
  // system is regular, along with its verification residuals.
  std::optional<PositiveProjection> projection;
  double state_match_residual = 0.0;  // psi = theta o P
  double projection_law_residual = 0.0;  // idempotent + fixes the image
  double positivity_residual = 0.0;
};
// Haagerup-Stormer compatibility of a faithful state with a Jordan image;
// solves for the compatible projection and reports whether it is valid.
HSReport check_hs_conditions(const JordanMono& j, const StateDensity& psi,
                             double decision_tol = 1e-7, double tol = default_tol());

// max_t ||sigma^phi_t(a) - a|| over the basis of A, t in {0.3, 1, pi}.
double check_centralizer(const StateDensity& phi, const SubalgebraBasis& a,
                         double tol = default_tol());

}  // namespace nclp
