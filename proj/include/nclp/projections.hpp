#pragma once

#include <optional>

#include "nclp/jordan.hpp"
#include "nclp/lp.hpp"
#include "nclp/superop.hpp"

namespace nclp {

// Normal conditional expectation onto a *-subalgebra.  The support
// convention is s(E) = E(1) = unit of the range; when the range is a
// proper corner, state preservation is meant on that corner.
struct ConditionalExpectation {
  AlgebraDescriptor parent;
  SubalgebraBasis range;
  Superop op;
  std::optional<StateDensity> preserved_state;

  AlgebraElement apply(const AlgebraElement& x) const { return op.apply(x); }
};

struct CEReport {
  double idempotence = 0.0;
  double unit_law = 0.0;       // ||E(1) - range unit||
  double bimodule = 0.0;       // E(n1 m n2) = n1 E(m) n2 over range basis
  double positivity = 0.0;     // most negative eigenvalue seen on PSD inputs
  double state_preservation = 0.0;  // phi(E(y)) vs phi(qyq), when a state is attached
  bool passed(double tol = 1e-9) const;
};
CEReport verify_conditional_expectation(const ConditionalExpectation& e, int trials = 64,
                                        std::uint64_t seed = 7);

// Normal positive projection from the parent onto a Jordan image J(M1),
// with s(P) = P(1) = J(1).
struct PositiveProjection {
  AlgebraDescriptor parent;
  JordanMono jordan;
  Superop op;

  AlgebraElement apply(const AlgebraElement& y) const { return op.apply(y); }
};

// Central symmetrization data: lambda lives in the center of the source,
// 0 <= lambda <= 1, equal to 1 on mult-only summands, 0 on anti-only ones,
// and nonsingular (both lambda and 1-lambda) where both parts live.
struct Symmetrizer {
  JordanMono jordan;
  AlgebraElement lambda;
};

struct LambdaMargins {
  double central_residual = 0.0;
  double range_residual = 0.0;      // distance of the spectrum from [0,1]
  double min_margin_overlap = 0.0;  // min eig of lambda and 1-lambda on two-sided summands
  double mult_only_residual = 0.0;  // ||lambda - 1|| there
  double anti_only_residual = 0.0;  // ||lambda|| there
};
LambdaMargins lambda_margins(const Symmetrizer& s, double tol = default_tol());

// tau-preserving conditional expectation: orthogonal projection onto the
// range span for the weighted trace inner product.
ConditionalExpectation trace_ce(const SubalgebraBasis& range, double tol = default_tol());

// phi-preserving conditional expectation solved from phi(n E(y)) = phi(n y).
// Requires s(phi) = unit of the range and modular invariance of the range
// (throws NotInvariant with the observed residual otherwise).
ConditionalExpectation state_ce(const SubalgebraBasis& range, const StateDensity& phi,
                                double tol = default_tol());

// S_lambda on the image bicommutant: pi(x) (+) pi'(y) -> J(lambda x + (1-lambda) y).
AlgebraElement symmetrize(const Symmetrizer& s, const AlgebraElement& y,
                          double tol = default_tol());
Superop symmetrizer_superop(const Symmetrizer& s, double tol = default_tol());

// P = S_lambda after F, where F is a conditional expectation onto J(M1)''.
PositiveProjection build_positive_projection(const JordanMono& j, const ConditionalExpectation& f,
                                             const AlgebraElement& lambda,
                                             double tol = default_tol());

// Recovers (F, lambda) from a positive projection; the rebuilt projection
// must reproduce the input (ReconstructionMismatch otherwise).
struct ProjectionFactorization {
  ConditionalExpectation expectation;
  AlgebraElement lambda;
};
ProjectionFactorization factor_projection(const PositiveProjection& p, double tol = default_tol());

struct StormerReport {
  double norm_one = 0.0;            // excess of sup ||P(x)|| over the unit ball
  double jordan_bimodule = 0.0;     // P(J(x) o y) = J(x) o P(y)
  double sandwich = 0.0;            // P(J(x) y J(x)) = J(x) P(y) J(x)
  double relative_commutant = 0.0;  // P maps J(M1)' into J(Z(M1))
  bool passed(double tol = 1e-9) const;
};
StormerReport check_stormer(const PositiveProjection& p, int trials = 64, std::uint64_t seed = 11);

// Compressions E_alpha(x) = q x q along an increasing chain of projections
// reaching 1; reports the L^1 distances theta o E_alpha -> theta and the
// operator-norm distances E_alpha(x) -> x for sampled theta, x.
struct PavingReport {
  // [sample][step]
  std::vector<std::vector<double>> state_distances;
  std::vector<std::vector<double>> element_distances;
  bool state_nonincreasing = true;
  bool element_nonincreasing = true;
  double terminal_state_distance = 0.0;
  double terminal_element_distance = 0.0;
};
PavingReport paving_demo(const AlgebraDescriptor& alg, const std::vector<AlgebraElement>& chain,
                         int samples = 8, std::uint64_t seed = 5, double tol = default_tol());

}  // namespace nclp
