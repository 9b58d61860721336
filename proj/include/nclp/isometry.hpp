#pragma once

#include "nclp/modular.hpp"
#include "nclp/projections.hpp"

namespace nclp {

// A linear map between L^p spaces, dense over the trace-orthonormal bases.
struct LpMap {
  Superop op;
  double p = 2.0;

  AlgebraElement apply(const AlgebraElement& x) const { return op.apply(x); }
};

// Classification data T(x) = w B J(x): partial isometry w with w^*w = J(1),
// positive B commuting with the image, s(B) = J(1), and the trace condition
// tau1(x) = tau2(B^p J(x)).
struct YeadonTriple {
  AlgebraElement w;
  AlgebraElement B;
  JordanMono jordan;
  double p = 1.0;
};

// Classification data T(phi^{1/p}) = w (phi o J^{-1} o P)^{1/p}.
struct TypicalTriple {
  AlgebraElement w;
  JordanMono jordan;
  PositiveProjection projection;
  double p = 1.0;
};

struct TripleReport {
  double w_partial_isometry = 0.0;
  double w_initial_projection = 0.0;  // ||w^*w - J(1)||
  double b_positive = 0.0;
  double b_support = 0.0;             // ||s(B) - J(1)||
  double b_commutes = 0.0;
  double trace_condition = 0.0;
  bool passed(double tol = 1e-8) const;
};
TripleReport verify_yeadon_triple(const YeadonTriple& t, double tol = default_tol());

// Throws InvalidTriple when the data fail their invariants.
LpMap construct_yeadon(const YeadonTriple& t, double tol = default_tol());
LpMap construct_typical(const TypicalTriple& t, double tol = default_tol());

struct IsometryReport {
  double max_rel_deviation = 0.0;
  bool positive_on_cone = false;
  double cone_residual = 0.0;
};
// Statistical isometry verification plus a structured deterministic suite
// (all matrix units, all sums and differences of two units, positives,
// partial isometries, orthogonal sums).
IsometryReport verify_isometry(const LpMap& t, int trials = 256, std::uint64_t seed = 1);

// Yeadon-form extraction: w and B from the polar parts of T(1), then
// J(x) = B^+ w^* T(x).  Throws NotIsometry when the input does not verify,
// DecompositionFailure when the extracted action is not a Jordan
// *-monomorphism (numerically isometric but not structurally; at finite
// dimension this signals a numerical artifact or p = 2, never a genuine
// counterexample).
YeadonTriple decompose_isometry(const LpMap& t, double tol = default_tol());

// Independent L^1 route: w from the polar part over a faithful positive,
// J from the support map on spectral projections, P = J o T^*.
TypicalTriple decompose_l1(const LpMap& t, double tol = default_tol());

TypicalTriple yeadon_to_typical(const YeadonTriple& y, double tol = default_tol());
YeadonTriple typical_to_yeadon(const TypicalTriple& t, double tol = default_tol());

// Isometric embedding from a conditional expectation (multiplicative
// range): phi^{1/p} -> (phi o E)^{1/p}.  The domain is the standard form of
// the range, returned together with the inclusion.
struct CEEmbedding {
  LpMap map;
  StandardForm domain;
};
CEEmbedding embed_via_ce(const ConditionalExpectation& e, double p, double tol = default_tol());

// Surjective isometry from a *-antiautomorphism: x phi^{1/p} ->
// (phi o alpha^{-1})^{1/p} alpha(x), built from the given reference state
// (any faithful state yields the same map).
LpMap isometry_from_antiiso(const JordanMono& alpha, double p,
                            const StateDensity* reference = nullptr,
                            double tol = default_tol());

// Interpolation-style symmetric embedding phi^{1/2p} x phi^{1/2p} ->
// psi^{1/2p} J(x) psi^{1/2p} with psi = phi o J^{-1} o P, plus the
// companion norm-one left inverse.
struct SymmetricEmbedding {
  LpMap embed;
  LpMap project;
};
SymmetricEmbedding symmetric_embedding(const JordanMono& j, const PositiveProjection& p,
                                       const StateDensity& phi, double exponent,
                                       double tol = default_tol());

struct UniquenessReport {
  bool unique = true;
  double w_deviation = 0.0;
  double jordan_deviation = 0.0;      // superoperator distance
  double projection_deviation = 0.0;  // superoperator distance
};
// Decompose, reconstruct, decompose again; the two triples must agree.
UniquenessReport uniqueness_roundtrip(const LpMap& t, double tol = default_tol());

}  // namespace nclp
