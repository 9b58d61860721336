#pragma once

#include "nclp/isometry.hpp"

// Deterministic generators for verification campaigns: random classification
// data that satisfy their invariants by construction, and Clarkson pairs
// with prescribed support overlap.
namespace nclp::scenarios {

// J: M_2 -> M_4, x |-> diag(x, x^t), the smallest mixed Jordan image.
JordanMono m2_to_m4();

// Mixed-mode Jordan monomorphism over a randomly drawn small shape,
// conjugated by a random unitary.
JordanMono random_mixed_jordan(CounterRng& rng);

// Random partial isometry with w^* w = q.
AlgebraElement random_partial_isometry(const AlgebraElement& q, CounterRng& rng);

// Conditional expectation onto the image bicommutant preserving a random
// faithful state drawn from the relative commutant.
ConditionalExpectation random_ce_onto_image(const JordanMono& j, CounterRng& rng);

// Admissible central lambda: 1 on mult-only blocks, 0 on anti-only ones,
// interior on two-sided ones.
AlgebraElement random_lambda(const JordanMono& j, CounterRng& rng);

// Valid Yeadon data over j: commuting faithful corner density, rescaled by
// the central correction so the trace condition holds exactly.
YeadonTriple random_yeadon(const JordanMono& j, double p, CounterRng& rng);

// xi and eta0 live on complementary diagonal corners (exactly orthogonal),
// rotated by a common pair of algebra unitaries; eta = eta0 + overlap * xi.
struct LpPair {
  AlgebraElement xi, eta;
};
LpPair clarkson_pair(const AlgebraDescriptor& alg, CounterRng& rng, double overlap);

}  // namespace nclp::scenarios
