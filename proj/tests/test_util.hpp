#pragma once

#include "nclp/scenarios.hpp"

namespace nclp::test {

using scenarios::m2_to_m4;
using scenarios::random_ce_onto_image;
using scenarios::random_lambda;
using scenarios::random_yeadon;

inline AlgebraElement diag(const AlgebraDescriptor& alg, const std::vector<double>& entries) {
  AlgebraElement x = AlgebraElement::zero(alg);
  size_t k = 0;
  for (auto& b : x.blocks)
    for (int r = 0; r < b.rows(); ++r) b(r, r) = entries.at(k++);
  return x;
}

inline AlgebraElement unit(const AlgebraDescriptor& alg, int block, int r, int c) {
  AlgebraElement x = AlgebraElement::zero(alg);
  x.blocks[block](r, c) = 1.0;
  return x;
}

inline AlgebraElement random_w(const AlgebraElement& q, CounterRng& rng) {
  return scenarios::random_partial_isometry(q, rng);
}

}  // namespace nclp::test
