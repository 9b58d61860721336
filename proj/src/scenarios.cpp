#include "nclp/scenarios.hpp"

namespace nclp::scenarios {

JordanMono m2_to_m4() {
  return JordanMono(AlgebraDescriptor::full(2), AlgebraDescriptor::full(4),
                    {{0, 0, 0, SlotMode::Mult}, {0, 0, 2, SlotMode::Anti}});
}

JordanMono random_mixed_jordan(CounterRng& rng) {
  if (rng.uniform() < 0.5) {
    JordanMono j = m2_to_m4();
    j.conjugator = random_unitary(j.target, rng);
    return j;
  }
  const auto src = AlgebraDescriptor::full(2, rng.uniform(0.5, 2.0));
  const auto dst = AlgebraDescriptor({2, 2}, {rng.uniform(0.5, 2.0), 1.0});
  JordanMono j(src, dst, {{0, 0, 0, SlotMode::Mult}, {0, 1, 0, SlotMode::Anti}});
  j.conjugator = random_unitary(dst, rng);
  return j;
}

AlgebraElement random_partial_isometry(const AlgebraElement& q, CounterRng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    const AlgebraElement g = random_element(q.algebra, rng) * q;
    const PolarDecomposition pd = polar(g);
    if ((pd.isometry.adjoint() * pd.isometry - q).op_norm() < 1e-9) return pd.isometry;
  }
  return q;
}

ConditionalExpectation random_ce_onto_image(const JordanMono& j, CounterRng& rng) {
  std::vector<AlgebraElement> jimg;
  for (const auto& b : matrix_unit_basis(j.source)) jimg.push_back(j.apply(b));
  const SubalgebraBasis rel = commutant(j.target, jimg);
  AlgebraElement g = AlgebraElement::zero(j.target);
  for (const auto& b : rel.basis) {
    const Complex c = rng.cnormal();
    g += c * b + std::conj(c) * b.adjoint();
  }
  AlgebraElement d = g * g + 0.2 * AlgebraElement::identity(j.target);
  const SubalgebraBasis img = image_bicommutant(j);
  const AlgebraElement q = j.unit();
  AlgebraElement dq = q * d * q;
  dq *= Complex(1.0 / dq.trace().real(), 0);
  return state_ce(img, StateDensity{dq});
}

AlgebraElement random_lambda(const JordanMono& j, CounterRng& rng) {
  const AlgebraElement zm = j.mult_support(), za = j.anti_support();
  AlgebraElement lam = AlgebraElement::zero(j.source);
  for (int i = 0; i < j.source.num_blocks(); ++i) {
    const bool mult = zm.blocks[i].trace().real() > 0.5;
    const bool anti = za.blocks[i].trace().real() > 0.5;
    const double v = (mult && anti) ? rng.uniform(0.15, 0.85) : (mult ? 1.0 : 0.0);
    lam.blocks[i] = v * Matrix::Identity(j.source.block_dims[i], j.source.block_dims[i]);
  }
  return lam;
}

YeadonTriple random_yeadon(const JordanMono& j, double p, CounterRng& rng) {
  std::vector<AlgebraElement> jimg;
  for (const auto& b : matrix_unit_basis(j.source)) jimg.push_back(j.apply(b));
  const SubalgebraBasis rel = commutant(j.target, jimg);
  const AlgebraElement q = j.unit();
  AlgebraElement g = AlgebraElement::zero(j.target);
  for (const auto& b : rel.basis) {
    const Complex c = rng.cnormal();
    g += c * b + std::conj(c) * b.adjoint();
  }
  AlgebraElement e0 = q * (g * g) * q + 0.15 * q;  // PD on the corner, commutes with the image

  // central correction m with tau2(e0 J(x)) = tau1(m x); replacing e0 by
  // e0 J(m^{-1}) makes the trace condition exact
  const AlgebraElement m = functional_density(
      j.source, [&](const AlgebraElement& x) { return e0.pairing(j.apply(x)); });
  AlgebraElement m_inv = m;
  for (int i = 0; i < j.source.num_blocks(); ++i) {
    const Complex mean = m.blocks[i].trace() / static_cast<double>(j.source.block_dims[i]);
    m_inv.blocks[i] =
        (1.0 / mean.real()) * Matrix::Identity(j.source.block_dims[i], j.source.block_dims[i]);
  }
  const AlgebraElement b = fc_power(e0 * j.apply(m_inv), 1.0 / p);
  return YeadonTriple{random_partial_isometry(q, rng), b, j, p};
}

LpPair clarkson_pair(const AlgebraDescriptor& alg, CounterRng& rng, double overlap) {
  AlgebraElement xi = AlgebraElement::zero(alg), eta0 = AlgebraElement::zero(alg);
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const int n = alg.block_dims[i];
    const int cut = (n >= 2) ? 1 + rng.uniform_int(0, n - 2) : (rng.uniform_int(0, 1) ? 0 : n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (r < cut && c < cut) xi.blocks[i](r, c) = rng.cnormal();
        if (r >= cut && c >= cut) eta0.blocks[i](r, c) = rng.cnormal();
      }
  }
  const double nx = xi.norm2(), ny = eta0.norm2();
  if (nx > 1e-9) xi *= Complex(1.0 / nx, 0);
  if (ny > 1e-9) eta0 *= Complex(1.0 / ny, 0);
  const AlgebraElement u = random_unitary(alg, rng), v = random_unitary(alg, rng);
  LpPair out;
  out.xi = u * xi * v;
  out.eta = u * eta0 * v + overlap * out.xi;
  return out;
}

}  // namespace nclp::scenarios
