#include "nclp/projections.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace nclp {

namespace {

AlgebraElement jprod(const AlgebraElement& a, const AlgebraElement& b) {
  return 0.5 * (a * b + b * a);
}

}  // namespace

// ---------------------------------------------------------------------------
// conditional expectations

bool CEReport::passed(double tol) const {
  return idempotence <= tol && unit_law <= tol && bimodule <= tol && positivity <= tol &&
         state_preservation <= tol;
}

CEReport verify_conditional_expectation(const ConditionalExpectation& e, int trials,
                                        std::uint64_t seed) {
  CEReport rep;
  rep.idempotence = (e.op * e.op - e.op).op_norm();
  rep.unit_law = (e.apply(AlgebraElement::identity(e.parent)) - e.range.unit).op_norm();
  {
    CounterRng rng(seed, "ce-bimodule");
    const AlgebraElement m = random_element(e.parent, rng);
    const AlgebraElement em = e.apply(m);
    for (const auto& n1 : e.range.basis)
      for (const auto& n2 : e.range.basis) {
        const AlgebraElement lhs = e.apply(n1 * m * n2);
        const AlgebraElement rhs = n1 * em * n2;
        rep.bimodule = std::max(rep.bimodule, (lhs - rhs).op_norm() / std::max(1.0, m.op_norm()));
      }
  }
  for (int k = 0; k < trials; ++k) {
    CounterRng rng(seed, "ce-positivity", k);
    const AlgebraElement h = random_psd(e.parent, rng);
    const double lo = min_eigenvalue(e.apply(h));
    rep.positivity = std::max(rep.positivity, std::max(0.0, -lo) / std::max(1.0, h.op_norm()));
  }
  if (e.preserved_state) {
    const AlgebraElement& q = e.range.unit;
    for (int k = 0; k < trials; ++k) {
      CounterRng rng(seed, "ce-state", k);
      const AlgebraElement y = random_element(e.parent, rng);
      const Complex lhs = e.preserved_state->d.pairing(e.apply(y));
      const Complex rhs = e.preserved_state->d.pairing(q * y * q);
      rep.state_preservation =
          std::max(rep.state_preservation, std::abs(lhs - rhs) / std::max(1.0, y.op_norm()));
    }
  }
  return rep;
}

ConditionalExpectation trace_ce(const SubalgebraBasis& range, double tol) {
  const auto closure = subalgebra_closure_check(range, tol);
  if (!closure.ok)
    throw NotSubalgebra("trace_ce: range is not a *-subalgebra (residual " +
                        std::to_string(closure.residual) + ")");
  ConditionalExpectation e;
  e.parent = range.parent;
  e.range = range;
  Matrix q(range.parent.coord_dim(), range.dim());
  for (int j = 0; j < range.dim(); ++j) q.col(j) = coords(range.basis[j]);
  e.op = Superop(range.parent, range.parent, q * q.adjoint());
  const double unit_gap = (range.unit - AlgebraElement::identity(range.parent)).op_norm();
  if (unit_gap <= scaled_tol(tol, 1.0)) {
    const double total = AlgebraElement::identity(range.parent).trace().real();
    StateDensity tau{AlgebraElement::identity(range.parent)};
    tau.d *= Complex(1.0 / total, 0.0);
    e.preserved_state = tau;
  }
  return e;
}

ConditionalExpectation state_ce(const SubalgebraBasis& range, const StateDensity& phi,
                                double tol) {
  const auto closure = subalgebra_closure_check(range, tol);
  if (!closure.ok)
    throw NotSubalgebra("state_ce: range is not a *-subalgebra (residual " +
                        std::to_string(closure.residual) + ")");
  const auto pos = is_positive(phi.d, tol);
  if (!pos.ok) throw NotFaithful("state_ce: density is not PSD");
  const AlgebraElement s_phi = support_projection(phi.d, tol);
  if ((s_phi - range.unit).op_norm() > 1e-7)
    throw NotFaithful("state_ce: the state's support must equal the range unit");

  // Modular invariance of the range (Takesaki's obstruction): the phase
  // unitaries of the density must keep the range span invariant.
  double inv_res = 0.0;
  for (double t : {0.7, 1.31}) {
    const AlgebraElement u = modular_phase(phi.d, t, tol);
    const AlgebraElement ui = modular_phase(phi.d, -t, tol);
    for (const auto& b : range.basis)
      inv_res = std::max(inv_res, distance_to_span(range.basis, u * b * ui));
  }
  if (inv_res > 1e-7)
    throw NotInvariant("state_ce: range is not invariant under the modular flow (residual " +
                       std::to_string(inv_res) + ")");

  // Solve phi(n^* E(y)) = phi(n^* y) for E(y) in the range span.
  const int m = range.dim();
  Matrix gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      gram(a, b) = phi.d.pairing(range.basis[a].adjoint() * range.basis[b]);
  const Eigen::PartialPivLU<Matrix> lu(gram);
  const auto parent_basis = matrix_unit_basis(range.parent);
  Matrix mat(range.parent.coord_dim(), range.parent.coord_dim());
  for (size_t l = 0; l < parent_basis.size(); ++l) {
    Vector rhs(m);
    for (int a = 0; a < m; ++a)
      rhs(a) = phi.d.pairing(range.basis[a].adjoint() * parent_basis[l]);
    const Vector c = lu.solve(rhs);
    AlgebraElement img = AlgebraElement::zero(range.parent);
    for (int a = 0; a < m; ++a) img += c(a) * range.basis[a];
    mat.col(static_cast<int>(l)) = coords(img);
  }
  ConditionalExpectation e;
  e.parent = range.parent;
  e.range = range;
  e.op = Superop(range.parent, range.parent, std::move(mat));
  e.preserved_state = phi;

  const CEReport rep = verify_conditional_expectation(e);
  if (!rep.passed(1e-7)) {
    std::ostringstream os;
    os << "state_ce: solved map violates the expectation laws (idempotence " << rep.idempotence
       << ", bimodule " << rep.bimodule << ", positivity " << rep.positivity << ")";
    throw NotInvariant(os.str());
  }
  return e;
}

// ---------------------------------------------------------------------------
// symmetrization

LambdaMargins lambda_margins(const Symmetrizer& s, double tol) {
  (void)tol;
  LambdaMargins m;
  const AlgebraDescriptor& src = s.jordan.source;
  for (int i = 0; i < src.num_blocks(); ++i) {
    const int n = src.block_dims[i];
    const Complex mean = s.lambda.blocks[i].trace() / static_cast<double>(n);
    m.central_residual = std::max(
        m.central_residual, (s.lambda.blocks[i] - mean * Matrix::Identity(n, n)).norm());
  }
  const AlgebraElement zm = s.jordan.mult_support();
  const AlgebraElement za = s.jordan.anti_support();
  m.min_margin_overlap = 1.0;
  for (int i = 0; i < src.num_blocks(); ++i) {
    const double lam = s.lambda.blocks[i].trace().real() / src.block_dims[i];
    const bool mult = zm.blocks[i].trace().real() > 0.5;
    const bool anti = za.blocks[i].trace().real() > 0.5;
    m.range_residual = std::max(m.range_residual, std::max(-lam, lam - 1.0));
    if (mult && anti)
      m.min_margin_overlap = std::min({m.min_margin_overlap, lam, 1.0 - lam});
    else if (mult)
      m.mult_only_residual = std::max(m.mult_only_residual, std::abs(lam - 1.0));
    else
      m.anti_only_residual = std::max(m.anti_only_residual, std::abs(lam));
  }
  return m;
}

namespace {

struct JordanParts {
  AlgebraElement z_mult, z_anti;  // in the target
  Superop pi, pi_anti;            // x -> z J(x)
  Superop pi_pinv, pi_anti_pinv;
};

JordanParts split_parts(const JordanMono& j, double tol) {
  const StructureDecomposition sd = structure_decompose(j, tol);
  JordanParts parts;
  parts.z_mult = sd.z_mult;
  parts.z_anti = sd.z_anti;
  parts.pi = Superop::from_function(j.source, j.target, [&](const AlgebraElement& x) {
    return sd.z_mult * j.apply(x);
  });
  parts.pi_anti = Superop::from_function(j.source, j.target, [&](const AlgebraElement& x) {
    return sd.z_anti * j.apply(x);
  });
  parts.pi_pinv = parts.pi.pinv(tol);
  parts.pi_anti_pinv = parts.pi_anti.pinv(tol);
  return parts;
}

}  // namespace

Superop symmetrizer_superop(const Symmetrizer& s, double tol) {
  const JordanParts parts = split_parts(s.jordan, tol);
  const SubalgebraBasis img = image_bicommutant(s.jordan, tol);
  const AlgebraElement one_minus = AlgebraElement::identity(s.jordan.source) - s.lambda;
  return Superop::from_function(
      s.jordan.target, s.jordan.target, [&](const AlgebraElement& y) {
        const AlgebraElement a = parts.pi_pinv.apply(parts.z_mult * y);
        const AlgebraElement b = parts.pi_anti_pinv.apply(parts.z_anti * y);
        return s.jordan.apply(s.lambda * a + one_minus * b);
      });
}

AlgebraElement symmetrize(const Symmetrizer& s, const AlgebraElement& y, double tol) {
  const SubalgebraBasis img = image_bicommutant(s.jordan, tol);
  const double gap = distance_to_span(img.basis, y);
  if (gap > 1e-6 * std::max(1.0, y.op_norm()))
    throw OutsideBicommutant("symmetrize: input is " + std::to_string(gap) +
                             " away from the image bicommutant");
  return symmetrizer_superop(s, tol).apply(y);
}

// ---------------------------------------------------------------------------
// positive projections

PositiveProjection build_positive_projection(const JordanMono& j, const ConditionalExpectation& f,
                                             const AlgebraElement& lambda, double tol) {
  const SubalgebraBasis img = image_bicommutant(j, tol);
  double span_gap = 0.0;
  for (const auto& b : f.range.basis)
    span_gap = std::max(span_gap, distance_to_span(img.basis, b));
  for (const auto& b : img.basis)
    span_gap = std::max(span_gap, distance_to_span(f.range.basis, b));
  if (span_gap > 1e-7)
    throw InvalidTriple(
        "build_positive_projection: expectation does not range onto the image "
        "bicommutant (gap " +
        std::to_string(span_gap) + ")");
  const Symmetrizer s{j, lambda};
  const LambdaMargins m = lambda_margins(s, tol);
  if (m.central_residual > 1e-8 || m.range_residual > 1e-8 || m.mult_only_residual > 1e-8 ||
      m.anti_only_residual > 1e-8)
    throw InvalidTriple("build_positive_projection: lambda is not admissible");
  if (m.min_margin_overlap < 1e-8)
    throw SingularLambda(
        "build_positive_projection: lambda or 1-lambda singular on a two-sided summand "
        "(margin " +
        std::to_string(m.min_margin_overlap) + ")");
  PositiveProjection p;
  p.parent = j.target;
  p.jordan = j;
  p.op = symmetrizer_superop(s, tol) * f.op;
  return p;
}

ProjectionFactorization factor_projection(const PositiveProjection& p, double tol) {
  const JordanMono& j = p.jordan;
  const AlgebraDescriptor& src = j.source;
  const JordanParts parts = split_parts(j, tol);
  const Superop j_pinv = j.to_superop().pinv(tol);

  // lambda = J^{-1}(P(pi(1))), a central element of the source
  const AlgebraElement lam = j_pinv.apply(p.apply(parts.z_mult));
  const Symmetrizer sym{j, lam};
  const LambdaMargins m = lambda_margins(sym, tol);
  if (m.central_residual > 1e-7 || m.range_residual > 1e-7)
    throw ReconstructionMismatch("factor_projection: recovered lambda is not central in [0,1]");
  if (m.min_margin_overlap < 1e-8)
    throw SingularLambda(
        "factor_projection: lambda or 1-lambda singular on a two-sided summand (margin " +
        std::to_string(m.min_margin_overlap) + ")");

  std::vector<double> lam_scalar(src.num_blocks());
  for (int i = 0; i < src.num_blocks(); ++i)
    lam_scalar[i] = lam.blocks[i].trace().real() / src.block_dims[i];
  const AlgebraElement zm_src = j.mult_support();
  const AlgebraElement za_src = j.anti_support();

  // F on the corners; the bimodule law forces F to kill the off-diagonal
  // corners, so these values determine it.
  const Superop f_op =
      Superop::from_function(p.parent, p.parent, [&](const AlgebraElement& y) {
        const AlgebraElement a = parts.z_mult * y * parts.z_mult;
        const AlgebraElement d = parts.z_anti * y * parts.z_anti;
        AlgebraElement ga = j_pinv.apply(p.apply(a));
        AlgebraElement gd = j_pinv.apply(p.apply(d));
        for (int i = 0; i < src.num_blocks(); ++i) {
          const bool mult = zm_src.blocks[i].trace().real() > 0.5;
          const bool anti = za_src.blocks[i].trace().real() > 0.5;
          const int n = src.block_dims[i];
          ga.blocks[i] = mult ? (ga.blocks[i] / lam_scalar[i]).eval() : Matrix::Zero(n, n);
          gd.blocks[i] = anti ? (gd.blocks[i] / (1.0 - lam_scalar[i])).eval() : Matrix::Zero(n, n);
        }
        return parts.pi.apply(ga) + parts.pi_anti.apply(gd);
      });

  ProjectionFactorization out;
  out.lambda = lam;
  out.expectation.parent = p.parent;
  out.expectation.range = image_bicommutant(j, tol);
  out.expectation.op = f_op;

  const CEReport rep = verify_conditional_expectation(out.expectation);
  if (!rep.passed(1e-7))
    throw ReconstructionMismatch(
        "factor_projection: recovered map is not a conditional expectation (idempotence " +
        std::to_string(rep.idempotence) + ", bimodule " + std::to_string(rep.bimodule) + ")");

  const PositiveProjection rebuilt = build_positive_projection(j, out.expectation, lam, tol);
  const double res = (rebuilt.op - p.op).op_norm();
  if (res > 1e-7)
    throw ReconstructionMismatch("factor_projection: rebuilt projection differs by " +
                                 std::to_string(res));
  return out;
}

bool StormerReport::passed(double tol) const {
  return norm_one <= tol && jordan_bimodule <= tol && sandwich <= tol && relative_commutant <= tol;
}

StormerReport check_stormer(const PositiveProjection& p, int trials, std::uint64_t seed) {
  StormerReport rep;
  const JordanMono& j = p.jordan;
  const auto src_basis = matrix_unit_basis(j.source);

  // (1) ||P|| = 1 on the unit ball, sampled
  for (int k = 0; k < trials; ++k) {
    CounterRng rng(seed, "stormer-ball", k);
    AlgebraElement y = random_element(p.parent, rng);
    const double n = y.op_norm();
    if (n < 1e-12) continue;
    y *= Complex(1.0 / n, 0);
    rep.norm_one = std::max(rep.norm_one, p.apply(y).op_norm() - 1.0);
  }

  // (2) the Jordan bimodule identity and (3) its sandwich form
  for (int k = 0; k < trials; ++k) {
    CounterRng rng(seed, "stormer-bimodule", k);
    const AlgebraElement y = random_element(p.parent, rng);
    const AlgebraElement x = random_element(j.source, rng);
    const AlgebraElement jx = j.apply(x);
    const double scale =
        std::max(1.0, y.op_norm() * (1.0 + jx.op_norm() + jx.op_norm() * jx.op_norm()));
    rep.jordan_bimodule = std::max(
        rep.jordan_bimodule, (p.apply(jprod(jx, y)) - jprod(jx, p.apply(y))).op_norm() / scale);
    rep.sandwich =
        std::max(rep.sandwich, (p.apply(jx * y * jx) - jx * p.apply(y) * jx).op_norm() / scale);
  }

  // (4) P maps the relative commutant of the image into J(Z(M1))
  std::vector<AlgebraElement> jimg;
  for (const auto& b : src_basis) jimg.push_back(j.apply(b));
  const SubalgebraBasis rel = commutant(p.parent, jimg);
  const SubalgebraBasis full = generated_algebra(j.source, src_basis, true);
  const SubalgebraBasis zsrc = center_of(full);
  std::vector<AlgebraElement> jz;
  for (const auto& z : zsrc.basis) jz.push_back(j.apply(z));
  for (const auto& r : rel.basis) {
    const AlgebraElement pr = p.apply(r);
    rep.relative_commutant =
        std::max(rep.relative_commutant, distance_to_span(jz, pr) / std::max(1.0, pr.norm2()));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// paving

PavingReport paving_demo(const AlgebraDescriptor& alg, const std::vector<AlgebraElement>& chain,
                         int samples, std::uint64_t seed, double tol) {
  if (chain.empty()) throw NotIncreasing("paving: empty chain");
  for (size_t k = 0; k < chain.size(); ++k) {
    const auto proj = is_projection(chain[k], tol);
    if (!proj.ok)
      throw NotIncreasing("paving: chain element " + std::to_string(k) +
                          " is not a projection (residual " + std::to_string(proj.residual) + ")");
    if (k > 0) {
      const auto mono = is_positive(chain[k] - chain[k - 1], tol);
      if (!mono.ok)
        throw NotIncreasing("paving: chain is not increasing at step " + std::to_string(k));
    }
  }
  if ((chain.back() - AlgebraElement::identity(alg)).op_norm() > scaled_tol(tol, 1.0))
    throw NotIncreasing("paving: chain must end at the identity");

  PavingReport rep;
  for (int s = 0; s < samples; ++s) {
    CounterRng rng(seed, "paving", s);
    const AlgebraElement theta = random_density(alg, rng, 0.0);
    const AlgebraElement x = random_hermitian(alg, rng);
    std::vector<double> sd, xd;
    for (const auto& q : chain) {
      sd.push_back(lp_norm(q * theta * q - theta, 1.0));
      xd.push_back((q * x * q - x).op_norm());
    }
    for (size_t k = 1; k < sd.size(); ++k) {
      if (sd[k] > sd[k - 1] + 1e-12) rep.state_nonincreasing = false;
      if (xd[k] > xd[k - 1] + 1e-12) rep.element_nonincreasing = false;
    }
    rep.terminal_state_distance = std::max(rep.terminal_state_distance, sd.back());
    rep.terminal_element_distance = std::max(rep.terminal_element_distance, xd.back());
    rep.state_distances.push_back(std::move(sd));
    rep.element_distances.push_back(std::move(xd));
  }
  return rep;
}

}  // namespace nclp
