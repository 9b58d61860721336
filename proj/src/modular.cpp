#include "nclp/modular.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace nclp {

ModularContext::ModularContext(AlgebraDescriptor alg, StateDensity phi, double tol)
    : algebra_(std::move(alg)), phi_(std::move(phi)) {
  if (phi_.d.algebra.block_dims != algebra_.block_dims)
    throw DimensionMismatch("modular context: density lives elsewhere");
  const auto f = phi_.faithful(tol);
  if (!f.ok)
    throw NotFaithful("modular context: density is not strictly positive (margin " +
                      std::to_string(f.residual) + ")");
  for (const auto& b : phi_.d.blocks) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((b + b.adjoint()) / 2.0);
    vecs_.push_back(es.eigenvectors());
    vals_.push_back(es.eigenvalues());
  }
}

AlgebraElement ModularContext::modular_auto(double t, const AlgebraElement& x) const {
  if (x.algebra.block_dims != algebra_.block_dims)
    throw DimensionMismatch("modular_auto: element lives elsewhere");
  AlgebraElement out = x;
  for (size_t i = 0; i < out.blocks.size(); ++i) {
    const Matrix y = vecs_[i].adjoint() * x.blocks[i] * vecs_[i];
    Matrix z = y;
    for (int r = 0; r < y.rows(); ++r)
      for (int c = 0; c < y.cols(); ++c) {
        const double a = t * std::log(vals_[i](r) / vals_[i](c));
        z(r, c) = y(r, c) * Complex(std::cos(a), std::sin(a));
      }
    out.blocks[i] = vecs_[i] * z * vecs_[i].adjoint();
  }
  return out;
}

AlgebraElement ModularContext::cosine_family(double t, const AlgebraElement& x) const {
  return 0.5 * (modular_auto(t, x) + modular_auto(-t, x));
}

AlgebraElement ModularContext::phi_transform(const AlgebraElement& x) const {
  if (x.algebra.block_dims != algebra_.block_dims)
    throw DimensionMismatch("phi_transform: element lives elsewhere");
  AlgebraElement out = x;
  for (size_t i = 0; i < out.blocks.size(); ++i) {
    const Matrix y = vecs_[i].adjoint() * x.blocks[i] * vecs_[i];
    Matrix z = y;
    for (int r = 0; r < y.rows(); ++r)
      for (int c = 0; c < y.cols(); ++c) {
        const double dj = vals_[i](r), dk = vals_[i](c);
        z(r, c) = y(r, c) * (2.0 * std::sqrt(dj * dk) / (dj + dk));
      }
    out.blocks[i] = vecs_[i] * z * vecs_[i].adjoint();
  }
  return out;
}

Complex ModularContext::self_polar_form(const AlgebraElement& a, const AlgebraElement& b) const {
  const AlgebraElement q = fc_power(phi_.d, 0.25);
  const AlgebraElement h = fc_power(phi_.d, 0.5);
  return (q * a.adjoint() * h * b * q).trace();
}

// ---------------------------------------------------------------------------
// quadrature cross-checks

namespace {

// Adaptive Simpson for a matrix-valued integrand, error controlled in the
// Frobenius norm of the stacked blocks.
class MatrixSimpson {
 public:
  using Fn = std::function<AlgebraElement(double)>;

  explicit MatrixSimpson(const Fn& fn) : f(fn) {}

  static AlgebraElement integrate(const Fn& f, double lo, double hi, double target) {
    MatrixSimpson s(f);
    const AlgebraElement flo = f(lo), fmid = f(0.5 * (lo + hi)), fhi = f(hi);
    return s.recurse(lo, hi, flo, fmid, fhi, simpson(flo, fmid, fhi, hi - lo), target, 24);
  }

 private:
  const Fn& f;

  static AlgebraElement simpson(const AlgebraElement& fa, const AlgebraElement& fm,
                                const AlgebraElement& fb, double h) {
    return (h / 6.0) * (fa + 4.0 * fm + fb);
  }

  AlgebraElement recurse(double a, double b, const AlgebraElement& fa, const AlgebraElement& fm,
                         const AlgebraElement& fb, const AlgebraElement& whole, double eps,
                         int depth) {
    const double m = 0.5 * (a + b);
    const AlgebraElement fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
    const AlgebraElement left = simpson(fa, fl, fm, m - a);
    const AlgebraElement right = simpson(fm, fr, fb, b - m);
    const AlgebraElement sum = left + right;
    const double err = (sum - whole).norm2();
    if (depth <= 0 || err < 15.0 * eps)
      return sum + Complex(1.0 / 15.0, 0) * (sum - whole);
    return recurse(a, m, fa, fl, fm, left, eps / 2, depth - 1) +
           recurse(m, b, fm, fr, fb, right, eps / 2, depth - 1);
  }
};

}  // namespace

AlgebraElement phi_transform_quadrature(const ModularContext& ctx, const AlgebraElement& x,
                                        double target) {
  const auto integrand = [&](double t) {
    return (1.0 / std::cosh(M_PI * t)) * ctx.modular_auto(t, x);
  };
  return MatrixSimpson::integrate(integrand, -20.0, 20.0, target);
}

Complex self_polar_quadrature(const ModularContext& ctx, const AlgebraElement& a,
                              const AlgebraElement& b, double target) {
  // integral of phi(rho_t(b) . a^*) sech(pi t) dt, matching the closed
  // form's convention (conjugate-linear in a)
  const AlgebraElement as = a.adjoint();
  const auto integrand = [&](double t) {
    const AlgebraElement rb = ctx.cosine_family(t, b);
    const AlgebraElement inner = 0.5 * (rb * as + as * rb);
    AlgebraElement val = AlgebraElement::zero(AlgebraDescriptor::full(1));
    val.blocks[0](0, 0) = ctx.state().d.pairing(inner) / std::cosh(M_PI * t);
    return val;
  };
  return MatrixSimpson::integrate(integrand, -20.0, 20.0, target).blocks[0](0, 0);
}

// ---------------------------------------------------------------------------
// cocycles

AlgebraElement connes_cocycle(const StateDensity& phi, const StateDensity& psi, double t,
                              double tol) {
  if (!phi.d.same_shape(psi.d)) throw DimensionMismatch("cocycle: different algebras");
  if (!phi.faithful(tol).ok || !psi.faithful(tol).ok)
    throw NotFaithful("cocycle: both states must be faithful");
  return modular_phase(phi.d, t, tol) * modular_phase(psi.d, -t, tol);
}

StateDensity pullback_state(const Superop& op, const StateDensity& phi) {
  // density of x -> phi(op(x)) w.r.t. the domain trace
  const AlgebraElement e = op.adjoint_pairing().apply(phi.d);
  return StateDensity{e};
}

AnticocycleReport check_anticocycle(const JordanMono& alpha, const StateDensity& phi,
                                    const StateDensity& psi, double t, double tol) {
  const auto anti = is_antiautomorphism(alpha, tol);
  if (!anti.ok)
    throw NotAntiauto("check_anticocycle: map is not a surjective *-antiautomorphism (residual " +
                      std::to_string(anti.residual) + ")");
  const Superop a_op = alpha.to_superop();
  const Superop a_inv = a_op.pinv(tol);

  const StateDensity phi_a = pullback_state(a_inv, phi);  // phi o alpha^{-1}
  const StateDensity psi_a = pullback_state(a_inv, psi);

  AnticocycleReport rep;
  {
    const AlgebraElement lhs = connes_cocycle(psi_a, phi_a, t, tol);
    const AlgebraElement rhs = a_op.apply(connes_cocycle(phi, psi, -t, tol));
    rep.cocycle_residual = (lhs - rhs).op_norm();
  }
  {
    const ModularContext ctx_a(alpha.target, phi_a, tol);
    const ModularContext ctx(alpha.source, phi, tol);
    double worst = 0.0;
    for (const auto& b : matrix_unit_basis(alpha.target)) {
      const AlgebraElement lhs = ctx_a.modular_auto(t, b);
      const AlgebraElement rhs = a_op.apply(ctx.modular_auto(-t, a_inv.apply(b)));
      worst = std::max(worst, (lhs - rhs).op_norm());
    }
    rep.modaut_residual = worst;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Haagerup-Stormer conditions

HSReport check_hs_conditions(const JordanMono& j, const StateDensity& psi, double decision_tol,
                             double tol) {
  HSReport rep;
  const ModularContext ctx2(j.target, psi, tol);

  // theta = psi o J, a faithful state on the source
  const StateDensity theta = pullback_state(j.to_superop(), psi);
  if (!theta.faithful(tol).ok)
    throw NotFaithful("check_hs_conditions: restricted state is not faithful");
  const ModularContext ctx1(j.source, theta, tol);

  const auto basis = matrix_unit_basis(j.source);
  std::vector<AlgebraElement> images;
  for (const auto& b : basis) images.push_back(j.apply(b));

  // (2): s_theta(a, b) = s_psi(J(a), J(b))
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      const Complex lhs = ctx1.self_polar_form(basis[a], basis[b]);
      const Complex rhs = ctx2.self_polar_form(images[a], images[b]);
      rep.cond2_residual = std::max(rep.cond2_residual, std::abs(lhs - rhs));
    }

  // (3): rho_t^psi restricted to the image equals the transported rho_t^theta
  for (double t : {0.37, 0.9, 2.0})
    for (size_t a = 0; a < basis.size(); ++a) {
      const AlgebraElement lhs = ctx2.cosine_family(t, images[a]);
      const AlgebraElement rhs = j.apply(ctx1.cosine_family(t, basis[a]));
      rep.cond3_residual = std::max(rep.cond3_residual, (lhs - rhs).op_norm());
    }

  rep.conditions_hold =
      rep.cond2_residual <= decision_tol && rep.cond3_residual <= decision_tol;

  // Solve s_psi(y, J(x)) = s_psi(P(y), J(x)) for P(y) = J(g(y)).
  const int m = static_cast<int>(basis.size());
  Matrix gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) gram(a, b) = ctx2.self_polar_form(images[b], images[a]);
  Eigen::JacobiSVD<Matrix> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * std::max(1.0, sv(0))) {
    int nullity = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) < 1e-10 * std::max(1.0, sv(0))) ++nullity;
    throw SingularSystem("check_hs_conditions: self-polar system is singular (nullity " +
                         std::to_string(nullity) + ")");
  }

  PositiveProjection p;
  p.parent = j.target;
  p.jordan = j;
  p.op = Superop::from_function(j.target, j.target, [&](const AlgebraElement& y) {
    Vector rhs(m);
    for (int a = 0; a < m; ++a) rhs(a) = ctx2.self_polar_form(y, images[a]);
    // coefficients enter the form antilinearly: gram * conj(c) = rhs
    const Vector c = svd.solve(rhs).conjugate();
    AlgebraElement g = AlgebraElement::zero(j.source);
    for (int a = 0; a < m; ++a) g += c(a) * basis[a];
    return j.apply(g);
  });

  // verification of the candidate
  rep.projection_law_residual = (p.op * p.op - p.op).op_norm();
  for (size_t a = 0; a < basis.size(); ++a)
    rep.projection_law_residual =
        std::max(rep.projection_law_residual, (p.apply(images[a]) - images[a]).op_norm());
  // positivity violations concentrate on low-rank inputs, so probe
  // projections of every rank alongside generic PSD samples
  for (int k = 0; k < 64; ++k) {
    CounterRng rng(23, "hs-positivity", k);
    const AlgebraElement h =
        (k % 2) ? random_projection(j.target, rng) : random_psd(j.target, rng);
    const double scale = h.op_norm();
    if (scale < 1e-12) continue;
    rep.positivity_residual = std::max(
        rep.positivity_residual, std::max(0.0, -min_eigenvalue(p.apply(h))) / scale);
  }
  // (1): psi = theta o P, i.e. psi(y) = psi(J(J^{-1}(P(y)))) = psi(P(y))
  for (const auto& y : matrix_unit_basis(j.target))
    rep.state_match_residual =
        std::max(rep.state_match_residual,
                 std::abs(psi.d.pairing(p.apply(y)) - psi.d.pairing(y)));

  rep.projection = std::move(p);
  return rep;
}

double check_centralizer(const StateDensity& phi, const SubalgebraBasis& a, double tol) {
  const AlgebraElement s = support_projection(phi.d, tol);
  double worst = 0.0;
  for (double t : {0.3, 1.0, M_PI}) {
    const AlgebraElement u = modular_phase(phi.d, t, tol);
    const AlgebraElement ui = modular_phase(phi.d, -t, tol);
    for (const auto& b : a.basis) {
      const AlgebraElement sb = s * b * s;
      worst = std::max(worst, (u * sb * ui - sb).op_norm());
    }
  }
  return worst;
}

}  // namespace nclp
