#include "nclp/lp.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace nclp {

LpElement::LpElement(AlgebraElement x, double exponent) : element(std::move(x)), p(exponent) {
  if (!(p >= 1.0)) throw ExponentMismatch("L^p exponent must satisfy p >= 1");
}

CheckResult StateDensity::faithful(double tol) const {
  const auto pos = is_positive(d, tol);
  if (!pos.ok) return {false, pos.residual};
  const double lo = min_eigenvalue(d);
  return {lo > scaled_tol(tol, d.op_norm()), lo};
}

CheckResult StateDensity::normalized(double tol) const {
  const double r = std::abs(d.trace() - Complex(1.0));
  return {r <= scaled_tol(tol, 1.0), r};
}

double lp_norm(const AlgebraElement& x, double p) {
  if (p == kInfinity) return x.op_norm();
  if (!(p >= 1.0)) throw ExponentMismatch("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (int i = 0; i < x.algebra.num_blocks(); ++i) {
    Eigen::JacobiSVD<Matrix> svd(x.blocks[i]);
    const auto& sv = svd.singularValues();
    double s = 0.0;
    for (int k = 0; k < sv.size(); ++k) s += std::pow(sv(k), p);
    acc += x.algebra.trace_weights[i] * s;
  }
  return std::pow(acc, 1.0 / p);
}

double lp_norm(const LpElement& xi) { return lp_norm(xi.element, xi.p); }

CheckResult orthogonal(const LpElement& xi, const LpElement& eta, double tol) {
  if (!xi.element.same_shape(eta.element))
    throw DimensionMismatch("orthogonal: different algebras");
  if (xi.p != eta.p) throw ExponentMismatch("orthogonal: different exponents");
  const double nx = xi.element.op_norm(), ny = eta.element.op_norm();
  if (nx == 0.0 || ny == 0.0) return {true, 0.0};
  const double r1 = (xi.element * eta.element.adjoint()).op_norm();
  const double r2 = (xi.element.adjoint() * eta.element).op_norm();
  const double rel = std::max(r1, r2) / (nx * ny);
  return {rel <= tol, rel};
}

ClarksonResult clarkson_equal(const LpElement& xi, const LpElement& eta, double tol) {
  if (!xi.element.same_shape(eta.element))
    throw DimensionMismatch("clarkson_equal: different algebras");
  if (xi.p != eta.p) throw ExponentMismatch("clarkson_equal: different exponents");
  const double p = xi.p;
  ClarksonResult out;
  out.lhs = std::pow(lp_norm(xi.element + eta.element, p), p) +
            std::pow(lp_norm(xi.element - eta.element, p), p);
  out.rhs = 2.0 * (std::pow(lp_norm(xi.element, p), p) + std::pow(lp_norm(eta.element, p), p));
  out.equal = std::abs(out.lhs - out.rhs) <= tol * std::max(1.0, out.rhs);
  return out;
}

std::array<AlgebraElement, 4> positive_decompose(const AlgebraElement& xi) {
  const AlgebraElement re = 0.5 * (xi + xi.adjoint());
  const AlgebraElement im = Complex(0, -0.5) * (xi - xi.adjoint());
  auto split = [](const AlgebraElement& h) {
    AlgebraElement plus = h, minus = h;
    for (size_t i = 0; i < h.blocks.size(); ++i) {
      Eigen::SelfAdjointEigenSolver<Matrix> es((h.blocks[i] + h.blocks[i].adjoint()) / 2.0);
      Eigen::VectorXd ev = es.eigenvalues();
      Eigen::VectorXd pos = ev.cwiseMax(0.0), neg = (-ev).cwiseMax(0.0);
      plus.blocks[i] = es.eigenvectors() * pos.asDiagonal() * es.eigenvectors().adjoint();
      minus.blocks[i] = es.eigenvectors() * neg.asDiagonal() * es.eigenvectors().adjoint();
    }
    return std::pair{plus, minus};
  };
  auto [h1, h2] = split(re);
  auto [h3, h4] = split(im);
  return {h1, h2, h3, h4};
}

Complex dual_pairing(const LpElement& xi, const LpElement& eta) {
  if (!xi.element.same_shape(eta.element))
    throw DimensionMismatch("dual_pairing: different algebras");
  const double ip = (xi.p == kInfinity) ? 0.0 : 1.0 / xi.p;
  const double iq = (eta.p == kInfinity) ? 0.0 : 1.0 / eta.p;
  if (std::abs(ip + iq - 1.0) > 1e-12)
    throw ExponentMismatch("dual_pairing: 1/p + 1/q must equal 1");
  return xi.element.pairing(eta.element);
}

StateDensity density_identify(const AlgebraElement& h, double p, double tol) {
  const auto pos = is_positive(h, tol);
  if (!pos.ok)
    throw NotPositive("density_identify: input not PSD (residual " +
                      std::to_string(pos.residual) + ")");
  return StateDensity{fc_power(h, p, tol)};
}

}  // namespace nclp
