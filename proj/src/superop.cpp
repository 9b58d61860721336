#include "nclp/superop.hpp"

#include <Eigen/SVD>

namespace nclp {

Superop::Superop(AlgebraDescriptor dom, AlgebraDescriptor cod, Matrix m)
    : domain(std::move(dom)), codomain(std::move(cod)), mat(std::move(m)) {
  if (mat.rows() != codomain.coord_dim() || mat.cols() != domain.coord_dim())
    throw DimensionMismatch("superop: matrix shape does not match the descriptors");
}

Superop Superop::identity(const AlgebraDescriptor& alg) {
  return Superop(alg, alg, Matrix::Identity(alg.coord_dim(), alg.coord_dim()));
}

Superop Superop::zero(const AlgebraDescriptor& dom, const AlgebraDescriptor& cod) {
  return Superop(dom, cod, Matrix::Zero(cod.coord_dim(), dom.coord_dim()));
}

Superop Superop::from_function(const AlgebraDescriptor& dom, const AlgebraDescriptor& cod,
                               const std::function<AlgebraElement(const AlgebraElement&)>& f) {
  Matrix m(cod.coord_dim(), dom.coord_dim());
  const auto basis = matrix_unit_basis(dom);
  for (size_t k = 0; k < basis.size(); ++k) m.col(static_cast<int>(k)) = coords(f(basis[k]));
  return Superop(dom, cod, std::move(m));
}

Superop Superop::left_multiplier(const AlgebraElement& a) {
  return from_function(a.algebra, a.algebra,
                       [&](const AlgebraElement& x) { return a * x; });
}

Superop Superop::right_multiplier(const AlgebraElement& a) {
  return from_function(a.algebra, a.algebra,
                       [&](const AlgebraElement& x) { return x * a; });
}

Superop Superop::conjugation(const AlgebraElement& u) {
  const AlgebraElement us = u.adjoint();
  return from_function(u.algebra, u.algebra,
                       [&](const AlgebraElement& x) { return u * x * us; });
}

AlgebraElement Superop::apply(const AlgebraElement& x) const {
  if (x.algebra.block_dims != domain.block_dims)
    throw DimensionMismatch("superop apply: wrong domain");
  return from_coords(codomain, (mat * coords(x)).eval());
}

Superop Superop::adjoint_inner() const { return Superop(codomain, domain, mat.adjoint()); }

Superop Superop::adjoint_pairing() const {
  const auto pd = transpose_permutation(domain);
  const auto pc = transpose_permutation(codomain);
  // tau(T(x) y) = c(x)^T M^T S_cod c(y)  and  tau(x T'(y)) = c(x)^T S_dom M' c(y),
  // so M' = S_dom M^T S_cod.
  Matrix mt = mat.transpose();
  Matrix out(domain.coord_dim(), codomain.coord_dim());
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) out(pd[r], pc[c]) = mt(r, c);
  return Superop(codomain, domain, std::move(out));
}

Superop Superop::pinv(double tol) const {
  Eigen::JacobiSVD<Matrix> svd(mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double thr = scaled_tol(tol, smax);
  Vector inv(sv.size());
  for (int k = 0; k < sv.size(); ++k) inv(k) = (sv(k) > thr) ? 1.0 / sv(k) : 0.0;
  Matrix m = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  return Superop(codomain, domain, std::move(m));
}

double Superop::op_norm() const {
  if (mat.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(mat);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double Superop::min_singular() const {
  if (mat.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(mat);
  const auto& sv = svd.singularValues();
  return sv.size() ? sv(sv.size() - 1) : 0.0;
}

Superop operator*(const Superop& a, const Superop& b) {
  if (a.domain.coord_dim() != b.codomain.coord_dim())
    throw DimensionMismatch("superop compose: shape mismatch");
  return Superop(b.domain, a.codomain, a.mat * b.mat);
}

Superop operator-(Superop a, const Superop& b) {
  a.mat -= b.mat;
  return a;
}

Superop operator+(Superop a, const Superop& b) {
  a.mat += b.mat;
  return a;
}

}  // namespace nclp
