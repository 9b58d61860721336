#pragma once

#include <functional>

#include "nclp/algebra.hpp"

namespace nclp {

// Linear map between algebras, stored densely over the trace-orthonormal
// matrix-unit bases of domain and codomain.
struct Superop {
  AlgebraDescriptor domain, codomain;
  Matrix mat;  // codomain.coord_dim() x domain.coord_dim()

  Superop() = default;
  Superop(AlgebraDescriptor dom, AlgebraDescriptor cod, Matrix m);

  static Superop identity(const AlgebraDescriptor& alg);
  static Superop zero(const AlgebraDescriptor& dom, const AlgebraDescriptor& cod);
  static Superop from_function(const AlgebraDescriptor& dom, const AlgebraDescriptor& cod,
                               const std::function<AlgebraElement(const AlgebraElement&)>& f);
  // x -> a x  and  x -> x a
  static Superop left_multiplier(const AlgebraElement& a);
  static Superop right_multiplier(const AlgebraElement& a);
  // x -> u x u^*
  static Superop conjugation(const AlgebraElement& u);

  AlgebraElement apply(const AlgebraElement& x) const;

  // Adjoint for the sesquilinear inner products tau(a^* b).
  Superop adjoint_inner() const;
  // Adjoint T^x for the bilinear pairings: tau(T(x) y) = tau(x T^x(y)).
  Superop adjoint_pairing() const;
  // Moore-Penrose pseudoinverse (rank cutoff relative to tol).
  Superop pinv(double tol = default_tol()) const;

  double op_norm() const;        // as a map between the L^2 spaces
  double min_singular() const;

  friend Superop operator*(const Superop& a, const Superop& b);  // composition a after b
  friend Superop operator-(Superop a, const Superop& b);
  friend Superop operator+(Superop a, const Superop& b);
};

}  // namespace nclp
