#pragma once

#include <array>
#include <limits>

#include "nclp/algebra.hpp"

namespace nclp {

// Element of L^p(M, tau); at finite dimension the space coincides with M,
// only the norm changes.  p = infinity is allowed for dual pairings.
struct LpElement {
  AlgebraElement element;
  double p = 2.0;

  LpElement() = default;
  LpElement(AlgebraElement x, double exponent);
};

// Density d of the functional tau_d: x -> tau(d x).
struct StateDensity {
  AlgebraElement d;

  CheckResult faithful(double tol = default_tol()) const;
  CheckResult normalized(double tol = default_tol()) const;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double lp_norm(const AlgebraElement& x, double p);
double lp_norm(const LpElement& xi);

// Orthogonality in the L^p sense: xi eta^* = xi^* eta = 0, i.e. disjoint
// left and right supports.  Residual is max of the two product norms
// relative to ||xi|| ||eta||.
CheckResult orthogonal(const LpElement& xi, const LpElement& eta, double tol = default_tol());

struct ClarksonResult {
  bool equal = false;
  double lhs = 0.0;  // ||xi+eta||^p + ||xi-eta||^p
  double rhs = 0.0;  // 2(||xi||^p + ||eta||^p)
};
// Both sides of the Clarkson equality.  At p != 2 equality holding within
// tolerance is the tested criterion for orthogonality.
ClarksonResult clarkson_equal(const LpElement& xi, const LpElement& eta,
                              double tol = default_tol());

// xi = (h1 - h2) + i (h3 - h4) with h1 _|_ h2 and h3 _|_ h4 positive.
std::array<AlgebraElement, 4> positive_decompose(const AlgebraElement& xi);

// tau(xi eta) with 1/p + 1/q = 1 (q = infinity pairs with p = 1).
Complex dual_pairing(const LpElement& xi, const LpElement& eta);

// h in L^p(M, tau)_+ corresponds to the functional tau_{h^p}; returns its
// density.  Round-trips with fc_power(., 1/p).
StateDensity density_identify(const AlgebraElement& h, double p, double tol = default_tol());

}  // namespace nclp
