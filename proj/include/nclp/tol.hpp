#pragma once

namespace nclp {

// Process-wide numerical tolerance.  Rank and positivity decisions use
// default_tol() scaled by the operator norm of the inputs; predicates
// report the margin behind the decision, not just a boolean.
double default_tol();
void set_default_tol(double tol);

inline double scaled_tol(double tol, double scale) {
  return tol * (scale > 1.0 ? scale : 1.0);
}

struct CheckResult {
  bool ok = false;
  double residual = 0.0;  // margin or residual backing the decision
};

}  // namespace nclp
