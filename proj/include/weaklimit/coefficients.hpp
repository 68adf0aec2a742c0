#pragma once

#include <functional>
#include <optional>

namespace weaklimit {

// Recurrence data for a semi-infinite system of orthonormal polynomials,
//
//   x p_n(x) = a_{n+1} p_{n+1}(x) + b_n p_n(x) + a_n p_{n-1}(x),
//
// stored as pure index -> value rules: b_n for n >= 0, a_n for n >= 1.
// A support cutoff N marks a measure living on N points; then a_n = b_n = 0
// for n >= N and only polynomials up to degree N are meaningful.
struct CoefficientSequence {
  std::function<double(int)> a_rule;
  std::function<double(int)> b_rule;
  std::optional<int> support_cutoff;

  double a(int n) const {
    if (support_cutoff && n >= *support_cutoff) return 0.0;
    return a_rule(n);
  }
  double b(int n) const {
    if (support_cutoff && n >= *support_cutoff) return 0.0;
    return b_rule(n);
  }

  // Sequence of the associated polynomials: first row and column of the
  // Jacobi matrix deleted, i.e. a'_m = a_{m+1}, b'_m = b_{m+1}.
  CoefficientSequence shifted() const;

  static CoefficientSequence constant(double a, double b);
};

// Classical sequences used throughout: Chebyshev U (weight (2/pi)sqrt(1-x^2)),
// Laguerre (weight x^alpha e^-x / Gamma(alpha+1)) and Hermite
// (weight e^-x^2 / sqrt(pi)); all as probability measures.
CoefficientSequence chebyshev_u_coefficients();
CoefficientSequence laguerre_coefficients(double alpha);
CoefficientSequence hermite_coefficients();

// Doubly infinite recurrence data a_k, b_k over k in Z.  In the one_sided
// case a_k = b_k = 0 for k >= 0: the operator reduces to its negative-index
// half, which is the limit shape of finite-support families.
struct BilateralCoefficients {
  std::function<double(int)> a_rule;
  std::function<double(int)> b_rule;
  bool one_sided = false;

  double a(int k) const { return a_rule(k); }
  double b(int k) const { return b_rule(k); }

  // Positive-index half: coefficients a_{k+1}, b_k for k >= 0.
  CoefficientSequence jplus() const;
  // Negative-index half: coefficients a_{-k-1}, b_{-k-1} for k >= 0, so the
  // off-diagonal of the half matrix is a_{-1}, a_{-2}, ...
  CoefficientSequence jminus() const;

  static BilateralCoefficients constant(double a, double b);
};

}  // namespace weaklimit
