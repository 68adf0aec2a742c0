#pragma once

#include <utility>
#include <vector>

#include "weaklimit/coefficients.hpp"

namespace weaklimit {

// p_n(x) by forward recurrence from p_{-1} = 0, p_0 = 1.  The recurrence is
// run in extended precision; degree -1 is represented by the index
// convention, never by a sentinel value.
//
// Throws domain_error if n exceeds the support cutoff or a nonpositive
// coefficient a_m (m <= n) is encountered.
double eval_orthonormal(const CoefficientSequence& coeffs, int n, double x);

// Both p_{n1}(x) and p_{n2}(x) from a single forward pass.
std::pair<double, double> eval_orthonormal_pair(const CoefficientSequence& coeffs,
                                                int n1, int n2, double x);

// Associated polynomial p_n^(1)(x): orthonormal polynomial of the shifted
// sequence (first row and column of the Jacobi matrix deleted).
double eval_associated(const CoefficientSequence& coeffs, int n, double x);

// Values p_0(x), ..., p_{top}(x) of a finite-support sequence at a point of
// its support lattice.  At the extreme lattice nodes the true values rise to
// ~1/sqrt(weight) and then fall back; the plain forward recurrence cannot
// follow the recessive tail, so a backward pass seeded with p_N = 0 (valid
// exactly at the lattice) is glued to the forward pass at the growth peak.
std::vector<double> eval_orthonormal_lattice(const CoefficientSequence& coeffs, int top, double x);

// gamma_n = 1/(a_1 a_2 ... a_n), gamma_0 = 1.  Throws convergence_error if
// the product leaves the representable range.
double leading_coefficient(const CoefficientSequence& coeffs, int n);

// The pair (A_n(x), B_n(x)) attached to the basis vector e_n of the doubly
// infinite matrix:
//   n >= 0:  ( -(a_0/a_1) p_{n-1}^(1)(x),  p_n(x) )
//   n <  0:  (  q_{|n|-1}(x),  -(a_0/a_{-1}) q_{|n|-2}^(1)(x) )
// where p/q are the orthonormal polynomials of the positive/negative halves.
// Degree -1 objects evaluate to 0; for one-sided data the prefactors vanish
// with a_0 = 0.
struct VectorSymbol {
  double A = 0.0;
  double B = 0.0;
};
VectorSymbol eval_vector_symbol(const BilateralCoefficients& bilateral, int n, double x);

}  // namespace weaklimit
