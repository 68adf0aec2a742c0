#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "weaklimit/coefficients.hpp"
#include "weaklimit/jacobi_operators.hpp"
#include "weaklimit/mat2.hpp"

namespace weaklimit {

using Complex = std::complex<double>;

// Stieltjes transform m(z) = integral of dmu(x)/(z-x), evaluated as the
// continued fraction
//   1/(z - b_0 - a_1^2/(z - b_1 - a_2^2/(...)))
// truncated adaptively: stop when successive convergents agree to 1e-13
// relative.  For finite-support sequences the fraction terminates exactly.
Complex stieltjes_m(const CoefficientSequence& coeffs, Complex z);

// Function of the second kind p~_n(z), the minimal solution of the
// recurrence, seeded with a_0 p~_{-1} = 1 and p~_0 = stieltjes_m.  a0 is the
// coupling coefficient from the bilateral context; standalone semi-infinite
// use takes the default a0 = 1.  Forward recurrence degrades for large n:
// gross amplification is reported as convergence_error.
Complex second_kind(const CoefficientSequence& coeffs, int n, Complex z, double a0 = 1.0);

// Symmetric 2x2 transform matrix of the doubly infinite operator.
struct TransformMatrix {
  Complex m11, m12, m21, m22;
};

// Stieltjes transform of the 2x2 spectral matrix measure:
//   m11 = q~_0 / (1 - a_0^2 p~_0 q~_0),      m22 = p~_0 / (1 - a_0^2 p~_0 q~_0),
//   m12 = a_0 p~_0 q~_0 / (1 - a_0^2 p~_0 q~_0),
// where p~_0, q~_0 are the transforms of the two half matrices.
TransformMatrix matrix_stieltjes(const BilateralCoefficients& bilateral, Complex z);

// Independent cross-check: solves the truncated systems (z-J)r = e_0 and
// (z-J)s = e_{-1} directly on indices [-truncation, truncation] and returns
// [[s_{-1}, s_0], [r_{-1}, r_0]].
TransformMatrix resolvent_oracle(const BilateralCoefficients& bilateral, Complex z, int truncation);

// Full solution vectors of the truncated systems, entry j at r[j + offset].
struct ResolventSolution {
  std::vector<Complex> r;
  std::vector<Complex> s;
  int offset = 0;
};
ResolventSolution resolvent_solution(const BilateralCoefficients& bilateral, Complex z,
                                     int truncation);

// Density recovery: (1/pi) Im m(x - i eps).
double invert_stieltjes(const std::function<Complex(Complex)>& transform, double x, double epsilon);
// Richardson extrapolation over {eps, eps/2}, cancels the O(eps) term.
double invert_stieltjes_refined(const std::function<Complex(Complex)>& transform, double x,
                                double epsilon);

// The 2x2 spectral matrix measure, either closed-form densities on a stated
// support or a node/weight-matrix list.  mu12 is stored once (the matrix is
// symmetric), and discretize() produces atoms suitable for quadrature: a
// closed-form measure is sampled at the requested resolution, a discretized
// one returns its atoms as-is.
struct MatrixAtom {
  double x = 0.0;
  Mat2 w;
};

class MatrixMeasure {
 public:
  enum class Kind { closed_form, discretized };

  // Constant-coefficient limit: d(mu11) = d(mu22) = dx/(pi sqrt(h^2-(x-c)^2))
  // and d(mu12) = (x-c) dx/(h pi sqrt(h^2-(x-c)^2)) on [c-h, c+h].
  static MatrixMeasure arcsine(double halfwidth, double center);
  // One-sided limit: only mu11 is nonzero, carried by a classical measure
  // with known recurrence coefficients (used to build Gauss rules) and
  // density (for dumps).
  static MatrixMeasure semi_infinite_classical(CoefficientSequence coeffs,
                                               std::function<double(double)> density,
                                               double lo, double hi);
  static MatrixMeasure from_atoms(std::vector<MatrixAtom> atoms);

  Kind kind() const { return kind_; }
  bool one_sided() const { return one_sided_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

  double density11(double x) const;
  double density12(double x) const;
  double density22(double x) const;

  std::vector<MatrixAtom> discretize(int npoints) const;

 private:
  Kind kind_ = Kind::closed_form;
  bool one_sided_ = false;
  double lo_ = 0.0, hi_ = 0.0;
  double halfwidth_ = 0.0, center_ = 0.0;        // arcsine form
  CoefficientSequence classical_;                // one-sided form
  std::function<double(double)> density_;        // one-sided form
  std::vector<MatrixAtom> atoms_;                // discretized form
};

// Discretized spectral matrix measure of the doubly infinite operator from a
// symmetric truncation on [-truncation, truncation]: eigenvalues with the
// rank-one weight matrices built from the e_{-1} and e_0 eigenvector
// components.
MatrixMeasure discretize_bilateral(const BilateralCoefficients& bilateral, int truncation);

// Matrix orthogonal polynomial of the 2x2 block fold:
//   P_n(t) = [[ q_n(t), -(a_0/a_{-1}) q_{n-1}^(1)(t) ],
//             [ -(a_0/a_1) p_{n-1}^(1)(t), p_n(t) ]],  P_0 = I.
Mat2 matrix_orthopoly(const BilateralCoefficients& bilateral, int n, double t);

}  // namespace weaklimit
