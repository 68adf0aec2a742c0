#pragma once

#include <algorithm>
#include <cmath>

namespace weaklimit {

// Dense 2x2 real matrix, value type for the block fold and the matrix
// orthogonal polynomials.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 sym(double m11, double m12, double m22) { return {m11, m12, m12, m22}; }

  Mat2 transpose() const { return {a11, a21, a12, a22}; }

  Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

  double max_abs() const {
    return std::max(std::max(std::fabs(a11), std::fabs(a12)),
                    std::max(std::fabs(a21), std::fabs(a22)));
  }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

}  // namespace weaklimit
