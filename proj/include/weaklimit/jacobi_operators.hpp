#pragma once

#include <functional>
#include <vector>

#include "weaklimit/coefficients.hpp"
#include "weaklimit/mat2.hpp"

namespace weaklimit {

struct MeasureFamily;  // families.hpp

// Symmetric tridiagonal matrix: diag = b_0..b_{N-1}, off = a_1..a_{N-1}.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> off;

  int dim() const { return static_cast<int>(diag.size()); }
};

// Top-left N x N block of the Jacobi matrix of a coefficient sequence.
TridiagonalMatrix truncate(const CoefficientSequence& coeffs, int N);

// Eigenvalues (ascending) plus the requested rows of the accumulated
// orthogonal transform: rows[r][i] is the track_rows[r] component of the
// i-th normalized eigenvector.  Implicit-shift QL; only the tracked rows are
// updated, no full eigenvector matrix is formed.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> rows;
};
TridiagonalEigen tridiagonal_eigen(const TridiagonalMatrix& matrix,
                                   const std::vector<int>& track_rows);

// Gauss rule for the spectral measure of the truncation: nodes are the
// eigenvalues, weight_i the squared first component of the i-th eigenvector
// (evaluated through the equivalent Christoffel form 1/sum_j p_j(node)^2
// after a Newton polish of the node).  Exact for polynomials of degree
// <= 2N-1; weights sum to the total mass 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int exactness_degree = -1;

  double integrate(const std::function<double(double)>& f) const;
};
QuadratureRule gauss_quadrature(const TridiagonalMatrix& jacobi);

// <J^m e_{n+k}, e_{n+l}> = integral of x^m p_{n+k} p_{n+l} dmu, by banded
// multiplication restricted to the window [n+min(k,l)-m, n+max(k,l)+m].
// Rows and columns with negative index are zero.  Exactly 0 when |k-l| > m.
double moment_entry(const CoefficientSequence& coeffs, int n, int k, int l, int m);

// Same walk on a doubly infinite matrix: <J^m e_k, e_l>, no boundary.
double bilateral_moment_entry(const BilateralCoefficients& bilateral, int k, int l, int m);

// 2x2 block form of a doubly infinite matrix, pairing indices -n-1 and n:
//   B_0 = [[b_{-1}, a_0], [a_0, b_0]],  B_n = diag(b_{-n-1}, b_n),
//   A_n = diag(a_{-n}, a_n)  for n >= 1.
// A[j-1] holds A_j.
struct BlockFold {
  std::vector<Mat2> B;  // B_0 .. B_depth
  std::vector<Mat2> A;  // A_1 .. A_depth
};
BlockFold fold_block(const BilateralCoefficients& bilateral, int depth);

// max |(J_n)_{n+i,n+j} - bilateral_{i,j}| over the tridiagonal band with
// |i|, |j| <= window, where J_n is the Jacobi matrix of the family member at
// parameter n.  Requires n > window >= 1.
double window_convergence(const MeasureFamily& family, const BilateralCoefficients& bilateral,
                          int n, int window);

}  // namespace weaklimit
