#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weaklimit/families.hpp"

namespace weaklimit {

// Test function: either a monomial x^m, which is integrated exactly by band
// walks, or a bounded continuous callable integrated by quadrature or
// lattice sums.
class TestFunction {
 public:
  static TestFunction monomial(int degree);
  static TestFunction callable(std::function<double(double)> f, std::string label = "f");

  bool is_monomial() const { return degree_ >= 0; }
  int monomial_degree() const { return degree_; }
  double operator()(double x) const;
  const std::string& label() const { return label_; }

 private:
  int degree_ = -1;
  std::function<double(double)> f_;
  std::string label_;
};

// integral of f(x) p_{n+k}(x; mu_n) p_{n+l}(x; mu_n) d mu_n(x).
// Monomial f goes through the exact band walk; callable f through a Gauss
// rule on the truncation (size doubled until two rules agree to 1e-8), or
// through the exact lattice sum for families with explicit discrete support.
double lhs_integral(const MeasureFamily& family, int n, int k, int l, const TestFunction& f);

// integral of f(x) (A_k, B_k) dmu(x) (A_l, B_l)^T against the limit's 2x2
// spectral matrix measure.  Monomial f is the exact band walk <J^m e_k, e_l>
// on the bilateral matrix; callable f is integrated against the configured
// matrix measure.  One-sided limits are defined for k, l <= -1 only.
double rhs_limit(const LimitData& limit, int k, int l, const TestFunction& f);

// (1/pi) integral of f(x) T_k((x-b)/a) / sqrt(a^2-(x-b)^2) dx over
// [b-a, b+a], by Gauss-Chebyshev quadrature pulled back to [-1, 1].
double chebyshev_limit_integral(const TestFunction& f, int k, double a, double b);

// The dual Hahn limit forms, for k, l >= 1 (the indices of p_{n-k}, p_{n-l}):
//  laguerre: (-1)^{k+l}/sqrt(h_{k-1} h_{l-1})
//              * integral of f L^beta_{k-1} L^beta_{l-1} x^beta e^-x/Gamma(beta+1),
//            with h_j = binom(j+beta, j);
//  hermite:  1/sqrt(2^{k+l-2} (k-1)! (l-1)!)
//              * integral of f H_{k-1} H_{l-1} e^-x^2/sqrt(pi).
// Evaluated with Gauss rules built from the classical coefficient sequences.
double dual_hahn_limit_rhs(DualHahnMode mode, double beta, int k, int l, const TestFunction& f);

struct ConvergenceRecord {
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_error = 0.0;
  bool ok = false;
  std::string message;
};

struct ConvergenceTable {
  std::vector<ConvergenceRecord> rows;
  // Over the last three rows: errors non-increasing and either strictly
  // smaller overall or already at exact zero.
  bool trend_decreasing = false;
};

// Rows (n, lhs, rhs, |lhs-rhs|) for each n; operand errors mark the row
// failed instead of aborting the table.
ConvergenceTable convergence_table(const MeasureFamily& family, const LimitData& limit, int k,
                                   int l, const TestFunction& f, const std::vector<int>& ns);

}  // namespace weaklimit
