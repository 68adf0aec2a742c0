#include "weaklimit/jacobi_operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "weaklimit/errors.hpp"
#include "weaklimit/families.hpp"

namespace weaklimit {

TridiagonalMatrix truncate(const CoefficientSequence& coeffs, int N) {
  if (N < 1) throw domain_error("truncation size must be >= 1");
  if (coeffs.support_cutoff && N > *coeffs.support_cutoff) {
    throw domain_error("truncation size " + std::to_string(N) + " beyond finite support N = " +
                       std::to_string(*coeffs.support_cutoff));
  }
  TridiagonalMatrix J;
  J.diag.resize(N);
  J.off.resize(N - 1);
  for (int i = 0; i < N; ++i) J.diag[i] = coeffs.b(i);
  for (int i = 0; i + 1 < N; ++i) J.off[i] = coeffs.a(i + 1);
  return J;
}

// Implicit-shift QL for a symmetric tridiagonal matrix.  Classical sweep
// structure; instead of accumulating the full eigenvector matrix, the plane
// rotations are applied only to the tracked rows.  Off-diagonal entries
// deflate once negligible next to their diagonal neighbours; at most 50
// sweeps per eigenvalue.
TridiagonalEigen tridiagonal_eigen(const TridiagonalMatrix& matrix,
                                   const std::vector<int>& track_rows) {
  const int n = matrix.dim();
  if (n < 1) throw domain_error("empty matrix");
  std::vector<double> d = matrix.diag;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = matrix.off[i];

  std::vector<std::vector<double>> rows(track_rows.size(), std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < track_rows.size(); ++r) {
    if (track_rows[r] < 0 || track_rows[r] >= n) throw domain_error("tracked row out of range");
    rows[r][track_rows[r]] = 1.0;
  }

  const int max_sweeps = 50;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps) {
          throw convergence_error("tridiagonal eigensolver: eigenvalue " + std::to_string(l) +
                                  " not converged after " + std::to_string(max_sweeps) +
                                  " sweeps, residual |e| = " + std::to_string(std::fabs(e[l])));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (auto& w : rows) {
            f = w[i + 1];
            w[i + 1] = s * w[i] + c * f;
            w[i] = c * w[i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

  TridiagonalEigen out;
  out.values.resize(n);
  out.rows.assign(rows.size(), std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    out.values[i] = d[order[i]];
    for (std::size_t r = 0; r < rows.size(); ++r) out.rows[r][i] = rows[r][order[i]];
  }
  return out;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += static_cast<long double>(weights[i]) * f(nodes[i]);
  return static_cast<double>(acc);
}

namespace {

// phi(x) = (x - b_{N-1}) p_{N-1}(x) - a_{N-1} p_{N-2}(x), the positive
// multiple of the truncation's characteristic polynomial whose zeros are the
// Gauss nodes, together with phi' and the Christoffel sum K = sum p_j^2.
// Everything is evaluated from the stored band in extended precision.
void characteristic_at(const TridiagonalMatrix& J, long double x, long double& phi,
                       long double& dphi, long double& christoffel) {
  const int N = J.dim();
  long double pm = 0.0L, p = 1.0L, dpm = 0.0L, dp = 0.0L;
  christoffel = 1.0L;
  for (int k = 0; k + 1 < N; ++k) {
    const long double a_next = J.off[k];
    const long double a_cur = (k > 0) ? J.off[k - 1] : 0.0L;
    const long double pn = ((x - J.diag[k]) * p - a_cur * pm) / a_next;
    const long double dpn = ((x - J.diag[k]) * dp + p - a_cur * dpm) / a_next;
    pm = p;
    p = pn;
    dpm = dp;
    dp = dpn;
    christoffel += p * p;
  }
  const long double a_last = (N >= 2) ? J.off[N - 2] : 0.0L;
  phi = (x - J.diag[N - 1]) * p - a_last * pm;
  dphi = (x - J.diag[N - 1]) * dp + p - a_last * dpm;
}

}  // namespace

QuadratureRule gauss_quadrature(const TridiagonalMatrix& jacobi) {
  for (double a : jacobi.off) {
    if (!(a > 0.0)) throw domain_error("Gauss rule requires strictly positive off-diagonal");
  }
  const TridiagonalEigen eig = tridiagonal_eigen(jacobi, {0});
  QuadratureRule rule;
  rule.nodes = eig.values;
  rule.weights.resize(jacobi.dim());
  // The eigenvalues seed a Newton polish of the characteristic polynomial,
  // and the weights come from the Christoffel identity
  // weight = (first eigenvector component)^2 = 1 / sum_j p_j(node)^2,
  // which keeps node/weight pairs consistent to working precision.  If the
  // extended-precision pass overflows (very large rules), the eigenvector
  // component is used as is.
  for (int i = 0; i < jacobi.dim(); ++i) {
    long double x = rule.nodes[i];
    long double phi = 0.0L, dphi = 0.0L, christoffel = 0.0L;
    bool polished = true;
    for (int step = 0; step < 3; ++step) {
      characteristic_at(jacobi, x, phi, dphi, christoffel);
      if (!std::isfinite(double(phi)) || !std::isfinite(double(dphi)) || dphi == 0.0L) {
        polished = false;
        break;
      }
      const long double dx = phi / dphi;
      if (std::fabs(double(dx)) > 0.1 * (1.0 + std::fabs(double(x)))) {
        polished = false;
        break;
      }
      x -= dx;
    }
    if (polished) characteristic_at(jacobi, x, phi, dphi, christoffel);
    const double weight = double(1.0L / christoffel);
    if (polished && std::isfinite(weight) && weight > 0.0) {
      rule.nodes[i] = double(x);
      rule.weights[i] = weight;
    } else {
      rule.weights[i] = eig.rows[0][i] * eig.rows[0][i];
    }
  }
  rule.exactness_degree = 2 * jacobi.dim() - 1;
  return rule;
}

namespace {

// One application of the band to a vector supported on [lo, hi]:
// (Jv)_i = off(i) v_{i-1} + diag(i) v_i + off(i+1) v_{i+1}, where off(i) is
// the entry coupling indices i-1 and i.
template <class DiagFn, class OffFn>
double band_walk(DiagFn diag, OffFn off, long from, long to, int m, long lo, long hi) {
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1), 0.0);
  std::vector<double> w(v.size(), 0.0);
  v[static_cast<std::size_t>(from - lo)] = 1.0;
  for (int step = 0; step < m; ++step) {
    for (long i = lo; i <= hi; ++i) {
      const std::size_t s = static_cast<std::size_t>(i - lo);
      double acc = diag(i) * v[s];
      if (i > lo) acc += off(i) * v[s - 1];
      if (i < hi) acc += off(i + 1) * v[s + 1];
      w[s] = acc;
    }
    v.swap(w);
  }
  return v[static_cast<std::size_t>(to - lo)];
}

}  // namespace

double moment_entry(const CoefficientSequence& coeffs, int n, int k, int l, int m) {
  if (m < 0) throw domain_error("moment degree must be >= 0");
  if (n + k < 0 || n + l < 0) {
    throw domain_error("negative polynomial index: n+k = " + std::to_string(n + k) +
                       ", n+l = " + std::to_string(n + l));
  }
  if (std::abs(k - l) > m) return 0.0;
  const long lo = std::max<long>(0, long(n) + std::min(k, l) - m);
  const long hi = long(n) + std::max(k, l) + m;
  return band_walk([&](long i) { return coeffs.b(static_cast<int>(i)); },
                   [&](long i) { return i >= 1 ? coeffs.a(static_cast<int>(i)) : 0.0; },
                   n + k, n + l, m, lo, hi);
}

double bilateral_moment_entry(const BilateralCoefficients& bilateral, int k, int l, int m) {
  if (m < 0) throw domain_error("moment degree must be >= 0");
  if (std::abs(k - l) > m) return 0.0;
  const long lo = std::min(k, l) - m;
  const long hi = std::max(k, l) + m;
  return band_walk([&](long i) { return bilateral.b(static_cast<int>(i)); },
                   [&](long i) { return bilateral.a(static_cast<int>(i)); },
                   k, l, m, lo, hi);
}

BlockFold fold_block(const BilateralCoefficients& bilateral, int depth) {
  if (depth < 0) throw domain_error("fold depth must be >= 0");
  BlockFold fold;
  fold.B.reserve(depth + 1);
  fold.B.push_back(Mat2::sym(bilateral.b(-1), bilateral.a(0), bilateral.b(0)));
  for (int j = 1; j <= depth; ++j) {
    fold.B.push_back(Mat2::diag(bilateral.b(-j - 1), bilateral.b(j)));
    fold.A.push_back(Mat2::diag(bilateral.a(-j), bilateral.a(j)));
  }
  return fold;
}

double window_convergence(const MeasureFamily& family, const BilateralCoefficients& bilateral,
                          int n, int window) {
  if (window < 1) throw domain_error("window must be >= 1");
  if (n <= window) throw domain_error("window convergence requires n > window");
  const CoefficientSequence member = family.member(n);
  double worst = 0.0;
  for (int i = -window; i <= window; ++i) {
    worst = std::max(worst, std::fabs(member.b(n + i) - bilateral.b(i)));
    if (i + 1 <= window) {
      worst = std::max(worst, std::fabs(member.a(n + i + 1) - bilateral.a(i + 1)));
    }
  }
  return worst;
}

}  // namespace weaklimit
