#include "weaklimit/recurrence.hpp"

#include <cmath>
#include <string>

#include "weaklimit/errors.hpp"

namespace weaklimit {

namespace {

void check_degree(const CoefficientSequence& coeffs, int n) {
  if (n < -1) throw domain_error("polynomial degree must be >= -1, got " + std::to_string(n));
  if (coeffs.support_cutoff && n > *coeffs.support_cutoff) {
    throw domain_error("degree " + std::to_string(n) + " beyond finite support N = " +
                       std::to_string(*coeffs.support_cutoff));
  }
}

// Runs the recurrence up to degree n_max and reports the values at the two
// requested degrees.  Values accumulate in long double.
std::pair<double, double> forward(const CoefficientSequence& coeffs, int n1, int n2, double x) {
  const int n_max = std::max(n1, n2);
  long double prev = 0.0L;  // p_{-1}
  long double cur = 1.0L;   // p_0
  auto pick = [&](int deg, long double value, std::pair<double, double>& out) {
    if (deg == n1) out.first = static_cast<double>(value);
    if (deg == n2) out.second = static_cast<double>(value);
  };
  std::pair<double, double> out{0.0, 0.0};
  pick(-1, prev, out);
  pick(0, cur, out);
  for (int m = 0; m < n_max; ++m) {
    const double a_next = coeffs.a(m + 1);
    if (!(a_next > 0.0)) {
      throw domain_error("nonpositive recurrence coefficient a_" + std::to_string(m + 1) +
                         " = " + std::to_string(a_next));
    }
    const double a_cur = (m == 0) ? 0.0 : coeffs.a(m);  // multiplies p_{-1} = 0 at m = 0
    const long double next =
        ((static_cast<long double>(x) - coeffs.b(m)) * cur - static_cast<long double>(a_cur) * prev) /
        a_next;
    prev = cur;
    cur = next;
    pick(m + 1, cur, out);
  }
  return out;
}

}  // namespace

double eval_orthonormal(const CoefficientSequence& coeffs, int n, double x) {
  check_degree(coeffs, n);
  if (n == -1) return 0.0;
  if (n == 0) return 1.0;
  return forward(coeffs, n, n, x).first;
}

std::pair<double, double> eval_orthonormal_pair(const CoefficientSequence& coeffs,
                                                int n1, int n2, double x) {
  check_degree(coeffs, n1);
  check_degree(coeffs, n2);
  if (std::max(n1, n2) <= 0) {
    return {n1 == 0 ? 1.0 : 0.0, n2 == 0 ? 1.0 : 0.0};
  }
  return forward(coeffs, n1, n2, x);
}

double eval_associated(const CoefficientSequence& coeffs, int n, double x) {
  if (n == -1) return 0.0;
  return eval_orthonormal(coeffs.shifted(), n, x);
}

std::vector<double> eval_orthonormal_lattice(const CoefficientSequence& coeffs, int top,
                                             double x) {
  if (!coeffs.support_cutoff) {
    throw domain_error("lattice evaluation requires a finite-support sequence");
  }
  const int N = *coeffs.support_cutoff;
  if (top < 0 || top >= N) throw domain_error("lattice degree must lie in [0, N-1]");

  std::vector<long double> f(N);
  f[0] = 1.0L;
  for (int m = 0; m + 1 < N; ++m) {
    const double a_next = coeffs.a(m + 1);
    if (!(a_next > 0.0)) {
      throw domain_error("nonpositive recurrence coefficient a_" + std::to_string(m + 1));
    }
    const long double below = (m == 0) ? 0.0L : coeffs.a(m) * f[m - 1];
    f[m + 1] = ((static_cast<long double>(x) - coeffs.b(m)) * f[m] - below) / a_next;
  }
  int peak = 0;
  for (int m = 1; m < N; ++m) {
    if (std::fabs(double(f[m])) > std::fabs(double(f[peak]))) peak = m;
  }

  std::vector<double> out(top + 1);
  const bool needs_glue = std::fabs(double(f[peak])) > 1e6 && peak < N - 1 && N >= 2;
  if (needs_glue) {
    std::vector<long double> g(N);
    g[N - 1] = 1.0L;
    g[N - 2] = (static_cast<long double>(x) - coeffs.b(N - 1)) / coeffs.a(N - 1);
    for (int m = N - 2; m >= 1; --m) {
      g[m - 1] =
          ((static_cast<long double>(x) - coeffs.b(m)) * g[m] - coeffs.a(m + 1) * g[m + 1]) /
          coeffs.a(m);
    }
    const long double ref = g[peak];
    if (ref != 0.0L && std::isfinite(static_cast<double>(f[peak] / ref)) &&
        std::isfinite(static_cast<double>(g[0]))) {
      const long double scale = f[peak] / ref;
      for (int m = 0; m <= top; ++m) {
        out[m] = static_cast<double>(m < peak ? f[m] : g[m] * scale);
      }
      return out;
    }
  }
  for (int m = 0; m <= top; ++m) out[m] = static_cast<double>(f[m]);
  return out;
}

double leading_coefficient(const CoefficientSequence& coeffs, int n) {
  if (n < 0) throw domain_error("leading coefficient defined for n >= 0");
  long double prod = 1.0L;
  for (int m = 1; m <= n; ++m) {
    const double am = coeffs.a(m);
    if (!(am > 0.0)) {
      throw domain_error("nonpositive recurrence coefficient a_" + std::to_string(m));
    }
    prod *= am;
  }
  const long double gamma = 1.0L / prod;
  if (!std::isfinite(static_cast<double>(gamma)) || gamma == 0.0L) {
    throw convergence_error("leading coefficient overflows representable range at n = " +
                            std::to_string(n));
  }
  return static_cast<double>(gamma);
}

VectorSymbol eval_vector_symbol(const BilateralCoefficients& bilateral, int n, double x) {
  if (n == 0) return {0.0, 1.0};
  if (n == -1) return {1.0, 0.0};
  const double a0 = bilateral.a(0);
  if (n > 0) {
    const CoefficientSequence plus = bilateral.jplus();
    double factor = 0.0;
    if (a0 != 0.0) {
      const double a1 = bilateral.a(1);
      if (!(a1 > 0.0)) throw domain_error("vector symbol requires a_1 > 0");
      factor = a0 / a1;
    }
    const double assoc = (factor == 0.0) ? 0.0 : eval_associated(plus, n - 1, x);
    return {-factor * assoc, eval_orthonormal(plus, n, x)};
  }
  const CoefficientSequence minus = bilateral.jminus();
  const int m = -n;  // n < 0, m >= 2 here
  double factor = 0.0;
  if (a0 != 0.0) {
    const double am1 = bilateral.a(-1);
    if (!(am1 > 0.0)) throw domain_error("vector symbol requires a_{-1} > 0");
    factor = a0 / am1;
  }
  const double assoc = (factor == 0.0) ? 0.0 : eval_associated(minus, m - 2, x);
  return {eval_orthonormal(minus, m - 1, x), -factor * assoc};
}

}  // namespace weaklimit
