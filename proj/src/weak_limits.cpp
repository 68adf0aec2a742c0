#include "weaklimit/weak_limits.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "weaklimit/errors.hpp"
#include "weaklimit/jacobi_operators.hpp"
#include "weaklimit/recurrence.hpp"

namespace weaklimit {

TestFunction TestFunction::monomial(int degree) {
  if (degree < 0) throw domain_error("monomial degree must be >= 0");
  TestFunction f;
  f.degree_ = degree;
  f.label_ = (degree == 0) ? "1" : (degree == 1 ? "x" : "x^" + std::to_string(degree));
  return f;
}

TestFunction TestFunction::callable(std::function<double(double)> f, std::string label) {
  if (!f) throw domain_error("empty test function");
  TestFunction t;
  t.f_ = std::move(f);
  t.label_ = std::move(label);
  return t;
}

double TestFunction::operator()(double x) const {
  if (is_monomial()) return std::pow(x, degree_);
  return f_(x);
}

namespace {

// Doubles the rule size until two successive evaluations agree.
double adaptive_quadrature(const std::function<double(int)>& eval, int initial, double rel_tol,
                           int max_size) {
  int size = std::max(initial, 2);
  double prev = eval(size);
  while (size <= max_size) {
    size *= 2;
    const double cur = eval(size);
    if (std::fabs(cur - prev) <= rel_tol * std::max(1.0, std::fabs(cur))) return cur;
    prev = cur;
  }
  throw convergence_error("quadrature not converged at size " + std::to_string(max_size));
}

double lattice_sum(const MeasureFamily& family, int n, int k, int l, const TestFunction& f) {
  const CoefficientSequence seq = family.member(n);
  const int top = n + std::max(k, l);
  long double acc = 0.0L;
  for (const LatticePoint& pt : family.support_points(n)) {
    const std::vector<double> p = eval_orthonormal_lattice(seq, top, pt.x);
    acc += static_cast<long double>(f(pt.x)) * p[n + k] * p[n + l] * pt.weight;
  }
  return static_cast<double>(acc);
}

}  // namespace

double lhs_integral(const MeasureFamily& family, int n, int k, int l, const TestFunction& f) {
  if (n + k < 0 || n + l < 0) {
    throw domain_error("polynomial index out of range: n+k = " + std::to_string(n + k) +
                       ", n+l = " + std::to_string(n + l));
  }
  const CoefficientSequence seq = family.member(n);
  if (seq.support_cutoff && (n + k >= *seq.support_cutoff || n + l >= *seq.support_cutoff)) {
    throw domain_error("polynomial index beyond finite support N = " +
                       std::to_string(*seq.support_cutoff));
  }
  if (f.is_monomial()) return moment_entry(seq, n, k, l, f.monomial_degree());
  if (family.has_support()) return lattice_sum(family, n, k, l, f);
  const auto eval = [&](int size) {
    const QuadratureRule rule = gauss_quadrature(truncate(seq, size));
    long double acc = 0.0L;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const auto [pk, pl] = eval_orthonormal_pair(seq, n + k, n + l, rule.nodes[i]);
      acc += static_cast<long double>(rule.weights[i]) * f(rule.nodes[i]) * pk * pl;
    }
    return static_cast<double>(acc);
  };
  const int initial = std::max(64, 2 * (n + std::abs(k) + std::abs(l)) + 8);
  return adaptive_quadrature(eval, initial, 1e-8, 1 << 16);
}

double rhs_limit(const LimitData& limit, int k, int l, const TestFunction& f) {
  if (k > l) std::swap(k, l);
  const BilateralCoefficients& bc = limit.bilateral;
  if (bc.one_sided && l >= 0) {
    throw domain_error("one-sided limit: the bilinear form is defined for k, l <= -1");
  }
  if (f.is_monomial()) return bilateral_moment_entry(bc, k, l, f.monomial_degree());
  if (!limit.measure) {
    throw domain_error("no matrix measure configured for this limit "
                       "(closed form or discretization required)");
  }
  const MatrixMeasure& mu = *limit.measure;
  const auto eval_atoms = [&](const std::vector<MatrixAtom>& atoms) {
    long double acc = 0.0L;
    for (const MatrixAtom& atom : atoms) {
      const VectorSymbol vk = eval_vector_symbol(bc, k, atom.x);
      const VectorSymbol vl = eval_vector_symbol(bc, l, atom.x);
      acc += static_cast<long double>(f(atom.x)) *
             (vk.A * (atom.w.a11 * vl.A + atom.w.a12 * vl.B) +
              vk.B * (atom.w.a21 * vl.A + atom.w.a22 * vl.B));
    }
    return static_cast<double>(acc);
  };
  if (mu.kind() == MatrixMeasure::Kind::discretized) return eval_atoms(mu.discretize(0));
  return adaptive_quadrature([&](int size) { return eval_atoms(mu.discretize(size)); }, 64, 1e-10,
                             1 << 14);
}

double chebyshev_limit_integral(const TestFunction& f, int k, double a, double b) {
  if (k < 0) throw domain_error("Chebyshev index must be >= 0");
  if (!(a > 0.0)) throw domain_error("halfwidth must be positive");
  // (1/M) sum f(b + a cos(theta_i)) cos(k theta_i) at theta_i = (2i-1)pi/(2M):
  // the T_k factor is exact in the angle variable.
  const auto eval = [&](int size) {
    long double acc = 0.0L;
    for (int i = 1; i <= size; ++i) {
      const double theta = (2.0 * i - 1.0) * std::numbers::pi / (2.0 * size);
      acc += static_cast<long double>(f(b + a * std::cos(theta))) * std::cos(k * theta);
    }
    return static_cast<double>(acc / size);
  };
  const int initial = f.is_monomial() ? std::max(32, (f.monomial_degree() + k) / 2 + 2) : 64;
  return adaptive_quadrature(eval, initial, 1e-12, 1 << 15);
}

namespace {

double laguerre_classical(int n, double beta, double x) {
  // (n+1) L_{n+1} = (2n+1+beta-x) L_n - (n+beta) L_{n-1}, L_0 = 1.
  double prev = 0.0;
  double cur = 1.0;
  for (int m = 0; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + beta - x) * cur - (m + beta) * prev) / (m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_classical(int n, double x) {
  // H_{n+1} = 2x H_n - 2n H_{n-1}, H_0 = 1.
  double prev = 0.0;
  double cur = 1.0;
  for (int m = 0; m < n; ++m) {
    const double next = 2.0 * x * cur - 2.0 * m * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double dual_hahn_limit_rhs(DualHahnMode mode, double beta, int k, int l, const TestFunction& f) {
  if (k < 1 || l < 1) throw domain_error("dual Hahn limit form requires k, l >= 1");
  const bool laguerre = (mode == DualHahnMode::laguerre);
  if (laguerre && !(beta > -1.0)) throw domain_error("beta must exceed -1");

  double log_pref = 0.0;
  double sign = 1.0;
  if (laguerre) {
    // h_j = binom(j+beta, j)
    const auto log_h = [beta](int j) {
      return std::lgamma(j + beta + 1.0) - std::lgamma(j + 1.0) - std::lgamma(beta + 1.0);
    };
    log_pref = -0.5 * (log_h(k - 1) + log_h(l - 1));
    sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
  } else {
    log_pref = -0.5 * ((k + l - 2) * std::numbers::ln2 + std::lgamma(double(k)) +
                       std::lgamma(double(l)));
  }
  const double pref = sign * std::exp(log_pref);

  const CoefficientSequence seq = laguerre ? laguerre_coefficients(beta) : hermite_coefficients();
  const auto eval = [&](int size) {
    const QuadratureRule rule = gauss_quadrature(truncate(seq, size));
    return rule.integrate([&](double x) {
      const double pk = laguerre ? laguerre_classical(k - 1, beta, x) : hermite_classical(k - 1, x);
      const double pl = laguerre ? laguerre_classical(l - 1, beta, x) : hermite_classical(l - 1, x);
      return f(x) * pk * pl;
    });
  };
  const int initial =
      std::max(32, k + l + (f.is_monomial() ? f.monomial_degree() : 16));
  return pref * adaptive_quadrature(eval, initial, 1e-10, 1 << 13);
}

ConvergenceTable convergence_table(const MeasureFamily& family, const LimitData& limit, int k,
                                   int l, const TestFunction& f, const std::vector<int>& ns) {
  if (ns.empty()) throw domain_error("empty n list");
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) throw domain_error("n list must be increasing");
  }
  ConvergenceTable table;
  double rhs = 0.0;
  std::string rhs_error;
  try {
    rhs = rhs_limit(limit, k, l, f);
  } catch (const std::exception& e) {
    rhs_error = e.what();
  }
  for (int n : ns) {
    ConvergenceRecord rec;
    rec.n = n;
    rec.rhs = rhs;
    if (!rhs_error.empty()) {
      rec.message = rhs_error;
      table.rows.push_back(rec);
      continue;
    }
    try {
      rec.lhs = lhs_integral(family, n, k, l, f);
      rec.abs_error = std::fabs(rec.lhs - rhs);
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.message = e.what();
    }
    table.rows.push_back(rec);
  }
  const std::size_t m = table.rows.size();
  if (m >= 3) {
    const ConvergenceRecord& r1 = table.rows[m - 3];
    const ConvergenceRecord& r2 = table.rows[m - 2];
    const ConvergenceRecord& r3 = table.rows[m - 1];
    if (r1.ok && r2.ok && r3.ok) {
      const double tiny = 1e-14 * std::max(1.0, std::fabs(rhs));
      table.trend_decreasing = r2.abs_error <= r1.abs_error && r3.abs_error <= r2.abs_error &&
                               (r3.abs_error < r1.abs_error || r3.abs_error <= tiny);
    }
  }
  return table;
}

}  // namespace weaklimit
