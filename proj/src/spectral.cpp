#include "weaklimit/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "weaklimit/errors.hpp"
#include "weaklimit/recurrence.hpp"

namespace weaklimit {

namespace {

std::string fmt_complex(Complex z) {
  std::ostringstream o;
  o << z.real() << (z.imag() < 0 ? " - " : " + ") << std::fabs(z.imag()) << "i";
  return o.str();
}

}  // namespace

Complex stieltjes_m(const CoefficientSequence& coeffs, Complex z) {
  // Modified Lentz on the J-fraction.  Level j has partial denominator
  // z - b_{j-1}; the partial numerator is 1 at level 1 and -a_{j-1}^2 after.
  constexpr double tiny = 1e-290;
  constexpr double rel_tol = 1e-13;
  constexpr long max_depth = 2000000;

  Complex f(tiny, 0.0);
  Complex C = f;
  Complex D(0.0, 0.0);
  Complex prev = f;
  // Near the support the per-level contraction slows down and |delta - 1|
  // bottoms out at a rounding floor instead of reaching rel_tol; once it has
  // stopped improving for a long stretch the convergent is as accurate as it
  // gets and is accepted.
  double best_dev = 1e300;
  long best_level = 0;
  for (long j = 1; j <= max_depth; ++j) {
    const Complex bj = z - coeffs.b(static_cast<int>(j - 1));
    Complex aj(1.0, 0.0);
    if (j > 1) {
      const double a = coeffs.a(static_cast<int>(j - 1));
      aj = Complex(-a * a, 0.0);
    }
    D = bj + aj * D;
    if (D == Complex(0.0, 0.0)) D = tiny;
    D = 1.0 / D;
    C = bj + aj / C;
    if (C == Complex(0.0, 0.0)) C = tiny;
    const Complex delta = C * D;
    prev = f;
    f *= delta;
    const double dev = std::abs(delta - 1.0);
    if (dev < rel_tol) return f;
    if (dev < 0.5 * best_dev) {
      best_dev = dev;
      best_level = j;
    } else if (j - best_level > 20000 && best_dev < 1e-8) {
      return f;
    }
    // A vanishing a_j terminates the fraction exactly (finite support).
    if (coeffs.a(static_cast<int>(j)) == 0.0) return f;
  }
  throw convergence_error("continued fraction not converged after " + std::to_string(max_depth) +
                          " levels; last two convergents " + fmt_complex(prev) + ", " +
                          fmt_complex(f));
}

Complex second_kind(const CoefficientSequence& coeffs, int n, Complex z, double a0) {
  if (n < -1) throw domain_error("second kind function defined for n >= -1");
  if (!(a0 > 0.0)) throw domain_error("second kind normalization requires a0 > 0");
  if (n == -1) return Complex(1.0 / a0, 0.0);
  Complex prev(1.0 / a0, 0.0);
  Complex cur = stieltjes_m(coeffs, z);
  if (n == 0) return cur;
  const double amp_limit = 1e8 * std::max(1.0, std::abs(cur));
  for (int m = 0; m < n; ++m) {
    // a_{m+1} p~_{m+1} = (z - b_m) p~_m - a_m p~_{m-1}, with a_0 p~_{-1} = 1.
    const double am = (m == 0) ? a0 : coeffs.a(m);
    const double a_next = coeffs.a(m + 1);
    if (!(a_next > 0.0)) {
      throw domain_error("second kind recurrence hit nonpositive a_" + std::to_string(m + 1));
    }
    const Complex next = ((z - coeffs.b(m)) * cur - am * prev) / a_next;
    prev = cur;
    cur = next;
    if (std::abs(cur) > amp_limit) {
      throw convergence_error("second kind forward recurrence amplified at n = " +
                              std::to_string(m + 1) + "; minimal solution lost");
    }
  }
  return cur;
}

TransformMatrix matrix_stieltjes(const BilateralCoefficients& bilateral, Complex z) {
  const Complex pt = stieltjes_m(bilateral.jplus(), z);
  const Complex qt = stieltjes_m(bilateral.jminus(), z);
  const double a0 = bilateral.a(0);
  const Complex den = 1.0 - a0 * a0 * pt * qt;
  if (std::abs(den) < 1e-12) {
    throw convergence_error("degenerate denominator |1 - a0^2 p~0 q~0| = " +
                            std::to_string(std::abs(den)) + "; z too close to the spectrum");
  }
  const Complex m12 = a0 * pt * qt / den;
  return {qt / den, m12, m12, pt / den};
}

ResolventSolution resolvent_solution(const BilateralCoefficients& bilateral, Complex z,
                                     int truncation) {
  if (truncation < 2) throw domain_error("resolvent truncation must be >= 2");
  const int T = truncation;
  const int n = 2 * T + 1;  // indices -T..T, storage j + T

  // (z - J): sub/diag/super, with two right-hand sides e_0 and e_{-1}.
  std::vector<Complex> sub(n), dg(n), sup(n), fill(n, 0.0);
  for (int s = 0; s < n; ++s) {
    const int j = s - T;
    dg[s] = z - bilateral.b(j);
    if (s > 0) sub[s] = -bilateral.a(j);
    if (s + 1 < n) sup[s] = -bilateral.a(j + 1);
  }
  std::vector<Complex> rhs_r(n, 0.0), rhs_s(n, 0.0);
  rhs_r[T] = 1.0;      // e_0
  rhs_s[T - 1] = 1.0;  // e_{-1}

  // Tridiagonal LU with partial pivoting; pivoting introduces one extra
  // superdiagonal (fill).
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(dg[i]) >= std::abs(sub[i + 1])) {
      if (dg[i] == Complex(0.0, 0.0)) throw convergence_error("singular system near the spectrum");
      const Complex mult = sub[i + 1] / dg[i];
      dg[i + 1] -= mult * sup[i];
      if (i + 2 < n) {
        sup[i + 1] -= mult * fill[i];  // fill[i] is zero unless a swap happened above
      }
      rhs_r[i + 1] -= mult * rhs_r[i];
      rhs_s[i + 1] -= mult * rhs_s[i];
    } else {
      if (sub[i + 1] == Complex(0.0, 0.0)) {
        throw convergence_error("singular system near the spectrum");
      }
      const Complex mult = dg[i] / sub[i + 1];
      // Swap rows i and i+1, then eliminate.
      dg[i] = sub[i + 1];
      const Complex old_sup = sup[i];
      const Complex old_fill = fill[i];
      sup[i] = dg[i + 1];
      fill[i] = (i + 2 < n) ? sup[i + 1] : Complex(0.0, 0.0);
      dg[i + 1] = old_sup - mult * sup[i];
      if (i + 2 < n) sup[i + 1] = old_fill - mult * fill[i];
      std::swap(rhs_r[i], rhs_r[i + 1]);
      std::swap(rhs_s[i], rhs_s[i + 1]);
      rhs_r[i + 1] -= mult * rhs_r[i];
      rhs_s[i + 1] -= mult * rhs_s[i];
    }
  }
  if (dg[n - 1] == Complex(0.0, 0.0)) throw convergence_error("singular system near the spectrum");

  auto back_substitute = [&](std::vector<Complex>& x) {
    x[n - 1] /= dg[n - 1];
    if (n >= 2) x[n - 2] = (x[n - 2] - sup[n - 2] * x[n - 1]) / dg[n - 2];
    for (int i = n - 3; i >= 0; --i) {
      x[i] = (x[i] - sup[i] * x[i + 1] - fill[i] * x[i + 2]) / dg[i];
    }
  };
  back_substitute(rhs_r);
  back_substitute(rhs_s);
  return {std::move(rhs_r), std::move(rhs_s), T};
}

TransformMatrix resolvent_oracle(const BilateralCoefficients& bilateral, Complex z,
                                 int truncation) {
  const ResolventSolution sol = resolvent_solution(bilateral, z, truncation);
  const int T = sol.offset;
  return {sol.s[T - 1], sol.s[T], sol.r[T - 1], sol.r[T]};
}

double invert_stieltjes(const std::function<Complex(Complex)>& transform, double x,
                        double epsilon) {
  if (!(epsilon > 0.0)) throw domain_error("inversion smoothing epsilon must be > 0");
  return transform(Complex(x, -epsilon)).imag() / std::numbers::pi;
}

double invert_stieltjes_refined(const std::function<Complex(Complex)>& transform, double x,
                                double epsilon) {
  const double coarse = invert_stieltjes(transform, x, epsilon);
  const double fine = invert_stieltjes(transform, x, 0.5 * epsilon);
  return 2.0 * fine - coarse;
}

MatrixMeasure MatrixMeasure::arcsine(double halfwidth, double center) {
  if (!(halfwidth > 0.0)) throw domain_error("arcsine measure requires positive halfwidth");
  MatrixMeasure m;
  m.kind_ = Kind::closed_form;
  m.halfwidth_ = halfwidth;
  m.center_ = center;
  m.lo_ = center - halfwidth;
  m.hi_ = center + halfwidth;
  return m;
}

MatrixMeasure MatrixMeasure::semi_infinite_classical(CoefficientSequence coeffs,
                                                     std::function<double(double)> density,
                                                     double lo, double hi) {
  MatrixMeasure m;
  m.kind_ = Kind::closed_form;
  m.one_sided_ = true;
  m.classical_ = std::move(coeffs);
  m.density_ = std::move(density);
  m.lo_ = lo;
  m.hi_ = hi;
  return m;
}

MatrixMeasure MatrixMeasure::from_atoms(std::vector<MatrixAtom> atoms) {
  if (atoms.empty()) throw domain_error("discretized measure needs at least one atom");
  MatrixMeasure m;
  m.kind_ = Kind::discretized;
  m.atoms_ = std::move(atoms);
  m.lo_ = m.atoms_.front().x;
  m.hi_ = m.atoms_.back().x;
  return m;
}

double MatrixMeasure::density11(double x) const {
  if (kind_ == Kind::discretized) throw domain_error("discretized measure has no density");
  if (one_sided_) return (x >= lo_ && x <= hi_) ? density_(x) : 0.0;
  const double u = x - center_;
  const double rad = halfwidth_ * halfwidth_ - u * u;
  if (rad <= 0.0) return 0.0;
  return 1.0 / (std::numbers::pi * std::sqrt(rad));
}

double MatrixMeasure::density12(double x) const {
  if (kind_ == Kind::discretized) throw domain_error("discretized measure has no density");
  if (one_sided_) return 0.0;
  const double u = x - center_;
  const double rad = halfwidth_ * halfwidth_ - u * u;
  if (rad <= 0.0) return 0.0;
  return u / (halfwidth_ * std::numbers::pi * std::sqrt(rad));
}

double MatrixMeasure::density22(double x) const {
  if (kind_ == Kind::discretized) throw domain_error("discretized measure has no density");
  if (one_sided_) return 0.0;
  return density11(x);
}

std::vector<MatrixAtom> MatrixMeasure::discretize(int npoints) const {
  if (kind_ == Kind::discretized) return atoms_;
  if (npoints < 1) throw domain_error("discretization needs at least one point");
  std::vector<MatrixAtom> atoms;
  atoms.reserve(npoints);
  if (one_sided_) {
    const QuadratureRule rule = gauss_quadrature(truncate(classical_, npoints));
    for (int i = 0; i < npoints; ++i) {
      atoms.push_back({rule.nodes[i], Mat2::sym(rule.weights[i], 0.0, 0.0)});
    }
    return atoms;
  }
  // Gauss-Chebyshev (first kind) pulled back to [center-h, center+h]:
  // integral of g d(mu11) = (1/M) sum g(center + h u_i) with u_i = cos(theta_i),
  // and the mu12 weight picks up the extra factor u_i.
  const double inv = 1.0 / npoints;
  for (int i = npoints; i >= 1; --i) {
    const double theta = (2.0 * i - 1.0) * std::numbers::pi / (2.0 * npoints);
    const double u = std::cos(theta);
    atoms.push_back({center_ + halfwidth_ * u, Mat2::sym(inv, inv * u, inv)});
  }
  return atoms;
}

MatrixMeasure discretize_bilateral(const BilateralCoefficients& bilateral, int truncation) {
  if (truncation < 2) throw domain_error("truncation must be >= 2");
  const int T = truncation;
  const int n = 2 * T + 1;
  TridiagonalMatrix J;
  J.diag.resize(n);
  J.off.resize(n - 1);
  for (int s = 0; s < n; ++s) {
    J.diag[s] = bilateral.b(s - T);
    if (s + 1 < n) J.off[s] = bilateral.a(s - T + 1);
  }
  const TridiagonalEigen eig = tridiagonal_eigen(J, {T - 1, T});
  std::vector<MatrixAtom> atoms(n);
  for (int i = 0; i < n; ++i) {
    const double v1 = eig.rows[0][i];  // e_{-1} component
    const double v2 = eig.rows[1][i];  // e_0 component
    atoms[i] = {eig.values[i], Mat2::sym(v1 * v1, v1 * v2, v2 * v2)};
  }
  return MatrixMeasure::from_atoms(std::move(atoms));
}

Mat2 matrix_orthopoly(const BilateralCoefficients& bilateral, int n, double t) {
  if (n < 0) throw domain_error("matrix polynomial defined for n >= 0");
  if (n == 0) return Mat2::identity();
  const CoefficientSequence plus = bilateral.jplus();
  const CoefficientSequence minus = bilateral.jminus();
  const double a0 = bilateral.a(0);
  double cp = 0.0, cm = 0.0;
  if (a0 != 0.0) {
    if (!(bilateral.a(1) > 0.0) || !(bilateral.a(-1) > 0.0)) {
      throw domain_error("matrix polynomial requires a_1, a_{-1} > 0");
    }
    cp = a0 / bilateral.a(1);
    cm = a0 / bilateral.a(-1);
  }
  Mat2 P;
  P.a11 = eval_orthonormal(minus, n, t);
  P.a12 = (cm == 0.0) ? 0.0 : -cm * eval_associated(minus, n - 1, t);
  P.a21 = (cp == 0.0) ? 0.0 : -cp * eval_associated(plus, n - 1, t);
  P.a22 = eval_orthonormal(plus, n, t);
  return P;
}

}  // namespace weaklimit
