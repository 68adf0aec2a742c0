#include "weaklimit/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "weaklimit/errors.hpp"

namespace weaklimit {

std::vector<LatticePoint> MeasureFamily::support_points(int k) const {
  if (!support) throw domain_error("family '" + name + "' has no explicit discrete support");
  return support(k);
}

CoefficientSequence MeasureFamily::member(int k) const {
  CoefficientSequence seq;
  seq.a_rule = [fa = a, k](int n) { return fa(n, k); };
  seq.b_rule = [fb = b, k](int n) { return fb(n, k); };
  if (cutoff) seq.support_cutoff = cutoff(k);
  return seq;
}

std::string FamilyDescriptor::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["params"] = params;
  j["cutoff_rule"] = cutoff_rule;
  j["scaling"] = scaling;
  return j.dump();
}

namespace {

struct Extrapolated {
  double value = 0.0;
  bool converged = false;
};

// Iterated Aitken: with roughly geometric probes a power-law error decays
// geometrically along the samples, which Aitken cancels level by level.
Extrapolated aitken_limit(std::vector<double> v) {
  if (v.empty()) throw domain_error("empty sample list");
  double last = v.back();
  double prev_level = last;
  while (v.size() >= 3) {
    std::vector<double> w;
    w.reserve(v.size() - 2);
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
      const double d1 = v[i + 1] - v[i];
      const double d2 = v[i + 2] - v[i + 1];
      const double den = d2 - d1;
      const double scale =
          std::max({std::fabs(v[i]), std::fabs(v[i + 1]), std::fabs(v[i + 2]), 1.0});
      if (std::fabs(den) <= 1e-13 * scale) {
        w.push_back(v[i + 2]);
      } else {
        w.push_back(v[i + 2] - d2 * d2 / den);
      }
    }
    prev_level = last;
    last = w.back();
    v = std::move(w);
  }
  const double tol = std::max(1e-6, 1e-6 * std::fabs(last));
  return {last, std::fabs(last - prev_level) <= tol};
}

std::string format_value(double v) {
  std::ostringstream o;
  o.precision(9);
  o << v;
  return o.str();
}

// Compares the stored closed-form limit against the numeric extrapolation at
// the given offsets; disagreements are surfaced, not silenced.
void cross_validate(Family& f, const std::vector<int>& offsets, double tol) {
  for (int k : offsets) {
    const NumericLimit nl = numeric_limit(f.family, k, default_probe());
    const double ca = f.limit.bilateral.a(k);
    const double cb = f.limit.bilateral.b(k);
    if (std::fabs(nl.a - ca) > tol || std::fabs(nl.b - cb) > tol) {
      f.notes.push_back("limit validation at k=" + std::to_string(k) + ": numeric (" +
                        format_value(nl.a) + ", " + format_value(nl.b) + ") vs closed form (" +
                        format_value(ca) + ", " + format_value(cb) + ")");
    }
  }
}

}  // namespace

std::vector<int> default_probe(int max_n) {
  if (max_n < 64) throw domain_error("probe ceiling too small");
  std::vector<int> probe;
  int v = max_n;
  for (int i = 0; i < 7; ++i) {
    probe.push_back(v);
    v /= 2;
  }
  std::reverse(probe.begin(), probe.end());
  return probe;
}

NumericLimit numeric_limit(const MeasureFamily& family, int k, const std::vector<int>& probe) {
  if (probe.size() < 2) throw domain_error("probe needs at least two points");
  for (std::size_t i = 1; i < probe.size(); ++i) {
    if (probe[i] <= probe[i - 1]) throw domain_error("probe must be increasing");
  }
  std::vector<double> as, bs;
  as.reserve(probe.size());
  bs.reserve(probe.size());
  for (int n : probe) {
    if (n <= 0 || n + k < 1) throw domain_error("probe too small for offset k");
    const CoefficientSequence member = family.member(n);
    as.push_back(member.a(n + k));
    bs.push_back(member.b(n + k));
  }
  const Extrapolated ea = aitken_limit(std::move(as));
  const Extrapolated eb = aitken_limit(std::move(bs));
  return {ea.value, eb.value, ea.converged, eb.converged};
}

std::pair<double, int> lgamma_signed(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  if (x == std::floor(x)) throw domain_error("log-gamma pole at nonpositive integer");
  const long long fl = static_cast<long long>(std::floor(x));
  return {std::lgamma(x), (fl % 2 == 0) ? 1 : -1};
}

Family family_mab(double a, double b, std::optional<CoefficientSequence> member) {
  if (!(a > 0.0)) throw domain_error("class M(a,b) requires a > 0");
  const CoefficientSequence seq = member ? *member : CoefficientSequence::constant(0.5 * a, b);
  Family f;
  f.family.name = "mab";
  f.family.a = [seq](int n, int) { return seq.a(n); };
  f.family.b = [seq](int n, int) { return seq.b(n); };
  f.family.cutoff = [cut = seq.support_cutoff](int) { return cut; };
  f.limit.bilateral = BilateralCoefficients::constant(0.5 * a, b);
  f.limit.closed_form_note = "constant limit (a/2, b) of the class M(a,b)";
  f.limit.measure = MatrixMeasure::arcsine(a, b);
  f.descriptor = {"mab", {{"a", a}, {"b", b}}, "none", "none"};
  cross_validate(f, {0}, 1e-3);
  return f;
}

Family family_rescaled(CoefficientSequence base, std::function<double(int)> scale,
                       const std::string& label) {
  const std::vector<int> probe = default_probe();
  std::vector<double> ratios, as, bs;
  for (int n : probe) {
    const double cn = scale(n);
    const double cn1 = scale(n + 1);
    if (!(cn > 0.0) || cn1 < cn) throw domain_error("rescaling sequence must be positive and increasing");
    ratios.push_back(cn1 / cn);
    as.push_back(base.a(n) / cn);
    bs.push_back(base.b(n) / cn);
  }
  const Extrapolated ratio = aitken_limit(std::move(ratios));
  if (!(std::fabs(ratio.value - 1.0) <= 1e-6)) {
    throw domain_error("ratio test failed: c_{k+1}/c_k -> " + format_value(ratio.value) +
                       ", expected 1");
  }
  const double a_half = aitken_limit(as).value;
  const double b0 = aitken_limit(bs).value;
  if (!(a_half > 1e-6)) {
    throw domain_error("rescaled family degenerates: lim a_n/c_n = " + format_value(a_half));
  }

  Family f;
  f.family.name = "rescaled";
  f.family.a = [base, scale](int n, int k) { return base.a(n) / scale(k); };
  f.family.b = [base, scale](int n, int k) { return base.b(n) / scale(k); };
  f.family.cutoff = [cut = base.support_cutoff](int) { return cut; };
  f.limit.bilateral = BilateralCoefficients::constant(a_half, b0);
  f.limit.closed_form_note = "rescaled " + label + ": constant limit (a/2, b) = (" +
                             format_value(a_half) + ", " + format_value(b0) +
                             "), support [b-a, b+a]";
  f.limit.measure = MatrixMeasure::arcsine(2.0 * a_half, b0);
  f.descriptor = {"rescaled", {{"a", 2.0 * a_half}, {"b", b0}}, "none", "x -> c_k x"};
  cross_validate(f, {0}, 1e-3);
  return f;
}

Family family_wall(double b, double c) {
  if (!(b > 0.0 && b < 1.0)) throw domain_error("Wall parameter b must lie in (0,1)");
  if (!(c > 0.0 && c < 1.0)) throw domain_error("Wall parameter c must lie in (0,1)");
  Family f;
  f.family.name = "wall";
  // a_n(b,q) = q^n sqrt(b (1-q^n)(1-b q^{n-1})), b_n(b,q) = q^n [b+q-(1+q) b q^n]
  // at q = c^{1/k}; powers are taken as c^{n/k} directly.
  f.family.a = [b, c](int n, int k) {
    if (k < 1) throw domain_error("Wall family parameter k must be >= 1");
    const double qn = std::pow(c, double(n) / k);
    const double qn1 = std::pow(c, double(n - 1) / k);
    return qn * std::sqrt(b * (1.0 - qn) * (1.0 - b * qn1));
  };
  f.family.b = [b, c](int n, int k) {
    if (k < 1) throw domain_error("Wall family parameter k must be >= 1");
    const double q = std::pow(c, 1.0 / k);
    const double qn = std::pow(c, double(n) / k);
    return qn * (b + q - (1.0 + q) * b * qn);
  };
  const double a_half = c * std::sqrt(b * (1.0 - c) * (1.0 - b * c));
  const double b0 = (b + 1.0 - 2.0 * b * c) * c;
  f.limit.bilateral = BilateralCoefficients::constant(a_half, b0);
  f.limit.closed_form_note = "Wall limit A/2 = c sqrt(b(1-c)(1-bc)), B = (b+1-2bc)c";
  f.limit.measure = MatrixMeasure::arcsine(2.0 * a_half, b0);
  f.descriptor = {"wall", {{"b", b}, {"c", c}}, "none", "q = c^{1/k}"};
  if (a_half < 1e-4) {
    f.notes.push_back("family degenerates as c -> 1: limit halfwidth A = " +
                      format_value(2.0 * a_half));
  }
  cross_validate(f, {0}, 1e-3);
  return f;
}

std::pair<double, double> jacobi_growing_limits(double a, double b) {
  const double s = a + b + 2.0;
  return {2.0 * std::sqrt((a + 1.0) * (b + 1.0) * (a + b + 1.0)) / (s * s),
          (b * b - a * a) / (s * s)};
}

Family family_jacobi_growing(double a, double b, double alpha, double beta) {
  if (!(a > 0.0) || !(b > 0.0)) throw domain_error("Jacobi growth rates must be positive");
  Family f;
  f.family.name = "jacobi";
  f.family.a = [a, b, alpha, beta](int n, int k) {
    const double al = a * k + alpha;
    const double be = b * k + beta;
    const double t = 2.0 * n + al + be;
    const double num = 4.0 * n * (n + al) * (n + be) * (n + al + be);
    const double den = (t - 1.0) * t * t * (t + 1.0);
    if (den == 0.0 || !(num / den > 0.0)) {
      throw domain_error("Jacobi coefficient outside parameter domain at n=" + std::to_string(n) +
                         ", k=" + std::to_string(k));
    }
    return std::sqrt(num / den);
  };
  f.family.b = [a, b, alpha, beta](int n, int k) {
    const double al = a * k + alpha;
    const double be = b * k + beta;
    const double t = 2.0 * n + al + be;
    if (t == 0.0 || t + 2.0 == 0.0) {
      throw domain_error("Jacobi coefficient outside parameter domain at n=" + std::to_string(n) +
                         ", k=" + std::to_string(k));
    }
    return (be * be - al * al) / (t * (t + 2.0));
  };
  const auto [a0, b0] = jacobi_growing_limits(a, b);
  f.limit.bilateral = BilateralCoefficients::constant(a0, b0);
  f.limit.closed_form_note =
      "Jacobi growing-parameter limit a0 = 2 sqrt((a+1)(b+1)(a+b+1))/(a+b+2)^2, "
      "b0 = (b^2-a^2)/(a+b+2)^2";
  f.limit.measure = MatrixMeasure::arcsine(2.0 * a0, b0);
  f.descriptor = {"jacobi", {{"a", a}, {"alpha", alpha}, {"b", b}, {"beta", beta}}, "none", "none"};
  cross_validate(f, {0}, 1e-3);
  return f;
}

Family family_laguerre_growing(double a, double alpha) {
  if (!(a >= 0.0)) throw domain_error("Laguerre growth rate must be >= 0");
  if (!(alpha > -1.0)) throw domain_error("Laguerre parameter alpha must exceed -1");
  Family f;
  f.family.name = "laguerre";
  f.family.a = [a, alpha](int n, int k) {
    if (k < 1) throw domain_error("Laguerre family parameter k must be >= 1");
    return std::sqrt(double(n) * (n + a * k + alpha)) / k;
  };
  f.family.b = [a, alpha](int n, int k) {
    if (k < 1) throw domain_error("Laguerre family parameter k must be >= 1");
    return (2.0 * n + a * k + alpha + 1.0) / k;
  };
  // The limit constants come from numeric extrapolation of the defining
  // expressions; the printed values a+1, a+2 are only cross-checks (they
  // agree at a = 0 but the a-limit differs otherwise).
  const NumericLimit nl = numeric_limit(f.family, 0, default_probe());
  f.limit.bilateral = BilateralCoefficients::constant(nl.a, nl.b);
  f.limit.closed_form_note = "Laguerre growing-parameter limit taken numerically: (a0, b0) = (" +
                             format_value(nl.a) + ", " + format_value(nl.b) + ")";
  f.limit.measure = MatrixMeasure::arcsine(2.0 * nl.a, nl.b);
  f.descriptor = {"laguerre", {{"a", a}, {"alpha", alpha}}, "none", "x -> k x"};
  const double printed_a = a + 1.0;
  const double printed_b = a + 2.0;
  if (std::fabs(nl.a - printed_a) > 1e-3) {
    f.notes.push_back("a-limit discrepancy: numeric " + format_value(nl.a) +
                      " vs printed a+1 = " + format_value(printed_a) + " (numeric value used)");
  }
  if (std::fabs(nl.b - printed_b) > 1e-3) {
    f.notes.push_back("b-limit discrepancy: numeric " + format_value(nl.b) +
                      " vs printed a+2 = " + format_value(printed_b) + " (numeric value used)");
  }
  return f;
}

namespace {

// binom(N-1,j) Gamma(beta+N)/Gamma(N+alpha+beta+j+1)
//   * Gamma(j+alpha+1) Gamma(j+alpha+beta+1) / (Gamma(j+beta+1) Gamma(alpha+1))
//   * (2j+alpha+beta+1),
// accumulated in log space with a sign tracker (direct Gamma ratios overflow
// near N ~ 170).
double dual_hahn_weight(double alpha, double beta, int N, int j) {
  double lw = 0.0;
  int sign = 1;
  const auto mul = [&](double x) {
    const auto [l, s] = lgamma_signed(x);
    lw += l;
    sign *= s;
  };
  const auto div = [&](double x) {
    const auto [l, s] = lgamma_signed(x);
    lw -= l;
    sign *= s;
  };
  mul(N);
  div(j + 1.0);
  div(double(N - j));
  mul(beta + N);
  div(N + alpha + beta + j + 1.0);
  mul(j + alpha + 1.0);
  mul(j + alpha + beta + 1.0);
  div(j + beta + 1.0);
  div(alpha + 1.0);
  const double tail = 2.0 * j + alpha + beta + 1.0;
  if (tail == 0.0) return 0.0;
  if (tail < 0.0) sign = -sign;
  lw += std::log(std::fabs(tail));
  return sign * std::exp(lw);
}

}  // namespace

Family family_dual_hahn(double alpha, DualHahnMode mode, double beta) {
  if (!(alpha > -1.0)) throw domain_error("dual Hahn parameter alpha must exceed -1");
  if (mode == DualHahnMode::laguerre && !(beta > -1.0)) {
    throw domain_error("dual Hahn parameter beta must exceed -1");
  }
  Family f;
  f.family.name = "dual-hahn";
  if (mode == DualHahnMode::laguerre) {
    f.family.a = [alpha, beta](int n, int k) {
      if (k < 1) throw domain_error("dual Hahn family parameter k must be >= 1");
      if (n >= k) return 0.0;
      const double rad = double(n) * (k - n) * (k + beta - n) * (alpha + n);
      if (!(rad >= 0.0)) {
        throw domain_error("dual Hahn coefficient outside parameter domain at n=" +
                           std::to_string(n) + ", k=" + std::to_string(k));
      }
      return std::sqrt(rad) / k;
    };
    f.family.b = [alpha, beta](int n, int k) {
      if (k < 1) throw domain_error("dual Hahn family parameter k must be >= 1");
      if (n >= k) return 0.0;
      return ((k - n - 1.0) * (alpha + n + 1.0) + n * (k + beta - n)) / k;
    };
  } else {
    f.family.a = [alpha](int n, int k) {
      if (k < 1) throw domain_error("dual Hahn family parameter k must be >= 1");
      if (n >= k) return 0.0;
      const double rad = double(n) * (k - n) * (1.5 * k - n) * (alpha + n);
      if (!(rad >= 0.0)) {
        throw domain_error("dual Hahn coefficient outside parameter domain at n=" +
                           std::to_string(n) + ", k=" + std::to_string(k));
      }
      return std::sqrt(rad) / std::pow(double(k), 1.5);
    };
    f.family.b = [alpha](int n, int k) {
      if (k < 1) throw domain_error("dual Hahn family parameter k must be >= 1");
      if (n >= k) return 0.0;
      return ((k - n - 1.0) * (alpha + n + 1.0) + n * (1.5 * k - n) - 0.5 * double(k) * k) /
             std::pow(double(k), 1.5);
    };
  }
  f.family.cutoff = [](int k) { return std::optional<int>(k); };
  f.family.support = [alpha, beta, mode](int k) {
    if (k < 1) throw domain_error("dual Hahn family parameter k must be >= 1");
    const double bk = (mode == DualHahnMode::laguerre) ? beta : 0.5 * k;
    std::vector<LatticePoint> pts;
    pts.reserve(k);
    for (int j = 0; j < k; ++j) {
      const double raw = double(j) * (j + alpha + bk + 1.0);
      const double x = (mode == DualHahnMode::laguerre)
                           ? raw / k
                           : (raw - 0.5 * double(k) * k) / std::pow(double(k), 1.5);
      pts.push_back({x, dual_hahn_weight(alpha, bk, k, j)});
    }
    return pts;
  };

  if (mode == DualHahnMode::laguerre) {
    f.limit.bilateral = {
        [beta](int j) { return j < 0 ? std::sqrt(-double(j) * (beta - j)) : 0.0; },
        [beta](int j) { return j < 0 ? -2.0 * j + beta - 1.0 : 0.0; },
        true};
    f.limit.closed_form_note =
        "one-sided limit: negative half is the Laguerre(beta) matrix, "
        "measure x^beta e^-x / Gamma(beta+1) on [0, inf)";
    f.limit.measure = MatrixMeasure::semi_infinite_classical(
        laguerre_coefficients(beta),
        [beta](double x) {
          return x > 0.0 ? std::exp(beta * std::log(x) - x - std::lgamma(beta + 1.0)) : 0.0;
        },
        0.0, std::numeric_limits<double>::infinity());
    f.descriptor = {"dual-hahn", {{"alpha", alpha}, {"beta", beta}}, "N = k", "x -> k x"};
    cross_validate(f, {-2, -1}, 1e-3);
  } else {
    f.limit.bilateral = {[](int j) { return j < 0 ? std::sqrt(-0.5 * j) : 0.0; },
                         [](int) { return 0.0; }, true};
    f.limit.closed_form_note =
        "one-sided limit: negative half is the Hermite matrix, measure e^-x^2 / sqrt(pi)";
    f.limit.measure = MatrixMeasure::semi_infinite_classical(
        hermite_coefficients(),
        [](double x) { return std::exp(-x * x) / std::sqrt(std::numbers::pi); },
        -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
    f.descriptor = {"dual-hahn", {{"alpha", alpha}}, "N = k", "x -> k^{3/2} x + k^2/2"};
    f.notes.push_back("hermite mode: b_{n+k,n} approaches 0 like n^{-1/2}; "
                      "limit validation tolerance loosened to 1e-2");
    cross_validate(f, {-2, -1}, 1e-2);
  }
  return f;
}

}  // namespace weaklimit
