#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weaklimit/coefficients.hpp"
#include "weaklimit/spectral.hpp"

namespace weaklimit {

struct LatticePoint {
  double x = 0.0;
  double weight = 0.0;
};

// One-parameter family k -> coefficient sequence (a_{n,k}, b_{n,k}).
// Discrete families also expose their support lattice per parameter, for
// exact finite-sum integration.
struct MeasureFamily {
  std::string name;
  std::function<double(int n, int k)> a;  // n >= 1
  std::function<double(int n, int k)> b;  // n >= 0
  std::function<std::optional<int>(int k)> cutoff;
  std::function<std::vector<LatticePoint>(int k)> support;

  bool has_support() const { return static_cast<bool>(support); }
  std::vector<LatticePoint> support_points(int k) const;
  CoefficientSequence member(int k) const;
};

// Limit of the family in the sense that a_{n+k,n} -> a_k, b_{n+k,n} -> b_k
// for every fixed offset k.
struct LimitData {
  BilateralCoefficients bilateral;
  std::string closed_form_note;
  std::optional<MatrixMeasure> measure;
};

struct FamilyDescriptor {
  std::string name;
  std::map<std::string, double> params;
  std::string cutoff_rule;
  std::string scaling;

  std::string to_json() const;
};

// Constructor result: the family, its limit data, a serializable descriptor
// and any diagnostics surfaced during construction (degenerate parameters,
// limit constants that disagree with their numeric cross-check).
struct Family {
  MeasureFamily family;
  LimitData limit;
  FamilyDescriptor descriptor;
  std::vector<std::string> notes;
};

// Class M(a,b): measures whose recurrence coefficients converge to a/2 and b.
// The default member is the exactly-constant sequence; any concrete member
// converging to (a/2, b) may be supplied instead.
Family family_mab(double a, double b, std::optional<CoefficientSequence> member = std::nullopt);

// Variable rescaled by a positive increasing sequence c_k with
// c_{k+1}/c_k -> 1: coefficients a_n/c_k, b_n/c_k.  Requires
// lim a_n/c_n = a/2 > 0 and lim b_n/c_n = b; the limit is the constant
// matrix (a/2, b) with support [b-a, b+a].
Family family_rescaled(CoefficientSequence base, std::function<double(int)> scale,
                       const std::string& label = "base");

// Wall polynomials at q = c^{1/k}.
Family family_wall(double b, double c);

// Jacobi polynomials with parameters (a k + alpha, b k + beta) growing with
// the degree.
Family family_jacobi_growing(double a, double b, double alpha, double beta);

// Laguerre polynomials with parameter a k + alpha, argument scaled by k.
// Limit constants are always taken from numeric extrapolation; the printed
// constants a+1, a+2 are cross-checked and any mismatch is surfaced in notes.
Family family_laguerre_growing(double a, double alpha);

// Dual Hahn polynomials on the quadratic lattice x_j = j(j+alpha+beta+1).
// laguerre mode: fixed beta, argument scaled by k; the limit is one-sided
// with a_j^2 = -j(beta-j), b_j = -2j+beta-1 for j < 0 (the negative half is
// the Laguerre(beta) matrix).  hermite mode: beta = k/2, argument mapped by
// x -> k^{3/2} x + k^2/2; the limit has a_j^2 = -j/2 for j < 0 and b = 0
// (the Hermite matrix).
enum class DualHahnMode { laguerre, hermite };
Family family_dual_hahn(double alpha, DualHahnMode mode, double beta = 1.0);

// Closed-form limit constants (a0, b0) of the growing-parameter Jacobi
// family; defined for a, b >= 0 so the a = b = 0 continuity point can be
// checked directly.
std::pair<double, double> jacobi_growing_limits(double a, double b);

// Extrapolated estimate of (a_k, b_k) from the samples a_{n+k,n}, b_{n+k,n}
// along an increasing probe; validates every closed-form limit.
struct NumericLimit {
  double a = 0.0;
  double b = 0.0;
  bool a_converged = false;
  bool b_converged = false;
};
NumericLimit numeric_limit(const MeasureFamily& family, int k, const std::vector<int>& probe);
std::vector<int> default_probe(int max_n = 10000);

// log |Gamma(x)| and the sign of Gamma(x); nonpositive integers are poles.
std::pair<double, int> lgamma_signed(double x);

}  // namespace weaklimit
