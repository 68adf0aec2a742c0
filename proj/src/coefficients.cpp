#include "weaklimit/coefficients.hpp"

#include <cmath>

namespace weaklimit {

CoefficientSequence CoefficientSequence::shifted() const {
  CoefficientSequence s;
  s.a_rule = [base = *this](int m) { return base.a(m + 1); };
  s.b_rule = [base = *this](int m) { return base.b(m + 1); };
  if (support_cutoff) s.support_cutoff = *support_cutoff - 1;
  return s;
}

CoefficientSequence CoefficientSequence::constant(double a, double b) {
  return {[a](int) { return a; }, [b](int) { return b; }, std::nullopt};
}

CoefficientSequence chebyshev_u_coefficients() {
  return CoefficientSequence::constant(0.5, 0.0);
}

CoefficientSequence laguerre_coefficients(double alpha) {
  return {[alpha](int n) { return std::sqrt(double(n) * (n + alpha)); },
          [alpha](int n) { return 2.0 * n + alpha + 1.0; },
          std::nullopt};
}

CoefficientSequence hermite_coefficients() {
  return {[](int n) { return std::sqrt(0.5 * n); }, [](int) { return 0.0; }, std::nullopt};
}

CoefficientSequence BilateralCoefficients::jplus() const {
  CoefficientSequence s;
  s.a_rule = [base = *this](int m) { return base.a(m); };
  s.b_rule = [base = *this](int m) { return base.b(m); };
  // With the whole nonnegative half zeroed out, J+ degenerates to the
  // one-point measure at b_0.
  if (one_sided) s.support_cutoff = 1;
  return s;
}

CoefficientSequence BilateralCoefficients::jminus() const {
  CoefficientSequence s;
  s.a_rule = [base = *this](int m) { return base.a(-m); };
  s.b_rule = [base = *this](int m) { return base.b(-m - 1); };
  return s;
}

BilateralCoefficients BilateralCoefficients::constant(double a, double b) {
  return {[a](int) { return a; }, [b](int) { return b; }, false};
}

}  // namespace weaklimit
