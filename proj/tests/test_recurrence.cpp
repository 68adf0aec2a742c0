#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "weaklimit/errors.hpp"
#include "weaklimit/recurrence.hpp"

using namespace weaklimit;

TEST_CASE("orthonormal evaluation: initial values and Chebyshev closed forms") {
  const CoefficientSequence cheb = chebyshev_u_coefficients();
  CHECK(eval_orthonormal(cheb, 0, 3.7) == 1.0);
  CHECK(eval_orthonormal(cheb, -1, 0.2) == 0.0);
  CHECK(eval_orthonormal(cheb, 2, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  // U_3(cos(pi/3)) = sin(4pi/3)/sin(pi/3) = -1
  CHECK(oracles::chebyshev_u(3, 0.5) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eval_orthonormal(cheb, 3, 0.5) == doctest::Approx(-1.0).epsilon(1e-13));
  for (int k = 0; k <= 12; ++k) {
    for (double x : {-0.93, -0.4, 0.0, 0.27, 0.77}) {
      CHECK(eval_orthonormal(cheb, k, x) ==
            doctest::Approx(oracles::chebyshev_u(k, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("orthonormal evaluation: error paths") {
  CoefficientSequence cut = CoefficientSequence::constant(0.5, 0.0);
  cut.support_cutoff = 4;
  CHECK_NOTHROW(eval_orthonormal(cut, 3, 0.3));
  CHECK_THROWS_AS(eval_orthonormal(cut, 5, 0.3), domain_error);
  // degree N needs a_N, which vanished at the cutoff
  CHECK_THROWS_AS(eval_orthonormal(cut, 4, 0.3), domain_error);

  const CoefficientSequence bad{[](int n) { return n == 2 ? 0.0 : 0.5; },
                                [](int) { return 0.0; },
                                std::nullopt};
  CHECK_NOTHROW(eval_orthonormal(bad, 1, 0.3));
  CHECK_THROWS_AS(eval_orthonormal(bad, 2, 0.3), domain_error);
  CHECK_THROWS_AS(eval_orthonormal(bad, -2, 0.3), domain_error);
}

TEST_CASE("associated polynomials") {
  const CoefficientSequence cheb = chebyshev_u_coefficients();
  CHECK(eval_associated(cheb, -1, 0.9) == 0.0);
  // constant coefficients are shift invariant
  for (double x : {-0.6, 0.1, 0.45}) {
    CHECK(eval_associated(cheb, 1, x) == doctest::Approx(2.0 * x).epsilon(1e-14));
    CHECK(eval_associated(cheb, 4, x) ==
          doctest::Approx(oracles::chebyshev_u(4, x)).epsilon(1e-12));
  }
  CHECK(eval_associated(laguerre_coefficients(0.0), 0, 7.7) == 1.0);
}

TEST_CASE("leading coefficients") {
  const CoefficientSequence cheb = chebyshev_u_coefficients();
  CHECK(leading_coefficient(cheb, 0) == 1.0);
  CHECK(leading_coefficient(cheb, 3) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(leading_coefficient(laguerre_coefficients(0.0), 4) ==
        doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK_THROWS_AS(leading_coefficient(cheb, -1), domain_error);
  const CoefficientSequence small = CoefficientSequence::constant(0.01, 0.0);
  CHECK_THROWS_AS(leading_coefficient(small, 200), convergence_error);
}

TEST_CASE("vector symbols") {
  const BilateralCoefficients bc = BilateralCoefficients::constant(0.5, 0.0);
  const VectorSymbol s0 = eval_vector_symbol(bc, 0, 0.77);
  CHECK(s0.A == 0.0);
  CHECK(s0.B == 1.0);
  const VectorSymbol sm1 = eval_vector_symbol(bc, -1, 0.77);
  CHECK(sm1.A == 1.0);
  CHECK(sm1.B == 0.0);

  const VectorSymbol s2 = eval_vector_symbol(bc, 2, 1.0);
  CHECK(s2.A == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(s2.B == doctest::Approx(3.0).epsilon(1e-14));

  for (double x : {-0.5, 0.3}) {
    const VectorSymbol sm3 = eval_vector_symbol(bc, -3, x);
    CHECK(sm3.A == doctest::Approx(oracles::chebyshev_u(2, x)).epsilon(1e-13));
    CHECK(sm3.B == doctest::Approx(-oracles::chebyshev_u(1, x)).epsilon(1e-13));
  }
}

TEST_CASE("forward recurrence consistency on random sequences") {
  for (std::uint32_t seed : {11u, 23u, 37u, 58u}) {
    const auto seq = oracles::to_coefficients(oracles::random_sequence(seed, 40));
    for (int n : {1, 5, 17, 30}) {
      for (double x : {-1.8, -0.33, 0.0, 0.91, 2.2}) {
        const double pm1 = eval_orthonormal(seq, n - 1, x);
        const double p0 = eval_orthonormal(seq, n, x);
        const double p1 = eval_orthonormal(seq, n + 1, x);
        const double residual =
            seq.a(n + 1) * p1 + seq.b(n) * p0 + seq.a(n) * pm1 - x * p0;
        const double scale = std::max({std::fabs(seq.a(n + 1) * p1), std::fabs(x * p0),
                                       std::fabs(seq.a(n) * pm1), 1e-30});
        CHECK(std::fabs(residual) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("degree and leading coefficient via divided differences") {
  for (std::uint32_t seed : {3u, 71u}) {
    const auto seq = oracles::to_coefficients(oracles::random_sequence(seed, 12));
    for (int n : {1, 3, 6, 8}) {
      std::vector<double> points;
      for (int i = 0; i <= n; ++i) points.push_back(-2.0 + 4.0 * i / n);
      const double dd = oracles::divided_difference(
          [&](double t) { return eval_orthonormal(seq, n, t); }, points);
      const double gamma = leading_coefficient(seq, n);
      CHECK(dd == doctest::Approx(gamma).epsilon(1e-8));
    }
  }
}

TEST_CASE("Chebyshev identity U_k - x U_{k-1} = T_k") {
  const CoefficientSequence cheb = chebyshev_u_coefficients();
  for (int k = 0; k <= 10; ++k) {
    for (int i = 0; i < 50; ++i) {
      const double x = -1.0 + 2.0 * (i + 0.5) / 50.0;
      const double lhs = eval_orthonormal(cheb, k, x) -
                         (k >= 1 ? x * eval_orthonormal(cheb, k - 1, x) : x * 0.0);
      CHECK(std::fabs(lhs - oracles::chebyshev_t(k, x)) <= 1e-12);
    }
  }
}
