#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "weaklimit/errors.hpp"
#include "weaklimit/families.hpp"
#include "weaklimit/jacobi_operators.hpp"
#include "weaklimit/recurrence.hpp"

using namespace weaklimit;

namespace {

bool has_note_containing(const Family& f, const std::string& needle) {
  for (const auto& n : f.notes) {
    if (n.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("class M(a,b)") {
  const Family f = family_mab(1.0, 0.0);
  CHECK(f.limit.bilateral.a(0) == 0.5);
  CHECK(f.limit.bilateral.a(7) == 0.5);
  CHECK(f.limit.bilateral.b(-3) == 0.0);
  CHECK(f.notes.empty());

  const Family g = family_mab(2.0, 1.0);
  CHECK(g.limit.bilateral.a(0) == 1.0);
  CHECK(g.limit.bilateral.b(0) == 1.0);

  // user-supplied member converging to (1/2, 0)
  const CoefficientSequence member{[](int n) { return 0.5 + 1.0 / n; },
                                   [](int) { return 0.0; }, std::nullopt};
  const Family h = family_mab(1.0, 0.0, member);
  const double w100 = window_convergence(h.family, h.limit.bilateral, 100, 2);
  const double w1000 = window_convergence(h.family, h.limit.bilateral, 1000, 2);
  CHECK(w1000 < w100);
  CHECK(w1000 < 2e-3);

  CHECK_THROWS_AS(family_mab(-1.0, 0.0), domain_error);
}

TEST_CASE("rescaled family") {
  const Family f = family_rescaled(laguerre_coefficients(0.0), [](int k) { return double(k); },
                                   "laguerre(0)");
  CHECK(f.limit.bilateral.a(0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(f.limit.bilateral.b(0) == doctest::Approx(2.0).epsilon(1e-7));
  REQUIRE(f.limit.measure.has_value());
  CHECK(f.limit.measure->support_lo() == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(f.limit.measure->support_hi() == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(f.family.a(3, 2) == doctest::Approx(1.5).epsilon(1e-14));

  // trivially rescaled bounded member reduces to its own M-class constants
  const Family g = family_rescaled(CoefficientSequence::constant(0.3, 0.1),
                                   [](int) { return 1.0; });
  CHECK(g.limit.bilateral.a(0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(g.limit.bilateral.b(0) == doctest::Approx(0.1).epsilon(1e-12));

  // degenerate scaling is rejected
  CHECK_THROWS_AS(family_rescaled(laguerre_coefficients(0.0),
                                  [](int k) { return double(k) * k; }),
                  domain_error);
  // ratio test failure
  CHECK_THROWS_AS(family_rescaled(laguerre_coefficients(0.0),
                                  [](int k) { return std::pow(1.05, k); }),
                  domain_error);
}

TEST_CASE("Wall family") {
  const Family f = family_wall(0.5, 0.25);
  const double a_half = 0.25 * std::sqrt(0.5 * 0.75 * 0.875);
  CHECK(a_half == doctest::Approx(0.14320549).epsilon(1e-7));
  CHECK(f.limit.bilateral.a(0) == doctest::Approx(a_half).epsilon(1e-14));
  CHECK(f.limit.bilateral.b(0) == doctest::Approx(0.3125).epsilon(1e-14));
  CHECK(f.notes.empty());

  const Family g = family_wall(0.5, 0.5);
  CHECK(g.limit.bilateral.a(0) == doctest::Approx(0.21650635).epsilon(1e-7));

  const NumericLimit nl = numeric_limit(f.family, 0, default_probe());
  CHECK(nl.a == doctest::Approx(a_half).epsilon(1e-4));
  CHECK(nl.b == doctest::Approx(0.3125).epsilon(1e-4));

  CHECK_THROWS_AS(family_wall(1.5, 0.25), domain_error);
  CHECK_THROWS_AS(family_wall(0.5, 1.0), domain_error);

  const Family degenerate = family_wall(0.5, 1.0 - 1e-9);
  CHECK(has_note_containing(degenerate, "degenerates"));
}

TEST_CASE("growing-parameter Jacobi family") {
  const auto [a0, b0] = jacobi_growing_limits(1.0, 1.0);
  CHECK(a0 == doctest::Approx(std::sqrt(12.0) / 8.0).epsilon(1e-14));
  CHECK(a0 == doctest::Approx(0.43301270).epsilon(1e-7));
  CHECK(b0 == 0.0);
  CHECK(jacobi_growing_limits(1.0, 2.0).second == doctest::Approx(0.12).epsilon(1e-14));
  // continuity at a = b = 0 recovers the M(1,0) constants
  const auto [c0, d0] = jacobi_growing_limits(0.0, 0.0);
  CHECK(c0 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d0 == 0.0);

  const Family f = family_jacobi_growing(1.0, 1.0, 0.0, 0.0);
  CHECK(f.limit.bilateral.a(5) == doctest::Approx(a0).epsilon(1e-14));
  CHECK(f.notes.empty());
  // the limit does not depend on the offset k
  const NumericLimit nl2 = numeric_limit(f.family, 2, default_probe());
  CHECK(nl2.a == doctest::Approx(a0).epsilon(1e-3));
  CHECK(nl2.b == doctest::Approx(b0).epsilon(1e-3));

  // out-of-domain parameters surface on evaluation
  const Family bad = family_jacobi_growing(1.0, 1.0, -5.0, 0.0);
  CHECK_THROWS_AS(bad.family.member(1).a(1), domain_error);
  CHECK_THROWS_AS(family_jacobi_growing(0.0, 1.0, 0.0, 0.0), domain_error);
}

TEST_CASE("growing-parameter Laguerre family") {
  const Family f0 = family_laguerre_growing(0.0, 0.0);
  CHECK(f0.limit.bilateral.a(0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(f0.limit.bilateral.b(0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_FALSE(has_note_containing(f0, "discrepancy"));

  const Family f1 = family_laguerre_growing(1.0, 0.0);
  // numeric a-limit is sqrt(a+1), not the printed a+1
  CHECK(f1.limit.bilateral.a(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(f1.limit.bilateral.b(0) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(has_note_containing(f1, "a-limit discrepancy"));
  CHECK_FALSE(has_note_containing(f1, "b-limit discrepancy"));

  CHECK_THROWS_AS(family_laguerre_growing(-0.5, 0.0), domain_error);
  CHECK_THROWS_AS(family_laguerre_growing(1.0, -2.0), domain_error);
}

TEST_CASE("dual Hahn family: coefficients and limits") {
  const Family f = family_dual_hahn(0.5, DualHahnMode::laguerre, 1.0);
  CHECK(f.family.cutoff(17) == 17);
  // a^2_{-2} = -(-2)(beta - (-2)) = 2 * 3
  CHECK(f.limit.bilateral.a(-2) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(f.limit.bilateral.a(1) == 0.0);
  CHECK(f.limit.bilateral.a(0) == 0.0);
  CHECK(f.limit.bilateral.b(-1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.limit.bilateral.one_sided);
  CHECK(f.notes.empty());

  const Family h = family_dual_hahn(0.5, DualHahnMode::hermite);
  CHECK(h.limit.bilateral.a(-3) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(h.limit.bilateral.a(2) == 0.0);
  CHECK(h.limit.bilateral.b(-4) == 0.0);

  // positivity strictly inside the support
  for (int k : {5, 23}) {
    for (int n = 1; n < k; ++n) {
      CHECK(f.family.a(n, k) > 0.0);
      CHECK(h.family.a(n, k) > 0.0);
    }
    CHECK(f.family.a(k, k) == 0.0);
  }
  CHECK_THROWS_AS(family_dual_hahn(-2.0, DualHahnMode::laguerre, 1.0), domain_error);
}

TEST_CASE("dual Hahn lattice: weights and orthonormality") {
  for (auto mode : {DualHahnMode::laguerre, DualHahnMode::hermite}) {
    const Family f = family_dual_hahn(0.3, mode, 0.8);
    for (int k : {10, 50, 200}) {
      const auto pts = f.family.support_points(k);
      REQUIRE(int(pts.size()) == k);
      long double mass = 0.0L;
      for (const auto& p : pts) {
        CHECK(p.weight > 0.0);
        mass += p.weight;
      }
      CHECK(std::fabs(double(mass - 1.0L)) <= 1e-10);
      for (int j = 0; j + 1 < k; ++j) CHECK(pts[j].x < pts[j + 1].x);
    }

    const int k = 40;
    const auto pts = f.family.support_points(k);
    const CoefficientSequence member = f.family.member(k);
    std::vector<std::vector<double>> vals;
    vals.reserve(pts.size());
    for (const auto& p : pts) vals.push_back(eval_orthonormal_lattice(member, k - 1, p.x));
    for (int m = 0; m < k; ++m) {
      for (int n = m; n < k; ++n) {
        long double s = 0.0L;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          s += static_cast<long double>(pts[j].weight) * vals[j][m] * vals[j][n];
        }
        CHECK(std::fabs(double(s) - (m == n ? 1.0 : 0.0)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("every limit passes numeric validation at offsets -3..3") {
  struct Case {
    Family family;
    double tol;
  };
  const Case cases[] = {
      {family_mab(1.0, 0.0), 1e-3},
      {family_mab(2.0, 1.0), 1e-3},
      {family_rescaled(laguerre_coefficients(0.0), [](int k) { return double(k); }), 1e-3},
      {family_wall(0.5, 0.25), 1e-3},
      {family_jacobi_growing(1.0, 1.0, 0.5, -0.25), 1e-3},
      {family_laguerre_growing(1.0, 0.0), 1e-3},
      {family_dual_hahn(0.5, DualHahnMode::laguerre, 1.0), 1e-3},
      {family_dual_hahn(0.5, DualHahnMode::hermite), 1e-2},
  };
  for (const auto& c : cases) {
    for (int k = -3; k <= 3; ++k) {
      const NumericLimit nl = numeric_limit(c.family.family, k, default_probe());
      CHECK(std::fabs(nl.a - c.family.limit.bilateral.a(k)) <= c.tol);
      CHECK(std::fabs(nl.b - c.family.limit.bilateral.b(k)) <= c.tol);
    }
  }
}

TEST_CASE("numeric limit mechanics") {
  const Family f = family_mab(1.0, 0.0);
  const NumericLimit nl = numeric_limit(f.family, 0, {100, 200, 400});
  CHECK(nl.a == 0.5);
  CHECK(nl.a_converged);
  CHECK(nl.b_converged);
  CHECK_THROWS_AS(numeric_limit(f.family, 0, {100, 100}), domain_error);
  CHECK_THROWS_AS(numeric_limit(f.family, 0, {}), domain_error);
}

TEST_CASE("descriptors serialize to JSON") {
  const Family f = family_dual_hahn(0.5, DualHahnMode::laguerre, 1.0);
  const std::string s = f.descriptor.to_json();
  CHECK(s == f.descriptor.to_json());
  const auto j = nlohmann::json::parse(s);
  CHECK(j["name"] == "dual-hahn");
  CHECK(j["params"]["alpha"] == 0.5);
  CHECK(j["params"]["beta"] == 1.0);
  CHECK(j["cutoff_rule"] == "N = k");
  CHECK(j["scaling"] == "x -> k x");

  const Family w = family_wall(0.5, 0.25);
  const auto jw = nlohmann::json::parse(w.descriptor.to_json());
  CHECK(jw["params"]["b"] == 0.5);
  CHECK(jw["params"]["c"] == 0.25);
}

TEST_CASE("signed log-gamma") {
  const auto [l1, s1] = lgamma_signed(0.5);
  CHECK(s1 == 1);
  CHECK(std::exp(l1) == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-12));
  const auto [l2, s2] = lgamma_signed(-0.5);
  CHECK(s2 == -1);
  CHECK(s2 * std::exp(l2) == doctest::Approx(-2.0 * std::sqrt(std::acos(-1.0))).epsilon(1e-12));
  const auto [l3, s3] = lgamma_signed(-1.5);
  CHECK(s3 == 1);
  CHECK(s3 * std::exp(l3) == doctest::Approx(4.0 / 3.0 * std::sqrt(std::acos(-1.0))).epsilon(1e-12));
  CHECK_THROWS_AS(lgamma_signed(-3.0), domain_error);
}
