#include "segmental/cheb.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "segmental/quadrature.hpp"
#include "test_util.hpp"

using namespace segmental;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("chebyshev recurrences") {
  CHECK(eval_U(0, 0.73) == 1.0);
  CHECK(eval_U(1, 0.5) == 1.0);
  CHECK(std::abs(eval_U(3, std::cos(kPi / 4))) < 1e-14);
  CHECK(eval_T(0, 0.42) == 1.0);
  CHECK(eval_T(2, 0.0) == -1.0);
  CHECK(eval_T(5, 1.0) == 1.0);
}

TEST_CASE("recurrence matches the trigonometric definition") {
  auto& gen = segtest::rng();
  std::uniform_real_distribution<double> theta(1e-3, kPi - 1e-3);
  std::uniform_int_distribution<unsigned> jdist(0, 30);
  for (int it = 0; it < 200; ++it) {
    const double th = theta(gen);
    const unsigned j = jdist(gen);
    const double x = std::cos(th);
    const double trig = std::sin((j + 1) * th) / std::sin(th);
    CHECK(std::abs(eval_U(j, x) - trig) < 1e-10);
    CHECK(std::abs(eval_T(j, x) - std::cos(j * th)) < 1e-10);
  }
}

TEST_CASE("d/dx T_{j+1} = (j+1) U_j by central differences") {
  auto& gen = segtest::rng();
  std::uniform_real_distribution<double> xdist(-0.95, 0.95);
  const double h = 1e-5;
  for (unsigned j = 0; j <= 12; ++j) {
    const double x = xdist(gen);
    const double fd = (eval_T(j + 1, x + h) - eval_T(j + 1, x - h)) / (2 * h);
    CHECK(std::abs(fd - (j + 1) * eval_U(j, x)) < 1e-6);
  }
}

TEST_CASE("expansion evaluation (Clenshaw)") {
  CHECK(ChebExpansion{{1.0}}(0.37) == 1.0);
  CHECK(ChebExpansion{{0.0, 0.5}}(0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(ChebExpansion{{1.0, 1.0}}(-1.0) == doctest::Approx(-1.0).epsilon(1e-15));

  // random expansions against the direct recurrence sum
  auto& gen = segtest::rng();
  std::uniform_real_distribution<double> cdist(-1.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    std::vector<double> c(12);
    for (double& v : c) v = cdist(gen);
    ChebExpansion p{c};
    const double x = cdist(gen);
    double direct = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
      direct += c[j] * eval_U(static_cast<unsigned>(j), x);
    CHECK(p(x) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("exact segment integrals of U_j") {
  CHECK(integrate_U_over(0, {-1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(integrate_U_over(1, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(integrate_U_over(2, {-1.0, 1.0}) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("segment integrals match Gauss-Legendre quadrature") {
  const QuadratureRule rule = gauss_legendre(64);
  auto& gen = segtest::rng();
  std::uniform_real_distribution<double> e(-1.0, 1.0);
  for (unsigned j = 0; j <= 40; j += 4) {
    double a = e(gen), b = e(gen);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-3) b = a + 1e-3;
    const Segment seg{a, b};
    const double quad =
        measure([j](double x) { return eval_U(j, x); }, seg, rule);
    CHECK(std::abs(integrate_U_over(j, seg) - quad) < 1e-12);
  }
}

TEST_CASE("nodal lagrange values and cardinality") {
  NodeSet two({-1.0, 1.0});
  CHECK(nodal_lagrange(two, 1, 1.0) == 1.0);
  NodeSet three({-1.0, 0.0, 1.0});
  CHECK(nodal_lagrange(three, 1, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(nodal_lagrange(three, 0, 0.0) == 0.0);
}

TEST_CASE("nodal lagrange derivatives stay finite at nodes") {
  NodeSet three({-1.0, 0.0, 1.0});
  // ell_1 = 1 - x^2, derivative -2x
  CHECK(nodal_lagrange_deriv(three, 1, 0.25) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  // ell_2 = x(x+1)/2, derivative x + 1/2, at the node x=0
  CHECK(nodal_lagrange_deriv(three, 2, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  NodeSet two({-1.0, 1.0});
  CHECK(nodal_lagrange_deriv(two, 1, 0.3) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("partition of unity and derivative cancellation") {
  auto& gen = segtest::rng();
  std::uniform_real_distribution<double> xdist(-1.0, 1.0);
  for (int it = 0; it < 25; ++it) {
    std::size_t n = 2 + static_cast<std::size_t>(it % 9);
    std::vector<double> raw(n);
    for (double& v : raw) v = xdist(gen);
    std::sort(raw.begin(), raw.end());
    bool distinct = true;
    for (std::size_t i = 1; i < n; ++i)
      if (raw[i] - raw[i - 1] < 1e-2) distinct = false;
    if (!distinct) continue;
    NodeSet nodes(raw);
    const double x = xdist(gen);
    double sum = 0.0, dsum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += nodal_lagrange(nodes, j, x);
      dsum += nodal_lagrange_deriv(nodes, j, x);
    }
    CHECK(std::abs(sum - 1.0) < 1e-10);
    CHECK(std::abs(dsum) < 1e-10);
  }
}

TEST_CASE("basis conversions") {
  ChebExpansion a = monomial_to_cheb(MonomialPoly{{0.0, 1.0}});
  REQUIRE(a.coeffs.size() == 2);
  CHECK(a.coeffs[0] == 0.0);
  CHECK(a.coeffs[1] == doctest::Approx(0.5).epsilon(1e-15));

  MonomialPoly c = cheb_to_monomial(ChebExpansion{{1.0}});
  CHECK(c.coeffs[0] == 1.0);

  // 4x^2 - 1 is exactly U_2
  ChebExpansion u2 = monomial_to_cheb(MonomialPoly{{-1.0, 0.0, 4.0}});
  CHECK(u2.coeffs[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(u2.coeffs[1] == 0.0);
  CHECK(u2.coeffs[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("conversion round trip to degree 30") {
  auto& gen = segtest::rng();
  std::uniform_real_distribution<double> cdist(-1.0, 1.0);
  for (int deg = 0; deg <= 30; deg += 5) {
    std::vector<double> c(deg + 1);
    for (double& v : c) v = cdist(gen);
    MonomialPoly p{c};
    MonomialPoly back = cheb_to_monomial(monomial_to_cheb(p));
    for (int k = 0; k <= deg; ++k)
      CHECK(std::abs(back.coeffs[k] - c[k]) < 1e-12);
  }
}

TEST_CASE("batch lagrange evaluator agrees with the direct formulas") {
  auto& gen = segtest::rng();
  std::uniform_real_distribution<double> xdist(-1.0, 1.0);
  for (std::size_t n : {2u, 5u, 11u, 33u}) {
    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i)
      raw[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    NodeSet nodes(raw);
    LagrangeEvaluator ev(raw);
    std::vector<double> vals(n), ders(n);
    // random points, node points, and near-node points all take the same
    // answer through both paths
    std::vector<double> probes{xdist(gen), xdist(gen), raw[n / 2],
                               raw[n / 2] + 1e-12, -1.0, 1.0};
    for (double x : probes) {
      ev.values(x, vals);
      ev.derivatives(x, ders);
      for (std::size_t j = 0; j < n; ++j) {
        const double scale =
            std::max(1.0, std::abs(nodal_lagrange_deriv(nodes, j, x)));
        CHECK(std::abs(vals[j] - nodal_lagrange(nodes, j, x)) < 1e-9);
        CHECK(std::abs(ders[j] - nodal_lagrange_deriv(nodes, j, x)) / scale <
              1e-9);
      }
    }
  }
}
