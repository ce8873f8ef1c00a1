#include "segmental/interpolation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "segmental/errors.hpp"
#include "test_util.hpp"

using namespace segmental;

namespace {

constexpr double kPi = std::numbers::pi;

// exact averages of a U-expansion over the segments
MeasurementVector exact_averages(const ChebExpansion& p,
                                 const SegmentSet& set) {
  MeasurementVector mu;
  mu.provenance = Provenance::external;
  for (const Segment& s : set.segments())
    mu.values.push_back(integrate_expansion(p, s));
  return mu;
}

ChebExpansion random_expansion(std::mt19937& gen, std::size_t n) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<double> coeffs(n);
  for (double& v : coeffs) v = c(gen);
  return ChebExpansion{std::move(coeffs)};
}

// equally spaced arc midpoints inside the admissible window [rho, pi-rho]
std::vector<double> window_taus(std::size_t r, double rho) {
  std::vector<double> taus(r);
  for (std::size_t k = 0; k < r; ++k)
    taus[k] = rho + (kPi - 2.0 * rho) * static_cast<double>(k + 1) /
                        static_cast<double>(r + 1);
  return taus;
}

}  // namespace

TEST_CASE("vandermonde entries") {
  SegmentSet eq2 = make_equidistant(2);
  VandermondeMatrix m = vandermonde(eq2, BasisTag::monomial);
  CHECK(m.at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.at(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(m.at(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.at(1, 1) == doctest::Approx(0.5).epsilon(1e-15));

  SegmentSet one(std::vector<Segment>{{-1.0, 1.0}}, -1.0, 1.0,
                 SegmentClass::chain);
  VandermondeMatrix u = vandermonde(one, BasisTag::cheb_u);
  CHECK(u.at(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("chebU entries equal the exact U integrals") {
  auto& gen = segtest::rng();
  std::uniform_int_distribution<std::size_t> rdist(2, 12);
  std::uniform_real_distribution<double> rho(0.05, 0.45);
  for (int it = 0; it < 10; ++it) {
    SegmentSet set =
        it % 2 == 0
            ? segtest::random_chain(gen, rdist(gen))
            : make_arc_general(window_taus(rdist(gen), 0.3), rho(gen) * kPi);
    VandermondeMatrix m = vandermonde(set, BasisTag::cheb_u);
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = 0; j < set.size(); ++j)
        CHECK(std::abs(m.at(i, j) -
                       integrate_U_over(static_cast<unsigned>(j), set[i])) <
              1e-12);
  }
}

TEST_CASE("dense solver basics") {
  VandermondeMatrix ident{{1.0, 0.0, 0.0, 1.0}, 2, BasisTag::monomial};
  std::vector<double> e1{1.0, 0.0};
  DenseSolution s = solve_dense(ident, e1);
  CHECK(s.coeffs[0] == 1.0);
  CHECK(s.coeffs[1] == 0.0);
  CHECK(s.cond_estimate == 1.0);

  SegmentSet eq2 = make_equidistant(2);
  VandermondeMatrix m = vandermonde(eq2, BasisTag::monomial);
  std::vector<double> rhs{-0.5, 0.5};
  DenseSolution lin = solve_dense(m, rhs);
  CHECK(lin.coeffs[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lin.coeffs[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("resonant arc radius makes the system singular (Prop 3.4 set)") {
  // rho = pi/2 is excluded for r = 2: column 2 of the chebU matrix is
  // sin(2 tau) sin(pi) = 0
  SegmentSet bad = make_arc_general({kPi / 3, 2 * kPi / 3}, kPi / 2);
  VandermondeMatrix m = vandermonde(bad, BasisTag::cheb_u);
  std::vector<double> rhs{1.0, 1.0};
  CHECK_THROWS_AS(solve_dense(m, rhs), SingularSystem);

  try {
    solve_dense(m, rhs);
  } catch (const SingularSystem& e) {
    CHECK(e.pivot_index() == 1);  // second column collapses
  }
}

TEST_CASE("interpolate solves the 2x2 example") {
  SegmentSet eq2 = make_equidistant(2);
  MeasurementVector mu{{-0.5, 0.5}, Provenance::external};
  Interpolant p = interpolate(eq2, mu);
  CHECK(p.path == SolvePath::vandermonde);
  REQUIRE(p.poly.coeffs.size() == 2);
  CHECK(p.poly.coeffs[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.poly.coeffs[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p(0.3) == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(p.residual_inf < 1e-14);
  CHECK_FALSE(p.residual_warning);

  MeasurementVector wrong{{1.0}, Provenance::external};
  CHECK_THROWS_AS(interpolate(eq2, wrong), std::invalid_argument);
}

TEST_CASE("polynomial reproduction across families") {
  auto& gen = segtest::rng();
  const auto grid = segtest::uniform_grid(-1.0, 1.0, 401);
  auto check_reproduction = [&](const SegmentSet& set) {
    ChebExpansion p = random_expansion(gen, set.size());
    Interpolant q = interpolate(set, exact_averages(p, set));
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::abs(p(x) - q(x)));
    CHECK(worst < 1e-7);
  };
  for (std::size_t r = 1; r <= 10; ++r) check_reproduction(make_equidistant(r));
  for (std::size_t r = 1; r <= 15; ++r) {
    check_reproduction(make_chebyshev_lobatto(r));
    check_reproduction(make_cl_overlapping(r));
  }
  for (double lambda : {0.3, 0.5, 0.9}) {
    for (std::size_t r = 2; r <= 15; ++r) {
      const double rho = lambda * kPi / static_cast<double>(r);
      check_reproduction(make_arc_uniform(window_taus(r, rho), rho));
    }
  }
}

TEST_CASE("fast C2 path agrees with the dense solve") {
  auto& gen = segtest::rng();
  const auto grid = segtest::uniform_grid(-1.0, 1.0, 600);
  for (std::size_t r : {2u, 5u, 9u, 15u}) {
    const double rho = 0.5 * kPi / static_cast<double>(r);
    const auto taus = window_taus(r, rho);
    SegmentSet arc = make_arc_uniform(taus, rho);          // dispatches fast
    SegmentSet same = make_arc_general(taus, rho);         // dense path
    ChebExpansion p = random_expansion(gen, r);
    Interpolant fast = interpolate(arc, exact_averages(p, arc));
    Interpolant dense = interpolate(same, exact_averages(p, same));
    CHECK(fast.path == SolvePath::c2_fast);
    CHECK(dense.path == SolvePath::vandermonde);
    CHECK(segtest::sup_diff(fast, dense, grid) < 1e-8);
  }
}

TEST_CASE("CL chains carry arc data usable by the fast path") {
  auto& gen = segtest::rng();
  SegmentSet cl = make_chebyshev_lobatto(6);
  REQUIRE(cl.arc().has_value());
  ChebExpansion p = random_expansion(gen, 6);
  MeasurementVector mu = exact_averages(p, cl);
  Interpolant fast = interpolate_c2_fast(cl, mu);
  Interpolant dense = interpolate(cl, mu);  // chain tag takes the solve
  CHECK(fast.path == SolvePath::c2_fast);
  CHECK(dense.path == SolvePath::vandermonde);
  CHECK(segtest::sup_diff(fast, dense, segtest::uniform_grid(-1, 1, 500)) <
        1e-8);
  CHECK_THROWS_AS(interpolate_c2_fast(make_equidistant(4), mu),
                  std::invalid_argument);
}

TEST_CASE("c2 resonance errors") {
  // rho = pi/2 is excluded for every r >= 2 regardless of the midpoints
  std::vector<double> taus{0.4 * kPi, 0.6 * kPi};
  std::vector<double> mu{0.1, 0.2};
  CHECK_THROWS_AS(interpolate_c2_fast(taus, kPi / 2, mu), ResonantRadius);

  // r=3, rho=pi/3: the rescale would divide by sin(pi) = 0
  std::vector<double> taus3{0.3 * kPi, 0.5 * kPi, 0.7 * kPi};
  std::vector<double> mu3{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(interpolate_c2_fast(taus3, kPi / 3, mu3), ResonantRadius);
}

TEST_CASE("constant average recovers U_0 through the fast path") {
  SegmentSet arc = make_arc_uniform(window_taus(4, 0.2), 0.2);
  MeasurementVector mu;
  for (const Segment& s : arc.segments()) mu.values.push_back(s.length());
  Interpolant p = interpolate_c2_fast(arc, mu);
  CHECK(p.poly.coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t j = 1; j < 4; ++j) CHECK(std::abs(p.poly.coeffs[j]) < 1e-12);
}

TEST_CASE("CL and CLO data produce the same interpolant") {
  auto& gen = segtest::rng();
  const auto grid = segtest::uniform_grid(-1.0, 1.0, 500);
  for (std::size_t r : {2u, 5u, 8u, 12u}) {
    SegmentSet cl = make_chebyshev_lobatto(r);
    SegmentSet clo = make_cl_overlapping(r);
    ChebExpansion p = random_expansion(gen, r);
    MeasurementVector mu_cl = exact_averages(p, cl);
    MeasurementVector mu_clo;
    double acc = 0.0;
    for (double v : mu_cl.values) mu_clo.values.push_back(acc += v);
    Interpolant a = interpolate(cl, mu_cl);
    Interpolant b = interpolate(clo, mu_clo);
    CHECK(segtest::sup_diff(a, b, grid) < 1e-9);
  }
}

TEST_CASE("segmental interpolation of f' commutes with nodal interpolation") {
  // mu_i = f(xi_i) - f(xi_{i-1}) feeds the segmental problem for f'; the
  // result must equal the derivative of the nodal interpolant of f,
  // assembled here independently from nodal Lagrange derivatives
  auto f = [](double x) { return eval_T(5, x); };
  const auto grid = segtest::uniform_grid(-1.0, 1.0, 400);
  for (std::size_t r = 4; r <= 8; ++r) {
    for (bool cheb : {false, true}) {
      SegmentSet chain = cheb ? make_chebyshev_lobatto(r) : make_equidistant(r);
      const std::vector<double> xi = chain.chain_nodes();
      MeasurementVector mu;
      for (std::size_t i = 0; i < r; ++i)
        mu.values.push_back(f(xi[i + 1]) - f(xi[i]));
      Interpolant seg = interpolate(chain, mu);

      NodeSet nodes(xi);
      auto nodal_deriv = [&](double x) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= r; ++k)
          acc += f(xi[k]) * nodal_lagrange_deriv(nodes, k, x);
        return acc;
      };
      CHECK(segtest::sup_diff(seg, nodal_deriv, grid) < 1e-8);
    }
  }
}

TEST_CASE("chains never trip the singularity guard") {
  auto& gen = segtest::rng();
  std::uniform_int_distribution<std::size_t> rdist(1, 14);
  for (int it = 0; it < 30; ++it) {
    SegmentSet chain = segtest::random_chain(gen, rdist(gen));
    MeasurementVector mu;
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    for (std::size_t i = 0; i < chain.size(); ++i) mu.values.push_back(v(gen));
    CHECK_NOTHROW(interpolate(chain, mu));
  }
}

TEST_CASE("explicit chain basis") {
  SegmentSet eq2 = make_equidistant(2);
  // ell_{s_1} = 1/2 - x, ell_{s_2} = x + 1/2
  CHECK(lagrange_c1(eq2, 0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lagrange_c1(eq2, 0, 0.4) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(lagrange_c1(eq2, 1, 0.25) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK_THROWS_AS(lagrange_c1(make_cl_overlapping(2), 0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(lagrange_c1(eq2, 2, 0.0), std::invalid_argument);
}

TEST_CASE("explicit left-anchored basis") {
  SegmentSet one = make_cl_overlapping(1);
  CHECK(lagrange_c3(one, 0, -0.7) == doctest::Approx(0.5).epsilon(1e-14));
  SegmentSet clo2 = make_cl_overlapping(2);
  CHECK(lagrange_c3(clo2, 0, 0.3) == doctest::Approx(-0.6).epsilon(1e-13));
  CHECK_THROWS_AS(lagrange_c3(make_equidistant(2), 0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("explicit bases are dual to the averages") {
  auto& gen = segtest::rng();
  QuadratureRule rule = gauss_legendre(32);
  std::uniform_int_distribution<std::size_t> rdist(1, 12);
  for (int it = 0; it < 8; ++it) {
    SegmentSet chain = segtest::random_chain(gen, rdist(gen));
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = 0; j < chain.size(); ++j) {
        const double integral = measure(
            [&](double x) { return lagrange_c1(chain, j, x); }, chain[i], rule);
        CHECK(std::abs(integral - (i == j ? 1.0 : 0.0)) < 1e-9);
      }
    SegmentSet anchored = segtest::random_left_anchored(gen, rdist(gen));
    for (std::size_t i = 0; i < anchored.size(); ++i)
      for (std::size_t j = 0; j < anchored.size(); ++j) {
        const double integral =
            measure([&](double x) { return lagrange_c3(anchored, j, x); },
                    anchored[i], rule);
        CHECK(std::abs(integral - (i == j ? 1.0 : 0.0)) < 1e-9);
      }
  }
}

TEST_CASE("generic basis matches the explicit ones") {
  auto& gen = segtest::rng();
  const auto grid = segtest::uniform_grid(-1.0, 1.0, 1000);

  SegmentSet one(std::vector<Segment>{{-1.0, 1.0}}, -1.0, 1.0);
  ChebExpansion half = lagrange_generic(one, 0);
  CHECK(half(0.123) == doctest::Approx(0.5).epsilon(1e-14));

  for (std::size_t r : {2u, 6u, 12u}) {
    SegmentSet chain = segtest::random_chain(gen, r);
    for (std::size_t j = 0; j < r; ++j) {
      ChebExpansion g = lagrange_generic(chain, j);
      const double gap = segtest::sup_diff(
          g, [&](double x) { return lagrange_c1(chain, j, x); }, grid);
      CHECK(gap < 1e-8);
    }
    SegmentSet anchored = segtest::random_left_anchored(gen, r);
    for (std::size_t j = 0; j < r; ++j) {
      ChebExpansion g = lagrange_generic(anchored, j);
      const double gap = segtest::sup_diff(
          g, [&](double x) { return lagrange_c3(anchored, j, x); }, grid);
      CHECK(gap < 1e-8);
    }
  }
}

TEST_CASE("runge function on CL segments stays accurate at r=10") {
  // oracle-frozen: max uniform-grid error 0.0698 (1000 points)
  SegmentSet cl = make_chebyshev_lobatto(10);
  MeasurementVector mu =
      measure_vector(segtest::runge10, cl, gauss_legendre(64));
  Interpolant p = interpolate(cl, mu);
  const double worst =
      segtest::sup_diff(p, segtest::runge10, segtest::uniform_grid(-1, 1, 1000));
  CHECK(worst < 0.08);
}

TEST_CASE("residuals stay small on CL sets") {
  auto& gen = segtest::rng();
  for (std::size_t r = 1; r <= 20; ++r) {
    SegmentSet cl = make_chebyshev_lobatto(r);
    ChebExpansion p = random_expansion(gen, r);
    MeasurementVector mu = exact_averages(p, cl);
    double scale = 1.0;
    for (double v : mu.values) scale = std::max(scale, std::abs(v));
    Interpolant q = interpolate(cl, mu);
    CHECK(q.residual_inf <= 1e-8 * scale);
  }
}

TEST_CASE("nodal U-basis interpolation hits the data") {
  std::vector<double> nodes{-0.9, -0.2, 0.4, 0.8};
  std::vector<double> vals{1.0, -2.0, 0.5, 3.0};
  ChebExpansion p = nodal_interpolate_u(nodes, vals);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    CHECK(p(nodes[i]) == doctest::Approx(vals[i]).epsilon(1e-12));
}

TEST_CASE("interpolation on a mapped interval pulls back") {
  // same chain moved to [0, 4]: data for f(x) = x
  SegmentSet chain = make_equidistant(4, 0.0, 4.0);
  MeasurementVector mu;
  for (const Segment& s : chain.segments())
    mu.values.push_back(0.5 * (s.beta * s.beta - s.alpha * s.alpha));
  Interpolant p = interpolate(chain, mu);
  for (double x : {0.1, 1.7, 3.9})
    CHECK(p(x) == doctest::Approx(x).epsilon(1e-12));
  CHECK(p.residual_inf < 1e-12);
}

TEST_CASE("interpolant CSV layout") {
  SegmentSet eq2 = make_equidistant(2);
  MeasurementVector mu{{-0.5, 0.5}, Provenance::external};
  Interpolant p = interpolate(eq2, mu);
  std::stringstream ss;
  write_interpolant_csv(ss, p);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "# path,cond,residual");
  std::getline(ss, line);
  CHECK(line.substr(0, 14) == "# vandermonde,");
  std::getline(ss, line);
  CHECK(line == "j,a_j");
  std::getline(ss, line);
  CHECK(line == "0,0");
}
