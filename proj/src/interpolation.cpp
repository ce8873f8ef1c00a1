#include "segmental/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "segmental/csv.hpp"
#include "segmental/errors.hpp"

namespace segmental {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPivotRelTol = 1e-12;
constexpr double kResonanceTol = 1e-10;
constexpr double kResidualWarn = 1e-6;

bool on_reference_interval(const SegmentSet& s) {
  return s.lo() == -1.0 && s.hi() == 1.0;
}

// rho within kResonanceTol of {k*pi/j : j,k in 1..r, j > k}?
bool resonant_radius(double rho, std::size_t r, unsigned& j_out,
                     unsigned& k_out) {
  for (unsigned j = 2; j <= r; ++j)
    for (unsigned k = 1; k < j; ++k)
      if (std::abs(rho - k * kPi / j) < kResonanceTol) {
        j_out = j;
        k_out = k;
        return true;
      }
  return false;
}

const char* path_name(SolvePath p) {
  switch (p) {
    case SolvePath::vandermonde: return "vandermonde";
    case SolvePath::c1_explicit: return "c1_explicit";
    case SolvePath::c2_fast: return "c2_fast";
    case SolvePath::c3_explicit: return "c3_explicit";
  }
  return "?";
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// residual and warning flag, recomputed from the exact basis integrals
void attach_residual(Interpolant& p, std::span<const double> mu) {
  const double hw = 0.5 * (p.set.hi() - p.set.lo());
  const double mid = 0.5 * (p.set.hi() + p.set.lo());
  double worst = 0.0;
  for (std::size_t i = 0; i < p.set.size(); ++i) {
    const Segment& s = p.set[i];
    const Segment mapped{(s.alpha - mid) / hw, (s.beta - mid) / hw};
    const double integral = hw * integrate_expansion(p.poly, mapped);
    worst = std::max(worst, std::abs(integral - mu[i]));
  }
  p.residual_inf = worst;
  p.residual_warning = worst > kResidualWarn * std::max(1.0, max_abs(mu));
}

}  // namespace

VandermondeMatrix vandermonde(const SegmentSet& set, BasisTag basis) {
  const std::size_t r = set.size();
  VandermondeMatrix m;
  m.n = r;
  m.basis = basis;
  m.entries.assign(r * r, 0.0);
  if (basis == BasisTag::monomial) {
    for (std::size_t i = 0; i < r; ++i) {
      double ap = set[i].alpha, bp = set[i].beta;
      for (std::size_t j = 0; j < r; ++j) {
        m.at(i, j) = (bp - ap) / static_cast<double>(j + 1);
        ap *= set[i].alpha;
        bp *= set[i].beta;
      }
    }
  } else {
    for (std::size_t i = 0; i < r; ++i) {
      double a = set[i].alpha, b = set[i].beta;
      if (std::abs(a) > 1.0 + 1e-12 || std::abs(b) > 1.0 + 1e-12)
        throw std::invalid_argument(
            "chebU Vandermonde needs endpoints in [-1,1]; normalize first");
      a = std::clamp(a, -1.0, 1.0);
      b = std::clamp(b, -1.0, 1.0);
      const double half_sum = 0.5 * (std::acos(a) + std::acos(b));
      const double half_diff = 0.5 * (std::acos(a) - std::acos(b));
      for (std::size_t j = 0; j < r; ++j) {
        const double jj = static_cast<double>(j + 1);
        m.at(i, j) =
            (2.0 / jj) * std::sin(jj * half_sum) * std::sin(jj * half_diff);
      }
    }
  }
  return m;
}

LuFactors lu_factor(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("matrix size mismatch");
  double max_entry = 0.0;
  for (double v : a) max_entry = std::max(max_entry, std::abs(v));
  const double threshold = kPivotRelTol * max_entry;

  LuFactors f;
  f.n = n;
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

  double max_piv = 0.0, min_piv = std::numeric_limits<double>::infinity();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_abs = std::abs(a[col * n + col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double v = std::abs(a[row * n + col]);
      if (v > best_abs) {
        best_abs = v;
        best = row;
      }
    }
    if (best_abs <= threshold || best_abs == 0.0)
      throw SingularSystem(col, best_abs, threshold);
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[best * n + j], a[col * n + j]);
      std::swap(f.perm[best], f.perm[col]);
    }
    const double piv = a[col * n + col];
    max_piv = std::max(max_piv, std::abs(piv));
    min_piv = std::min(min_piv, std::abs(piv));
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row * n + col] / piv;
      a[row * n + col] = factor;
      for (std::size_t j = col + 1; j < n; ++j)
        a[row * n + j] -= factor * a[col * n + j];
    }
  }
  f.lu = std::move(a);
  f.cond_estimate = max_piv / min_piv;
  return f;
}

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> rhs) {
  const std::size_t n = f.n;
  if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu[i * n + j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu[i * n + j] * x[j];
    x[i] = s / f.lu[i * n + i];
  }
  return x;
}

DenseSolution solve_dense(const VandermondeMatrix& m,
                          std::span<const double> rhs) {
  LuFactors f = lu_factor(m.entries, m.n);
  return DenseSolution{lu_solve(f, rhs), f.cond_estimate};
}

double Interpolant::operator()(double x) const {
  const double u = (2.0 * x - (set.lo() + set.hi())) / (set.hi() - set.lo());
  return poly(u);
}

Interpolant interpolate(const SegmentSet& set, const MeasurementVector& mu) {
  if (mu.size() != set.size())
    throw std::invalid_argument("measurement count must equal segment count");

  if (set.tag() == SegmentClass::arc_uniform) {
    unsigned j, k;
    if (!resonant_radius(set.arc()->rho, set.size(), j, k))
      return interpolate_c2_fast(set, mu);
    // resonant radius: fall through and let the dense solve flag it
  }

  const bool ref = on_reference_interval(set);
  const SegmentSet solved = ref ? set : affine_map(set, -1.0, 1.0);
  std::vector<double> rhs(mu.values.begin(), mu.values.end());
  if (!ref) {
    const double scale = 2.0 / (set.hi() - set.lo());
    for (double& v : rhs) v *= scale;
  }
  VandermondeMatrix m = vandermonde(solved, BasisTag::cheb_u);
  DenseSolution sol = solve_dense(m, rhs);

  Interpolant p{ChebExpansion{std::move(sol.coeffs)}, set,
                SolvePath::vandermonde, 0.0, sol.cond_estimate, false};
  attach_residual(p, mu.values);
  return p;
}

Interpolant interpolate_c2_fast(std::span<const double> taus, double rho,
                                std::span<const double> mu) {
  const std::size_t r = taus.size();
  if (r == 0) throw std::invalid_argument("empty arc midpoint list");
  if (mu.size() != r)
    throw std::invalid_argument("measurement count must equal segment count");
  if (!(rho > 0.0 && rho < kPi))
    throw std::invalid_argument("rho outside (0, pi)");
  for (double t : taus)
    if (!(t > 0.0 && t < kPi))
      throw std::invalid_argument("tau outside (0, pi)");
  unsigned jr, kr;
  if (resonant_radius(rho, r, jr, kr)) throw ResonantRadius(rho, jr, kr);

  std::vector<double> nodes(r), scaled(r);
  const double sin_rho = std::sin(rho);
  for (std::size_t i = 0; i < r; ++i) {
    nodes[i] = std::cos(taus[i]);
    const double len = 2.0 * std::sin(taus[i]) * sin_rho;
    scaled[i] = mu[i] / len;
  }
  ChebExpansion q = nodal_interpolate_u(nodes, scaled);
  // undo the eigenvalue damping: a_j = b_j (j+1) sin(rho) / sin((j+1) rho)
  for (std::size_t j = 0; j < r; ++j) {
    const double jj = static_cast<double>(j + 1);
    q.coeffs[j] *= jj * sin_rho / std::sin(jj * rho);
  }

  std::vector<Segment> segs(r);
  for (std::size_t i = 0; i < r; ++i)
    segs[i] = {std::cos(taus[i] + rho), std::cos(taus[i] - rho)};
  Interpolant p{std::move(q),
                SegmentSet(std::move(segs), -1.0, 1.0, SegmentClass::general),
                SolvePath::c2_fast, 0.0, 1.0, false};
  attach_residual(p, mu);
  return p;
}

Interpolant interpolate_c2_fast(const SegmentSet& set,
                                const MeasurementVector& mu) {
  if (!set.arc().has_value())
    throw std::invalid_argument("interpolate_c2_fast needs arc data");
  if (mu.size() != set.size())
    throw std::invalid_argument("measurement count must equal segment count");
  Interpolant p =
      interpolate_c2_fast(set.arc()->taus, set.arc()->rho, mu.values);
  p.set = set;  // keep the caller's tagged set
  attach_residual(p, mu.values);
  return p;
}

double lagrange_c1(const SegmentSet& set, std::size_t j, double x) {
  if (set.tag() != SegmentClass::chain)
    throw std::invalid_argument("lagrange_c1 requires a chain set");
  if (j >= set.size()) throw std::invalid_argument("basis index out of range");
  NodeSet nodes(set.chain_nodes());
  double acc = 0.0;
  for (std::size_t k = j + 1; k < nodes.size(); ++k)
    acc += nodal_lagrange_deriv(nodes, k, x);
  return acc;
}

double lagrange_c3(const SegmentSet& set, std::size_t j, double x) {
  if (set.tag() != SegmentClass::left_anchored)
    throw std::invalid_argument("lagrange_c3 requires a left-anchored set");
  if (j >= set.size()) throw std::invalid_argument("basis index out of range");
  NodeSet nodes(set.anchored_nodes());
  return nodal_lagrange_deriv(nodes, j + 1, x);
}

ChebExpansion lagrange_generic(const SegmentSet& set, std::size_t j) {
  if (j >= set.size()) throw std::invalid_argument("basis index out of range");
  const SegmentSet solved =
      on_reference_interval(set) ? set : affine_map(set, -1.0, 1.0);
  VandermondeMatrix m = vandermonde(solved, BasisTag::cheb_u);
  std::vector<double> rhs(set.size(), 0.0);
  rhs[j] = 1.0;
  return ChebExpansion{solve_dense(m, rhs).coeffs};
}

ChebExpansion nodal_interpolate_u(std::span<const double> nodes,
                                  std::span<const double> values) {
  const std::size_t n = nodes.size();
  if (n == 0 || values.size() != n)
    throw std::invalid_argument("nodal data size mismatch");
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    double um1 = 1.0, u = 2.0 * nodes[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == 0) {
        m[i * n + j] = um1;
      } else {
        m[i * n + j] = u;
        const double next = 2.0 * nodes[i] * u - um1;
        um1 = u;
        u = next;
      }
    }
  }
  LuFactors f = lu_factor(std::move(m), n);
  return ChebExpansion{lu_solve(f, values)};
}

void write_interpolant_csv(std::ostream& out, const Interpolant& p) {
  out << "# path,cond,residual\n";
  out << "# " << path_name(p.path) << ',' << csv::num(p.cond_estimate) << ','
      << csv::num(p.residual_inf) << '\n';
  out << "j,a_j\n";
  for (std::size_t j = 0; j < p.poly.coeffs.size(); ++j)
    out << j << ',' << csv::num(p.poly.coeffs[j]) << '\n';
}

}  // namespace segmental
