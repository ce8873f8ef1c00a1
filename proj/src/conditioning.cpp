#include "segmental/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "segmental/cheb.hpp"
#include "segmental/csv.hpp"

namespace segmental {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t sup_grid_size(std::size_t r) {
  return std::max<std::size_t>(4096, 200 * r);
}

// Chebyshev-clustered grid (images of uniform angles) on [lo, hi],
// ascending, with exact endpoints.
std::vector<double> clustered_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (std::size_t k = 0; k < n; ++k)
    g[k] = mid + half * std::cos(kPi * static_cast<double>(n - 1 - k) /
                                 static_cast<double>(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// grid sweep plus golden-section refinement in the two cells flanking the
// discrete argmax; ties break toward the smallest x, so the result does
// not depend on evaluation order
SupResult sup_search(const std::function<double(double)>& g, double lo,
                     double hi, std::size_t n_grid) {
  const std::vector<double> grid = clustered_grid(lo, hi, n_grid);
  double best = -std::numeric_limits<double>::infinity();
  double best_x = lo;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = g(grid[k]);
    if (v > best) {
      best = v;
      best_x = grid[k];
      best_k = k;
    }
  }
  double a = grid[best_k == 0 ? 0 : best_k - 1];
  double b = grid[std::min(best_k + 1, grid.size() - 1)];
  constexpr double kGolden = 0.6180339887498949;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double gc = g(c), gd = g(d);
  for (int iter = 0; iter < 40; ++iter) {
    if (gc > best || (gc == best && c < best_x)) { best = gc; best_x = c; }
    if (gd > best || (gd == best && d < best_x)) { best = gd; best_x = d; }
    if (gc < gd) {
      a = c;
      c = d;
      gc = gd;
      d = a + kGolden * (b - a);
      gd = g(d);
    } else {
      b = d;
      d = c;
      gd = gc;
      c = b - kGolden * (b - a);
      gc = g(c);
    }
  }
  return {best, best_x};
}

SegmentSet normalized(const SegmentSet& set) {
  if (set.lo() == -1.0 && set.hi() == 1.0) return set;
  return affine_map(set, -1.0, 1.0);
}

// evaluator of all r segmental Lagrange basis values at a point, choosing
// the explicit chain / left-anchored formulas where available and
// Vandermonde solves otherwise;  expects a set on [-1,1]
struct BasisEval {
  std::size_t r = 0;
  std::function<void(double, std::span<double>)> eval;
};

BasisEval make_basis_eval(const SegmentSet& set) {
  const std::size_t r = set.size();
  switch (set.tag()) {
    case SegmentClass::chain: {
      auto ev = std::make_shared<LagrangeEvaluator>(set.chain_nodes());
      return {r, [ev, r](double x, std::span<double> out) {
                std::vector<double> der(r + 1);
                ev->derivatives(x, der);
                double acc = 0.0;
                for (std::size_t k = r + 1; k-- > 1;) {
                  acc += der[k];
                  out[k - 1] = acc;
                }
              }};
    }
    case SegmentClass::left_anchored: {
      auto ev = std::make_shared<LagrangeEvaluator>(set.anchored_nodes());
      return {r, [ev, r](double x, std::span<double> out) {
                std::vector<double> der(r + 1);
                ev->derivatives(x, der);
                for (std::size_t j = 0; j < r; ++j) out[j] = der[j + 1];
              }};
    }
    case SegmentClass::arc_uniform:
    case SegmentClass::general: {
      VandermondeMatrix m = vandermonde(set, BasisTag::cheb_u);
      LuFactors f = lu_factor(m.entries, m.n);
      auto basis = std::make_shared<std::vector<ChebExpansion>>();
      basis->reserve(r);
      std::vector<double> rhs(r, 0.0);
      for (std::size_t j = 0; j < r; ++j) {
        rhs[j] = 1.0;
        basis->push_back(ChebExpansion{lu_solve(f, rhs)});
        rhs[j] = 0.0;
      }
      return {r, [basis, r](double x, std::span<double> out) {
                for (std::size_t j = 0; j < r; ++j) out[j] = (*basis)[j](x);
              }};
    }
  }
  throw std::logic_error("unreachable");
}

bool nodes_match(const std::vector<double>& nodes,
                 const std::function<double(std::size_t)>& expected) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (std::abs(nodes[i] - expected(i)) > 1e-12) return false;
  return true;
}

}  // namespace

KernelProfile KernelProfile::build(const SegmentSet& set) {
  KernelProfile k;
  for (const Segment& s : set.segments()) {
    k.breakpoints.push_back(s.alpha);
    k.breakpoints.push_back(s.beta);
  }
  std::sort(k.breakpoints.begin(), k.breakpoints.end());
  k.breakpoints.erase(
      std::unique(k.breakpoints.begin(), k.breakpoints.end()),
      k.breakpoints.end());
  k.coverage.resize(k.breakpoints.size() - 1);
  for (std::size_t e = 0; e + 1 < k.breakpoints.size(); ++e) {
    const double mid = 0.5 * (k.breakpoints[e] + k.breakpoints[e + 1]);
    for (std::size_t i = 0; i < set.size(); ++i)
      if (set[i].alpha <= mid && mid <= set[i].beta)
        k.coverage[e].push_back(i);
  }
  return k;
}

double lebesgue_function(const SegmentSet& set,
                         std::span<const ChebExpansion> basis, double x) {
  if (basis.size() != set.size())
    throw std::invalid_argument("basis must have one expansion per segment");
  double acc = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i)
    acc += set[i].length() * std::abs(basis[i](x));
  return acc;
}

SupResult lebesgue_constant(const SegmentSet& set, std::size_t grid_points) {
  const SegmentSet s = normalized(set);
  BasisEval basis = make_basis_eval(s);
  const std::size_t r = s.size();
  std::vector<double> lens(r);
  for (std::size_t i = 0; i < r; ++i) lens[i] = s[i].length();
  auto g = [&](double x) {
    std::vector<double> vals(r);
    basis.eval(x, vals);
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i) acc += lens[i] * std::abs(vals[i]);
    return acc;
  };
  SupResult res = sup_search(g, -1.0, 1.0, grid_points);
  // pull the argmax back to the original interval
  res.argmax = 0.5 * (set.lo() + set.hi()) +
               0.5 * (set.hi() - set.lo()) * res.argmax;
  return res;
}

SupResult lebesgue_constant(const SegmentSet& set) {
  return lebesgue_constant(set, sup_grid_size(set.size()));
}

SupResult operator_norm(const SegmentSet& set, std::size_t grid_points) {
  const SegmentSet s = normalized(set);
  BasisEval basis = make_basis_eval(s);
  const KernelProfile prof = KernelProfile::build(s);
  const std::size_t r = s.size();
  auto g = [&](double x) {
    std::vector<double> vals(r);
    basis.eval(x, vals);
    double acc = 0.0;
    for (std::size_t e = 0; e < prof.coverage.size(); ++e) {
      if (prof.coverage[e].empty()) continue;
      double inner = 0.0;
      for (std::size_t i : prof.coverage[e]) inner += vals[i];
      acc += std::abs(inner) * (prof.breakpoints[e + 1] - prof.breakpoints[e]);
    }
    return acc;
  };
  SupResult res = sup_search(g, -1.0, 1.0, grid_points);
  res.argmax = 0.5 * (set.lo() + set.hi()) +
               0.5 * (set.hi() - set.lo()) * res.argmax;
  return res;
}

SupResult operator_norm(const SegmentSet& set) {
  return operator_norm(set, sup_grid_size(set.size()));
}

double fill_distance(const SegmentSet& set) {
  // g(x) = min_i max(beta_i - x, x - alpha_i) is piecewise linear with
  // slopes +/-1, so its sup over [lo,hi] is attained at an interval
  // endpoint, a segment endpoint, or a crossing (beta_j + alpha_i)/2.
  std::vector<double> candidates{set.lo(), set.hi()};
  for (const Segment& si : set.segments()) {
    candidates.push_back(si.alpha);
    candidates.push_back(si.beta);
    for (const Segment& sj : set.segments())
      candidates.push_back(0.5 * (sj.beta + si.alpha));
  }
  auto g = [&](double x) {
    double m = std::numeric_limits<double>::infinity();
    for (const Segment& s : set.segments())
      m = std::min(m, std::max(s.beta - x, x - s.alpha));
    return m;
  };
  double best = -1.0;
  for (double c : candidates) {
    if (c < set.lo() || c > set.hi()) continue;
    best = std::max(best, g(c));
  }
  return best;
}

double modulus_of_continuity(const RealFunction& f, double lo, double hi,
                             double delta, int grid) {
  if (grid < 2) throw std::invalid_argument("grid must be at least 2");
  if (delta <= 0.0) return 0.0;
  std::vector<double> x(grid), v(grid);
  for (int k = 0; k < grid; ++k) {
    x[k] = lo + (hi - lo) * k / (grid - 1);
    v[k] = f(x[k]);
  }
  double best = 0.0;
  for (int a = 0; a < grid; ++a)
    for (int b = a + 1; b < grid && x[b] - x[a] <= delta; ++b)
      best = std::max(best, std::abs(v[b] - v[a]));
  return best;
}

double error_bound(const SegmentSet& set, const RealFunction& f,
                   int delta_grid) {
  const double lambda = lebesgue_constant(set).value;
  const double h = fill_distance(set);
  return lambda * modulus_of_continuity(f, set.lo(), set.hi(), h, delta_grid);
}

double nodal_lebesgue_constant(const NodeSet& nodes, double lo, double hi) {
  LagrangeEvaluator ev(nodes.values());
  const std::size_t n = nodes.size();
  auto g = [&](double x) {
    std::vector<double> vals(n);
    ev.values(x, vals);
    double acc = 0.0;
    for (double v : vals) acc += std::abs(v);
    return acc;
  };
  return sup_search(g, lo, hi, sup_grid_size(n)).value;
}

double bound_c1_vs_nodal(const SegmentSet& set) {
  if (set.tag() != SegmentClass::chain)
    throw std::invalid_argument("bound_c1_vs_nodal requires a chain set");
  const double r = static_cast<double>(set.size());
  double max_len = 0.0;
  for (const Segment& s : set.segments())
    max_len = std::max(max_len, s.length());
  const double nodal =
      nodal_lebesgue_constant(NodeSet(set.chain_nodes()), set.lo(), set.hi());
  return 2.0 / (set.hi() - set.lo()) * max_len * r * r * r * nodal;
}

std::pair<double, double> equidistant_bounds(std::size_t r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const double rr = static_cast<double>(r);
  return {std::pow(2.0, rr - 1.0) / (kPi * rr * rr),
          rr * std::pow(2.0, rr + 4.0)};
}

std::pair<double, double> cl_log_bounds(std::size_t r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const double lr = std::log(static_cast<double>(r));
  return {0.5 * (4.0 / (kPi * kPi) * lr - 1.0), lr + kPi / 2.0};
}

double apply_K_rho(const RealFunction& f, double rho, double t) {
  if (!(rho > 0.0 && rho < kPi))
    throw std::invalid_argument("rho outside (0, pi)");
  if (t == 0.0) t = 1e-8;          // one-sided limits at the endpoints
  if (t == kPi) t = kPi - 1e-8;
  if (!(t > 0.0 && t < kPi)) throw std::invalid_argument("t outside (0, pi)");
  if (t - rho < 0.0 || t + rho > kPi)
    throw std::invalid_argument("t +/- rho leaves [0, pi]");
  const Segment seg{std::cos(t + rho), std::cos(t - rho)};
  static const QuadratureRule rule = gauss_legendre(64);
  return measure(f, seg, rule) / seg.length();
}

double k_rho_eigenvalue(unsigned j, double rho) {
  if (!(rho > 0.0 && rho < kPi))
    throw std::invalid_argument("rho outside (0, pi)");
  const double jj = static_cast<double>(j + 1);
  return std::sin(jj * rho) / (jj * std::sin(rho));
}

namespace {

// phi_lambda: lambda*u*pi/sin(lambda*u*pi) on [0,1], linear taper to 0 on
// [1,2], zero beyond
double phi_lambda(double lambda, double u) {
  if (u <= 0.0) return 1.0;
  if (u <= 1.0) {
    const double a = lambda * u * kPi;
    return a / std::sin(a);
  }
  if (u <= 2.0) return (2.0 - u) * lambda * kPi / std::sin(lambda * kPi);
  return 0.0;
}

}  // namespace

KInverseBounds k_inverse_norm_bounds(double lambda, std::size_t r,
                                     KInverseTruncation trunc) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda outside (0, 1)");
  if (r < 1) throw std::invalid_argument("r must be positive");
  const double s = std::sin(lambda * kPi);
  if (s < 1e-12)
    throw std::invalid_argument("lambda too close to 1: sin(lambda*pi) underflows");
  KInverseBounds out;
  out.spectral_lower = lambda * kPi / s;

  const QuadratureRule rule = gauss_legendre(trunc.quad_points);
  // inner integral over u in [0,2], split at the kink u = 1
  auto inner = [&](double z) {
    double acc = 0.0;
    for (const auto& [a, b] : {std::pair{0.0, 1.0}, std::pair{1.0, 2.0}}) {
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double panel = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double u = mid + half * rule.nodes[k];
        panel += rule.weights[k] * u * phi_lambda(lambda, u) * std::sin(z * u);
      }
      acc += half * panel;
    }
    return acc;
  };
  // outer integral in unit panels up to z_max; the upper half is the
  // reported tail
  const int panels = static_cast<int>(std::ceil(trunc.z_max));
  double total = 0.0, tail = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p, b = std::min<double>(p + 1, trunc.z_max);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double panel = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double z = mid + half * rule.nodes[k];
      panel += rule.weights[k] * z * std::abs(inner(z));
    }
    panel *= half;
    total += panel;
    if (a >= 0.5 * trunc.z_max) tail += panel;
  }
  const double m_norm = 2.0 / kPi * total;
  out.vinogradov_upper_estimate = out.spectral_lower * m_norm;
  out.tail_contribution = out.spectral_lower * 2.0 / kPi * tail;
  out.truncated = true;
  return out;
}

LebesgueReport full_report(const SegmentSet& set) {
  LebesgueReport rep;
  rep.r = set.size();
  rep.grid_points = sup_grid_size(set.size());
  const SupResult leb = lebesgue_constant(set);
  rep.lambda_const = leb.value;
  rep.argmax_x = leb.argmax;
  rep.op_norm = operator_norm(set).value;
  rep.fill_distance_h = fill_distance(set);

  const double r = static_cast<double>(set.size());
  // universal projection lower bound
  rep.bounds.push_back(
      {"projection-lower", 0.5 * (4.0 / (kPi * kPi) * std::log(r) - 1.0),
       std::nullopt});
  if (set.tag() == SegmentClass::chain) {
    rep.bounds.push_back(
        {"chain-markov-upper", std::nullopt, bound_c1_vs_nodal(set)});
    // structure detection on the normalized nodes
    const std::vector<double> nodes = normalized(set).chain_nodes();
    const std::size_t n = set.size();
    if (nodes_match(nodes, [n](std::size_t i) {
          return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n);
        })) {
      auto [lo, hi] = equidistant_bounds(n);
      rep.bounds.push_back({"equidistant-sandwich", lo, hi});
    }
    if (nodes_match(nodes, [n](std::size_t i) {
          return std::cos(kPi * static_cast<double>(n - i) /
                          static_cast<double>(n));
        })) {
      auto [lo, hi] = cl_log_bounds(n);
      rep.bounds.push_back({"cl-log", lo, hi});
    }
  }
  return rep;
}

void write_report_csv(std::ostream& out, const LebesgueReport& rep) {
  out << "r,lambda,argmax,opnorm,h,bound_name,lower,upper\n";
  for (const BoundEntry& b : rep.bounds) {
    out << rep.r << ',' << csv::num(rep.lambda_const) << ','
        << csv::num(rep.argmax_x) << ',' << csv::num(rep.op_norm) << ','
        << csv::num(rep.fill_distance_h) << ',' << b.name << ',';
    if (b.lower) out << csv::num(*b.lower);
    out << ',';
    if (b.upper) out << csv::num(*b.upper);
    out << '\n';
  }
}

}  // namespace segmental
