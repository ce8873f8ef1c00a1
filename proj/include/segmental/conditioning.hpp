#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "segmental/interpolation.hpp"
#include "segmental/quadrature.hpp"
#include "segmental/segment.hpp"

namespace segmental {

struct SupResult {
  double value;
  double argmax;
};

struct BoundEntry {
  std::string name;
  std::optional<double> lower;
  std::optional<double> upper;
};

struct LebesgueReport {
  std::size_t r = 0;
  double lambda_const = 0.0;
  double argmax_x = 0.0;
  double op_norm = 0.0;
  double fill_distance_h = 0.0;
  std::size_t grid_points = 0;  // sup-search grid size (lower estimate)
  std::vector<BoundEntry> bounds;
};

// Elementary-interval decomposition of the union of segments: between two
// consecutive breakpoints the set of covering segments is constant.  Lets
// the operator norm integrate |sum_i ell_i(x) 1_{s_i}(t)| in t exactly.
struct KernelProfile {
  std::vector<double> breakpoints;
  std::vector<std::vector<std::size_t>> coverage;  // per elementary interval

  static KernelProfile build(const SegmentSet& set);
};

// Lebesgue function sum_i |s_i| |ell_{s_i}(x)| from a precomputed basis
// (expansions on the set's own coordinates).
double lebesgue_function(const SegmentSet& set,
                         std::span<const ChebExpansion> basis, double x);

// Sup of the Lebesgue function over a Chebyshev-clustered grid of
// max(4096, 200 r) points plus golden-section refinement around the
// discrete argmax; a certified lower estimate.  Ties break toward the
// smallest x.  Chains and left-anchored sets use their explicit bases;
// everything else goes through Vandermonde solves on the normalized set.
// The explicit-grid overloads exist for convergence studies.
SupResult lebesgue_constant(const SegmentSet& set);
SupResult lebesgue_constant(const SegmentSet& set, std::size_t grid_points);

// True operator norm sup_x int_I |sum_i ell_{s_i}(x) 1_{s_i}(t)| dt with
// the t-integral evaluated exactly on the kernel profile.  Same grid
// scheme as lebesgue_constant.
SupResult operator_norm(const SegmentSet& set);
SupResult operator_norm(const SegmentSet& set, std::size_t grid_points);

// h = sup_x min_i max(|x - alpha_i|, |x - beta_i|); piecewise linear, so
// the sup is taken exactly over endpoint and crossing candidates.
double fill_distance(const SegmentSet& set);

// Modulus of continuity estimated from a uniform grid (sliding window).
double modulus_of_continuity(const RealFunction& f, double lo, double hi,
                             double delta, int grid = 4096);

// Lambda_r(S) * omega(f, h); a diagnostic, not a certified bound (omega is
// estimated from below on a grid of `delta_grid` points).
double error_bound(const SegmentSet& set, const RealFunction& f,
                   int delta_grid = 4096);

// Nodal Lebesgue constant sup over [lo,hi] of sum_j |ell_{xi_j}(x)|.
double nodal_lebesgue_constant(const NodeSet& nodes, double lo = -1.0,
                               double hi = 1.0);

// Chain bound (2/(hi-lo)) * max|s_i| * r^3 * Lambda_{r+1}(chain nodes).
double bound_c1_vs_nodal(const SegmentSet& set);

// Exponential sandwich for equidistant chains:
// (1/pi) 2^{r-1}/r^2 <= Lambda_r <= r 2^{r+4}.
std::pair<double, double> equidistant_bounds(std::size_t r);

// CL bounds: lower (1/2)((4/pi^2) ln r - 1); upper shape ln r + pi/2 (the
// multiplier-norm factor is reported separately by k_inverse_norm_bounds,
// not folded in).
std::pair<double, double> cl_log_bounds(std::size_t r);

// Segment-averaging operator: (K_rho f)(cos t) = average of f over
// [cos(t+rho), cos(t-rho)], by quadrature.  Endpoint t in {0, pi} is
// nudged one-sided by 1e-8; t +/- rho outside [0, pi] is an error.
double apply_K_rho(const RealFunction& f, double rho, double t);

// Eigenvalue of U_j under K_rho: sin((j+1) rho) / ((j+1) sin(rho)).
double k_rho_eigenvalue(unsigned j, double rho);

struct KInverseTruncation {
  double z_max = 200.0;
  int quad_points = 64;
};

struct KInverseBounds {
  double spectral_lower;              // lambda*pi / sin(lambda*pi), exact
  double vinogradov_upper_estimate;   // spectral_lower * truncated integral
  double tail_contribution;           // share of the outer integral from
                                      // z in [z_max/2, z_max]
  bool truncated = true;
};

// Bounds on sup_r ||K^{-1}_{rho(r),r}|| for rho(r) = lambda*pi/r.  The
// upper estimate evaluates the multiplier-norm integral
// (2/pi) int z |int u phi_lambda(u) sin(zu) du| dz truncated at z_max;
// the tail converges slowly, hence the diagnostic field.
KInverseBounds k_inverse_norm_bounds(double lambda, std::size_t r,
                                     KInverseTruncation trunc = {});

// Aggregates Lebesgue constant, operator norm, fill distance and every
// bound applicable to the set's structure.
LebesgueReport full_report(const SegmentSet& set);

// CSV rows "r,lambda,argmax,opnorm,h,bound_name,lower,upper", one row per
// bound entry.
void write_report_csv(std::ostream& out, const LebesgueReport& report);

}  // namespace segmental
