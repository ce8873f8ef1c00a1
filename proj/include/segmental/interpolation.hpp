#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "segmental/cheb.hpp"
#include "segmental/quadrature.hpp"
#include "segmental/segment.hpp"

namespace segmental {

enum class BasisTag { monomial, cheb_u };

// Dense r x r system matrix of the interpolation conditions: row i is the
// segment s_i, column j the basis function of index j (zero-based).
struct VandermondeMatrix {
  std::vector<double> entries;  // row major
  std::size_t n = 0;
  BasisTag basis = BasisTag::cheb_u;

  double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

// Monomial entries (beta^j - alpha^j)/j; Chebyshev-U entries
// (2/j) sin(j(acos(a)+acos(b))/2) sin(j(acos(a)-acos(b))/2).  The chebU
// form requires endpoints in [-1,1].
VandermondeMatrix vandermonde(const SegmentSet& set, BasisTag basis);

// LU factorization with partial pivoting.  Any pivot below
// 1e-12 * (max |entry| of the input) throws SingularSystem with the pivot
// index.  cond_estimate is the ratio of the largest to the smallest
// absolute pivot.
struct LuFactors {
  std::vector<double> lu;
  std::vector<std::size_t> perm;
  std::size_t n = 0;
  double cond_estimate = 1.0;
};

LuFactors lu_factor(std::vector<double> a, std::size_t n);
std::vector<double> lu_solve(const LuFactors& f, std::span<const double> rhs);

struct DenseSolution {
  std::vector<double> coeffs;
  double cond_estimate;
};

DenseSolution solve_dense(const VandermondeMatrix& m,
                          std::span<const double> rhs);

enum class SolvePath { vandermonde, c1_explicit, c2_fast, c3_explicit };

// Solved polynomial.  Coefficients live on the set mapped to [-1,1]
// (solves are always performed on the normalized set); operator() applies
// the affine pullback, so evaluation is in original coordinates.
struct Interpolant {
  ChebExpansion poly;
  SegmentSet set;
  SolvePath path = SolvePath::vandermonde;
  double residual_inf = 0.0;   // max_i |int_{s_i} p - mu_i|, recomputed
  double cond_estimate = 1.0;
  bool residual_warning = false;

  double operator()(double x) const;
};

// Algorithm: normalize the set to [-1,1], assemble the chebU Vandermonde
// matrix, solve, recompute the residual.  Arc-uniform sets with a
// non-resonant radius take the fast path below instead.
Interpolant interpolate(const SegmentSet& set, const MeasurementVector& mu);

// Fast path for arc-uniform segments: divide each mu_i by the segment
// length, nodally interpolate at the arc midpoints cos(tau_i) in the U
// basis, then rescale coefficient j by (j+1) sin(rho) / sin((j+1) rho).
// Radii within 1e-10 of the excluded set {k*pi/j} throw ResonantRadius.
Interpolant interpolate_c2_fast(const SegmentSet& set,
                                const MeasurementVector& mu);
Interpolant interpolate_c2_fast(std::span<const double> taus, double rho,
                                std::span<const double> mu);

// Explicit segmental Lagrange bases (j zero-based):
// chains:        ell_{s_j}(x) = sum_{k=j+1}^{r} ell'_{xi_k}(x),
// left-anchored: ell_{s_j}(x) = ell'_{beta_j}(x) over {alpha, beta_0..}.
double lagrange_c1(const SegmentSet& set, std::size_t j, double x);
double lagrange_c3(const SegmentSet& set, std::size_t j, double x);

// j-th segmental Lagrange polynomial by one Vandermonde solve with the
// unit data vector.  The expansion lives on the normalized set.
ChebExpansion lagrange_generic(const SegmentSet& set, std::size_t j);

// Nodal interpolation in the U basis (dense solve of U_j(x_i) a_j = f_i).
ChebExpansion nodal_interpolate_u(std::span<const double> nodes,
                                  std::span<const double> values);

// CSV: "# path,cond,residual" header comment then "j,a_j" rows.
void write_interpolant_csv(std::ostream& out, const Interpolant& p);

}  // namespace segmental
