#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "segmental/segment.hpp"

namespace segmental {

// Chebyshev polynomials of the second and first kind by three-term
// recurrence; valid for any real x.
double eval_U(unsigned j, double x);
double eval_T(unsigned j, double x);

// Polynomial as coefficients a_0..a_{n-1} in the U basis (degree bound
// n-1; trailing zeros permitted).
struct ChebExpansion {
  std::vector<double> coeffs;

  // Clenshaw backward recurrence.
  double operator()(double x) const;
  std::size_t degree_bound() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

struct MonomialPoly {
  std::vector<double> coeffs;

  double operator()(double x) const;  // Horner
};

// Exact integral of U_j over a segment: (T_{j+1}(beta) - T_{j+1}(alpha)) / (j+1).
double integrate_U_over(unsigned j, const Segment& seg);

// Exact integral of an expansion over a segment (termwise).
double integrate_expansion(const ChebExpansion& p, const Segment& seg);

// j-th nodal Lagrange polynomial for the given nodes, and its derivative.
// j is zero-based.  The derivative uses the product-rule sum, which stays
// finite at the nodes themselves (the logarithmic-derivative quotient
// form does not).
double nodal_lagrange(const NodeSet& nodes, std::size_t j, double x);
double nodal_lagrange_deriv(const NodeSet& nodes, std::size_t j, double x);

// Exact basis changes via the recurrence-built triangular conversion.
ChebExpansion monomial_to_cheb(const MonomialPoly& p);
MonomialPoly cheb_to_monomial(const ChebExpansion& p);

// Batch evaluation of all nodal Lagrange values / derivatives at a point.
// Precomputes the inverse barycentric denominators; evaluation is O(n)
// away from the nodes with an O(n^2) product-form fallback when x sits on
// or near a node.  Powers the Lebesgue sweeps.
class LagrangeEvaluator {
 public:
  explicit LagrangeEvaluator(std::vector<double> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }

  // out must have size() entries.
  void values(double x, std::span<double> out) const;
  void derivatives(double x, std::span<double> out) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> inv_w_;  // 1 / prod_{i != k} (xi_k - xi_i)
  double span_;
};

}  // namespace segmental
