#include "segmental/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace segmental {

double eval_U(unsigned j, double x) {
  double um1 = 1.0;        // U_0
  if (j == 0) return um1;
  double u = 2.0 * x;      // U_1
  for (unsigned k = 1; k < j; ++k) {
    const double next = 2.0 * x * u - um1;
    um1 = u;
    u = next;
  }
  return u;
}

double eval_T(unsigned j, double x) {
  double tm1 = 1.0;  // T_0
  if (j == 0) return tm1;
  double t = x;      // T_1
  for (unsigned k = 1; k < j; ++k) {
    const double next = 2.0 * x * t - tm1;
    tm1 = t;
    t = next;
  }
  return t;
}

double ChebExpansion::operator()(double x) const {
  if (coeffs.empty()) return 0.0;
  // Clenshaw: b_k = a_k + 2x b_{k+1} - b_{k+2}; for the U recurrence the
  // result collapses to b_0 (U_1 - 2x U_0 = 0).
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const double b0 = coeffs[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

double MonomialPoly::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

double integrate_U_over(unsigned j, const Segment& seg) {
  return (eval_T(j + 1, seg.beta) - eval_T(j + 1, seg.alpha)) /
         static_cast<double>(j + 1);
}

double integrate_expansion(const ChebExpansion& p, const Segment& seg) {
  double acc = 0.0;
  for (std::size_t j = 0; j < p.coeffs.size(); ++j)
    if (p.coeffs[j] != 0.0)
      acc += p.coeffs[j] * integrate_U_over(static_cast<unsigned>(j), seg);
  return acc;
}

double nodal_lagrange(const NodeSet& nodes, std::size_t j, double x) {
  const auto& xi = nodes.values();
  if (j >= xi.size()) throw std::invalid_argument("node index out of range");
  double num = 1.0, den = 1.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (i == j) continue;
    num *= x - xi[i];
    den *= xi[j] - xi[i];
  }
  return num / den;
}

double nodal_lagrange_deriv(const NodeSet& nodes, std::size_t j, double x) {
  const auto& xi = nodes.values();
  if (j >= xi.size()) throw std::invalid_argument("node index out of range");
  const std::size_t n = xi.size();
  double den = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (i != j) den *= xi[j] - xi[i];
  // sum_{i != j} prod_{m != j,i} (x - xi_m): finite at the nodes
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == j) continue;
    double prod = 1.0;
    for (std::size_t m = 0; m < n; ++m)
      if (m != j && m != i) prod *= x - xi[m];
    sum += prod;
  }
  return sum / den;
}

namespace {

// monomial coefficient columns of U_0..U_{n-1}
std::vector<std::vector<double>> u_monomial_columns(std::size_t n) {
  std::vector<std::vector<double>> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j].assign(n, 0.0);
  cols[0][0] = 1.0;
  if (n > 1) cols[1][1] = 2.0;
  for (std::size_t j = 2; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double v = -cols[j - 2][k];
      if (k > 0) v += 2.0 * cols[j - 1][k - 1];
      cols[j][k] = v;
    }
  return cols;
}

}  // namespace

ChebExpansion monomial_to_cheb(const MonomialPoly& p) {
  const std::size_t n = std::max<std::size_t>(p.coeffs.size(), 1);
  auto cols = u_monomial_columns(n);
  std::vector<double> c(p.coeffs);
  c.resize(n, 0.0);
  // back substitution against the triangular column system (U_j has
  // leading coefficient 2^j)
  std::vector<double> a(n, 0.0);
  for (std::size_t j = n; j-- > 0;) {
    a[j] = c[j] / cols[j][j];
    for (std::size_t k = 0; k <= j; ++k) c[k] -= a[j] * cols[j][k];
  }
  return ChebExpansion{std::move(a)};
}

MonomialPoly cheb_to_monomial(const ChebExpansion& p) {
  const std::size_t n = std::max<std::size_t>(p.coeffs.size(), 1);
  auto cols = u_monomial_columns(n);
  std::vector<double> c(n, 0.0);
  for (std::size_t j = 0; j < p.coeffs.size(); ++j)
    for (std::size_t k = 0; k <= j; ++k) c[k] += p.coeffs[j] * cols[j][k];
  return MonomialPoly{std::move(c)};
}

LagrangeEvaluator::LagrangeEvaluator(std::vector<double> nodes)
    : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  if (n == 0) throw std::invalid_argument("empty node list");
  inv_w_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != k) w *= nodes_[k] - nodes_[i];
    if (w == 0.0 || !std::isfinite(w))
      throw std::invalid_argument("nodes must be pairwise distinct");
    inv_w_[k] = 1.0 / w;
  }
  const auto [mn, mx] = std::minmax_element(nodes_.begin(), nodes_.end());
  span_ = *mx - *mn;
  if (span_ == 0.0) span_ = 1.0;
}

void LagrangeEvaluator::values(double x, std::span<double> out) const {
  const std::size_t n = nodes_.size();
  // prefix/suffix products: no divisions, exact at the nodes
  std::vector<double> pre(n + 1), suf(n + 1);
  pre[0] = 1.0;
  for (std::size_t m = 0; m < n; ++m) pre[m + 1] = pre[m] * (x - nodes_[m]);
  suf[n] = 1.0;
  for (std::size_t m = n; m-- > 0;) suf[m] = suf[m + 1] * (x - nodes_[m]);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = pre[k] * suf[k + 1] * inv_w_[k];
}

void LagrangeEvaluator::derivatives(double x, std::span<double> out) const {
  const std::size_t n = nodes_.size();
  if (n == 1) {
    out[0] = 0.0;
    return;
  }
  std::vector<double> d(n);
  double dmin = std::numeric_limits<double>::infinity();
  std::size_t zmin = 0;
  for (std::size_t m = 0; m < n; ++m) {
    d[m] = x - nodes_[m];
    if (std::abs(d[m]) < dmin) {
      dmin = std::abs(d[m]);
      zmin = m;
    }
  }
  double prod = 1.0;
  for (std::size_t m = 0; m < n; ++m) prod *= d[m];
  if (dmin > 1e-7 * span_ && std::isfinite(prod) && prod != 0.0) {
    // quotient path: D_k = (P/d_k) (S - 1/d_k)
    double s = 0.0;
    for (std::size_t m = 0; m < n; ++m) s += 1.0 / d[m];
    for (std::size_t k = 0; k < n; ++k) {
      double sk;
      if (k == zmin) {
        // recompute to dodge the cancellation S - 1/d_min
        sk = 0.0;
        for (std::size_t m = 0; m < n; ++m)
          if (m != k) sk += 1.0 / d[m];
      } else {
        sk = s - 1.0 / d[k];
      }
      out[k] = prod / d[k] * sk * inv_w_[k];
    }
    return;
  }
  // product path, O(n^2): safe on and near nodes
  std::vector<double> e(n - 1), pre(n), suf(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t t = 0;
    for (std::size_t m = 0; m < n; ++m)
      if (m != k) e[t++] = d[m];
    pre[0] = 1.0;
    for (std::size_t m = 0; m + 1 < n; ++m) pre[m + 1] = pre[m] * e[m];
    suf[n - 1] = 1.0;
    for (std::size_t m = n - 1; m-- > 0;) suf[m] = suf[m + 1] * e[m];
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) sum += pre[i] * suf[i + 1];
    out[k] = sum * inv_w_[k];
  }
}

}  // namespace segmental
