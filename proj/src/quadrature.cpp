#include "segmental/quadrature.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "segmental/csv.hpp"
#include "segmental/errors.hpp"

namespace segmental {

namespace {

// P_n and P_n' at x by the Legendre three-term recurrence.
std::pair<double, double> legendre_with_deriv(int n, double x) {
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= n; ++k) {
    const double next =
        ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / static_cast<double>(k);
    pm1 = p;
    p = next;
  }
  const double dp = n * (x * p - pm1) / (x * x - 1.0);
  return {p, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 512)
    throw std::invalid_argument("gauss_legendre: n must be in [1, 512]");
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev initial guess for the i-th largest root
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      std::tie(p, dp) = legendre_with_deriv(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    std::tie(p, dp) = legendre_with_deriv(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    // odd rules have the exact node 0
    auto [p, dp] = legendre_with_deriv(n, 0.0);
    (void)p;
    rule.nodes[half] = 0.0;
    rule.weights[half] = 2.0 / (dp * dp);
  }
  return rule;
}

double measure(const RealFunction& f, const Segment& seg,
               const QuadratureRule& rule, int subdivisions) {
  if (subdivisions < 1)
    throw std::invalid_argument("subdivisions must be positive");
  const double panel = seg.length() / subdivisions;
  double total = 0.0;
  for (int p = 0; p < subdivisions; ++p) {
    const double a = seg.alpha + p * panel;
    const double b = (p + 1 == subdivisions) ? seg.beta : a + panel;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double x = mid + half * rule.nodes[k];
      const double v = f(x);
      if (!std::isfinite(v)) throw EvaluationError(x);
      acc += rule.weights[k] * v;
    }
    total += half * acc;
  }
  return total;
}

MeasurementVector measure_vector(const RealFunction& f, const SegmentSet& set,
                                 const QuadratureRule& rule,
                                 int subdivisions) {
  MeasurementVector mu;
  mu.provenance = Provenance::quadrature;
  mu.values.reserve(set.size());
  for (const Segment& s : set.segments())
    mu.values.push_back(measure(f, s, rule, subdivisions));
  return mu;
}

void write_measurements_csv(std::ostream& out, const MeasurementVector& mu) {
  out << "i,mu\n";
  for (std::size_t i = 0; i < mu.values.size(); ++i)
    out << (i + 1) << ',' << csv::num(mu.values[i]) << '\n';
}

MeasurementVector read_measurements_csv(std::istream& in) {
  MeasurementVector mu;
  mu.provenance = Provenance::external;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv::split(line, ',');
    if (first) {
      first = false;
      if (!fields.empty() && fields[0] == "i") continue;
    }
    if (fields.size() != 2)
      throw std::invalid_argument("measurement CSV rows must be i,mu");
    mu.values.push_back(csv::to_double(fields[1]));
  }
  if (mu.values.empty())
    throw std::invalid_argument("measurement CSV contained no rows");
  return mu;
}

}  // namespace segmental
