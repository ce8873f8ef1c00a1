#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "segmental/segment.hpp"

namespace segmental {

// Gauss-Legendre rule on [-1,1]; exact for polynomials up to degree 2n-1.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, in (-1,1)
  std::vector<double> weights;  // positive, summing to 2
  int order;                    // number of points n
};

// Nodes by Newton iteration on P_n from Chebyshev initial guesses;
// 1 <= n <= 512.
QuadratureRule gauss_legendre(int n);

enum class Provenance { quadrature, external };

// The data mu_i = integral of f over s_i, with a record of where the
// numbers came from.
struct MeasurementVector {
  std::vector<double> values;
  Provenance provenance = Provenance::external;

  std::size_t size() const { return values.size(); }
};

using RealFunction = std::function<double(double)>;

// Composite mapped quadrature of f over the segment, split into
// `subdivisions` equal panels.  Throws EvaluationError on non-finite f.
double measure(const RealFunction& f, const Segment& seg,
               const QuadratureRule& rule, int subdivisions = 1);

MeasurementVector measure_vector(const RealFunction& f, const SegmentSet& set,
                                 const QuadratureRule& rule,
                                 int subdivisions = 1);

// CSV lines "i,mu" with a header row.
void write_measurements_csv(std::ostream& out, const MeasurementVector& mu);
MeasurementVector read_measurements_csv(std::istream& in);

}  // namespace segmental
