#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace segmental {

// Thrown by the dense solver when a pivot falls below the relative
// threshold; this is the operational unisolvence test.
class SingularSystem : public std::runtime_error {
 public:
  SingularSystem(std::size_t pivot_index, double pivot, double threshold)
      : std::runtime_error("singular system: pivot " +
                           std::to_string(pivot_index) + " has magnitude " +
                           std::to_string(pivot) + " below threshold " +
                           std::to_string(threshold)),
        pivot_index_(pivot_index) {}

  std::size_t pivot_index() const { return pivot_index_; }

 private:
  std::size_t pivot_index_;
};

// Arc radius on the excluded set {k*pi/j : j,k in 1..r, j > k}: the
// coefficient rescale divides by sin((j+1)*rho) = 0, so the segment set
// is not unisolvent.
class ResonantRadius : public std::runtime_error {
 public:
  ResonantRadius(double rho, unsigned j, unsigned k)
      : std::runtime_error("resonant arc radius rho = " + std::to_string(rho) +
                           " ~ " + std::to_string(k) + "*pi/" +
                           std::to_string(j)),
        rho_(rho) {}

  double rho() const { return rho_; }

 private:
  double rho_;
};

// A user-supplied integrand produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(double abscissa)
      : std::runtime_error("non-finite integrand value at x = " +
                           std::to_string(abscissa)),
        abscissa_(abscissa) {}

  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace segmental
