#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace segmental {

// One interval segment [alpha, beta] with alpha < beta.
struct Segment {
  double alpha;
  double beta;

  double length() const { return beta - alpha; }
  double midpoint() const { return 0.5 * (alpha + beta); }
};

// Structural classes of segment families.  Chain segments partition the
// working interval; arc-uniform segments have constant arc-length on the
// half circle; left-anchored segments are nested with a common left
// endpoint.
enum class SegmentClass { chain, arc_uniform, left_anchored, general };

// Arc parameters of an arc-uniform set, index-aligned with the segment
// list: segments()[i] = [cos(taus[i]+rho), cos(taus[i]-rho)].
struct ArcData {
  double rho;
  std::vector<double> taus;
};

// Ordered list of segments inside a working interval [lo, hi], with a
// structural class tag.  Immutable after construction; the constructor
// validates the invariants implied by the tag (chain adjacency is checked
// on the stored values, not trusted).
class SegmentSet {
 public:
  SegmentSet(std::vector<Segment> segments, double lo, double hi,
             SegmentClass tag = SegmentClass::general,
             std::optional<ArcData> arc = std::nullopt);

  std::size_t size() const { return segments_.size(); }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  SegmentClass tag() const { return tag_; }
  const std::optional<ArcData>& arc() const { return arc_; }

  // Chain sets only: the r+1 shared nodes xi_0 < ... < xi_r.
  std::vector<double> chain_nodes() const;
  // Left-anchored sets only: the node list {alpha, beta_1, ..., beta_r}.
  std::vector<double> anchored_nodes() const;

 private:
  std::vector<Segment> segments_;
  double lo_;
  double hi_;
  SegmentClass tag_;
  std::optional<ArcData> arc_;
};

// r uniform chain segments on [lo, hi].
SegmentSet make_equidistant(std::size_t r, double lo = -1.0, double hi = 1.0);

// Chebyshev-Lobatto chain on [-1,1]; also carries the arc parameters
// (uniform arc radius pi/(2r)).
SegmentSet make_chebyshev_lobatto(std::size_t r);

// Overlapping variant: segments [-1, xi_i^CL], left-anchored.
SegmentSet make_cl_overlapping(std::size_t r);

// Arc-uniform set from strictly increasing midpoint angles in (0, pi) and
// radius rho in (0, pi).  Rejects taus[i] +/- rho outside [0, pi]
// (no wrapping to the lower half circle).  The stored segment list is
// sorted by left endpoint with taus co-permuted.
SegmentSet make_arc_uniform(std::vector<double> taus, double rho);

// Builds the segments [cos(tau+rho), cos(tau-rho)] literally, allowing
// angles outside [0, pi] (valid segments regardless, cosine being even),
// and tags the result General.  This is the construction needed for
// arc families whose extreme segments wrap, e.g. CL midpoints with
// rho = lambda*pi/r and lambda > 1/2.
SegmentSet make_arc_general(const std::vector<double>& taus, double rho);

// True iff every pair of segments intersects in at most one point.
bool is_nonoverlapping(const SegmentSet& set);

// Maps the set onto [target_lo, target_hi] by the unique increasing
// affinity.  Chain and left-anchored tags survive; arc-uniform degrades
// to general (arc structure is not affine invariant).
SegmentSet affine_map(const SegmentSet& set, double target_lo,
                      double target_hi);

// Strictly increasing node list (pairwise distinct).
class NodeSet {
 public:
  explicit NodeSet(std::vector<double> nodes);

  const std::vector<double>& values() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }

 private:
  std::vector<double> nodes_;
};

// CSV lines "i,alpha,beta" with a header row; parse back detects chain /
// left-anchored structure from the stored values.
void write_segments_csv(std::ostream& out, const SegmentSet& set);
SegmentSet read_segments_csv(std::istream& in);

}  // namespace segmental
