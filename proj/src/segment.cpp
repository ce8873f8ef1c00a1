#include "segmental/segment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "segmental/csv.hpp"

namespace segmental {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kArcTol = 1e-14;    // consistency of stored arc data
constexpr double kAngleTol = 1e-12;  // FP slop at the 0 / pi boundaries

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

SegmentSet::SegmentSet(std::vector<Segment> segments, double lo, double hi,
                       SegmentClass tag, std::optional<ArcData> arc)
    : segments_(std::move(segments)), lo_(lo), hi_(hi), tag_(tag),
      arc_(std::move(arc)) {
  require(!segments_.empty(), "segment set must contain at least one segment");
  require(std::isfinite(lo_) && std::isfinite(hi_) && lo_ < hi_,
          "working interval must satisfy lo < hi");
  for (const Segment& s : segments_) {
    require(std::isfinite(s.alpha) && std::isfinite(s.beta) && s.alpha < s.beta,
            "segment must satisfy alpha < beta");
    require(s.alpha >= lo_ && s.beta <= hi_,
            "segment endpoints must lie in the working interval");
  }
  const std::size_t r = segments_.size();
  switch (tag_) {
    case SegmentClass::chain:
      // Adjacency is checked on the stored values, not trusted.
      require(segments_.front().alpha == lo_ && segments_.back().beta == hi_,
              "chain must span the working interval");
      for (std::size_t i = 0; i + 1 < r; ++i)
        require(segments_[i].beta == segments_[i + 1].alpha,
                "chain segments must share endpoints exactly");
      break;
    case SegmentClass::left_anchored:
      for (std::size_t i = 0; i < r; ++i) {
        require(segments_[i].alpha == segments_.front().alpha,
                "left-anchored segments must share the left endpoint");
        if (i > 0)
          require(segments_[i - 1].beta < segments_[i].beta,
                  "left-anchored right endpoints must increase strictly");
      }
      break;
    case SegmentClass::arc_uniform: {
      require(arc_.has_value(), "arc-uniform set requires arc data");
      require(arc_->taus.size() == r, "arc data must align with segments");
      require(arc_->rho > 0.0 && arc_->rho < kPi, "arc radius outside (0, pi)");
      for (std::size_t i = 0; i < r; ++i) {
        const double tau = arc_->taus[i];
        require(tau > 0.0 && tau < kPi, "arc midpoint outside (0, pi)");
        require(tau - arc_->rho >= -kAngleTol &&
                    tau + arc_->rho <= kPi + kAngleTol,
                "arc angles tau +/- rho must stay in [0, pi]");
        require(std::abs(segments_[i].alpha - std::cos(tau + arc_->rho)) <= kArcTol &&
                    std::abs(segments_[i].beta - std::cos(tau - arc_->rho)) <= kArcTol,
                "segment endpoints inconsistent with arc data");
        if (i > 0)
          require(arc_->taus[i] != arc_->taus[i - 1],
                  "arc midpoints must be pairwise distinct");
      }
      break;
    }
    case SegmentClass::general:
      break;
  }
}

std::vector<double> SegmentSet::chain_nodes() const {
  if (tag_ != SegmentClass::chain)
    throw std::invalid_argument("chain_nodes requires a chain set");
  std::vector<double> nodes;
  nodes.reserve(size() + 1);
  nodes.push_back(segments_.front().alpha);
  for (const Segment& s : segments_) nodes.push_back(s.beta);
  return nodes;
}

std::vector<double> SegmentSet::anchored_nodes() const {
  if (tag_ != SegmentClass::left_anchored)
    throw std::invalid_argument("anchored_nodes requires a left-anchored set");
  std::vector<double> nodes;
  nodes.reserve(size() + 1);
  nodes.push_back(segments_.front().alpha);
  for (const Segment& s : segments_) nodes.push_back(s.beta);
  return nodes;
}

SegmentSet make_equidistant(std::size_t r, double lo, double hi) {
  require(r >= 1, "r must be positive");
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "interval must satisfy lo < hi");
  std::vector<double> nodes(r + 1);
  for (std::size_t i = 0; i <= r; ++i)
    nodes[i] = lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(r);
  nodes.front() = lo;
  nodes.back() = hi;
  std::vector<Segment> segs(r);
  for (std::size_t i = 0; i < r; ++i) segs[i] = {nodes[i], nodes[i + 1]};
  return SegmentSet(std::move(segs), lo, hi, SegmentClass::chain);
}

SegmentSet make_chebyshev_lobatto(std::size_t r) {
  require(r >= 1, "r must be positive");
  const double n = static_cast<double>(r);
  std::vector<double> nodes(r + 1);
  for (std::size_t i = 0; i <= r; ++i)
    nodes[i] = std::cos(kPi * static_cast<double>(r - i) / n);
  nodes.front() = -1.0;
  nodes.back() = 1.0;
  std::vector<Segment> segs(r);
  ArcData arc;
  arc.rho = kPi / (2.0 * n);
  arc.taus.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    segs[i] = {nodes[i], nodes[i + 1]};
    // midpoint angle of [pi(r-i-1)/r, pi(r-i)/r]
    arc.taus[i] = kPi * (2.0 * static_cast<double>(r - i) - 1.0) / (2.0 * n);
  }
  return SegmentSet(std::move(segs), -1.0, 1.0, SegmentClass::chain,
                    std::move(arc));
}

SegmentSet make_cl_overlapping(std::size_t r) {
  require(r >= 1, "r must be positive");
  const double n = static_cast<double>(r);
  std::vector<Segment> segs(r);
  for (std::size_t i = 0; i < r; ++i) {
    double beta = std::cos(kPi * static_cast<double>(r - 1 - i) / n);
    if (i + 1 == r) beta = 1.0;
    segs[i] = {-1.0, beta};
  }
  return SegmentSet(std::move(segs), -1.0, 1.0, SegmentClass::left_anchored);
}

SegmentSet make_arc_uniform(std::vector<double> taus, double rho) {
  require(!taus.empty(), "at least one arc midpoint required");
  require(rho > 0.0 && rho < kPi, "rho outside (0, pi)");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    require(taus[i] > 0.0 && taus[i] < kPi, "tau outside (0, pi)");
    if (i > 0)
      require(taus[i] > taus[i - 1], "taus must be strictly increasing");
    require(taus[i] - rho >= -kAngleTol && taus[i] + rho <= kPi + kAngleTol,
            "tau +/- rho leaves [0, pi]; wrapped arcs are rejected");
  }
  const std::size_t r = taus.size();
  std::vector<Segment> segs(r);
  for (std::size_t i = 0; i < r; ++i)
    segs[i] = {std::cos(taus[i] + rho), std::cos(taus[i] - rho)};
  // store sorted by left endpoint (taus co-permuted, so the index pairing
  // segment <-> midpoint survives)
  std::vector<std::size_t> order(r);
  for (std::size_t i = 0; i < r; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return segs[a].alpha < segs[b].alpha;
  });
  std::vector<Segment> sorted_segs(r);
  ArcData arc{rho, std::vector<double>(r)};
  for (std::size_t i = 0; i < r; ++i) {
    sorted_segs[i] = segs[order[i]];
    arc.taus[i] = taus[order[i]];
  }
  return SegmentSet(std::move(sorted_segs), -1.0, 1.0,
                    SegmentClass::arc_uniform, std::move(arc));
}

SegmentSet make_arc_general(const std::vector<double>& taus, double rho) {
  require(!taus.empty(), "at least one arc midpoint required");
  require(rho > 0.0 && rho < kPi, "rho outside (0, pi)");
  std::vector<Segment> segs(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    require(taus[i] > 0.0 && taus[i] < kPi, "tau outside (0, pi)");
    // |s| = 2 sin(tau) sin(rho) > 0, so alpha < beta for any angles
    segs[i] = {std::cos(taus[i] + rho), std::cos(taus[i] - rho)};
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    return a.alpha < b.alpha;
  });
  return SegmentSet(std::move(segs), -1.0, 1.0, SegmentClass::general);
}

bool is_nonoverlapping(const SegmentSet& set) {
  const auto& segs = set.segments();
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const double left = std::max(segs[i].alpha, segs[j].alpha);
      const double right = std::min(segs[i].beta, segs[j].beta);
      if (right > left) return false;
    }
  return true;
}

SegmentSet affine_map(const SegmentSet& set, double target_lo,
                      double target_hi) {
  require(std::isfinite(target_lo) && std::isfinite(target_hi) &&
              target_lo < target_hi,
          "target interval must satisfy lo < hi");
  if (target_lo == set.lo() && target_hi == set.hi()) return set;
  const double scale = (target_hi - target_lo) / (set.hi() - set.lo());
  auto phi = [&](double x) {
    if (x == set.lo()) return target_lo;
    if (x == set.hi()) return target_hi;
    return target_lo + (x - set.lo()) * scale;
  };
  const std::size_t r = set.size();
  std::vector<Segment> segs(r);
  switch (set.tag()) {
    case SegmentClass::chain: {
      // map the shared node list once so adjacency stays exact
      std::vector<double> nodes = set.chain_nodes();
      for (double& x : nodes) x = phi(x);
      for (std::size_t i = 0; i < r; ++i) segs[i] = {nodes[i], nodes[i + 1]};
      return SegmentSet(std::move(segs), target_lo, target_hi,
                        SegmentClass::chain);
    }
    case SegmentClass::left_anchored: {
      const double a = phi(set.segments().front().alpha);
      for (std::size_t i = 0; i < r; ++i)
        segs[i] = {a, phi(set.segments()[i].beta)};
      return SegmentSet(std::move(segs), target_lo, target_hi,
                        SegmentClass::left_anchored);
    }
    case SegmentClass::arc_uniform:
    case SegmentClass::general: {
      for (std::size_t i = 0; i < r; ++i)
        segs[i] = {phi(set.segments()[i].alpha), phi(set.segments()[i].beta)};
      return SegmentSet(std::move(segs), target_lo, target_hi,
                        SegmentClass::general);
    }
  }
  throw std::logic_error("unreachable");
}

NodeSet::NodeSet(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  require(!nodes_.empty(), "node set must be nonempty");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    require(std::isfinite(nodes_[i]), "nodes must be finite");
    if (i > 0)
      require(nodes_[i] > nodes_[i - 1],
              "nodes must be strictly increasing and pairwise distinct");
  }
}

void write_segments_csv(std::ostream& out, const SegmentSet& set) {
  out << "i,alpha,beta\n";
  for (std::size_t i = 0; i < set.size(); ++i)
    out << (i + 1) << ',' << csv::num(set[i].alpha) << ','
        << csv::num(set[i].beta) << '\n';
}

SegmentSet read_segments_csv(std::istream& in) {
  std::vector<Segment> segs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv::split(line, ',');
    if (first) {
      first = false;
      if (!fields.empty() && fields[0] == "i") continue;  // header
    }
    if (fields.size() != 3)
      throw std::invalid_argument("segments CSV rows must be i,alpha,beta");
    segs.push_back({csv::to_double(fields[1]), csv::to_double(fields[2])});
  }
  require(!segs.empty(), "segments CSV contained no rows");

  double lo = segs.front().alpha, hi = segs.front().beta;
  for (const Segment& s : segs) {
    lo = std::min(lo, s.alpha);
    hi = std::max(hi, s.beta);
  }
  bool chain = segs.front().alpha == lo && segs.back().beta == hi;
  for (std::size_t i = 0; chain && i + 1 < segs.size(); ++i)
    chain = segs[i].beta == segs[i + 1].alpha;
  if (chain && segs.size() >= 1)
    return SegmentSet(std::move(segs), lo, hi, SegmentClass::chain);

  bool anchored = true;
  for (std::size_t i = 0; anchored && i < segs.size(); ++i) {
    anchored = segs[i].alpha == segs.front().alpha;
    if (i > 0) anchored = anchored && segs[i - 1].beta < segs[i].beta;
  }
  if (anchored)
    return SegmentSet(std::move(segs), lo, hi, SegmentClass::left_anchored);

  return SegmentSet(std::move(segs), lo, hi, SegmentClass::general);
}

}  // namespace segmental
