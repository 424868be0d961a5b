#pragma once

#include <vector>

#include "icb/rate_region.hpp"
#include "icb/types.hpp"

namespace icb {

// The efficient frontier of the individual rational set
// region ∩ { r >= disagreement }, exposed as the decreasing function
// r2 = f(r1) over [r1_min, r1_max] together with its inverse.
//
// Polytope regions yield a piecewise-linear chain; the TDM region yields the
// parametric curve rho -> (R1(rho), R2(1-rho)) restricted to the individual
// rational rho interval.
class Frontier {
 public:
  enum class Kind { PiecewiseLinear, Parametric };

  Kind kind() const { return kind_; }
  const RatePair& disagreement() const { return disagreement_; }

  double r1_min() const;
  double r1_max() const;
  RatePair left() const;
  RatePair right() const;

  // f(r1); domain [r1_min, r1_max] up to kGeomTol slack.
  double value(double r1) const;
  // f^{-1}(r2); assumes a strictly decreasing frontier on flat-free inputs.
  double inverse(double r2) const;

  // Chain breakpoints, left to right. PiecewiseLinear only.
  const std::vector<RatePair>& chain() const { return chain_; }
  // Individual rational rho1 interval. Parametric only.
  double rho_lo() const { return rho_lo_; }
  double rho_hi() const { return rho_hi_; }

  // A horizontal segment longer than tol (run > tol, drop <= tol).
  bool has_flat_segment(double tol = kGeomTol) const;
  // The clip ended on the region's right edge strictly above the
  // disagreement level, leaving a vertical efficient piece.
  bool has_vertical_tail(double tol = kGeomTol) const;

 private:
  friend Frontier ir_frontier(const RateRegion& region, const RatePair& disagreement);

  Kind kind_ = Kind::PiecewiseLinear;
  RatePair disagreement_;
  std::vector<RatePair> chain_;           // PiecewiseLinear
  double rho_lo_ = 0.0, rho_hi_ = 0.0;    // Parametric
  double P1_ = 0.0, P2_ = 0.0;            // Parametric
  RatePair left_, right_;
};

// Clips the Pareto boundary of `region` to the individual rational set.
// Throws std::invalid_argument if the disagreement point is outside the
// region and EmptyFrontier if no feasible point strictly dominates it.
Frontier ir_frontier(const RateRegion& region, const RatePair& disagreement);

// True iff some feasible point strictly dominates `disagreement` in both
// coordinates by more than tol. Does not require the disagreement point to
// lie inside the region.
bool region_essential(const RateRegion& region, const RatePair& disagreement,
                      double tol = kGeomTol);

}  // namespace icb
