#pragma once

#include <optional>
#include <vector>

#include "icb/types.hpp"

namespace icb {

// C(x) = 1/2 log2(1 + x). Throws std::domain_error for negative or
// non-finite arguments.
double capacity(double x);

Regime classify_interference(const ChannelParams& params);

// Near-optimal private/common power split for the simple Han-Kobayashi
// scheme: (0,0) under strong interference, (1/(b P1), 1/(a P2)) capped at 1
// under weak interference, and the one-sided variant under mixed
// interference (mirrored when a >= 1 > b).
PowerSplit default_power_split(const ChannelParams& params);

// Safe rates: each receiver treats the other transmitter's full-power signal
// as noise.
RatePair disagreement_point(const ChannelParams& params);

// The rate bounds of the fixed-split Han-Kobayashi region:
//   R1 <= phi1, R2 <= phi2, R1+R2 <= phi3 = min(phi31, phi32, phi33),
//   2R1+R2 <= phi4, R1+2R2 <= phi5.
// phi6 is the strong-interference sum bound, defined only for the (0,0)
// split, where it coincides with phi3 in the strong regime.
struct HkBounds {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
  double phi4 = 0.0;
  double phi5 = 0.0;
  double phi31 = 0.0;
  double phi32 = 0.0;
  double phi33 = 0.0;
  std::optional<double> phi6;
};

HkBounds hk_bounds(const ChannelParams& params, const PowerSplit& split);

// Half-plane c1*r1 + c2*r2 <= bound.
struct Constraint {
  double c1 = 0.0;
  double c2 = 0.0;
  double bound = 0.0;
};

enum class RegionKind { HkPolytope, MacPolytope, Tdm };

// A 2-D achievable rate region: either a half-plane intersection in the
// first quadrant (H-K, MAC) with its extreme points enumerated, or the
// parametric TDM set.
class RateRegion {
 public:
  static RateRegion make_polytope(RegionKind kind, const ChannelParams& params,
                                  std::vector<Constraint> constraints);
  static RateRegion make_tdm(const ChannelParams& params);

  RegionKind kind() const { return kind_; }
  const ChannelParams& params() const { return params_; }
  // Empty for the Tdm kind.
  const std::vector<Constraint>& constraints() const { return constraints_; }
  // Extreme points in the first quadrant, sorted by increasing r1. Empty for
  // the Tdm kind.
  const std::vector<RatePair>& vertices() const { return vertices_; }

  bool contains(const RatePair& r, double tol = kGeomTol) const;
  // Largest feasible r2 at the given r1 (the upper boundary, a concave
  // nonincreasing function of r1).
  double upper_boundary(double r1) const;
  double max_r1() const;
  double max_r2() const;

 private:
  RateRegion(RegionKind kind, const ChannelParams& params)
      : kind_(kind), params_(params) {}

  void enumerate_vertices();

  RegionKind kind_;
  ChannelParams params_;
  std::vector<Constraint> constraints_;
  std::vector<RatePair> vertices_;
};

RateRegion hk_polytope(const ChannelParams& params, const PowerSplit& split);
RateRegion mac_polytope(double P1, double P2);
RateRegion tdm_region(const ChannelParams& params);

// Single-user TDM rate rho * C(P / rho), continuously extended to 0 at
// rho = 0.
double tdm_rate(double rho, double P);

// Smallest time fraction achieving `rate` with power P; +infinity if rate
// exceeds C(P) by more than the tolerance.
double tdm_time_needed(double rate, double P, double tol = kGeomTol);

// Frontier point (rho1 C(P1/rho1), (1-rho1) C(P2/(1-rho1))). Throws
// std::domain_error for rho1 outside [0,1].
RatePair tdm_point(double rho1, const ChannelParams& params);

}  // namespace icb
