#pragma once

#include <optional>
#include <utility>

#include "icb/frontier.hpp"
#include "icb/rate_region.hpp"
#include "icb/types.hpp"

namespace icb {

// A feasible set together with the payoff pair that results if the users
// fail to agree.
struct BargainingProblem {
  RateRegion region;
  RatePair disagreement;

  // Throws std::invalid_argument if the disagreement point is outside the
  // region.
  BargainingProblem(RateRegion region, RatePair disagreement);
};

// The unique pair of standing offers in the subgame-perfect equilibrium of
// the alternating-offer game. r_bar is user 1's offer, r_tilde user 2's; the
// equilibrium outcome is the first mover's offer, accepted in round 1.
struct SpePair {
  RatePair r_bar;
  RatePair r_tilde;
  Player first_mover = Player::User1;
  RatePair outcome;
};

bool is_essential(const BargainingProblem& problem, double tol = kGeomTol);

// Geometric regularity: essential and the individual rational efficient
// frontier has no horizontal or vertical piece.
bool is_regular_frontier(const BargainingProblem& problem, double tol = kGeomTol);

// Closed-form regularity conditions for the fixed-split H-K problem,
// assuming phase 1 succeeded for this scheme:
//   strong: a = b = 1;
//   weak:   R1_0 >= (phi5-2phi2)+ and R2_0 >= (phi4-2phi1)+;
//   mixed:  R1_0 >= (min(phi5-2phi2, phi3-phi2))+ and
//           R2_0 >= (min(phi4-2phi1, phi3-phi1))+.
bool is_regular_ic(const ChannelParams& params, const PowerSplit& split);

// Result of the phase-1 incentive negotiation. On proceed, `split` carries
// the agreed H-K power split, or `rho_interval` the individual rational
// rho1 interval for TDM.
struct IncentiveOutcome {
  bool proceed = false;
  std::optional<PowerSplit> split;
  std::optional<std::pair<double, double>> rho_interval;
};

// Whether both users gain by adopting the scheme over the safe rates.
// H-K: strong interference always proceeds with split (0,0); weak needs
// a P2 > 1, b P1 > 1 and a nondegenerate improvement set at the default
// split; mixed needs the condition on the weak side only. TDM proceeds iff
// the disagreement point lies strictly inside the TDM region.
IncentiveOutcome incentive_check(const ChannelParams& params, Scheme scheme);

// The unique maximizer of (r1 - d1)(r2 - d2) over the feasible set. Throws
// NotEssential when no feasible point strictly dominates the disagreement
// point.
RatePair nbs(const BargainingProblem& problem);

// Closed-form equilibrium offers over the MAC capacity region with safe-rate
// disagreement, by direct elimination of
//   (1-p2) rbar1 - rtilde1        = -p2 d1
//   rbar2 - (1-p1) rtilde2        =  p1 d2
//   rbar1 + rbar2 = rtilde1 + rtilde2 = C(P1 + P2).
SpePair spe_mac(double P1, double P2, const BreakdownProbs& probs,
                Player first_mover = Player::User1);

// Equilibrium offers on a general regular problem: the unique pair on the
// individual rational efficient frontier satisfying
//   rtilde1 = (1-p2)(rbar1 - d1) + d1,
//   rbar2   = (1-p1)(rtilde2 - d2) + d2,
// found by bisection on rbar1. Throws NonRegular on non-regular problems.
SpePair spe(const BargainingProblem& problem, const BreakdownProbs& probs,
            Player first_mover = Player::User1);

}  // namespace icb
