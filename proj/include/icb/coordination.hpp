#pragma once

#include <optional>
#include <vector>

#include "icb/bargaining.hpp"
#include "icb/types.hpp"

namespace icb {

enum class SolutionKind { Spe, Nbs, Both };

struct Scenario {
  ChannelParams params;
  Scheme scheme = Scheme::Hk;
  BreakdownProbs probs{0.5, 0.5};
  Player first_mover = Player::User1;
  SolutionKind solution = SolutionKind::Both;
};

// Result of the two-phase coordination: phase 1 decides whether the scheme
// is adopted at all; phase 2 bargains over its rate region. When phase 1
// fails, or the SPE is requested on a non-regular problem, the operating
// point stays at the disagreement point.
struct CoordinationOutcome {
  bool agreed = false;
  RatePair disagreement;
  std::optional<PowerSplit> split;                        // H-K agreement
  std::optional<std::pair<double, double>> rho_interval;  // TDM agreement
  bool regular = false;
  // SPE requested but the problem is non-regular; reported, never replaced
  // by a different solution.
  bool spe_refused = false;
  std::optional<SpePair> spe;
  std::optional<RatePair> nbs;
  RatePair operating_point;
};

CoordinationOutcome negotiate(const Scenario& scenario);

struct SweepRow {
  double p1 = 0.0;
  double p2 = 0.0;
  CoordinationOutcome outcome;
};

// Re-runs the negotiation for each p1 in grid order; p2 is fixed, or tied to
// p1 when joint is set.
std::vector<SweepRow> sweep(const Scenario& scenario, const std::vector<double>& p1_values,
                            double p2, bool joint = false);

enum class Verdict { HkDominates, TdmDominates, Mixed, Incomparable };

struct SchemeComparison {
  CoordinationOutcome hk;
  CoordinationOutcome tdm;
  Verdict verdict = Verdict::Incomparable;
};

// Negotiates under both schemes and compares the SPE operating points
// componentwise (ties at kGeomTol flag Incomparable).
SchemeComparison compare_schemes(const ChannelParams& params, const BreakdownProbs& probs,
                                 Player first_mover);

}  // namespace icb
