#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "icb/bargaining.hpp"
#include "icb/types.hpp"

namespace icb {

// A stationary behavior in the alternating-offer game: always propose
// `offer`, accept any proposal paying own coordinate at least
// `accept_threshold`.
struct Strategy {
  RatePair offer;
  double accept_threshold = 0.0;
};

struct GameSpec {
  BargainingProblem problem;
  BreakdownProbs probs;
  Player first_mover = Player::User1;
  int max_rounds = 10000;
};

struct PlayOutcome {
  enum class Ending { Agreement, Breakdown };
  Ending ending = Ending::Breakdown;
  int round = 1;
  RatePair payoffs;
  // Game stopped at max_rounds without agreement or a breakdown draw.
  bool truncated = false;
};

// SPE strategies: user 1 offers r_bar and accepts own payoff >= rtilde1;
// user 2 offers r_tilde and accepts own payoff >= rbar2.
std::pair<Strategy, Strategy> equilibrium_strategies(const BargainingProblem& problem,
                                                     const BreakdownProbs& probs);

// One seeded play-through. Deterministic in (spec, strategies, seed). Odd
// rounds the first mover proposes; a rejected proposal triggers a breakdown
// draw with the proposer's probability.
PlayOutcome play(const GameSpec& spec, const Strategy& s1, const Strategy& s2,
                 std::uint64_t seed);

// Exact expected payoffs of a stationary strategy pair: the induced play is
// classified by who accepts whose standing offer, leaving a geometric
// recursion solved in closed form.
RatePair expected_payoffs(const GameSpec& spec, const Strategy& s1, const Strategy& s2);

struct DeviationGain {
  double user1 = 0.0;
  double user2 = 0.0;
};

// Holds one player at its candidate strategy while the other sweeps
// grid_size frontier offers x grid_size acceptance thresholds; returns each
// player's best expected-payoff improvement (exact evaluation, no sampling).
DeviationGain deviation_gain(const GameSpec& spec, const Strategy& s1, const Strategy& s2,
                             int grid_size);
// Same, with the candidate pair set to the SPE strategies.
DeviationGain deviation_gain(const GameSpec& spec, int grid_size);

struct MonteCarloResult {
  long long trials = 0;
  RatePair mean_payoffs;
  std::map<int, long long> agreement_rounds;
  std::map<int, long long> breakdown_rounds;
  long long truncated = 0;
};

// Reproducible Monte Carlo over seeded plays; per-trial seeds are derived
// from the master seed so results do not depend on evaluation order.
MonteCarloResult monte_carlo(const GameSpec& spec, const Strategy& s1, const Strategy& s2,
                             long long trials, std::uint64_t seed);

}  // namespace icb
