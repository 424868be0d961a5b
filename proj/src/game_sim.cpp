#include "icb/game_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace icb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// xorshift-free generator state: splitmix64 stream, one draw per chance node.
struct Rng {
  std::uint64_t state;
  double uniform() {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
};

void check_strategies(const GameSpec& spec, const Strategy& s1, const Strategy& s2) {
  if (!spec.problem.region.contains(s1.offer) || !spec.problem.region.contains(s2.offer)) {
    throw std::invalid_argument("game_sim: strategy offer is not feasible in the region");
  }
  if (s1.accept_threshold < 0.0 || s2.accept_threshold < 0.0) {
    throw std::invalid_argument("game_sim: acceptance thresholds must be nonnegative");
  }
  if (spec.max_rounds < 1) {
    throw std::invalid_argument("game_sim: max_rounds must be at least 1");
  }
}

PlayOutcome play_unchecked(const GameSpec& spec, const Strategy& s1, const Strategy& s2,
                           std::uint64_t seed) {
  Rng rng{splitmix64(seed)};
  for (int round = 1; round <= spec.max_rounds; ++round) {
    const Player proposer = (round % 2 == 1) ? spec.first_mover : other(spec.first_mover);
    const Strategy& prop = proposer == Player::User1 ? s1 : s2;
    const Strategy& resp = proposer == Player::User1 ? s2 : s1;
    const double responder_share = proposer == Player::User1 ? prop.offer.r2 : prop.offer.r1;
    if (responder_share >= resp.accept_threshold) {
      return {PlayOutcome::Ending::Agreement, round, prop.offer, false};
    }
    const double p_break = proposer == Player::User1 ? spec.probs.p1 : spec.probs.p2;
    if (rng.uniform() < p_break) {
      return {PlayOutcome::Ending::Breakdown, round, spec.problem.disagreement, false};
    }
  }
  return {PlayOutcome::Ending::Breakdown, spec.max_rounds, spec.problem.disagreement, true};
}

RatePair expected_payoffs_unchecked(const GameSpec& spec, const Strategy& s1,
                                    const Strategy& s2) {
  const Player a = spec.first_mover;
  const Strategy& sa = a == Player::User1 ? s1 : s2;
  const Strategy& sb = a == Player::User1 ? s2 : s1;
  const double b_share = a == Player::User1 ? sa.offer.r2 : sa.offer.r1;
  const double a_share = a == Player::User1 ? sb.offer.r1 : sb.offer.r2;
  const RatePair d = spec.problem.disagreement;

  // Round 1 acceptance.
  if (b_share >= sb.accept_threshold) return sa.offer;
  const double p_a = a == Player::User1 ? spec.probs.p1 : spec.probs.p2;
  // One chance node, then round-2 acceptance.
  if (a_share >= sa.accept_threshold) {
    return {(1.0 - p_a) * sb.offer.r1 + p_a * d.r1, (1.0 - p_a) * sb.offer.r2 + p_a * d.r2};
  }
  // Mutual rejection: absorbed at breakdown (or truncation) with payoffs d.
  return d;
}

}  // namespace

std::pair<Strategy, Strategy> equilibrium_strategies(const BargainingProblem& problem,
                                                     const BreakdownProbs& probs) {
  const SpePair e = spe(problem, probs, Player::User1);
  return {Strategy{e.r_bar, e.r_tilde.r1}, Strategy{e.r_tilde, e.r_bar.r2}};
}

PlayOutcome play(const GameSpec& spec, const Strategy& s1, const Strategy& s2,
                 std::uint64_t seed) {
  check_strategies(spec, s1, s2);
  return play_unchecked(spec, s1, s2, seed);
}

RatePair expected_payoffs(const GameSpec& spec, const Strategy& s1, const Strategy& s2) {
  check_strategies(spec, s1, s2);
  return expected_payoffs_unchecked(spec, s1, s2);
}

DeviationGain deviation_gain(const GameSpec& spec, const Strategy& s1, const Strategy& s2,
                             int grid_size) {
  if (grid_size < 3) throw std::invalid_argument("deviation_gain: grid_size must be >= 3");
  check_strategies(spec, s1, s2);

  const Frontier fr = ir_frontier(spec.problem.region, spec.problem.disagreement);
  const double x0 = fr.r1_min(), x1 = fr.r1_max();
  std::vector<RatePair> offers(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double x = x0 + (x1 - x0) * static_cast<double>(i) / (grid_size - 1);
    offers[static_cast<std::size_t>(i)] = {x, fr.value(x)};
  }
  const RatePair base = expected_payoffs_unchecked(spec, s1, s2);
  const RatePair d = spec.problem.disagreement;

  // Threshold ranges span [own disagreement payoff, own frontier maximum].
  const double t1_lo = d.r1, t1_hi = fr.r1_max();
  const double t2_lo = d.r2, t2_hi = fr.left().r2;

  DeviationGain gain{-std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
  for (const RatePair& offer : offers) {
    for (int i = 0; i < grid_size; ++i) {
      const double u = static_cast<double>(i) / (grid_size - 1);
      const Strategy dev1{offer, t1_lo + u * (t1_hi - t1_lo)};
      gain.user1 = std::max(gain.user1,
                            expected_payoffs_unchecked(spec, dev1, s2).r1 - base.r1);
      const Strategy dev2{offer, t2_lo + u * (t2_hi - t2_lo)};
      gain.user2 = std::max(gain.user2,
                            expected_payoffs_unchecked(spec, s1, dev2).r2 - base.r2);
    }
  }
  return gain;
}

DeviationGain deviation_gain(const GameSpec& spec, int grid_size) {
  const auto [s1, s2] = equilibrium_strategies(spec.problem, spec.probs);
  return deviation_gain(spec, s1, s2, grid_size);
}

MonteCarloResult monte_carlo(const GameSpec& spec, const Strategy& s1, const Strategy& s2,
                             long long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
  check_strategies(spec, s1, s2);

  MonteCarloResult res;
  res.trials = trials;
  double sum1 = 0.0, sum2 = 0.0;
  for (long long t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed =
        splitmix64(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(t + 1)));
    const PlayOutcome oc = play_unchecked(spec, s1, s2, trial_seed);
    sum1 += oc.payoffs.r1;
    sum2 += oc.payoffs.r2;
    if (oc.ending == PlayOutcome::Ending::Agreement) {
      ++res.agreement_rounds[oc.round];
    } else {
      ++res.breakdown_rounds[oc.round];
      if (oc.truncated) ++res.truncated;
    }
  }
  res.mean_payoffs = {sum1 / static_cast<double>(trials), sum2 / static_cast<double>(trials)};
  return res;
}

}  // namespace icb
