// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "icb/coordination.hpp"
#include "icb/game_sim.hpp"
#include "test_util.hpp"

using namespace icb;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int idx, const std::string& name, bool pass, double seconds) {
  std::printf("[%s] criterion %2d: %s (%.2fs)\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double nash_prod(const RatePair& r, const RatePair& d) {
  return (r.r1 - d.r1) * (r.r2 - d.r2);
}

// 1. Generic SPE matches the closed-form MAC solution on 1000 randomized
//    problems within 1e-8 bits; runtime < 5 s.
void criterion1() {
  Timer timer;
  std::mt19937_64 g(101);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    const double P1 = testutil::log_uniform(g, 0.1, 1000.0);
    const double P2 = testutil::log_uniform(g, 0.1, 1000.0);
    const BreakdownProbs probs = testutil::random_probs(g, 0.01, 0.99);
    BargainingProblem problem{mac_polytope(P1, P2), disagreement_point({1.0, 1.0, P1, P2})};
    const SpePair a = spe(problem, probs);
    const SpePair b = spe_mac(P1, P2, probs);
    ok = ok && std::abs(a.r_bar.r1 - b.r_bar.r1) <= 1e-8 &&
         std::abs(a.r_bar.r2 - b.r_bar.r2) <= 1e-8 &&
         std::abs(a.r_tilde.r1 - b.r_tilde.r1) <= 1e-8 &&
         std::abs(a.r_tilde.r2 - b.r_tilde.r2) <= 1e-8;
  }
  const double t = timer.seconds();
  report(1, "generic spe matches spe_mac (1000 random MAC problems, 1e-8)", ok && t < 5.0, t);
}

// 2. NBS beats a 1e6-sample feasible grid in Nash product (relative slack
//    1e-6) on 20 scenarios per interference regime; runtime < 30 s.
void criterion2() {
  Timer timer;
  std::mt19937_64 g(102);
  bool ok = true;
  for (Regime regime : {Regime::Strong, Regime::Weak, Regime::Mixed}) {
    int done = 0;
    while (done < 20 && ok) {
      const ChannelParams params = testutil::random_params(g, regime);
      const IncentiveOutcome inc = incentive_check(params, Scheme::Hk);
      if (!inc.proceed) continue;
      ++done;
      const RateRegion region = hk_polytope(params, *inc.split);
      const RatePair d = disagreement_point(params);
      BargainingProblem problem{region, d};
      const RatePair sol = nbs(problem);
      const double sol_prod = nash_prod(sol, d);

      double best = 0.0;
      const double mx = region.max_r1(), my = region.max_r2();
      for (int i = 0; i < 1000; ++i) {
        const double x = mx * i / 999.0;
        if (x < d.r1) continue;  // the product is only meaningful above d
        // Grid rows are clipped by the upper boundary instead of a full
        // contains() call per point; identical feasibility, fewer flops.
        const double ymax = std::min(my, region.upper_boundary(x));
        for (int j = 0; j < 1000; ++j) {
          const double y = my * j / 999.0;
          if (y > ymax) break;
          if (y < d.r2) continue;
          const double prod = (x - d.r1) * (y - d.r2);
          if (prod > best) best = prod;
        }
      }
      ok = ok && sol_prod >= best * (1.0 - 1e-6) - 1e-15;
    }
  }
  const double t = timer.seconds();
  report(2, "nbs beats a 1e6-point feasible grid (20 scenarios per regime)", ok && t < 30.0, t);
}

// 3. Equilibrium converges to the NBS as p1 = p2 -> 0 on the mixed
//    reference scenario; gap strictly decreasing, <= 1e-3 at p = 1e-4.
void criterion3() {
  Timer timer;
  const ChannelParams params{0.2, 1.2, 10.0, 100.0};
  BargainingProblem problem{hk_polytope(params, {0.0, 0.05}), disagreement_point(params)};
  const RatePair sol = nbs(problem);
  bool ok = true;
  double prev = 1e18;
  double final_gap = 1e18;
  for (double p : {0.5, 0.1, 0.01, 1e-3, 1e-4}) {
    const SpePair e = spe(problem, BreakdownProbs{p, p});
    const double gap =
        std::max(std::abs(e.r_bar.r1 - sol.r1), std::abs(e.r_bar.r2 - sol.r2));
    ok = ok && gap < prev;
    prev = gap;
    final_gap = gap;
  }
  ok = ok && final_gap <= 1e-3;
  report(3, "equilibrium converges to the NBS as breakdown risk vanishes", ok, timer.seconds());
}

// 4. p1 sweep trend on the mixed reference scenario with p2 = 0.5:
//    rbar1 strictly increasing, rbar2 strictly decreasing.
void criterion4() {
  Timer timer;
  const ChannelParams params{0.2, 1.2, 10.0, 100.0};
  const Scenario sc{params, Scheme::Hk, BreakdownProbs{0.5, 0.5}, Player::User1,
                    SolutionKind::Spe};
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  const auto rows = sweep(sc, grid, 0.5);
  bool ok = rows.size() == 19;
  for (std::size_t i = 1; ok && i < rows.size(); ++i) {
    ok = rows[i].outcome.spe && rows[i - 1].outcome.spe &&
         rows[i].outcome.spe->r_bar.r1 > rows[i - 1].outcome.spe->r_bar.r1 &&
         rows[i].outcome.spe->r_bar.r2 < rows[i - 1].outcome.spe->r_bar.r2;
  }
  report(4, "rbar moves monotonically with p1 (p2 = 0.5 sweep)", ok, timer.seconds());
}

// 5. First-mover advantage on 200 randomized regular scenarios, slack 1e-12.
void criterion5() {
  Timer timer;
  std::mt19937_64 g(105);
  bool ok = true;
  int tested = 0;
  while (tested < 200 && ok) {
    const auto problem = testutil::try_random_regular_problem(g);
    if (!problem) continue;
    ++tested;
    const BreakdownProbs probs = testutil::random_probs(g, 0.01, 0.99);
    const SpePair e = spe(*problem, probs);
    ok = e.r_bar.r1 >= e.r_tilde.r1 - 1e-12 && e.r_tilde.r2 >= e.r_bar.r2 - 1e-12;
  }
  report(5, "first-mover advantage on 200 randomized regular scenarios", ok, timer.seconds());
}

// 6. Equilibrium verification by play and by deviation testing on 50
//    randomized regular scenarios; runtime < 60 s.
void criterion6() {
  Timer timer;
  std::mt19937_64 g(106);
  bool ok = true;
  int tested = 0;
  while (tested < 50 && ok) {
    const auto problem = testutil::try_random_regular_problem(g);
    if (!problem) continue;
    ++tested;
    const BreakdownProbs probs = testutil::random_probs(g, 0.05, 0.95);
    const GameSpec spec{*problem, probs, Player::User1, 10000};
    const auto [s1, s2] = equilibrium_strategies(*problem, probs);
    const SpePair e = spe(*problem, probs);
    for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
      const PlayOutcome oc = play(spec, s1, s2, seed);
      ok = oc.ending == PlayOutcome::Ending::Agreement && oc.round == 1 &&
           oc.payoffs.r1 == e.r_bar.r1 && oc.payoffs.r2 == e.r_bar.r2;
    }
    const DeviationGain gain = deviation_gain(spec, 201);
    ok = ok && gain.user1 <= 1e-9 && gain.user2 <= 1e-9;
  }
  const double t = timer.seconds();
  report(6, "SPE survives 100 seeded plays and 201-point deviation grids (50 scenarios)",
         ok && t < 60.0, t);
}

// 7. Closed-form regularity agrees with the geometric check on 1000
//    randomized phase-1-successful scenarios.
void criterion7() {
  Timer timer;
  std::mt19937_64 g(107);
  bool ok = true;
  int tested = 0;
  while (tested < 1000 && ok) {
    const auto params = testutil::try_random_hk_scenario(g);
    if (!params) continue;
    ++tested;
    const PowerSplit split = default_power_split(*params);
    BargainingProblem problem{hk_polytope(*params, split), disagreement_point(*params)};
    ok = is_regular_ic(*params, split) == is_regular_frontier(problem);
  }
  report(7, "closed-form regularity matches the geometric oracle (1000 scenarios)", ok,
         timer.seconds());
}

// 8. Reference scenario checks: phase 1 selects HK(0, 0.05) and phase 2 is
//    regular at (a=0.2, b=1.2, 10/20 dB); a=b=1 is regular; a=b=2 is not.
void criterion8() {
  Timer timer;
  bool ok = true;

  const ChannelParams mixed{0.2, 1.2, 10.0, 100.0};
  const IncentiveOutcome inc = incentive_check(mixed, Scheme::Hk);
  ok = ok && inc.proceed && inc.split && inc.split->alpha == 0.0 &&
       std::abs(inc.split->beta - 0.05) <= 1e-12;
  BargainingProblem mixed_problem{hk_polytope(mixed, *inc.split), disagreement_point(mixed)};
  ok = ok && is_regular_ic(mixed, *inc.split) && is_regular_frontier(mixed_problem);

  const ChannelParams unit{1.0, 1.0, 10.0, 100.0};
  BargainingProblem unit_problem{hk_polytope(unit, {0.0, 0.0}), disagreement_point(unit)};
  ok = ok && is_regular_ic(unit, {0.0, 0.0}) && is_regular_frontier(unit_problem);

  const ChannelParams twice{2.0, 2.0, 10.0, 100.0};
  BargainingProblem twice_problem{hk_polytope(twice, {0.0, 0.0}), disagreement_point(twice)};
  ok = ok && !is_regular_ic(twice, {0.0, 0.0}) && !is_regular_frontier(twice_problem);

  report(8, "reference scenarios: HK(0,0.05) regular; a=b=1 regular; a=b=2 not", ok,
         timer.seconds());
}

// 9. Scheme comparison at 20/30 dB, p = 0.5: a=0.1 gives H-K dominance;
//    a=0.2 splits the users' preferences.
void criterion9() {
  Timer timer;
  bool ok = true;

  const SchemeComparison dom =
      compare_schemes({0.1, 1.2, 100.0, 1000.0}, {0.5, 0.5}, Player::User1);
  ok = ok && dom.verdict == Verdict::HkDominates;

  const SchemeComparison mix =
      compare_schemes({0.2, 1.2, 100.0, 1000.0}, {0.5, 0.5}, Player::User1);
  ok = ok && mix.verdict == Verdict::Mixed &&
       mix.hk.operating_point.r1 > mix.tdm.operating_point.r1 &&
       mix.hk.operating_point.r2 < mix.tdm.operating_point.r2;

  report(9, "scheme comparison: HK dominates at a=0.1; preferences split at a=0.2", ok,
         timer.seconds());
}

// 10. Every nonnegative closed-form vertex appears in the enumerated vertex
//     list within 1e-9 on 200 randomized weak scenarios.
void criterion10() {
  Timer timer;
  std::mt19937_64 g(110);
  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    const ChannelParams params = testutil::random_params(g, Regime::Weak);
    const PowerSplit split = default_power_split(params);
    const HkBounds hb = hk_bounds(params, split);
    const RateRegion region = hk_polytope(params, split);
    const RatePair closed[4] = {{hb.phi1, hb.phi4 - 2.0 * hb.phi1},
                                {hb.phi4 - hb.phi3, 2.0 * hb.phi3 - hb.phi4},
                                {2.0 * hb.phi3 - hb.phi5, hb.phi5 - hb.phi3},
                                {hb.phi5 - 2.0 * hb.phi2, hb.phi2}};
    for (const RatePair& c : closed) {
      if (c.r1 < 0.0 || c.r2 < 0.0) continue;
      bool found = false;
      for (const RatePair& v : region.vertices()) {
        found = found ||
                (std::abs(v.r1 - c.r1) <= 1e-9 && std::abs(v.r2 - c.r2) <= 1e-9);
      }
      ok = ok && found;
    }
  }
  report(10, "closed-form weak-regime vertices found by enumeration (200 scenarios)", ok,
         timer.seconds());
}

// 11. Monte Carlo means match exact expected payoffs within four standard
//     errors at 1e5 trials on 20 randomized strategy pairs.
void criterion11() {
  Timer timer;
  std::mt19937_64 g(111);
  bool ok = true;
  int tested = 0;
  while (tested < 20 && ok) {
    const auto problem = testutil::try_random_regular_problem(g);
    if (!problem) continue;
    ++tested;
    const BreakdownProbs probs = testutil::random_probs(g, 0.05, 0.95);
    const GameSpec spec{*problem, probs, (g() % 2 == 0) ? Player::User1 : Player::User2,
                        10000};
    const Frontier fr = ir_frontier(problem->region, problem->disagreement);
    const RatePair d = problem->disagreement;

    const double x1 = testutil::uniform(g, fr.r1_min(), fr.r1_max());
    const Strategy s1{{x1, fr.value(x1)}, testutil::uniform(g, d.r1, fr.r1_max())};
    const double x2 = testutil::uniform(g, fr.r1_min(), fr.r1_max());
    const Strategy s2{{x2, fr.value(x2)}, testutil::uniform(g, d.r2, fr.left().r2)};

    const RatePair exact = expected_payoffs(spec, s1, s2);
    const long long n = 100000;
    const MonteCarloResult mc = monte_carlo(spec, s1, s2, n, g());

    const Strategy& sb = spec.first_mover == Player::User1 ? s2 : s1;
    const double p_a = spec.first_mover == Player::User1 ? probs.p1 : probs.p2;
    const double scale = std::sqrt(p_a * (1.0 - p_a)) / std::sqrt(static_cast<double>(n));
    const double se1 = std::abs(sb.offer.r1 - d.r1) * scale;
    const double se2 = std::abs(sb.offer.r2 - d.r2) * scale;
    ok = std::abs(mc.mean_payoffs.r1 - exact.r1) <= 4.0 * se1 + 1e-9 &&
         std::abs(mc.mean_payoffs.r2 - exact.r2) <= 4.0 * se2 + 1e-9;
  }
  report(11, "Monte Carlo means within 4 standard errors of exact payoffs (20 pairs)", ok,
         timer.seconds());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
