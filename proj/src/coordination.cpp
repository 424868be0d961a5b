#include "icb/coordination.hpp"

#include <cmath>

namespace icb {

CoordinationOutcome negotiate(const Scenario& sc) {
  CoordinationOutcome out;
  out.disagreement = disagreement_point(sc.params);
  out.operating_point = out.disagreement;

  const IncentiveOutcome inc = incentive_check(sc.params, sc.scheme);
  out.agreed = inc.proceed;
  if (!inc.proceed) return out;
  out.split = inc.split;
  out.rho_interval = inc.rho_interval;

  const RateRegion region = sc.scheme == Scheme::Hk ? hk_polytope(sc.params, *inc.split)
                                                    : tdm_region(sc.params);
  const BargainingProblem problem(region, out.disagreement);
  out.regular = is_regular_frontier(problem);

  if (sc.solution != SolutionKind::Spe) out.nbs = nbs(problem);
  if (sc.solution != SolutionKind::Nbs) {
    if (out.regular) {
      out.spe = spe(problem, sc.probs, sc.first_mover);
    } else {
      out.spe_refused = true;
      // Attach the NBS for reference alongside the refusal.
      if (!out.nbs) out.nbs = nbs(problem);
    }
  }

  if (out.spe) {
    out.operating_point = out.spe->outcome;
  } else if (sc.solution == SolutionKind::Nbs) {
    out.operating_point = *out.nbs;
  }
  return out;
}

std::vector<SweepRow> sweep(const Scenario& scenario, const std::vector<double>& p1_values,
                            double p2, bool joint) {
  std::vector<SweepRow> rows;
  rows.reserve(p1_values.size());
  for (double p1 : p1_values) {
    Scenario sc = scenario;
    sc.probs = BreakdownProbs(p1, joint ? p1 : p2);
    rows.push_back({p1, sc.probs.p2, negotiate(sc)});
  }
  return rows;
}

SchemeComparison compare_schemes(const ChannelParams& params, const BreakdownProbs& probs,
                                 Player first_mover) {
  Scenario sc{params, Scheme::Hk, probs, first_mover, SolutionKind::Both};
  SchemeComparison cmp;
  cmp.hk = negotiate(sc);
  sc.scheme = Scheme::Tdm;
  cmp.tdm = negotiate(sc);

  // A refusal leaves no equilibrium point to compare.
  if (cmp.hk.spe_refused || cmp.tdm.spe_refused) {
    cmp.verdict = Verdict::Incomparable;
    return cmp;
  }
  const RatePair& h = cmp.hk.operating_point;
  const RatePair& t = cmp.tdm.operating_point;
  const auto sign = [](double x, double y) {
    if (x > y + kGeomTol) return 1;
    if (x < y - kGeomTol) return -1;
    return 0;
  };
  const int u1 = sign(h.r1, t.r1);
  const int u2 = sign(h.r2, t.r2);
  if (u1 > 0 && u2 > 0) {
    cmp.verdict = Verdict::HkDominates;
  } else if (u1 < 0 && u2 < 0) {
    cmp.verdict = Verdict::TdmDominates;
  } else if (u1 != 0 && u2 != 0) {
    cmp.verdict = Verdict::Mixed;
  } else {
    cmp.verdict = Verdict::Incomparable;
  }
  return cmp;
}

}  // namespace icb
