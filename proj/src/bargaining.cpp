#include "icb/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace icb {

namespace {

constexpr double kResidualTol = 1e-9;

double nash_product(const RatePair& r, const RatePair& d) {
  return (r.r1 - d.r1) * (r.r2 - d.r2);
}

// Max of the product along one frontier segment: the restriction is a
// concave quadratic in r1, so the candidates are the interior stationary
// point (clamped) and the endpoints.
struct NbsCandidate {
  RatePair point;
  double product;
  bool at_kink;
};

void segment_candidates(const RatePair& a, const RatePair& b, const RatePair& d,
                        std::vector<NbsCandidate>& out) {
  const double run = b.r1 - a.r1;
  if (run <= 1e-15) return;
  const double m = (b.r2 - a.r2) / run;
  out.push_back({a, nash_product(a, d), true});
  out.push_back({b, nash_product(b, d), true});
  if (m < -1e-15) {
    const double c = a.r2 - m * a.r1;
    double x = (m * d.r1 + d.r2 - c) / (2.0 * m);
    x = std::clamp(x, a.r1, b.r1);
    const RatePair p{x, c + m * x};
    out.push_back({p, nash_product(p, d), x == a.r1 || x == b.r1});
  }
}

// Golden-section maximization of a unimodal function on [lo, hi].
template <typename F>
double golden_section_max(F f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BargainingProblem::BargainingProblem(RateRegion region_in, RatePair disagreement_in)
    : region(std::move(region_in)), disagreement(disagreement_in) {
  if (!region.contains(disagreement)) {
    throw std::invalid_argument(
        "BargainingProblem: disagreement point lies outside the feasible set");
  }
}

bool is_essential(const BargainingProblem& problem, double tol) {
  return region_essential(problem.region, problem.disagreement, tol);
}

bool is_regular_frontier(const BargainingProblem& problem, double tol) {
  Frontier fr;
  try {
    fr = ir_frontier(problem.region, problem.disagreement);
  } catch (const EmptyFrontier&) {
    return false;
  }
  return !fr.has_flat_segment(tol) && !fr.has_vertical_tail(tol);
}

bool is_regular_ic(const ChannelParams& params, const PowerSplit& split) {
  const Regime regime = classify_interference(params);
  if (regime == Regime::Strong) return params.a == 1.0 && params.b == 1.0;

  const HkBounds hb = hk_bounds(params, split);
  const RatePair d = disagreement_point(params);
  const auto plus = [](double v) { return std::max(v, 0.0); };
  if (regime == Regime::Weak) {
    return d.r1 >= plus(hb.phi5 - 2.0 * hb.phi2) && d.r2 >= plus(hb.phi4 - 2.0 * hb.phi1);
  }
  return d.r1 >= plus(std::min(hb.phi5 - 2.0 * hb.phi2, hb.phi3 - hb.phi2)) &&
         d.r2 >= plus(std::min(hb.phi4 - 2.0 * hb.phi1, hb.phi3 - hb.phi1));
}

IncentiveOutcome incentive_check(const ChannelParams& params, Scheme scheme) {
  const RatePair d = disagreement_point(params);

  if (scheme == Scheme::Tdm) {
    const double t1 = tdm_time_needed(d.r1, params.P1);
    const double t2 = tdm_time_needed(d.r2, params.P2);
    if (t1 + t2 < 1.0 - kGeomTol) {
      IncentiveOutcome out;
      out.proceed = true;
      out.rho_interval = std::make_pair(t1, 1.0 - t2);
      return out;
    }
    return {};
  }

  const Regime regime = classify_interference(params);
  const PowerSplit split = default_power_split(params);
  if (regime == Regime::Strong) {
    IncentiveOutcome out;
    out.proceed = true;
    out.split = split;
    return out;
  }
  if (regime == Regime::Weak && !(params.a * params.P2 > 1.0 && params.b * params.P1 > 1.0)) {
    return {};
  }
  if (regime == Regime::Mixed) {
    const bool interference_decodable =
        params.a < 1.0 ? params.a * params.P2 > 1.0 : params.b * params.P1 > 1.0;
    if (!interference_decodable) return {};
  }
  if (!region_essential(hk_polytope(params, split), d)) return {};

  IncentiveOutcome out;
  out.proceed = true;
  out.split = split;
  return out;
}

RatePair nbs(const BargainingProblem& problem) {
  const RatePair d = problem.disagreement;
  Frontier fr;
  try {
    fr = ir_frontier(problem.region, d);
  } catch (const EmptyFrontier& e) {
    throw NotEssential(e.what());
  }

  if (fr.kind() == Frontier::Kind::Parametric) {
    const ChannelParams& p = problem.region.params();
    const auto product = [&](double rho) {
      return (tdm_rate(rho, p.P1) - d.r1) * (tdm_rate(1.0 - rho, p.P2) - d.r2);
    };
    const double rho = golden_section_max(product, fr.rho_lo(), fr.rho_hi(), 1e-12);
    return tdm_point(rho, p);
  }

  std::vector<NbsCandidate> cands;
  const auto& chain = fr.chain();
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    segment_candidates(chain[i], chain[i + 1], d, cands);
  }
  const NbsCandidate* best = &cands.front();
  for (const NbsCandidate& c : cands) {
    if (c.product > best->product) best = &c;
  }
  // Ties within slack resolve toward a kink point.
  const double slack = 1e-12 * std::max(1.0, std::abs(best->product));
  for (const NbsCandidate& c : cands) {
    if (c.at_kink && !best->at_kink && c.product >= best->product - slack) best = &c;
  }
  return best->point;
}

SpePair spe_mac(double P1, double P2, const BreakdownProbs& probs, Player first_mover) {
  if (!(P1 > 0.0) || !(P2 > 0.0) || !std::isfinite(P1) || !std::isfinite(P2)) {
    throw std::domain_error("spe_mac: powers must be finite and positive");
  }
  const double d1 = capacity(P1 / (1.0 + P2));
  const double d2 = capacity(P2 / (1.0 + P1));
  const double phi0 = capacity(P1 + P2);

  // Elimination of the 4x4 system against the two efficiency constraints.
  const double denom = probs.p1 + probs.p2 - probs.p1 * probs.p2;
  const double rbar1 =
      (probs.p1 * phi0 + (1.0 - probs.p1) * probs.p2 * d1 - probs.p1 * d2) / denom;
  const double rbar2 = phi0 - rbar1;
  const double rtilde1 = (1.0 - probs.p2) * (rbar1 - d1) + d1;
  const double rtilde2 = phi0 - rtilde1;

  SpePair out;
  out.r_bar = {rbar1, rbar2};
  out.r_tilde = {rtilde1, rtilde2};
  out.first_mover = first_mover;
  out.outcome = first_mover == Player::User1 ? out.r_bar : out.r_tilde;
  return out;
}

SpePair spe(const BargainingProblem& problem, const BreakdownProbs& probs, Player first_mover) {
  if (!is_regular_frontier(problem)) {
    throw NonRegular("spe: bargaining problem is not regular; equilibrium may not be unique");
  }
  const Frontier fr = ir_frontier(problem.region, problem.disagreement);
  const double d1 = problem.disagreement.r1;
  const double d2 = problem.disagreement.r2;
  const double f_top = fr.left().r2;

  // rtilde2(x) must stay within the frontier range, which caps the bracket
  // from below at x_cut where f(x_cut) = (1-p1)(f_top - d2) + d2.
  const double y_cut = (1.0 - probs.p1) * (f_top - d2) + d2;
  const double x_cut = fr.inverse(std::min(y_cut, f_top));
  const double x_hi = fr.r1_max();

  // The probe value is clamped into the frontier range: at the clip
  // endpoints the 1/(1-p1) amplification can push it past the range by
  // evaluation noise.
  const double f_bottom = fr.right().r2;
  const auto residual = [&](double x) {
    const double rbar2 = fr.value(x);
    const double rtilde2 =
        std::clamp((rbar2 - d2) / (1.0 - probs.p1) + d2, f_bottom, f_top);
    const double rtilde1 = fr.inverse(rtilde2);
    return rtilde1 - ((1.0 - probs.p2) * (x - d1) + d1);
  };

  double lo = x_cut, hi = x_hi;
  double g_lo = residual(lo), g_hi = residual(hi);
  if (g_lo > kResidualTol || g_hi < -kResidualTol) {
    throw std::runtime_error(
        "spe: equilibrium root not bracketed on the frontier (g(" + std::to_string(lo) + ")=" +
        std::to_string(g_lo) + ", g(" + std::to_string(hi) + ")=" + std::to_string(g_hi) + ")");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (residual(mid) < 0.0 ? lo : hi) = mid;
  }
  const double rbar1 = 0.5 * (lo + hi);
  const double rbar2 = fr.value(rbar1);
  const double rtilde1 = (1.0 - probs.p2) * (rbar1 - d1) + d1;
  const double rtilde2 = fr.value(rtilde1);

  const double resid = rbar2 - ((1.0 - probs.p1) * (rtilde2 - d2) + d2);
  if (std::abs(resid) > kResidualTol) {
    throw std::runtime_error("spe: equilibrium residual " + std::to_string(resid) +
                             " exceeds tolerance");
  }

  SpePair out;
  out.r_bar = {rbar1, rbar2};
  out.r_tilde = {rtilde1, rtilde2};
  out.first_mover = first_mover;
  out.outcome = first_mover == Player::User1 ? out.r_bar : out.r_tilde;
  return out;
}

}  // namespace icb
