#include "icb/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace icb {

namespace {

// Vertex enumeration: feasibility filter and dedup tolerance.
constexpr double kVertexTol = 1e-9;

bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ChannelParams::ChannelParams(double a_in, double b_in, double P1_in, double P2_in)
    : a(a_in), b(b_in), P1(P1_in), P2(P2_in) {
  if (!finite_pos(a) || !finite_pos(b) || !finite_pos(P1) || !finite_pos(P2)) {
    throw std::domain_error("ChannelParams: gains and powers must be finite and positive");
  }
}

BreakdownProbs::BreakdownProbs(double p1_in, double p2_in) : p1(p1_in), p2(p2_in) {
  if (!(p1 > 0.0 && p1 < 1.0) || !(p2 > 0.0 && p2 < 1.0)) {
    throw std::domain_error("BreakdownProbs: probabilities must lie in (0, 1)");
  }
}

double capacity(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("capacity: argument must be finite and nonnegative");
  }
  return 0.5 * std::log2(1.0 + x);
}

Regime classify_interference(const ChannelParams& p) {
  if (p.a >= 1.0 && p.b >= 1.0) return Regime::Strong;
  if (p.a < 1.0 && p.b < 1.0) return Regime::Weak;
  return Regime::Mixed;
}

PowerSplit default_power_split(const ChannelParams& p) {
  switch (classify_interference(p)) {
    case Regime::Strong:
      return {0.0, 0.0};
    case Regime::Weak:
      return {std::min(1.0 / (p.b * p.P1), 1.0), std::min(1.0 / (p.a * p.P2), 1.0)};
    case Regime::Mixed:
      if (p.a < 1.0) return {0.0, std::min(1.0 / (p.a * p.P2), 1.0)};
      // Mirrored orientation: a >= 1 > b.
      return {std::min(1.0 / (p.b * p.P1), 1.0), 0.0};
  }
  throw std::logic_error("unreachable");
}

RatePair disagreement_point(const ChannelParams& p) {
  return {capacity(p.P1 / (1.0 + p.a * p.P2)), capacity(p.P2 / (1.0 + p.b * p.P1))};
}

HkBounds hk_bounds(const ChannelParams& p, const PowerSplit& s) {
  if (!(s.alpha >= 0.0 && s.alpha <= 1.0) || !(s.beta >= 0.0 && s.beta <= 1.0)) {
    throw std::domain_error("hk_bounds: power split fractions must lie in [0, 1]");
  }
  // Noise-plus-private-interference level at each receiver.
  const double den1 = 1.0 + p.a * s.beta * p.P2;
  const double den2 = 1.0 + p.b * s.alpha * p.P1;

  HkBounds hb;
  hb.phi1 = capacity(p.P1 / den1);
  hb.phi2 = capacity(p.P2 / den2);
  hb.phi31 = capacity((p.P1 + p.a * (1.0 - s.beta) * p.P2) / den1) +
             capacity(s.beta * p.P2 / den2);
  hb.phi32 = capacity(s.alpha * p.P1 / den1) +
             capacity((p.P2 + p.b * (1.0 - s.alpha) * p.P1) / den2);
  hb.phi33 = capacity((s.alpha * p.P1 + p.a * (1.0 - s.beta) * p.P2) / den1) +
             capacity((s.beta * p.P2 + p.b * (1.0 - s.alpha) * p.P1) / den2);
  hb.phi3 = std::min({hb.phi31, hb.phi32, hb.phi33});
  hb.phi4 = capacity((p.P1 + p.a * (1.0 - s.beta) * p.P2) / den1) +
            capacity(s.alpha * p.P1 / den1) +
            capacity((s.beta * p.P2 + p.b * (1.0 - s.alpha) * p.P1) / den2);
  hb.phi5 = capacity((p.P2 + p.b * (1.0 - s.alpha) * p.P1) / den2) +
            capacity(s.beta * p.P2 / den2) +
            capacity((s.alpha * p.P1 + p.a * (1.0 - s.beta) * p.P2) / den1);
  if (s.alpha == 0.0 && s.beta == 0.0) {
    hb.phi6 = std::min(capacity(p.P1 + p.a * p.P2), capacity(p.b * p.P1 + p.P2));
  }
  return hb;
}

RateRegion RateRegion::make_polytope(RegionKind kind, const ChannelParams& params,
                                     std::vector<Constraint> constraints) {
  if (kind == RegionKind::Tdm) {
    throw std::invalid_argument("make_polytope: Tdm is not a polytope kind");
  }
  RateRegion region(kind, params);
  region.constraints_ = std::move(constraints);
  region.enumerate_vertices();
  return region;
}

RateRegion RateRegion::make_tdm(const ChannelParams& params) {
  return RateRegion(RegionKind::Tdm, params);
}

bool RateRegion::contains(const RatePair& r, double tol) const {
  if (r.r1 < -tol || r.r2 < -tol) return false;
  if (kind_ == RegionKind::Tdm) {
    return tdm_time_needed(r.r1, params_.P1, tol) + tdm_time_needed(r.r2, params_.P2, tol) <=
           1.0 + tol;
  }
  for (const Constraint& c : constraints_) {
    if (c.c1 * r.r1 + c.c2 * r.r2 > c.bound + tol) return false;
  }
  return true;
}

double RateRegion::upper_boundary(double r1) const {
  if (kind_ == RegionKind::Tdm) {
    const double t1 = tdm_time_needed(r1, params_.P1);
    if (!(t1 < 1.0)) return 0.0;
    return tdm_rate(1.0 - t1, params_.P2);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Constraint& c : constraints_) {
    if (c.c2 > 0.0) best = std::min(best, (c.bound - c.c1 * r1) / c.c2);
  }
  return best;
}

double RateRegion::max_r1() const {
  if (kind_ == RegionKind::Tdm) return capacity(params_.P1);
  double m = 0.0;
  for (const RatePair& v : vertices_) m = std::max(m, v.r1);
  return m;
}

double RateRegion::max_r2() const {
  if (kind_ == RegionKind::Tdm) return capacity(params_.P2);
  double m = 0.0;
  for (const RatePair& v : vertices_) m = std::max(m, v.r2);
  return m;
}

void RateRegion::enumerate_vertices() {
  // Pairwise intersection of all half-planes (plus the axes), keeping the
  // feasible, first-quadrant intersections. With two independent active
  // constraints in 2-D, every such point is an extreme point.
  std::vector<Constraint> all = constraints_;
  all.push_back({-1.0, 0.0, 0.0});
  all.push_back({0.0, -1.0, 0.0});

  vertices_.clear();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double det = all[i].c1 * all[j].c2 - all[i].c2 * all[j].c1;
      if (std::abs(det) < 1e-12) continue;
      // + 0.0 normalizes the negative zeros that axis intersections produce.
      const RatePair v{(all[i].bound * all[j].c2 - all[i].c2 * all[j].bound) / det + 0.0,
                       (all[i].c1 * all[j].bound - all[i].bound * all[j].c1) / det + 0.0};
      if (!contains(v, kVertexTol)) continue;
      const bool dup = std::any_of(vertices_.begin(), vertices_.end(), [&](const RatePair& w) {
        return std::abs(w.r1 - v.r1) <= kVertexTol && std::abs(w.r2 - v.r2) <= kVertexTol;
      });
      if (!dup) vertices_.push_back(v);
    }
  }
  std::sort(vertices_.begin(), vertices_.end(), [](const RatePair& x, const RatePair& y) {
    return x.r1 != y.r1 ? x.r1 < y.r1 : x.r2 < y.r2;
  });
}

RateRegion hk_polytope(const ChannelParams& params, const PowerSplit& split) {
  const HkBounds hb = hk_bounds(params, split);
  std::vector<Constraint> cs = {{1.0, 0.0, hb.phi1},
                                {0.0, 1.0, hb.phi2},
                                {1.0, 1.0, hb.phi3},
                                {2.0, 1.0, hb.phi4},
                                {1.0, 2.0, hb.phi5}};
  return RateRegion::make_polytope(RegionKind::HkPolytope, params, std::move(cs));
}

RateRegion mac_polytope(double P1, double P2) {
  const ChannelParams params(1.0, 1.0, P1, P2);
  std::vector<Constraint> cs = {{1.0, 0.0, capacity(P1)},
                                {0.0, 1.0, capacity(P2)},
                                {1.0, 1.0, capacity(P1 + P2)}};
  return RateRegion::make_polytope(RegionKind::MacPolytope, params, std::move(cs));
}

RateRegion tdm_region(const ChannelParams& params) { return RateRegion::make_tdm(params); }

double tdm_rate(double rho, double P) {
  if (rho <= 0.0) return 0.0;
  return rho * capacity(P / rho);
}

double tdm_time_needed(double rate, double P, double tol) {
  if (rate <= 0.0) return 0.0;
  const double cap = capacity(P);
  if (rate >= cap) {
    if (rate <= cap + tol) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (tdm_rate(mid, P) < rate ? lo : hi) = mid;
  }
  return hi;
}

RatePair tdm_point(double rho1, const ChannelParams& params) {
  if (!(rho1 >= 0.0 && rho1 <= 1.0)) {
    throw std::domain_error("tdm_point: rho1 must lie in [0, 1]");
  }
  return {tdm_rate(rho1, params.P1), tdm_rate(1.0 - rho1, params.P2)};
}

}  // namespace icb
