#include "icb/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace icb {

namespace {

// Upper-boundary membership slack when collecting chain breakpoints.
constexpr double kChainTol = 1e-9;

double eval_chain(const std::vector<RatePair>& ch, double x) {
  if (x <= ch.front().r1) return ch.front().r2;
  if (x >= ch.back().r1) return ch.back().r2;
  std::size_t lo = 0, hi = ch.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (ch[mid].r1 <= x ? lo : hi) = mid;
  }
  const double run = ch[hi].r1 - ch[lo].r1;
  if (run <= 0.0) return std::max(ch[lo].r2, ch[hi].r2);
  const double t = (x - ch[lo].r1) / run;
  return ch[lo].r2 + t * (ch[hi].r2 - ch[lo].r2);
}

}  // namespace

bool region_essential(const RateRegion& region, const RatePair& d, double tol) {
  if (region.kind() == RegionKind::Tdm) {
    const ChannelParams& p = region.params();
    return tdm_time_needed(d.r1, p.P1) + tdm_time_needed(d.r2, p.P2) < 1.0 - tol;
  }
  // The upper boundary is continuous and nonincreasing, so a strict
  // improvement exists iff it sits strictly above d.r2 at d.r1 and r1 can
  // still increase.
  return region.upper_boundary(d.r1) > d.r2 + tol && d.r1 + tol < region.max_r1();
}

Frontier ir_frontier(const RateRegion& region, const RatePair& d) {
  if (!region.contains(d)) {
    throw std::invalid_argument("ir_frontier: disagreement point lies outside the region");
  }
  if (!region_essential(region, d)) {
    throw EmptyFrontier("ir_frontier: no feasible point strictly dominates the disagreement point");
  }

  Frontier fr;
  fr.disagreement_ = d;

  if (region.kind() == RegionKind::Tdm) {
    const ChannelParams& p = region.params();
    fr.kind_ = Frontier::Kind::Parametric;
    fr.P1_ = p.P1;
    fr.P2_ = p.P2;
    fr.rho_lo_ = tdm_time_needed(d.r1, p.P1);
    fr.rho_hi_ = 1.0 - tdm_time_needed(d.r2, p.P2);
    fr.left_ = {tdm_rate(fr.rho_lo_, p.P1), tdm_rate(1.0 - fr.rho_lo_, p.P2)};
    fr.right_ = {tdm_rate(fr.rho_hi_, p.P1), tdm_rate(1.0 - fr.rho_hi_, p.P2)};
    return fr;
  }

  // Breakpoints of the upper boundary r1 -> max feasible r2.
  std::vector<RatePair> chain;
  for (const RatePair& v : region.vertices()) {
    if (std::abs(v.r2 - region.upper_boundary(v.r1)) > kChainTol) continue;
    if (!chain.empty() && v.r1 - chain.back().r1 <= 1e-12) {
      chain.back().r2 = std::max(chain.back().r2, v.r2);
      continue;
    }
    chain.push_back(v);
  }

  // Clip left at r1 = d.r1.
  std::vector<RatePair> cl;
  cl.push_back({d.r1, eval_chain(chain, d.r1)});
  for (const RatePair& v : chain) {
    if (v.r1 > d.r1 + 1e-12) cl.push_back(v);
  }

  // Clip right where the boundary descends to r2 = d.r2. If it never does,
  // the clip ends on the region's right edge (vertical efficient piece).
  for (std::size_t i = 0; i + 1 < cl.size(); ++i) {
    if (cl[i].r2 >= d.r2 && cl[i + 1].r2 < d.r2) {
      const double t = (d.r2 - cl[i].r2) / (cl[i + 1].r2 - cl[i].r2);
      const double x_hi = cl[i].r1 + t * (cl[i + 1].r1 - cl[i].r1);
      cl.resize(i + 1);
      cl.push_back({x_hi, d.r2});
      break;
    }
  }

  if (cl.size() < 2 || cl.back().r1 - cl.front().r1 <= 1e-12) {
    throw EmptyFrontier("ir_frontier: individual rational clip is degenerate");
  }

  fr.kind_ = Frontier::Kind::PiecewiseLinear;
  fr.chain_ = std::move(cl);
  fr.left_ = fr.chain_.front();
  fr.right_ = fr.chain_.back();
  return fr;
}

double Frontier::r1_min() const { return left_.r1; }
double Frontier::r1_max() const { return right_.r1; }
RatePair Frontier::left() const { return left_; }
RatePair Frontier::right() const { return right_; }

double Frontier::value(double r1) const {
  if (r1 < left_.r1 - kGeomTol || r1 > right_.r1 + kGeomTol) {
    throw std::domain_error("Frontier::value: r1 outside the frontier domain");
  }
  if (kind_ == Kind::Parametric) {
    const double rho = tdm_time_needed(std::max(r1, 0.0), P1_);
    return tdm_rate(1.0 - rho, P2_);
  }
  return eval_chain(chain_, r1);
}

double Frontier::inverse(double r2) const {
  if (r2 < right_.r2 - kGeomTol || r2 > left_.r2 + kGeomTol) {
    throw std::domain_error("Frontier::inverse: r2 outside the frontier range");
  }
  if (kind_ == Kind::Parametric) {
    const double rho2 = tdm_time_needed(std::max(r2, 0.0), P2_);
    return tdm_rate(1.0 - rho2, P1_);
  }
  if (r2 >= chain_.front().r2) return chain_.front().r1;
  if (r2 <= chain_.back().r2) return chain_.back().r1;
  for (std::size_t i = 0; i + 1 < chain_.size(); ++i) {
    if (chain_[i].r2 >= r2 && r2 >= chain_[i + 1].r2) {
      const double drop = chain_[i + 1].r2 - chain_[i].r2;
      if (std::abs(drop) < 1e-15) return chain_[i].r1;
      const double t = (r2 - chain_[i].r2) / drop;
      return chain_[i].r1 + t * (chain_[i + 1].r1 - chain_[i].r1);
    }
  }
  return chain_.back().r1;
}

bool Frontier::has_flat_segment(double tol) const {
  if (kind_ == Kind::Parametric) return false;
  for (std::size_t i = 0; i + 1 < chain_.size(); ++i) {
    const double run = chain_[i + 1].r1 - chain_[i].r1;
    const double drop = chain_[i].r2 - chain_[i + 1].r2;
    if (run > tol && drop <= tol) return true;
  }
  return false;
}

bool Frontier::has_vertical_tail(double tol) const {
  if (kind_ == Kind::Parametric) return false;
  return chain_.back().r2 > disagreement_.r2 + tol;
}

}  // namespace icb
