#pragma once

#include <stdexcept>
#include <string>

namespace icb {

// All rates are in bits per channel use (log base 2) and all powers/gains are
// linear (the noise variance is 1, so SNR_i = P_i).

// Default geometric tolerance: feasibility filters, clip nondegeneracy,
// frontier membership.
inline constexpr double kGeomTol = 1e-9;

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

enum class Player { User1, User2 };

constexpr Player other(Player p) {
  return p == Player::User1 ? Player::User2 : Player::User1;
}

enum class Regime { Strong, Weak, Mixed };

enum class Scheme { Hk, Tdm };

// Cross gains and powers defining a two-user Gaussian interference scenario.
struct ChannelParams {
  double a;   // power gain of link 2 -> 1
  double b;   // power gain of link 1 -> 2
  double P1;  // average power constraint of user 1
  double P2;  // average power constraint of user 2

  ChannelParams(double a, double b, double P1, double P2);
};

// Fraction of each user's power spent on its private message.
struct PowerSplit {
  double alpha = 0.0;
  double beta = 0.0;
};

// Probability that bargaining breaks down after one of that player's offers
// is rejected.
struct BreakdownProbs {
  double p1;
  double p2;

  BreakdownProbs(double p1, double p2);
};

// No feasible point strictly improves on the disagreement point for both
// users at once.
struct NotEssential : std::runtime_error {
  explicit NotEssential(const std::string& what) : std::runtime_error(what) {}
};

// The individual rational efficient frontier has a horizontal or vertical
// piece, so the alternating-offer game may have multiple equilibria; solvers
// refuse instead of picking one.
struct NonRegular : std::runtime_error {
  explicit NonRegular(const std::string& what) : std::runtime_error(what) {}
};

// The individual rational frontier clip is degenerate (nothing strictly
// dominates the disagreement point).
struct EmptyFrontier : std::runtime_error {
  explicit EmptyFrontier(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace icb
