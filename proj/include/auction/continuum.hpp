#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "auction/game.hpp"
#include "auction/payoff.hpp"

namespace auction {

// Probability of taking the object when tying winners split fairly: each
// of n bidders independently lands on the top bid with probability p.
// Closed form (1 - (1-p)^n) / (n p); equals the binomial sum over the
// number of tied rivals.
Rat fair_tie_win_share(int n, const Rat& p);

// First-price without ties, n >= 3 bidders on {0,...,x}: true when no
// symmetric equilibrium exists. Exact integer form of the grid-top
// comparison 2 (x-1)^(n-1) > x^(n-1).
bool fp_no_ties_nonexistence(int n, int x);

// Display-only approximation of the critical grid top
// 2^(1/(n-1)) / (2^(1/(n-1)) - 1).
double fp_no_ties_threshold(int n);

// All-pay: the top type strictly prefers winning outright over bidding
// one step below value. Exact integer form (x-1)(x+1)^(n-1) > x^n.
bool allpay_sure_win_predicate(int n, int x);

// Display-only approximation of ln(x/(x-1)) / ln((x+1)/x), the rival
// count above which the sure win takes over; peaks near 1.7 at x=2.
double allpay_sure_win_threshold(int x);

// First-price, fair ties: which existence regime (n, x) falls into.
enum class FairTiesExistenceClass {
  TwoBidderOddTop,            // the half-value function is an SE
  TwoBidderEvenTop,           // no SE once x >= 10
  ThreeBidderMultipleOfThree, // no SE
  ThreeBidderOther,           // stepped two-thirds SE
  OutsideScope
};

struct ThresholdReport {
  int n = 0;
  int x = 0;
  bool fp_nonexistence = false;  // first-price no-ties, needs n >= 3
  double fp_threshold = 0;
  bool allpay_large_grid = false;  // x >= 10: no all-pay SE either way
  bool allpay_sure_win = false;
  FairTiesExistenceClass fair_ties_class = FairTiesExistenceClass::OutsideScope;
};

ThresholdReport threshold_report(int n, int x);

// Continuous benchmark evaluated exactly at grid points only.
struct ContinuousAuction {
  Structure structure = Structure::FirstPrice;
  int n = 2;
  Rat v_hi{1};
  std::function<Rat(const Rat&)> cdf;       // 0 at 0, 1 at v_hi
  std::function<Rat(const Rat&)> bid_rule;  // strictly increasing

  static ContinuousAuction uniform_first_price(int n, const Rat& v_hi);
  static ContinuousAuction uniform_all_pay(int n, const Rat& v_hi);
};

struct DiscreteAnalogue {
  AuctionSpec spec;          // no winner on ties, bid grid = image of the
                             // continuous bidding function
  BiddingFunction candidate; // the bids the continuous equilibrium dictates
};

// Shift-discretisation that preserves the continuous equilibrium: value
// grid {0, delta, ..., v_hi - delta} with mass cdf(v+delta) - cdf(v),
// bids the image of {0, delta, ..., v_hi}. delta * grid_count must equal
// v_hi exactly.
DiscreteAnalogue build_discrete_analogue(const ContinuousAuction& cont,
                                         const Rat& delta, int grid_count);

struct MatchReport {
  bool is_equilibrium = false;
  std::optional<DeviationWitness> witness;
  // Inserting a bid level in any gap whose lower endpoint is actually bid
  // must break the equilibrium; intact_gaps lists lower endpoints where it
  // did not.
  bool tight = false;
  std::vector<int> intact_gaps;
};

MatchReport verify_continuum_match(const AuctionSpec& spec,
                                   const BiddingFunction& candidate);

struct ConvergenceRow {
  Rat delta;
  Rat revenue;
  Rat gap;  // |revenue - x/3|, the continuous two-bidder benchmark
};

// Two-bidder first-price without ties on {0, delta, ..., x}, half-value
// equilibrium, exact revenue per grid step.
std::vector<ConvergenceRow> revenue_convergence(const Rat& x,
                                                const std::vector<Rat>& deltas);

// The closed-form symmetric equilibria this library's sources assert for
// recognized (structure, tie rule, n, x) classes; empty when the class is
// not recognized. Test oracle against the solvers.
std::vector<BiddingFunction> known_se_patterns(const AuctionSpec& spec);

}  // namespace auction
