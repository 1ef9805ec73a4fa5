#pragma once

#include <optional>
#include <vector>

#include "auction/game.hpp"

namespace auction {

// Pmf over bid indices, one vector per opponent.
using BidPmf = std::vector<Rat>;
using OpponentPmfs = std::vector<BidPmf>;

// Pushforward of the value pmf through each opponent's bidding function.
OpponentPmfs opponent_bid_pmf(const AuctionSpec& spec,
                              const StrategyProfile& profile, int player);

// Probability that a bid of index b wins against the given opponents.
// NoWinnerOnTies: product of P(opponent bids < b). FairTies: dynamic
// program over opponents tracking the number of ties at b; a tie among
// m top bidders is won with probability 1/m.
Rat win_probability(const AuctionSpec& spec, int b,
                    const OpponentPmfs& opp_pmfs);

// Expected payoff of holding value index v and bidding index b.
Rat interim_payoff(const AuctionSpec& spec, int v, int b,
                   const OpponentPmfs& opp_pmfs);

// All bids attaining the maximum interim payoff; never empty.
std::vector<int> best_response_set(const AuctionSpec& spec, int v,
                                   const OpponentPmfs& opp_pmfs);

struct DeviationWitness {
  int player = 0;
  int value = 0;
  int bid = 0;       // the strictly improving deviation
  Rat gain;          // exact payoff improvement
};

struct EquilibriumCheck {
  bool is_equilibrium = false;
  std::optional<DeviationWitness> witness;
};

EquilibriumCheck check_equilibrium(const AuctionSpec& spec,
                                   const StrategyProfile& profile);

bool is_equilibrium(const AuctionSpec& spec, const StrategyProfile& profile);

// Expected seller revenue under the profile, by a distribution DP over the
// (top, second) bid order statistics. expected_revenue_brute sums over the
// joint value outcome space instead; the two must agree wherever both run.
Rat expected_revenue(const AuctionSpec& spec, const StrategyProfile& profile);
Rat expected_revenue_brute(const AuctionSpec& spec,
                           const StrategyProfile& profile);

}  // namespace auction
