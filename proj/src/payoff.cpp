#include "auction/payoff.hpp"

#include <algorithm>

namespace auction {

OpponentPmfs opponent_bid_pmf(const AuctionSpec& spec,
                              const StrategyProfile& profile, int player) {
  check_profile(spec, profile);
  OpponentPmfs pmfs;
  pmfs.reserve(spec.n - 1);
  for (int j = 0; j < spec.n; ++j) {
    if (j == player) continue;
    BidPmf pmf(spec.num_bids(), Rat(0));
    for (int v = 0; v < spec.num_values(); ++v)
      pmf[profile.players[j](v)] += spec.dist.pmf[v];
    pmfs.push_back(std::move(pmf));
  }
  return pmfs;
}

namespace {

// Per-opponent mass strictly below / exactly at a bid index.
struct SplitMass {
  std::vector<Rat> below, at;
};

SplitMass split_at(int b, const OpponentPmfs& opp_pmfs) {
  SplitMass s;
  for (const BidPmf& pmf : opp_pmfs) {
    Rat below = 0;
    for (int m = 0; m < b; ++m) below += pmf[m];
    s.below.push_back(below);
    s.at.push_back(pmf[b]);
  }
  return s;
}

// dp[k] = probability that exactly k of the processed opponents bid b,
// all others bid below, and none bids above.
std::vector<Rat> tie_count_distribution(const SplitMass& s) {
  std::vector<Rat> dp{Rat(1)};
  for (std::size_t j = 0; j < s.below.size(); ++j) {
    std::vector<Rat> next(dp.size() + 1, Rat(0));
    for (std::size_t k = 0; k < dp.size(); ++k) {
      if (dp[k] == 0) continue;
      next[k] += dp[k] * s.below[j];
      next[k + 1] += dp[k] * s.at[j];
    }
    dp = std::move(next);
  }
  return dp;
}

}  // namespace

Rat win_probability(const AuctionSpec& spec, int b,
                    const OpponentPmfs& opp_pmfs) {
  const SplitMass s = split_at(b, opp_pmfs);
  if (spec.tie_rule == TieRule::NoWinnerOnTies) {
    Rat w = 1;
    for (const Rat& below : s.below) w *= below;
    return w;
  }
  const std::vector<Rat> dp = tie_count_distribution(s);
  Rat w = 0;
  for (std::size_t k = 0; k < dp.size(); ++k)
    w += dp[k] / Rat(static_cast<int>(k) + 1);
  return w;
}

namespace {

// E[price * 1{win}] in the second-price auction. The price is the highest
// losing bid: the shared top bid itself when the win comes through a fair
// tie, and the maximum opponent bid below b otherwise.
Rat expected_payment_second_price(const AuctionSpec& spec, int b,
                                  const OpponentPmfs& opp_pmfs) {
  const SplitMass s = split_at(b, opp_pmfs);
  Rat payment = 0;
  if (spec.tie_rule == TieRule::FairTies) {
    const std::vector<Rat> dp = tie_count_distribution(s);
    Rat tie_win = 0;
    for (std::size_t k = 1; k < dp.size(); ++k)
      tie_win += dp[k] / Rat(static_cast<int>(k) + 1);
    payment += spec.bid_level(b) * tie_win;
  }
  // All opponents strictly below b; price is their maximum bid.
  std::vector<Rat> cum_prev(opp_pmfs.size(), Rat(0));
  Rat prob_prev = 0;  // P(all opponents bid <= m-1)
  for (int m = 0; m < b; ++m) {
    Rat prob = 1;
    for (std::size_t j = 0; j < opp_pmfs.size(); ++j) {
      cum_prev[j] += opp_pmfs[j][m];
      prob *= cum_prev[j];
    }
    payment += spec.bid_level(m) * (prob - prob_prev);
    prob_prev = prob;
  }
  return payment;
}

}  // namespace

Rat interim_payoff(const AuctionSpec& spec, int v, int b,
                   const OpponentPmfs& opp_pmfs) {
  const Rat w = win_probability(spec, b, opp_pmfs);
  switch (spec.structure) {
    case Structure::FirstPrice:
      return (spec.value_level(v) - spec.bid_level(b)) * w;
    case Structure::AllPay:
      return spec.value_level(v) * w - spec.bid_level(b);
    case Structure::SecondPrice:
      return spec.value_level(v) * w -
             expected_payment_second_price(spec, b, opp_pmfs);
  }
  throw SpecError("unreachable");
}

std::vector<int> best_response_set(const AuctionSpec& spec, int v,
                                   const OpponentPmfs& opp_pmfs) {
  std::vector<int> best;
  Rat best_payoff;
  for (int b = 0; b < spec.num_bids(); ++b) {
    const Rat payoff = interim_payoff(spec, v, b, opp_pmfs);
    if (best.empty() || payoff > best_payoff) {
      best_payoff = payoff;
      best.assign(1, b);
    } else if (payoff == best_payoff) {
      best.push_back(b);
    }
  }
  return best;
}

EquilibriumCheck check_equilibrium(const AuctionSpec& spec,
                                   const StrategyProfile& profile) {
  check_profile(spec, profile);
  for (int i = 0; i < spec.n; ++i) {
    const OpponentPmfs pmfs = opponent_bid_pmf(spec, profile, i);
    for (int v = 0; v < spec.num_values(); ++v) {
      const Rat current = interim_payoff(spec, v, profile.players[i](v), pmfs);
      for (int b = 0; b < spec.num_bids(); ++b) {
        if (b == profile.players[i](v)) continue;
        const Rat payoff = interim_payoff(spec, v, b, pmfs);
        if (payoff > current)
          return {false, DeviationWitness{i, v, b, payoff - current}};
      }
    }
  }
  return {true, std::nullopt};
}

bool is_equilibrium(const AuctionSpec& spec, const StrategyProfile& profile) {
  return check_equilibrium(spec, profile).is_equilibrium;
}

namespace {

Rat revenue_of_outcome(const AuctionSpec& spec, int top, int second,
                       bool unique_top) {
  switch (spec.structure) {
    case Structure::FirstPrice:
      if (spec.tie_rule == TieRule::NoWinnerOnTies && !unique_top)
        return Rat(0);
      return spec.bid_level(top);
    case Structure::SecondPrice:
      if (spec.tie_rule == TieRule::NoWinnerOnTies && !unique_top)
        return Rat(0);
      return spec.bid_level(second);
    case Structure::AllPay:
      // Bids are paid regardless of the allocation; handled by the caller.
      return Rat(0);
  }
  throw SpecError("unreachable");
}

}  // namespace

Rat expected_revenue(const AuctionSpec& spec, const StrategyProfile& profile) {
  check_profile(spec, profile);
  if (spec.structure == Structure::AllPay) {
    Rat total = 0;
    for (int i = 0; i < spec.n; ++i)
      for (int v = 0; v < spec.num_values(); ++v)
        total += spec.dist.pmf[v] * spec.bid_level(profile.players[i](v));
    return total;
  }
  // DP over players on the (top, second) bid order statistics.
  const int B = spec.num_bids();
  auto key = [B](int top, int second) { return top * (B + 1) + second + 1; };
  std::vector<Rat> dp(static_cast<std::size_t>(B) * (B + 1) + B + 1, Rat(0));
  // Seed with player 0's bid distribution; "second" starts as none (-1).
  for (int v = 0; v < spec.num_values(); ++v)
    dp[key(profile.players[0](v), -1)] += spec.dist.pmf[v];
  for (int i = 1; i < spec.n; ++i) {
    BidPmf pmf(B, Rat(0));
    for (int v = 0; v < spec.num_values(); ++v)
      pmf[profile.players[i](v)] += spec.dist.pmf[v];
    std::vector<Rat> next(dp.size(), Rat(0));
    for (int top = 0; top < B; ++top) {
      for (int second = -1; second <= top; ++second) {
        const Rat& p = dp[key(top, second)];
        if (p == 0) continue;
        for (int b = 0; b < B; ++b) {
          if (pmf[b] == 0) continue;
          int nt = top, ns = second;
          if (b > top) {
            nt = b;
            ns = top;
          } else if (b > second) {
            ns = b;
          }
          next[key(nt, ns)] += p * pmf[b];
        }
      }
    }
    dp = std::move(next);
  }
  Rat revenue = 0;
  for (int top = 0; top < B; ++top)
    for (int second = 0; second <= top; ++second) {
      const Rat& p = dp[key(top, second)];
      if (p == 0) continue;
      revenue += p * revenue_of_outcome(spec, top, second, second < top);
    }
  return revenue;
}

Rat expected_revenue_brute(const AuctionSpec& spec,
                           const StrategyProfile& profile) {
  check_profile(spec, profile);
  const int S = spec.num_values();
  std::vector<int> values(spec.n, 0);
  Rat revenue = 0;
  while (true) {
    Rat prob = 1;
    for (int i = 0; i < spec.n; ++i) prob *= spec.dist.pmf[values[i]];
    if (spec.structure == Structure::AllPay) {
      Rat paid = 0;
      for (int i = 0; i < spec.n; ++i)
        paid += spec.bid_level(profile.players[i](values[i]));
      revenue += prob * paid;
    } else {
      int top = -1, second = -1;
      for (int i = 0; i < spec.n; ++i) {
        const int b = profile.players[i](values[i]);
        if (b > top) {
          second = top;
          top = b;
        } else if (b > second) {
          second = b;
        }
      }
      revenue += prob * revenue_of_outcome(spec, top, second, second < top);
    }
    int pos = spec.n - 1;
    while (pos >= 0 && values[pos] == S - 1) values[pos--] = 0;
    if (pos < 0) break;
    ++values[pos];
  }
  return revenue;
}

}  // namespace auction
