#include "doctest.h"

#include <random>
#include <vector>

#include "auction/game.hpp"
#include "auction/payoff.hpp"

using namespace auction;

namespace {

BiddingFunction make_beta(std::vector<int> bids) {
  return BiddingFunction{std::move(bids)};
}

BiddingFunction halved(int S, bool round_up = false) {
  BiddingFunction beta;
  for (int v = 0; v < S; ++v) beta.bid_of.push_back(round_up ? (v + 1) / 2 : v / 2);
  return beta;
}

BiddingFunction identity(int S) {
  BiddingFunction beta;
  for (int v = 0; v < S; ++v) beta.bid_of.push_back(v);
  return beta;
}

// Independent oracle: the tie-splitting win probability as a subset sum over
// the number of tying opponents, for i.i.d. opponents with P(=b) = p and
// P(<b) = 1 - p.
Rat subset_sum_win(int n, const Rat& p) {
  Rat total = 0;
  for (int i = 1; i <= n; ++i) {
    Rat binom = 1;  // C(n-1, i-1)
    for (int k = 0; k < i - 1; ++k)
      binom = binom * (n - 1 - k) / (k + 1);
    Rat term = binom / i;
    for (int k = 0; k < n - i; ++k) term *= (1 - p);
    for (int k = 0; k < i - 1; ++k) term *= p;
    total += term;
  }
  return total;
}

}  // namespace

TEST_CASE("opponent bid pmf is the pushforward of the value pmf") {
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::FairTies, 2, 2);
  auto pmfs = opponent_bid_pmf(spec, symmetric_profile(make_beta({0, 0, 1}), 2), 0);
  REQUIRE(pmfs.size() == 1);
  CHECK(pmfs[0] == BidPmf{Rat(2, 3), Rat(1, 3), Rat(0)});

  auto pmfs_const =
      opponent_bid_pmf(spec, symmetric_profile(make_beta({0, 0, 0}), 2), 1);
  CHECK(pmfs_const[0] == BidPmf{Rat(1), Rat(0), Rat(0)});

  auto spec11 = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                               TieRule::FairTies, 2, 10);
  auto pmfs11 = opponent_bid_pmf(spec11, symmetric_profile(halved(11), 2), 0);
  for (int b = 0; b <= 4; ++b) CHECK(pmfs11[0][b] == Rat(2, 11));
  CHECK(pmfs11[0][5] == Rat(1, 11));
  for (int b = 6; b <= 10; ++b) CHECK(pmfs11[0][b] == Rat(0));
}

TEST_CASE("win probability under fair ties") {
  auto spec2 = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                              TieRule::FairTies, 2, 3);
  // Opponent bids 1 with probability 1; a tie at 1 is a coin flip.
  OpponentPmfs certain{{Rat(0), Rat(1), Rat(0), Rat(0)}};
  CHECK(win_probability(spec2, 1, certain) == Rat(1, 2));

  auto spec3 = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                              TieRule::FairTies, 3, 3);
  OpponentPmfs both{certain[0], certain[0]};
  CHECK(win_probability(spec3, 1, both) == Rat(1, 3));
}

TEST_CASE("fair-tie win probability matches the closed form for iid opponents") {
  // With P(=b) = p and P(>b) = 0 for each of the n-1 opponents, the win
  // probability is (1 - (1-p)^n) / (n p).
  for (int n = 2; n <= 6; ++n) {
    for (int q = 1; q <= 7; ++q) {
      const Rat p(1, q + 1);
      auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                                 TieRule::FairTies, n, 2);
      OpponentPmfs pmfs(n - 1, BidPmf{1 - p, p, Rat(0)});
      const Rat w = win_probability(spec, 1, pmfs);
      Rat one_minus = 1;
      for (int k = 0; k < n; ++k) one_minus *= (1 - p);
      CHECK(w == (1 - one_minus) / (n * p));
      CHECK(w == subset_sum_win(n, p));
    }
  }
  // Frozen spot value: n = 4, p = 1/5.
  {
    auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                               TieRule::FairTies, 4, 2);
    OpponentPmfs pmfs(3, BidPmf{Rat(4, 5), Rat(1, 5), Rat(0)});
    CHECK(win_probability(spec, 1, pmfs) == Rat(369, 500));
    CHECK(subset_sum_win(4, Rat(1, 5)) == Rat(369, 500));
  }
}

TEST_CASE("win probability monotone in bid, zero at 0 without ties") {
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::NoWinnerOnTies, 3, 5);
  auto profile = symmetric_profile(halved(6), 3);
  auto pmfs = opponent_bid_pmf(spec, profile, 0);
  CHECK(win_probability(spec, 0, pmfs) == Rat(0));
  Rat prev = 0;
  for (int b = 0; b < spec.num_bids(); ++b) {
    const Rat w = win_probability(spec, b, pmfs);
    CHECK(w >= prev);
    prev = w;
  }
}

TEST_CASE("interim payoff by structure") {
  // First price: single opponent with mass 3/5 below the bid and no tie mass.
  auto fp = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                           TieRule::NoWinnerOnTies, 2, 4);
  OpponentPmfs opp{{Rat(3, 5), Rat(0), Rat(0), Rat(2, 5), Rat(0)}};
  CHECK(interim_payoff(fp, 4, 2, opp) == Rat(6, 5));

  // Same game scaled by delta = 7/3: payoffs scale linearly.
  auto fp_scaled = AuctionSpec::canonical_uniform(
      Structure::FirstPrice, TieRule::NoWinnerOnTies, 2, 4, Rat(7, 3));
  CHECK(interim_payoff(fp_scaled, 4, 2, opp) == Rat(6, 5) * Rat(7, 3));

  // All pay at the bottom: cannot win strictly, pays nothing.
  auto ap = AuctionSpec::canonical_uniform(Structure::AllPay,
                                           TieRule::NoWinnerOnTies, 2, 4);
  CHECK(interim_payoff(ap, 0, 0, opp) == Rat(0));

  // Second price with both players always bidding the maximum: the price
  // equals the value, so the top type earns zero.
  auto sp = AuctionSpec::canonical_uniform(Structure::SecondPrice,
                                           TieRule::FairTies, 2, 3);
  auto profile = symmetric_profile(make_beta({3, 3, 3, 3}), 2);
  auto sp_pmfs = opponent_bid_pmf(sp, profile, 0);
  CHECK(interim_payoff(sp, 3, 3, sp_pmfs) == Rat(0));
}

TEST_CASE("second-price payment against a brute-force outcome oracle") {
  // Enumerate the joint outcome space directly and accumulate the winner's
  // expected payoff, for several strategy profiles.
  auto sp = AuctionSpec::canonical_uniform(Structure::SecondPrice,
                                           TieRule::FairTies, 3, 3);
  std::vector<BiddingFunction> betas = {identity(4), make_beta({0, 1, 1, 2}),
                                        make_beta({1, 1, 2, 3})};
  for (const auto& mine : betas) {
    StrategyProfile profile{{mine, identity(4), make_beta({0, 1, 1, 2})}};
    auto pmfs = opponent_bid_pmf(sp, profile, 0);
    for (int v = 0; v < 4; ++v) {
      for (int b = 0; b < 4; ++b) {
        Rat oracle = 0;
        for (int v1 = 0; v1 < 4; ++v1) {
          for (int v2 = 0; v2 < 4; ++v2) {
            const Rat prob = sp.dist.pmf[v1] * sp.dist.pmf[v2];
            const int b1 = profile.players[1](v1);
            const int b2 = profile.players[2](v2);
            const int top_opp = std::max(b1, b2);
            if (top_opp > b) continue;
            if (top_opp == b) {
              const int ties = (b1 == b) + (b2 == b);
              oracle += prob * Rat(v - b, ties + 1);
            } else {
              oracle += prob * Rat(v - top_opp);
            }
          }
        }
        CHECK(interim_payoff(sp, v, b, pmfs) == oracle);
      }
    }
  }
}

TEST_CASE("equilibrium verification on closed-form benchmark profiles") {
  auto sp = AuctionSpec::canonical_uniform(Structure::SecondPrice,
                                           TieRule::FairTies, 2, 5);
  CHECK(is_equilibrium(sp, symmetric_profile(identity(6), 2)));

  auto fp = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                           TieRule::NoWinnerOnTies, 2, 10);
  CHECK(is_equilibrium(fp, symmetric_profile(halved(11), 2)));

  auto ap = AuctionSpec::canonical_uniform(Structure::AllPay,
                                           TieRule::FairTies, 2, 10);
  auto check = check_equilibrium(ap, symmetric_profile(halved(11), 2));
  CHECK_FALSE(check.is_equilibrium);
  REQUIRE(check.witness.has_value());
  CHECK(check.witness->gain > 0);
}

TEST_CASE("best response sets") {
  auto fp = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                           TieRule::NoWinnerOnTies, 2, 10);
  auto pmfs = opponent_bid_pmf(fp, symmetric_profile(halved(11), 2), 0);

  // A zero type can never profit from bidding.
  auto at_zero = best_response_set(fp, 0, pmfs);
  CHECK(std::find(at_zero.begin(), at_zero.end(), 0) != at_zero.end());

  // Odd types are indifferent between rounding down and up.
  for (int v = 1; v <= 9; v += 2) {
    auto brs = best_response_set(fp, v, pmfs);
    CHECK(std::find(brs.begin(), brs.end(), v / 2) != brs.end());
    CHECK(std::find(brs.begin(), brs.end(), v / 2 + 1) != brs.end());
  }

  // Hand-built two-bid game: the opponent always bids 0, fair ties, so a
  // positive type strictly prefers the winning bid of 1.
  auto tiny = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::FairTies, 2, 1);
  OpponentPmfs zero_opp{{Rat(1), Rat(0)}};
  // Payoff table: v=1, b=0 -> (1-0)*1/2 = 1/2; b=1 -> (1-1)*1 = 0.
  CHECK(best_response_set(tiny, 1, zero_opp) == std::vector<int>{0});
}

TEST_CASE("expected revenue: DP agrees with the joint-outcome oracle") {
  std::mt19937 rng(20240817);
  for (auto structure :
       {Structure::FirstPrice, Structure::SecondPrice, Structure::AllPay}) {
    for (auto ties : {TieRule::FairTies, TieRule::NoWinnerOnTies}) {
      for (int n = 2; n <= 3; ++n) {
        auto spec = AuctionSpec::canonical_uniform(structure, ties, n, 5);
        for (int trial = 0; trial < 6; ++trial) {
          StrategyProfile profile;
          for (int i = 0; i < n; ++i) {
            BiddingFunction beta;
            int prev = 0;
            for (int v = 0; v < 6; ++v) {
              prev = std::min(5, prev + static_cast<int>(rng() % 2));
              beta.bid_of.push_back(prev);
            }
            profile.players.push_back(beta);
          }
          CHECK(expected_revenue(spec, profile) ==
                expected_revenue_brute(spec, profile));
        }
      }
    }
  }
}

TEST_CASE("expected revenue examples") {
  for (auto structure :
       {Structure::FirstPrice, Structure::SecondPrice, Structure::AllPay}) {
    auto spec = AuctionSpec::canonical_uniform(structure, TieRule::FairTies, 2, 3);
    CHECK(expected_revenue(spec, symmetric_profile(make_beta({0, 0, 0, 0}), 2)) ==
          Rat(0));
  }
  auto ap = AuctionSpec::canonical_uniform(Structure::AllPay,
                                           TieRule::NoWinnerOnTies, 2, 2);
  CHECK(expected_revenue(ap, symmetric_profile(make_beta({0, 0, 1}), 2)) ==
        Rat(2, 3));

  auto fp = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                           TieRule::NoWinnerOnTies, 2, 10);
  CHECK(expected_revenue(fp, symmetric_profile(halved(11), 2)) ==
        expected_revenue_brute(fp, symmetric_profile(halved(11), 2)));
}

TEST_CASE("delta invariance of equilibrium decisions") {
  const std::vector<Rat> deltas{Rat(1), Rat(1, 100), Rat(7, 3)};
  std::mt19937 rng(7);
  for (auto structure :
       {Structure::FirstPrice, Structure::SecondPrice, Structure::AllPay}) {
    for (auto ties : {TieRule::FairTies, TieRule::NoWinnerOnTies}) {
      for (int trial = 0; trial < 4; ++trial) {
        BiddingFunction beta;
        int prev = 0;
        for (int v = 0; v < 6; ++v) {
          prev = std::min(5, prev + static_cast<int>(rng() % 2));
          beta.bid_of.push_back(prev);
        }
        std::vector<bool> verdicts;
        for (const Rat& d : deltas) {
          auto spec = AuctionSpec::canonical_uniform(structure, ties, 2, 5, d);
          verdicts.push_back(is_equilibrium(spec, symmetric_profile(beta, 2)));
        }
        CHECK(verdicts[0] == verdicts[1]);
        CHECK(verdicts[0] == verdicts[2]);
      }
    }
  }
}

TEST_CASE("interim payoff scales linearly in delta with fixed indices") {
  auto base = AuctionSpec::canonical_uniform(Structure::AllPay,
                                             TieRule::FairTies, 3, 4);
  auto scaled = AuctionSpec::canonical_uniform(Structure::AllPay,
                                               TieRule::FairTies, 3, 4, Rat(7, 3));
  auto profile = symmetric_profile(make_beta({0, 0, 1, 1, 2}), 3);
  auto pmfs = opponent_bid_pmf(base, profile, 0);
  for (int v = 0; v < 5; ++v)
    for (int b = 0; b < 5; ++b)
      CHECK(interim_payoff(scaled, v, b, pmfs) ==
            interim_payoff(base, v, b, pmfs) * Rat(7, 3));
}

TEST_CASE("spec JSON round-trips") {
  auto spec = AuctionSpec::canonical_uniform(Structure::AllPay,
                                             TieRule::NoWinnerOnTies, 3, 4,
                                             Rat(7, 3));
  auto back = spec_from_json(spec_to_json(spec));
  CHECK(back.structure == spec.structure);
  CHECK(back.tie_rule == spec.tie_rule);
  CHECK(back.n == spec.n);
  CHECK(back.values.delta == spec.values.delta);
  CHECK(back.values.x == spec.values.x);
  CHECK(back.dist.pmf == spec.dist.pmf);
  CHECK(back.bid_levels == spec.bid_levels);

  auto beta = make_beta({0, 2, 2, 3, 4});
  CHECK(bidding_function_from_json(bidding_function_to_json(beta)) == beta);
}

TEST_CASE("spec validation rejects malformed games") {
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::FairTies, 2, 2);
  spec.n = 1;
  CHECK_THROWS_AS(spec.validate(), SpecError);
  spec.n = 2;
  spec.dist.pmf[0] = 0;
  spec.dist.pmf[1] = Rat(2, 3);
  CHECK_THROWS_AS(spec.validate(), SpecError);
}
