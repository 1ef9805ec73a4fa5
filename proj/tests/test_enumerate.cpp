#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "auction/enumerate.hpp"
#include "auction/payoff.hpp"
#include "auction/symmetric.hpp"

using namespace auction;

namespace {

ReducedGame full_reduction(const AuctionSpec& spec) {
  return iterate_strict_dominance(spec, round1_weak_dominance(spec));
}

// Plain reference search: every pair of bidding functions on the full
// grid, mutual best responses decided by interim payoffs, keeping only
// profiles that are monotone and inside the round-1 sets (the enumerator's
// documented scope).
std::vector<StrategyProfile> brute_pairs(const AuctionSpec& spec) {
  const int S = spec.num_values(), B = spec.num_bids();
  std::vector<std::vector<int>> funcs;
  std::vector<int> f(S, 0);
  while (true) {
    funcs.push_back(f);
    int pos = S - 1;
    while (pos >= 0 && f[pos] == B - 1) f[pos--] = 0;
    if (pos < 0) break;
    ++f[pos];
  }
  auto r1 = round1_weak_dominance(spec);
  auto in_scope = [&](const BiddingFunction& g) {
    if (!g.monotone()) return false;
    for (int v = 0; v < S; ++v) {
      const auto& set = r1.bids(0, v);
      if (std::find(set.begin(), set.end(), g(v)) == set.end()) return false;
    }
    return true;
  };
  std::vector<StrategyProfile> out;
  for (const auto& a : funcs)
    for (const auto& b : funcs) {
      StrategyProfile prof{{BiddingFunction{a}, BiddingFunction{b}}};
      if (in_scope(prof.players[0]) && in_scope(prof.players[1]) &&
          is_equilibrium(spec, prof))
        out.push_back(prof);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("enumerator equals plain exhaustive pair search on small grids") {
  for (auto structure :
       {Structure::FirstPrice, Structure::SecondPrice, Structure::AllPay}) {
    for (auto ties : {TieRule::FairTies, TieRule::NoWinnerOnTies}) {
      for (int x = 1; x <= 3; ++x) {
        CAPTURE(static_cast<int>(structure));
        CAPTURE(static_cast<int>(ties));
        CAPTURE(x);
        auto spec = AuctionSpec::canonical_uniform(structure, ties, 2, x);
        auto got = enumerate_pure_equilibria(spec, full_reduction(spec));
        CHECK(got.conclusive);
        CHECK(got.exists == !got.equilibria.empty());
        CHECK(got.equilibria == brute_pairs(spec));
      }
    }
  }
}

TEST_CASE("exhaustive scope over round-1 sets finds the same equilibria as "
          "the monotone scope over the reduced game") {
  for (auto structure :
       {Structure::FirstPrice, Structure::SecondPrice, Structure::AllPay}) {
    for (auto ties : {TieRule::FairTies, TieRule::NoWinnerOnTies}) {
      for (int x = 1; x <= 3; ++x) {
        CAPTURE(static_cast<int>(structure));
        CAPTURE(static_cast<int>(ties));
        CAPTURE(x);
        auto spec = AuctionSpec::canonical_uniform(structure, ties, 2, x);
        EnumerationOptions wide;
        wide.scope = EnumerationScope::FullyExhaustive;
        auto everything = enumerate_pure_equilibria(
            spec, round1_weak_dominance(spec), wide);
        auto reduced = enumerate_pure_equilibria(spec, full_reduction(spec));
        // The wide scope may pick up non-monotone profiles; monotone ones
        // must agree exactly.
        std::vector<StrategyProfile> wide_monotone;
        for (const auto& p : everything.equilibria) {
          bool mono = true;
          for (const auto& g : p.players) mono &= g.monotone();
          if (mono) wide_monotone.push_back(p);
        }
        CHECK(wide_monotone == reduced.equilibria);
      }
    }
  }
}

TEST_CASE("existence grid, fast cells") {
  // Without a winner on ties.
  CHECK(existence_cell(Structure::AllPay, TieRule::NoWinnerOnTies, 2, 5)
            .exists);
  CHECK(!existence_cell(Structure::AllPay, TieRule::NoWinnerOnTies, 2, 6)
             .exists);
  CHECK(!existence_cell(Structure::AllPay, TieRule::NoWinnerOnTies, 2, 7)
             .exists);
  CHECK(existence_cell(Structure::AllPay, TieRule::NoWinnerOnTies, 2, 8)
            .exists);
  CHECK(existence_cell(Structure::AllPay, TieRule::NoWinnerOnTies, 3, 5)
            .exists);
  CHECK(!existence_cell(Structure::AllPay, TieRule::NoWinnerOnTies, 3, 6)
             .exists);
  // Fair ties.
  CHECK(existence_cell(Structure::AllPay, TieRule::FairTies, 2, 5).exists);
  CHECK(!existence_cell(Structure::AllPay, TieRule::FairTies, 2, 6).exists);
  CHECK(!existence_cell(Structure::AllPay, TieRule::FairTies, 2, 7).exists);
  CHECK(existence_cell(Structure::AllPay, TieRule::FairTies, 2, 8).exists);
}

TEST_CASE("any second-price game has the truthful equilibrium") {
  for (auto ties : {TieRule::FairTies, TieRule::NoWinnerOnTies}) {
    auto spec =
        AuctionSpec::canonical_uniform(Structure::SecondPrice, ties, 2, 4);
    auto r = enumerate_pure_equilibria(spec, full_reduction(spec));
    CHECK(r.exists);
    StrategyProfile truthful{
        {BiddingFunction{{0, 1, 2, 3, 4}}, BiddingFunction{{0, 1, 2, 3, 4}}}};
    CHECK(std::find(r.equilibria.begin(), r.equilibria.end(), truthful) !=
          r.equilibria.end());
  }
}

TEST_CASE("symmetric profiles in the enumeration match the symmetric "
          "solver") {
  for (auto structure : {Structure::FirstPrice, Structure::AllPay}) {
    for (auto ties : {TieRule::FairTies, TieRule::NoWinnerOnTies}) {
      for (int x = 2; x <= 5; ++x) {
        CAPTURE(static_cast<int>(structure));
        CAPTURE(static_cast<int>(ties));
        CAPTURE(x);
        auto spec = AuctionSpec::canonical_uniform(structure, ties, 2, x);
        auto enumerated = enumerate_pure_equilibria(spec, full_reduction(spec));
        std::vector<BiddingFunction> sym;
        for (const auto& p : enumerated.equilibria)
          if (p.symmetric()) sym.push_back(p.players[0]);
        CHECK(sym == solve_symmetric(spec).equilibria);
      }
    }
  }
}

TEST_CASE("tiny budget yields an explicit inconclusive result") {
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::NoWinnerOnTies, 2, 5);
  EnumerationOptions opt;
  opt.budget = 3;
  auto r = enumerate_pure_equilibria(spec, full_reduction(spec), opt);
  CHECK(!r.conclusive);
  CHECK(!r.notes.empty());
}

TEST_CASE("permutation collapse keeps one representative per orbit") {
  auto spec = AuctionSpec::canonical_uniform(Structure::AllPay,
                                             TieRule::NoWinnerOnTies, 2, 5);
  auto full = enumerate_pure_equilibria(spec, full_reduction(spec));
  EnumerationOptions opt;
  opt.collapse_permutations = true;
  auto collapsed = enumerate_pure_equilibria(spec, full_reduction(spec), opt);
  CHECK(collapsed.equilibria.size() <= full.equilibria.size());
  for (const auto& prof : full.equilibria) {
    bool represented = false;
    for (const auto& kept : collapsed.equilibria) {
      auto a = prof.players, b = kept.players;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      represented |= a == b;
    }
    CHECK(represented);
  }
}

TEST_CASE("three-bidder construction: exact equilibrium near the "
          "two-thirds line") {
  auto profile = construct_asymmetric_fp3(13);
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::NoWinnerOnTies, 3, 13);
  CHECK(is_equilibrium(spec, profile));

  CHECK(profile.players[0](3) == 2);
  CHECK(profile.players[0](6) == 4);
  CHECK(profile.players[0](9) == 6);
  CHECK(profile.players[0](12) == 8);

  for (int p = 0; p < 3; ++p)
    for (int v = 0; v <= 13; ++v) {
      const Rat diff =
          spec.bid_level(profile.players[p](v)) - Rat(2 * v, 3);
      CHECK(diff <= 2);
      CHECK(diff >= -2);
    }

  CHECK_THROWS_AS(construct_asymmetric_fp3(12), SpecError);
  CHECK_THROWS_AS(construct_asymmetric_fp3(3), SpecError);

  // The pattern generalises one residue class at a time: one step above a
  // multiple of 3 it verifies, one step below the top type of the second
  // bidder prefers a lower level and construction fails loudly.
  for (int x : {4, 5, 7, 10, 13}) {
    CAPTURE(x);
    CHECK(construct_asymmetric_fp3(x).players.size() == 3);
  }
  for (int x : {8, 11, 14}) {
    CAPTURE(x);
    CHECK_THROWS_AS(construct_asymmetric_fp3(x), std::logic_error);
  }
}

TEST_CASE("figure data export shape and anchors") {
  auto profile = construct_asymmetric_fp3(13);
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::NoWinnerOnTies, 3, 13);
  auto csv = export_figure1_data(spec, profile);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < csv.size()) {
    auto end = csv.find('\n', start);
    lines.push_back(csv.substr(start, end - start));
    start = end + 1;
  }
  REQUIRE(lines.size() == 15);  // header plus one row per value
  CHECK(lines[0] == "value,bidder1,bidder2,bidder3,reference");
  CHECK(lines[1] == "0,0,0,0,0");
  CHECK(std::count(lines[1].begin(), lines[1].end(), ',') == 4);
  CHECK(lines[13].substr(0, 5) == "12,8,");  // bidder 1 bids 8 at v=12
}
