#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "auction/rational.hpp"

namespace auction {

enum class Structure { FirstPrice, SecondPrice, AllPay };
enum class TieRule { FairTies, NoWinnerOnTies };

std::string to_string(Structure s);
std::string to_string(TieRule t);

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evenly spaced value grid {0, delta, 2*delta, ..., x*delta}.
struct GridSpec {
  Rat delta{1};
  int x = 0;

  int size() const { return x + 1; }
  Rat level(int index) const { return delta * index; }
};

// Probability mass per value index; entries must be strictly positive and
// sum to exactly 1.
struct ValueDistribution {
  std::vector<Rat> pmf;

  static ValueDistribution uniform(int size);
  void validate(int size) const;
};

// Full game description. Bids are an explicit strictly increasing list of
// levels: for canonical games it equals the value grid; continuum-built
// games use the image of the continuous bidding function instead.
struct AuctionSpec {
  Structure structure = Structure::FirstPrice;
  TieRule tie_rule = TieRule::FairTies;
  int n = 2;
  GridSpec values;
  ValueDistribution dist;
  std::vector<Rat> bid_levels;

  static AuctionSpec canonical(Structure s, TieRule t, int n, int x,
                               Rat delta = Rat(1));
  static AuctionSpec canonical_uniform(Structure s, TieRule t, int n, int x,
                                       Rat delta = Rat(1));

  int num_values() const { return values.size(); }
  int num_bids() const { return static_cast<int>(bid_levels.size()); }
  Rat value_level(int v) const { return values.level(v); }
  Rat bid_level(int b) const { return bid_levels[b]; }

  // True when the bid levels coincide with the value grid.
  bool canonical_grids() const;

  void validate() const;
};

// Map from value index to bid index; the strategy object.
struct BiddingFunction {
  std::vector<int> bid_of;

  int operator()(int v) const { return bid_of[v]; }
  int size() const { return static_cast<int>(bid_of.size()); }
  bool monotone() const;
  // Largest one-step rise; 0 on constant functions. A symmetric no-ties
  // equilibrium never exceeds 1 (no-jumps).
  int max_step() const;

  auto operator<=>(const BiddingFunction&) const = default;
};

struct StrategyProfile {
  std::vector<BiddingFunction> players;

  bool symmetric() const;
  auto operator<=>(const StrategyProfile&) const = default;
};

StrategyProfile symmetric_profile(const BiddingFunction& beta, int n);

void check_profile(const AuctionSpec& spec, const StrategyProfile& profile);

// JSON round-trip of the documented schemas.
std::string spec_to_json(const AuctionSpec& spec);
AuctionSpec spec_from_json(const std::string& text);
std::string bidding_function_to_json(const BiddingFunction& beta);
BiddingFunction bidding_function_from_json(const std::string& text);

}  // namespace auction
