#pragma once

#include <string>
#include <vector>

#include "auction/game.hpp"
#include "auction/payoff.hpp"

namespace auction {

struct Deletion {
  int player = 0;
  int value = 0;
  int bid = 0;
  int round = 0;  // 1 = weak-dominance stage, >= 2 = strict-dominance sweeps
  std::string reason;
};

// Per-player, per-value surviving bid sets (sorted ascending) plus the
// ordered deletion trace.
struct ReducedGame {
  std::vector<std::vector<std::vector<int>>> allowed;
  std::vector<Deletion> trace;
  std::vector<std::string> notes;  // e.g. exact-tier budget downgrades

  const std::vector<int>& bids(int player, int value) const {
    return allowed[player][value];
  }
};

// Stage 1 of the Dekel-Fudenberg procedure: the closed-form weak-dominance
// tables (bids above valuations and their tie-rule refinements). Requires a
// canonical spec (bid levels equal to the value grid).
ReducedGame round1_weak_dominance(const AuctionSpec& spec);

struct DominanceOptions {
  // Exact tier runs only when the product of opponents' monotone selection
  // counts stays within this budget; otherwise that player's checks fall
  // back to the interval tier (recorded in notes, never unsound).
  long long exact_budget = 20000;
  bool use_exact_tier = true;
};

// Stage 2: iterated strict dominance over surviving bids, to a fixed point.
ReducedGame iterate_strict_dominance(const AuctionSpec& spec,
                                     ReducedGame reduced,
                                     const DominanceOptions& options = {});

struct StrategyCounts {
  std::vector<BigInt> pre;   // per player, before any reduction
  std::vector<BigInt> post;  // per player, product of surviving set sizes
};

StrategyCounts strategy_count(const AuctionSpec& spec,
                              const ReducedGame& reduced);

// --- Monotone-selection utilities shared with the enumerator. ---

// All monotone (non-decreasing) bid selections from per-value allowed sets.
// Stops early and returns an empty list if more than `cap` would be produced
// (cap < 0 means unlimited).
std::vector<BiddingFunction> monotone_selections(
    const std::vector<std::vector<int>>& allowed, long long cap = -1);

BigInt count_monotone_selections(const std::vector<std::vector<int>>& allowed);

// Pointwise-minimal / maximal monotone selections; empty if none exists.
std::vector<int> lex_min_monotone(const std::vector<std::vector<int>>& allowed);
std::vector<int> lex_max_monotone(const std::vector<std::vector<int>>& allowed);

// CDF bounds over all monotone selections: element t is the min (resp. max)
// of P(bid <= t) attainable by a monotone selection from the allowed sets.
struct CdfBounds {
  std::vector<Rat> lower, upper;
};
CdfBounds monotone_cdf_bounds(const AuctionSpec& spec,
                              const std::vector<std::vector<int>>& allowed);

}  // namespace auction
