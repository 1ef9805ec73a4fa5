#pragma once

#include <string>
#include <vector>

#include "auction/dominance.hpp"
#include "auction/game.hpp"

namespace auction {

enum class EnumerationScope {
  MonotoneUndominated,  // monotone selections from the allowed sets
  FullyExhaustive       // every selection; validation mode for tiny games
};

struct EnumerationResult {
  std::vector<StrategyProfile> equilibria;  // sorted ascending
  bool exists = false;
  bool conclusive = true;  // false when the node budget ran out
  EnumerationScope scope = EnumerationScope::MonotoneUndominated;
  long long nodes = 0;
  long long pruned = 0;
  long long verified = 0;
  double wall_seconds = 0;
  std::vector<std::string> notes;
};

struct EnumerationOptions {
  EnumerationScope scope = EnumerationScope::MonotoneUndominated;
  long long budget = 100'000'000;  // nodes visited + branches pruned
  bool collapse_permutations = false;
  int jobs = 1;  // reserved; search runs on one thread per process today
};

// Backtracking search for every pure-strategy equilibrium whose functions
// lie in the reduced game. Players 0..n-2 range over candidate functions
// with interval pruning against the undecided players; the last player is
// completed through exact best-response sets. Full profiles are verified
// against unrestricted deviations.
EnumerationResult enumerate_pure_equilibria(
    const AuctionSpec& spec, const ReducedGame& reduced,
    const EnumerationOptions& options = {});

struct ExistenceCell {
  Structure structure;
  TieRule tie_rule;
  int n = 0;
  int num_values = 0;
  bool exists = false;
  bool conclusive = true;
};

// Canonical uniform game, full reduction, monotone scope.
ExistenceCell existence_cell(Structure structure, TieRule tie_rule, int n,
                             int x, const EnumerationOptions& options = {});

// Three-bidder first-price profile without a winner on ties that tracks
// the two-thirds line; defined when x is not a multiple of 3 and x >= 4.
// Verified before being returned; throws on verification failure.
StrategyProfile construct_asymmetric_fp3(int x);

// CSV rows (value, one bid column per player, exact (n-1)/n * v
// reference) for plotting a profile against the proportional line.
std::string export_figure1_data(const AuctionSpec& spec,
                                const StrategyProfile& profile);

}  // namespace auction
