#pragma once

#include <string>
#include <vector>

#include "auction/game.hpp"
#include "auction/payoff.hpp"

namespace auction {

struct SearchStats {
  long long nodes = 0;
  long long leaves = 0;
  long long pruned = 0;
  long long verified = 0;
};

enum class CertificateKind {
  Exhausted,           // every branch explored, leaves verified
  AnalyticThreshold,   // result pinned by a dominance argument, no search
  Inconclusive         // search cap exceeded, no claim either way
};

struct Certificate {
  CertificateKind kind = CertificateKind::Exhausted;
  SearchStats stats;
  std::string reference;
};

struct SymmetricSolveReport {
  std::vector<BiddingFunction> equilibria;  // sorted ascending
  Certificate certificate;
  std::vector<std::string> branch_log;
  std::vector<std::string> notes;
};

struct SymmetricSolveOptions {
  int fair_ties_cap = 16;  // max x for the with-ties exhaustive search
  bool prune = true;       // prefix pruning; off for cross-validation runs
};

// Second-price games need no search: with fair ties the truthful function
// is the unique symmetric equilibrium; without a winner on ties every
// per-value choice from {v, v+1 capped at the top} is one, and the two
// extremal members are reported.
SymmetricSolveReport solve_second_price(const AuctionSpec& spec);

// First-price and all-pay, NoWinnerOnTies: depth-first search over the
// {stay, +1} chain of monotone no-jump functions, prefix-pruned by
// already-determined deviations, leaves fully verified. Exhaustion
// certifies non-existence.
SymmetricSolveReport solve_symmetric_no_ties(
    const AuctionSpec& spec, const SymmetricSolveOptions& options = {});

// First-price and all-pay, FairTies: depth-first search over all monotone
// functions within the reduced per-value bid sets (jumps permitted),
// pruned via strictly-lower-bid deviations that become determined once the
// running top bid moves past them. Caps at options.fair_ties_cap and
// reports Inconclusive beyond it.
SymmetricSolveReport solve_symmetric_with_ties(
    const AuctionSpec& spec, const SymmetricSolveOptions& options = {});

// Dispatch on structure and tie rule.
SymmetricSolveReport solve_symmetric(const AuctionSpec& spec,
                                     const SymmetricSolveOptions& options = {});

EquilibriumCheck verify_symmetric(const AuctionSpec& spec,
                                  const BiddingFunction& beta);

// Exact test of bid >= (2 - sqrt(3)) * value, by squaring. Above this
// threshold a fair-ties two-player equilibrium cannot jump.
bool clears_jump_threshold(const Rat& value, const Rat& bid);

}  // namespace auction
