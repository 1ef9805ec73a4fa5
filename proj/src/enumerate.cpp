#include "auction/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "auction/payoff.hpp"

namespace auction {

namespace {

std::vector<BiddingFunction> every_selection(
    const std::vector<std::vector<int>>& allowed) {
  std::vector<std::vector<int>> out{{}};
  for (const auto& set : allowed) {
    std::vector<std::vector<int>> next;
    next.reserve(out.size() * set.size());
    for (const auto& prefix : out)
      for (int b : set) {
        auto ext = prefix;
        ext.push_back(b);
        next.push_back(std::move(ext));
      }
    out = std::move(next);
  }
  std::vector<BiddingFunction> funcs;
  funcs.reserve(out.size());
  for (auto& f : out) funcs.push_back(BiddingFunction{std::move(f)});
  return funcs;
}

std::vector<BiddingFunction> candidates(
    EnumerationScope scope, const std::vector<std::vector<int>>& allowed) {
  return scope == EnumerationScope::MonotoneUndominated
             ? monotone_selections(allowed)
             : every_selection(allowed);
}

// P(bid <= t) bounds over the candidate set of one undecided player.
struct CdfInterval {
  std::vector<Rat> lo, up;
};

CdfInterval candidate_cdf_bounds(const AuctionSpec& spec,
                                 const std::vector<std::vector<int>>& allowed,
                                 EnumerationScope scope) {
  if (scope == EnumerationScope::MonotoneUndominated) {
    auto cb = monotone_cdf_bounds(spec, allowed);
    return {cb.lower, cb.upper};
  }
  const int B = spec.num_bids();
  CdfInterval out{std::vector<Rat>(B, Rat(0)), std::vector<Rat>(B, Rat(0))};
  for (int t = 0; t < B; ++t)
    for (int v = 0; v < spec.num_values(); ++v) {
      if (allowed[v].back() <= t) out.lo[t] += spec.dist.pmf[v];
      if (allowed[v].front() <= t) out.up[t] += spec.dist.pmf[v];
    }
  return out;
}

// P(bid <= t) of one fixed bidding function under the value distribution.
std::vector<Rat> pushforward_cdf(const AuctionSpec& spec,
                                 const BiddingFunction& f) {
  std::vector<Rat> le(spec.num_bids(), Rat(0));
  for (int v = 0; v < spec.num_values(); ++v) le[f(v)] += spec.dist.pmf[v];
  for (int t = 1; t < spec.num_bids(); ++t) le[t] += le[t - 1];
  return le;
}

struct Searcher {
  const AuctionSpec& spec;
  const ReducedGame& reduced;
  const EnumerationOptions& opt;
  EnumerationResult& result;

  std::vector<std::vector<BiddingFunction>> cands;  // players 0..n-2
  std::vector<std::vector<std::vector<Rat>>> cand_cdf;
  CdfInterval free_bounds;  // identical for every undecided player
  std::vector<int> chosen;  // candidate index per fixed player
  bool aborted = false;

  Searcher(const AuctionSpec& s, const ReducedGame& r,
           const EnumerationOptions& o, EnumerationResult& res)
      : spec(s), reduced(r), opt(o), result(res) {
    for (int p = 0; p + 1 < spec.n; ++p) {
      cands.push_back(candidates(opt.scope, reduced.allowed[p]));
      cand_cdf.emplace_back();
      for (const auto& f : cands.back())
        cand_cdf.back().push_back(pushforward_cdf(spec, f));
    }
    free_bounds =
        candidate_cdf_bounds(spec, reduced.allowed[spec.n - 1], opt.scope);
  }

  bool budget_ok() {
    if (result.nodes + result.pruned <= opt.budget) return true;
    if (!aborted) {
      aborted = true;
      result.conclusive = false;
      result.notes.push_back("node budget exhausted; result is a lower "
                             "bound on the equilibrium set");
    }
    return false;
  }

  Rat below_le(int p, int t) const {
    return t < 0 ? Rat(0) : cand_cdf[p][chosen[p]][t];
  }

  // Win probability bounds for a fixed player bidding b: winning needs
  // every opponent at or below b, winning outright suffices with every
  // opponent strictly below. Valid under both tie rules.
  Rat win_up(int player, int b, int fixed) const {
    Rat w(1);
    for (int q = 0; q < fixed; ++q)
      if (q != player) w *= cand_cdf[q][chosen[q]][b];
    for (int q = fixed; q < spec.n; ++q)
      if (q != player) w *= free_bounds.up[b];
    return w;
  }
  Rat win_lo(int player, int b, int fixed) const {
    Rat w(1);
    for (int q = 0; q < fixed; ++q)
      if (q != player) w *= below_le(q, b - 1);
    for (int q = fixed; q < spec.n; ++q)
      if (q != player) w *= b == 0 ? Rat(0) : free_bounds.lo[b - 1];
    return w;
  }

  Rat payoff_up(int player, int v, int b, int fixed) const {
    const Rat vl = spec.value_level(v), bl = spec.bid_level(b);
    if (spec.structure == Structure::AllPay)
      return vl * win_up(player, b, fixed) - bl;
    const Rat margin = vl - bl;
    return margin * (margin >= 0 ? win_up(player, b, fixed)
                                 : win_lo(player, b, fixed));
  }
  Rat payoff_lo(int player, int v, int b, int fixed) const {
    const Rat vl = spec.value_level(v), bl = spec.bid_level(b);
    if (spec.structure == Structure::AllPay)
      return vl * win_lo(player, b, fixed) - bl;
    const Rat margin = vl - bl;
    return margin * (margin >= 0 ? win_lo(player, b, fixed)
                                 : win_up(player, b, fixed));
  }

  // Some fixed player has a deviation that pays off no matter how the
  // undecided players behave.
  bool certain_deviation(int fixed) const {
    if (spec.structure == Structure::SecondPrice) return false;
    for (int p = 0; p < fixed; ++p) {
      const auto& f = cands[p][chosen[p]];
      for (int v = 0; v < spec.num_values(); ++v) {
        const Rat stay = payoff_up(p, v, f(v), fixed);
        for (int d = 0; d < spec.num_bids(); ++d)
          if (d != f(v) && payoff_lo(p, v, d, fixed) > stay) return true;
      }
    }
    return false;
  }

  void complete_last_player() {
    StrategyProfile profile;
    for (int p = 0; p + 1 < spec.n; ++p)
      profile.players.push_back(cands[p][chosen[p]]);
    profile.players.emplace_back();  // placeholder for the pmf query
    profile.players.back().bid_of.assign(spec.num_values(), 0);
    const auto opp = opponent_bid_pmf(spec, profile, spec.n - 1);

    std::vector<std::vector<int>> sets(spec.num_values());
    for (int v = 0; v < spec.num_values(); ++v) {
      auto br = best_response_set(spec, v, opp);
      const auto& allow = reduced.allowed[spec.n - 1][v];
      for (int b : br)
        if (std::find(allow.begin(), allow.end(), b) != allow.end())
          sets[v].push_back(b);
      if (sets[v].empty()) return;
    }
    for (auto& f : candidates(opt.scope, sets)) {
      if (!budget_ok()) return;
      ++result.nodes;
      profile.players.back() = std::move(f);
      if (is_equilibrium(spec, profile)) {
        ++result.verified;
        result.equilibria.push_back(profile);
      }
    }
  }

  void dfs(int p) {
    if (aborted) return;
    if (p == spec.n - 1) {
      complete_last_player();
      return;
    }
    chosen.push_back(0);
    for (std::size_t k = 0; k < cands[p].size(); ++k) {
      if (!budget_ok()) break;
      chosen.back() = static_cast<int>(k);
      ++result.nodes;
      if (certain_deviation(p + 1)) {
        ++result.pruned;
        continue;
      }
      dfs(p + 1);
    }
    chosen.pop_back();
  }
};

}  // namespace

EnumerationResult enumerate_pure_equilibria(const AuctionSpec& spec,
                                            const ReducedGame& reduced,
                                            const EnumerationOptions& options) {
  spec.validate();
  if (static_cast<int>(reduced.allowed.size()) != spec.n)
    throw SpecError("reduced game does not match the spec's player count");
  const auto t0 = std::chrono::steady_clock::now();

  EnumerationResult result;
  result.scope = options.scope;
  Searcher searcher(spec, reduced, options, result);
  searcher.dfs(0);

  std::sort(result.equilibria.begin(), result.equilibria.end());
  if (options.collapse_permutations) {
    std::vector<StrategyProfile> kept;
    std::vector<std::vector<BiddingFunction>> seen;
    for (const auto& prof : result.equilibria) {
      auto key = prof.players;
      std::sort(key.begin(), key.end());
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
        seen.push_back(std::move(key));
        kept.push_back(prof);
      }
    }
    result.equilibria = std::move(kept);
  }
  result.exists = !result.equilibria.empty();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

ExistenceCell existence_cell(Structure structure, TieRule tie_rule, int n,
                             int x, const EnumerationOptions& options) {
  auto spec = AuctionSpec::canonical_uniform(structure, tie_rule, n, x);
  auto reduced = iterate_strict_dominance(spec, round1_weak_dominance(spec));
  auto result = enumerate_pure_equilibria(spec, reduced, options);
  return {structure, tie_rule, n,         x + 1,
          result.exists, result.conclusive};
}

StrategyProfile construct_asymmetric_fp3(int x) {
  if (x < 4 || x % 3 == 0)
    throw SpecError(
        "the three-bidder construction needs x >= 4 and x not a multiple "
        "of 3");
  const int S = x + 1;
  auto at = [&](std::vector<int>& f, int v, int b) {
    if (v >= 0 && v < S) f[v] = b;
  };
  std::vector<int> b1(S, 0), b2(S, 0), b3(S, 0);
  at(b2, 2, 1);
  at(b2, 3, 2);
  at(b2, 4, 2);
  at(b3, 2, 1);
  at(b3, 3, 2);
  for (int m = 3; m - 2 <= x; m += 3) {
    const int level = 2 * m / 3;
    at(b1, m - 1, level - 1);
    at(b1, m, level);
    at(b1, m + 1, level + 1);
    if (m >= 6) {
      at(b2, m - 1, level);
      at(b2, m, level);
      at(b2, m + 1, level);
      at(b3, m - 2, level - 1);
      at(b3, m - 1, level - 1);
      at(b3, m, level - 1);
    }
  }
  StrategyProfile profile{{BiddingFunction{b1}, BiddingFunction{b2},
                           BiddingFunction{b3}}};
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::NoWinnerOnTies, 3, x);
  auto check = check_equilibrium(spec, profile);
  if (!check.is_equilibrium)
    throw std::logic_error(
        "three-bidder construction failed verification at value " +
        std::to_string(check.witness ? check.witness->value : -1));
  return profile;
}

std::string export_figure1_data(const AuctionSpec& spec,
                                const StrategyProfile& profile) {
  std::string csv = "value";
  for (int p = 0; p < spec.n; ++p)
    csv += ",bidder" + std::to_string(p + 1);
  csv += ",reference\n";
  const Rat slope = Rat(spec.n - 1, spec.n);
  for (int v = 0; v < spec.num_values(); ++v) {
    csv += to_string(spec.value_level(v));
    for (int p = 0; p < spec.n; ++p)
      csv += "," + to_string(spec.bid_level(profile.players[p](v)));
    csv += "," + to_string(Rat(slope * spec.value_level(v))) + "\n";
  }
  return csv;
}

}  // namespace auction
