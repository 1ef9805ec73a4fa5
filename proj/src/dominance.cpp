#include "auction/dominance.hpp"
#include <tuple>

#include <algorithm>
#include <functional>

namespace auction {

namespace {

int max_bid_index(const std::vector<std::vector<int>>& allowed) {
  int top = 0;
  for (const auto& set : allowed)
    for (int b : set) top = std::max(top, b);
  return top;
}

// ok[v][b]: a monotone selection exists for values v.. with first bid >= b.
std::vector<std::vector<char>> completion_table(
    const std::vector<std::vector<int>>& allowed) {
  const int S = static_cast<int>(allowed.size());
  const int B = max_bid_index(allowed) + 1;
  std::vector<std::vector<char>> ok(S + 1, std::vector<char>(B + 1, 0));
  std::fill(ok[S].begin(), ok[S].end(), 1);
  for (int v = S - 1; v >= 0; --v) {
    std::vector<char> good(B, 0);
    for (int a : allowed[v])
      if (ok[v + 1][a]) good[a] = 1;
    char any = 0;
    for (int b = B - 1; b >= 0; --b) {
      if (good[b]) any = 1;
      ok[v][b] = any;
    }
    ok[v][B] = 0;
  }
  return ok;
}

}  // namespace

std::vector<BiddingFunction> monotone_selections(
    const std::vector<std::vector<int>>& allowed, long long cap) {
  const auto ok = completion_table(allowed);
  const int S = static_cast<int>(allowed.size());
  std::vector<BiddingFunction> out;
  std::vector<int> current;
  bool overflow = false;
  std::function<void(int, int)> dfs = [&](int v, int floor_bid) {
    if (overflow) return;
    if (v == S) {
      if (cap >= 0 && static_cast<long long>(out.size()) >= cap) {
        overflow = true;
        return;
      }
      out.push_back(BiddingFunction{current});
      return;
    }
    for (int a : allowed[v]) {
      if (a < floor_bid || !ok[v + 1][a]) continue;
      current.push_back(a);
      dfs(v + 1, a);
      current.pop_back();
    }
  };
  dfs(0, 0);
  if (overflow) return {};
  return out;
}

BigInt count_monotone_selections(const std::vector<std::vector<int>>& allowed) {
  const int S = static_cast<int>(allowed.size());
  const int B = max_bid_index(allowed) + 1;
  // ways[b] = number of monotone selections of the processed prefix whose
  // last bid is exactly b.
  std::vector<BigInt> ways(B, 0);
  bool first = true;
  for (int v = 0; v < S; ++v) {
    std::vector<BigInt> next(B, 0);
    // prefix sums of ways over last bid <= a
    BigInt acc = 0;
    std::vector<BigInt> cum(B, 0);
    for (int b = 0; b < B; ++b) {
      acc += ways[b];
      cum[b] = acc;
    }
    for (int a : allowed[v]) next[a] = first ? BigInt(1) : cum[a];
    ways = std::move(next);
    first = false;
  }
  BigInt total = 0;
  for (const BigInt& w : ways) total += w;
  return total;
}

std::vector<int> lex_min_monotone(const std::vector<std::vector<int>>& allowed) {
  const auto ok = completion_table(allowed);
  std::vector<int> out;
  int prev = 0;
  for (std::size_t v = 0; v < allowed.size(); ++v) {
    int chosen = -1;
    for (int a : allowed[v]) {
      if (a >= prev && ok[v + 1][a]) {
        chosen = a;
        break;
      }
    }
    if (chosen < 0) return {};
    out.push_back(chosen);
    prev = chosen;
  }
  return out;
}

std::vector<int> lex_max_monotone(const std::vector<std::vector<int>>& allowed) {
  const auto ok = completion_table(allowed);
  std::vector<int> out;
  int prev = 0;
  for (std::size_t v = 0; v < allowed.size(); ++v) {
    int chosen = -1;
    for (auto it = allowed[v].rbegin(); it != allowed[v].rend(); ++it) {
      if (*it >= prev && ok[v + 1][*it]) {
        chosen = *it;
        break;
      }
    }
    if (chosen < 0) return {};
    out.push_back(chosen);
    prev = chosen;
  }
  return out;
}

CdfBounds monotone_cdf_bounds(const AuctionSpec& spec,
                              const std::vector<std::vector<int>>& allowed) {
  const int B = spec.num_bids();
  const auto lo_fn = lex_min_monotone(allowed);
  const auto hi_fn = lex_max_monotone(allowed);
  if (lo_fn.empty() || hi_fn.empty())
    throw SpecError("allowed sets admit no monotone selection");
  CdfBounds bounds;
  bounds.lower.assign(B, Rat(0));
  bounds.upper.assign(B, Rat(0));
  // The pointwise-minimal selection maximises every CDF value, the
  // pointwise-maximal one minimises it.
  for (int v = 0; v < spec.num_values(); ++v) {
    bounds.upper[lo_fn[v]] += spec.dist.pmf[v];
    bounds.lower[hi_fn[v]] += spec.dist.pmf[v];
  }
  for (int b = 1; b < B; ++b) {
    bounds.upper[b] += bounds.upper[b - 1];
    bounds.lower[b] += bounds.lower[b - 1];
  }
  return bounds;
}

ReducedGame round1_weak_dominance(const AuctionSpec& spec) {
  spec.validate();
  if (!spec.canonical_grids())
    throw SpecError("round-1 reduction requires a canonical spec");
  const int x = spec.values.x;
  std::vector<std::vector<int>> allowed(x + 1);
  auto range = [](int lo, int hi) {  // inclusive
    std::vector<int> out;
    for (int b = lo; b <= hi; ++b) out.push_back(b);
    return out;
  };
  for (int v = 0; v <= x; ++v) {
    switch (spec.structure) {
      case Structure::FirstPrice:
        if (v == 0)
          allowed[v] = {0};
        else if (v == 1 && spec.tie_rule == TieRule::NoWinnerOnTies)
          allowed[v] = {0, 1};
        else
          allowed[v] = range(0, v - 1);
        break;
      case Structure::AllPay:
        allowed[v] = (v <= 1) ? std::vector<int>{0} : range(0, v - 1);
        break;
      case Structure::SecondPrice:
        if (spec.tie_rule == TieRule::FairTies)
          allowed[v] = {v};
        else
          allowed[v] = (v == x) ? std::vector<int>{x} : std::vector<int>{v, v + 1};
        break;
    }
  }
  ReducedGame reduced;
  reduced.allowed.assign(spec.n, allowed);
  for (int i = 0; i < spec.n; ++i) {
    for (int v = 0; v <= x; ++v) {
      for (int b = 0; b <= x; ++b) {
        if (std::binary_search(allowed[v].begin(), allowed[v].end(), b))
          continue;
        reduced.trace.push_back(
            Deletion{i, v, b, 1, "weakly dominated (round-1 table)"});
      }
    }
  }
  return reduced;
}

namespace {

struct PayoffBounds {
  Rat lower, upper;
};

// Interval tier: payoff bounds for (value, bid) against per-opponent CDF
// bounds over surviving monotone selections. Not implemented for the
// second-price payment path; callers skip deletion there.
PayoffBounds interval_payoff_bounds(const AuctionSpec& spec,
                                    const std::vector<CdfBounds>& opp_bounds,
                                    int v, int b) {
  Rat lb_win = 1, ub_win = 1;
  for (const CdfBounds& cb : opp_bounds) {
    const Rat lb_lt = (b == 0) ? Rat(0) : cb.lower[b - 1];
    const Rat ub_lt = (b == 0) ? Rat(0) : cb.upper[b - 1];
    lb_win *= lb_lt;
    ub_win *= (spec.tie_rule == TieRule::FairTies) ? cb.upper[b] : ub_lt;
  }
  const Rat vl = spec.value_level(v);
  const Rat bl = spec.bid_level(b);
  switch (spec.structure) {
    case Structure::FirstPrice: {
      const Rat margin = vl - bl;
      if (margin >= 0) return {margin * lb_win, margin * ub_win};
      return {margin * ub_win, margin * lb_win};
    }
    case Structure::AllPay:
      return {vl * lb_win - bl, vl * ub_win - bl};
    case Structure::SecondPrice:
      throw SpecError("interval tier does not cover second price");
  }
  throw SpecError("unreachable");
}

}  // namespace

ReducedGame iterate_strict_dominance(const AuctionSpec& spec,
                                     ReducedGame reduced,
                                     const DominanceOptions& options) {
  const int S = spec.num_values();
  int round = 2;
  while (true) {
    std::vector<Deletion> sweep;
    for (int i = 0; i < spec.n; ++i) {
      // Decide tier for this player.
      BigInt combos = 1;
      for (int j = 0; j < spec.n; ++j)
        if (j != i) combos *= count_monotone_selections(reduced.allowed[j]);
      const bool exact =
          options.use_exact_tier && combos <= options.exact_budget;
      if (!exact && options.use_exact_tier) {
        reduced.notes.push_back("player " + std::to_string(i) + " round " +
                                std::to_string(round) +
                                ": exact tier budget exceeded, interval tier");
      }

      // strict[v][c][d]: payoff(c) > payoff(d) held in every scenario so far.
      std::vector<std::vector<std::vector<char>>> strict(S);
      for (int v = 0; v < S; ++v) {
        const std::size_t k = reduced.allowed[i][v].size();
        strict[v].assign(k, std::vector<char>(k, 1));
      }

      if (exact) {
        std::vector<std::vector<BiddingFunction>> opp;
        for (int j = 0; j < spec.n; ++j)
          if (j != i) opp.push_back(monotone_selections(reduced.allowed[j]));
        std::vector<std::size_t> pick(opp.size(), 0);
        while (true) {
          OpponentPmfs pmfs;
          for (std::size_t j = 0; j < opp.size(); ++j) {
            BidPmf pmf(spec.num_bids(), Rat(0));
            const BiddingFunction& beta = opp[j][pick[j]];
            for (int v = 0; v < S; ++v)
              pmf[beta(v)] += spec.dist.pmf[v];
            pmfs.push_back(std::move(pmf));
          }
          for (int v = 0; v < S; ++v) {
            const auto& set = reduced.allowed[i][v];
            if (set.size() < 2) continue;
            std::vector<Rat> payoff(set.size());
            for (std::size_t k = 0; k < set.size(); ++k)
              payoff[k] = interim_payoff(spec, v, set[k], pmfs);
            for (std::size_t c = 0; c < set.size(); ++c)
              for (std::size_t d = 0; d < set.size(); ++d)
                if (c != d && strict[v][c][d] && !(payoff[c] > payoff[d]))
                  strict[v][c][d] = 0;
          }
          std::size_t pos = 0;
          while (pos < pick.size() && ++pick[pos] == opp[pos].size())
            pick[pos++] = 0;
          if (pos == pick.size()) break;
        }
      } else {
        if (spec.structure == Structure::SecondPrice) continue;
        std::vector<CdfBounds> opp_bounds;
        for (int j = 0; j < spec.n; ++j)
          if (j != i)
            opp_bounds.push_back(monotone_cdf_bounds(spec, reduced.allowed[j]));
        for (int v = 0; v < S; ++v) {
          const auto& set = reduced.allowed[i][v];
          if (set.size() < 2) continue;
          std::vector<PayoffBounds> bounds(set.size());
          for (std::size_t k = 0; k < set.size(); ++k)
            bounds[k] = interval_payoff_bounds(spec, opp_bounds, v, set[k]);
          for (std::size_t c = 0; c < set.size(); ++c)
            for (std::size_t d = 0; d < set.size(); ++d)
              if (c != d && !(bounds[c].lower > bounds[d].upper))
                strict[v][c][d] = 0;
        }
      }

      for (int v = 0; v < S; ++v) {
        const auto& set = reduced.allowed[i][v];
        if (set.size() < 2) continue;
        for (std::size_t d = 0; d < set.size(); ++d) {
          for (std::size_t c = 0; c < set.size(); ++c) {
            if (c != d && strict[v][c][d]) {
              sweep.push_back(Deletion{
                  i, v, set[d], round,
                  exact ? "strictly dominated (exact tier)"
                        : "strictly dominated (interval tier)"});
              break;
            }
          }
        }
      }
    }
    if (sweep.empty()) break;
    // Commit the whole sweep in (player, value, bid) order.
    std::sort(sweep.begin(), sweep.end(), [](const Deletion& a, const Deletion& b) {
      return std::tie(a.player, a.value, a.bid) < std::tie(b.player, b.value, b.bid);
    });
    for (const Deletion& del : sweep) {
      auto& set = reduced.allowed[del.player][del.value];
      set.erase(std::remove(set.begin(), set.end(), del.bid), set.end());
      if (set.empty())
        throw SpecError("strict dominance emptied an allowed set");
      reduced.trace.push_back(del);
    }
    ++round;
  }
  return reduced;
}

StrategyCounts strategy_count(const AuctionSpec& spec,
                              const ReducedGame& reduced) {
  StrategyCounts counts;
  for (int i = 0; i < spec.n; ++i) {
    counts.pre.push_back(ipow(BigInt(spec.num_bids()), spec.num_values()));
    BigInt post = 1;
    for (const auto& set : reduced.allowed[i]) post *= BigInt(set.size());
    counts.post.push_back(post);
  }
  return counts;
}

}  // namespace auction
