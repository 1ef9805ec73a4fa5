#include "auction/symmetric.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "auction/dominance.hpp"

namespace auction {

namespace {

Rat rat_pow(const Rat& base, int e) {
  Rat out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Win probability against n-1 symmetric opponents whose bid lies strictly
// below with probability L and ties with probability T.
Rat fair_win(const Rat& L, const Rat& T, int n) {
  if (T == 0) return rat_pow(L, n - 1);
  return (rat_pow(L + T, n) - rat_pow(L, n)) / (Rat(n) * T);
}

struct DfsContext {
  const AuctionSpec& spec;
  const std::vector<std::vector<int>>& allowed;  // per value, sorted bids
  SymmetricSolveReport& report;
  SearchStats& stats;
  bool prune;

  std::vector<int> beta;
  std::vector<Rat> mass;  // P(one opponent bids b), over the fixed prefix

  DfsContext(const AuctionSpec& s, const std::vector<std::vector<int>>& a,
             SymmetricSolveReport& r, bool p)
      : spec(s), allowed(a), report(r), stats(r.certificate.stats), prune(p) {
    beta.reserve(spec.num_values());
    mass.assign(spec.num_bids(), Rat(0));
  }

  Rat below(int d) const {
    Rat s(0);
    for (int t = 0; t < d; ++t) s += mass[t];
    return s;
  }

  // Payoff of value v bidding d when every opponent bid relevant to d is
  // already fixed in the prefix.
  Rat determined_payoff(int v, int d) const {
    const Rat L = below(d);
    const Rat W = spec.tie_rule == TieRule::FairTies
                      ? fair_win(L, mass[d], spec.n)
                      : rat_pow(L, spec.n - 1);
    const Rat vl = spec.value_level(v), bl = spec.bid_level(d);
    if (spec.structure == Structure::AllPay) return vl * W - bl;
    return (vl - bl) * W;
  }

  void record_leaf() {
    ++stats.leaves;
    BiddingFunction f{beta};
    if (is_equilibrium(spec, symmetric_profile(f, spec.n))) {
      ++stats.verified;
      report.equilibria.push_back(std::move(f));
    }
  }
};

// NoWinnerOnTies chain search: steps in {stay, +1}; every deviation at or
// below the running top bid is determined (higher-value opponents bid at
// least the top and a tie never wins).
void dfs_no_ties(DfsContext& ctx, int u) {
  if (u == ctx.spec.num_values()) {
    ctx.record_leaf();
    return;
  }
  const int prev = u == 0 ? 0 : ctx.beta[u - 1];
  for (int b : ctx.allowed[u]) {
    if (u > 0 && (b < prev || b > prev + 1)) continue;
    if (u == 0 && b != 0) continue;
    ++ctx.stats.nodes;
    ctx.beta.push_back(b);
    bool cut = false;
    if (ctx.prune) {
      const Rat own = ctx.determined_payoff(u, b);
      for (int d = 0; d < b && !cut; ++d)
        if (ctx.determined_payoff(u, d) > own) cut = true;
      if (!cut && u > 0 && b > prev)
        for (int w = 0; w < u && !cut; ++w)
          if (ctx.determined_payoff(w, b) >
              ctx.determined_payoff(w, ctx.beta[w]))
            cut = true;
    }
    if (cut) {
      ++ctx.stats.pruned;
    } else {
      ctx.mass[b] += ctx.spec.dist.pmf[u];
      dfs_no_ties(ctx, u + 1);
      ctx.mass[b] -= ctx.spec.dist.pmf[u];
    }
    ctx.beta.pop_back();
  }
}

// FairTies search over all monotone selections from the allowed sets.
// A bid level becomes determined once the running top moves strictly past
// it: higher-value opponents bid at least the top, so they can neither tie
// with nor undercut it.
void dfs_fair(DfsContext& ctx, int u) {
  if (u == ctx.spec.num_values()) {
    ctx.record_leaf();
    return;
  }
  const int prev = u == 0 ? 0 : ctx.beta[u - 1];
  for (int b : ctx.allowed[u]) {
    if (b < prev) continue;
    ++ctx.stats.nodes;
    ctx.beta.push_back(b);
    bool cut = false;
    if (ctx.prune && b > prev && u > 0) {
      for (int w = 0; w < u && !cut; ++w) {
        const int wb = ctx.beta[w];
        const Rat own = ctx.determined_payoff(w, wb);
        // Newly sealed plateau values scan every lower level; values
        // sealed earlier only gain the levels the top just moved past.
        const int from = wb == prev ? 0 : prev;
        for (int d = from; d < b && !cut; ++d)
          if (d != wb && ctx.determined_payoff(w, d) > own) cut = true;
      }
    }
    if (cut) {
      ++ctx.stats.pruned;
    } else {
      ctx.mass[b] += ctx.spec.dist.pmf[u];
      dfs_fair(ctx, u + 1);
      ctx.mass[b] -= ctx.spec.dist.pmf[u];
    }
    ctx.beta.pop_back();
  }
}

void check_solver_invariants(const AuctionSpec& spec,
                             const SymmetricSolveReport& report) {
  for (const auto& f : report.equilibria) {
    if (!f.monotone())
      throw std::logic_error("symmetric solver produced a non-monotone SE");
    if (spec.tie_rule == TieRule::NoWinnerOnTies && f.max_step() > 1)
      throw std::logic_error("no-ties SE has a jump");
    if (spec.tie_rule == TieRule::FairTies && spec.n == 2)
      for (int v = 1; v < f.size(); ++v)
        if (f(v) - f(v - 1) >= 2 &&
            clears_jump_threshold(spec.value_level(v), spec.bid_level(f(v))))
          throw std::logic_error("fair-ties SE jumps above the threshold");
  }
  if (spec.tie_rule == TieRule::NoWinnerOnTies) {
    const std::size_t cap = spec.structure == Structure::FirstPrice ? 2 : 1;
    if (spec.structure != Structure::SecondPrice &&
        report.equilibria.size() > cap)
      throw std::logic_error("more no-ties SE than the uniqueness bound");
  }
}

void finalize(const AuctionSpec& spec, SymmetricSolveReport& report) {
  std::sort(report.equilibria.begin(), report.equilibria.end());
  check_solver_invariants(spec, report);
}

}  // namespace

bool clears_jump_threshold(const Rat& value, const Rat& bid) {
  const Rat t = 2 * value - bid;
  if (t <= 0) return true;
  return t * t <= 3 * value * value;
}

SymmetricSolveReport solve_second_price(const AuctionSpec& spec) {
  spec.validate();
  if (spec.structure != Structure::SecondPrice)
    throw SpecError("solve_second_price requires a second-price game");
  if (!spec.canonical_grids())
    throw SpecError("solve_second_price requires bid levels equal to values");

  const int S = spec.num_values();
  SymmetricSolveReport report;
  report.certificate.kind = CertificateKind::AnalyticThreshold;
  report.certificate.reference =
      "weak dominance pins each value's bid to the truthful level "
      "(or the level one step above when ties void the sale)";

  std::vector<int> truthful(S);
  for (int v = 0; v < S; ++v) truthful[v] = v;
  report.equilibria.push_back(BiddingFunction{truthful});

  if (spec.tie_rule == TieRule::NoWinnerOnTies) {
    std::vector<int> shifted(S);
    for (int v = 0; v < S; ++v) shifted[v] = std::min(v + 1, S - 1);
    if (shifted != truthful)
      report.equilibria.push_back(BiddingFunction{shifted});
    report.notes.push_back(
        "every per-value choice between the two reported functions is also "
        "an equilibrium; only the extremal members are listed");
  }

  for (const auto& f : report.equilibria)
    if (!is_equilibrium(spec, symmetric_profile(f, spec.n)))
      throw std::logic_error("second-price candidate failed verification");

  finalize(spec, report);
  return report;
}

SymmetricSolveReport solve_symmetric_no_ties(
    const AuctionSpec& spec, const SymmetricSolveOptions& options) {
  spec.validate();
  if (spec.tie_rule != TieRule::NoWinnerOnTies)
    throw SpecError("solve_symmetric_no_ties requires NoWinnerOnTies");
  if (spec.structure == Structure::SecondPrice)
    throw SpecError("use solve_second_price for second-price games");

  auto reduced = round1_weak_dominance(spec);
  SymmetricSolveReport report;
  DfsContext ctx(spec, reduced.allowed[0], report, options.prune);

  if (spec.structure == Structure::FirstPrice && spec.num_values() > 1) {
    // The search splits on the bid of the lowest positive value; record
    // which side each equilibrium comes from.
    for (int first : reduced.allowed[0][1]) {
      const std::size_t before = report.equilibria.size();
      ++ctx.stats.nodes;
      ctx.beta = {0, first};
      ctx.mass[0] += spec.dist.pmf[0];
      ctx.mass[first] += spec.dist.pmf[1];
      dfs_no_ties(ctx, 2);
      ctx.mass[first] -= spec.dist.pmf[1];
      ctx.mass[0] -= spec.dist.pmf[0];
      report.branch_log.push_back(
          "beta(1)=" + std::to_string(first) + " branch: " +
          std::to_string(report.equilibria.size() - before) + " equilibria");
    }
  } else {
    dfs_no_ties(ctx, 0);
  }

  report.certificate.kind = CertificateKind::Exhausted;
  finalize(spec, report);
  return report;
}

SymmetricSolveReport solve_symmetric_with_ties(
    const AuctionSpec& spec, const SymmetricSolveOptions& options) {
  spec.validate();
  if (spec.tie_rule != TieRule::FairTies)
    throw SpecError("solve_symmetric_with_ties requires FairTies");
  if (spec.structure == Structure::SecondPrice)
    throw SpecError("use solve_second_price for second-price games");

  SymmetricSolveReport report;
  if (spec.values.x > options.fair_ties_cap) {
    report.certificate.kind = CertificateKind::Inconclusive;
    report.notes.push_back(
        "grid top " + std::to_string(spec.values.x) +
        " exceeds the search cap " + std::to_string(options.fair_ties_cap) +
        "; raise the cap for a definitive answer");
    return report;
  }

  auto reduced = round1_weak_dominance(spec);
  DfsContext ctx(spec, reduced.allowed[0], report, options.prune);
  dfs_fair(ctx, 0);

  report.certificate.kind = CertificateKind::Exhausted;
  finalize(spec, report);
  return report;
}

SymmetricSolveReport solve_symmetric(const AuctionSpec& spec,
                                     const SymmetricSolveOptions& options) {
  if (spec.structure == Structure::SecondPrice)
    return solve_second_price(spec);
  return spec.tie_rule == TieRule::FairTies
             ? solve_symmetric_with_ties(spec, options)
             : solve_symmetric_no_ties(spec, options);
}

EquilibriumCheck verify_symmetric(const AuctionSpec& spec,
                                  const BiddingFunction& beta) {
  return check_equilibrium(spec, symmetric_profile(beta, spec.n));
}

}  // namespace auction
