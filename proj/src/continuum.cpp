#include "auction/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace auction {

namespace {

Rat rat_pow(const Rat& base, unsigned exp) {
  Rat out = 1;
  Rat b = base;
  while (exp > 0) {
    if (exp & 1u) out *= b;
    b *= b;
    exp >>= 1u;
  }
  return out;
}

}  // namespace

Rat fair_tie_win_share(int n, const Rat& p) {
  if (n < 1) throw SpecError("fair_tie_win_share: need n >= 1");
  if (p < 0 || p > 1)
    throw SpecError("fair_tie_win_share: p must lie in [0, 1]");
  if (p == 0) return 1;  // limit: no rival ever ties
  return (1 - rat_pow(1 - p, static_cast<unsigned>(n))) / (n * p);
}

bool fp_no_ties_nonexistence(int n, int x) {
  if (n < 3) throw SpecError("fp_no_ties_nonexistence: needs n >= 3");
  if (x < 1) throw SpecError("fp_no_ties_nonexistence: needs x >= 1");
  const unsigned e = static_cast<unsigned>(n - 1);
  return 2 * ipow(BigInt(x - 1), e) > ipow(BigInt(x), e);
}

double fp_no_ties_threshold(int n) {
  if (n < 3) throw SpecError("fp_no_ties_threshold: needs n >= 3");
  const double r = std::pow(2.0, 1.0 / (n - 1));
  return r / (r - 1.0);
}

bool allpay_sure_win_predicate(int n, int x) {
  if (n < 2) throw SpecError("allpay_sure_win_predicate: needs n >= 2");
  if (x < 2) throw SpecError("allpay_sure_win_predicate: needs x >= 2");
  return BigInt(x - 1) * ipow(BigInt(x + 1), static_cast<unsigned>(n - 1)) >
         ipow(BigInt(x), static_cast<unsigned>(n));
}

double allpay_sure_win_threshold(int x) {
  if (x < 2) throw SpecError("allpay_sure_win_threshold: needs x >= 2");
  return std::log(double(x) / (x - 1)) / std::log((x + 1.0) / x);
}

ThresholdReport threshold_report(int n, int x) {
  if (n < 2 || x < 1) throw SpecError("threshold_report: needs n >= 2, x >= 1");
  ThresholdReport out;
  out.n = n;
  out.x = x;
  if (n >= 3) {
    out.fp_nonexistence = fp_no_ties_nonexistence(n, x);
    out.fp_threshold = fp_no_ties_threshold(n);
  }
  out.allpay_large_grid = x >= 10;
  out.allpay_sure_win = x >= 2 && allpay_sure_win_predicate(n, x);
  if (n == 2)
    out.fair_ties_class = x % 2 == 1 ? FairTiesExistenceClass::TwoBidderOddTop
                                     : FairTiesExistenceClass::TwoBidderEvenTop;
  else if (n == 3)
    out.fair_ties_class = x % 3 == 0
                              ? FairTiesExistenceClass::ThreeBidderMultipleOfThree
                              : FairTiesExistenceClass::ThreeBidderOther;
  else
    out.fair_ties_class = FairTiesExistenceClass::OutsideScope;
  return out;
}

ContinuousAuction ContinuousAuction::uniform_first_price(int n,
                                                         const Rat& v_hi) {
  if (n < 2 || v_hi <= 0)
    throw SpecError("uniform_first_price: needs n >= 2 and v_hi > 0");
  ContinuousAuction out;
  out.structure = Structure::FirstPrice;
  out.n = n;
  out.v_hi = v_hi;
  out.cdf = [v_hi](const Rat& v) {
    if (v <= 0) return Rat(0);
    if (v >= v_hi) return Rat(1);
    return Rat(v / v_hi);
  };
  out.bid_rule = [n](const Rat& v) { return v * (n - 1) / n; };
  return out;
}

ContinuousAuction ContinuousAuction::uniform_all_pay(int n, const Rat& v_hi) {
  if (n < 2 || v_hi <= 0)
    throw SpecError("uniform_all_pay: needs n >= 2 and v_hi > 0");
  ContinuousAuction out = uniform_first_price(n, v_hi);
  out.structure = Structure::AllPay;
  // Expected payment of the winner's shading rule: (n-1)/n * v^n / v_hi^(n-1).
  out.bid_rule = [n, v_hi](const Rat& v) {
    return rat_pow(v, static_cast<unsigned>(n)) * (n - 1) /
           (rat_pow(v_hi, static_cast<unsigned>(n - 1)) * n);
  };
  return out;
}

DiscreteAnalogue build_discrete_analogue(const ContinuousAuction& cont,
                                         const Rat& delta, int grid_count) {
  if (grid_count < 1)
    throw SpecError("build_discrete_analogue: needs grid_count >= 1");
  if (delta <= 0) throw SpecError("build_discrete_analogue: needs delta > 0");
  if (delta * grid_count != cont.v_hi)
    throw SpecError(
        "build_discrete_analogue: delta * grid_count must equal v_hi");
  if (cont.structure == Structure::SecondPrice)
    throw SpecError(
        "build_discrete_analogue: no second-price benchmark is shipped");
  if (!cont.cdf || !cont.bid_rule)
    throw SpecError("build_discrete_analogue: cdf and bid_rule required");

  DiscreteAnalogue out;
  out.spec.structure = cont.structure;
  out.spec.tie_rule = TieRule::NoWinnerOnTies;
  out.spec.n = cont.n;
  out.spec.values = GridSpec{delta, grid_count - 1};
  out.spec.dist.pmf.resize(grid_count);
  for (int k = 0; k < grid_count; ++k)
    out.spec.dist.pmf[k] = cont.cdf(delta * (k + 1)) - cont.cdf(delta * k);
  out.spec.bid_levels.resize(grid_count + 1);
  for (int j = 0; j <= grid_count; ++j)
    out.spec.bid_levels[j] = cont.bid_rule(delta * j);
  for (int j = 0; j < grid_count; ++j)
    if (!(out.spec.bid_levels[j] < out.spec.bid_levels[j + 1]))
      throw SpecError(
          "build_discrete_analogue: bid rule is not strictly increasing on "
          "the grid");
  out.spec.validate();

  // Each value bids exactly what the continuous equilibrium dictates at
  // that value: deviating to any other grid bid replicates a continuous
  // type's deviation payoff, which the continuous equilibrium already
  // rules out. The top level (the image of v_hi itself) stays unused.
  out.candidate.bid_of.resize(grid_count);
  for (int k = 0; k < grid_count; ++k) out.candidate.bid_of[k] = k;
  return out;
}

MatchReport verify_continuum_match(const AuctionSpec& spec,
                                   const BiddingFunction& candidate) {
  auto profile = symmetric_profile(candidate, spec.n);
  check_profile(spec, profile);
  MatchReport out;
  auto check = check_equilibrium(spec, profile);
  out.is_equilibrium = check.is_equilibrium;
  out.witness = check.witness;
  if (!out.is_equilibrium) return out;

  std::set<int> used(candidate.bid_of.begin(), candidate.bid_of.end());
  for (int i = 0; i + 1 < spec.num_bids(); ++i) {
    // A level below every equilibrium bid wins nothing either way; only
    // gaps whose lower endpoint is actually bid can admit an undercut.
    if (!used.count(i)) continue;
    AuctionSpec widened = spec;
    const Rat mid = (spec.bid_levels[i] + spec.bid_levels[i + 1]) / 2;
    widened.bid_levels.insert(widened.bid_levels.begin() + i + 1, mid);
    BiddingFunction shifted = candidate;
    for (int& b : shifted.bid_of)
      if (b > i) ++b;
    if (is_equilibrium(widened, symmetric_profile(shifted, spec.n)))
      out.intact_gaps.push_back(i);
  }
  out.tight = out.intact_gaps.empty();
  return out;
}

std::vector<ConvergenceRow> revenue_convergence(const Rat& x,
                                                const std::vector<Rat>& deltas) {
  if (x <= 0) throw SpecError("revenue_convergence: needs x > 0");
  std::vector<ConvergenceRow> out;
  for (const Rat& delta : deltas) {
    if (delta <= 0) throw SpecError("revenue_convergence: needs delta > 0");
    const Rat steps = x / delta;
    if (denominator(steps) != 1 || steps > 1'000'000)
      throw SpecError(
          "revenue_convergence: x / delta must be a modest whole number");
    const int k = static_cast<int>(numerator(steps));
    auto spec = AuctionSpec::canonical_uniform(
        Structure::FirstPrice, TieRule::NoWinnerOnTies, 2, k, delta);
    BiddingFunction half;
    half.bid_of.resize(k + 1);
    for (int v = 0; v <= k; ++v) half.bid_of[v] = v / 2;
    ConvergenceRow row;
    row.delta = delta;
    row.revenue = expected_revenue(spec, symmetric_profile(half, 2));
    row.gap = x / 3 - row.revenue;
    if (row.gap < 0) row.gap = -row.gap;
    out.push_back(row);
  }
  return out;
}

std::vector<BiddingFunction> known_se_patterns(const AuctionSpec& spec) {
  std::vector<BiddingFunction> out;
  if (!spec.canonical_grids()) return out;
  for (const Rat& m : spec.dist.pmf)
    if (m != spec.dist.pmf[0]) return out;  // patterns assume uniform values
  const int x = spec.values.x;
  const int S = x + 1;
  auto make = [S](auto&& rule) {
    BiddingFunction f;
    f.bid_of.resize(S);
    for (int v = 0; v < S; ++v) f.bid_of[v] = rule(v);
    return f;
  };

  switch (spec.structure) {
    case Structure::SecondPrice:
      out.push_back(make([](int v) { return v; }));  // truthful
      if (spec.tie_rule == TieRule::NoWinnerOnTies)
        out.push_back(make([x](int v) { return std::min(v + 1, x); }));
      break;
    case Structure::FirstPrice:
      if (spec.tie_rule == TieRule::NoWinnerOnTies && spec.n == 2) {
        out.push_back(make([](int v) { return v / 2; }));
        out.push_back(make([](int v) { return (v + 1) / 2; }));
      } else if (spec.tie_rule == TieRule::FairTies && spec.n == 2 &&
                 x % 2 == 1) {
        out.push_back(make([](int v) { return v / 2; }));
      } else if (spec.tie_rule == TieRule::FairTies && spec.n == 3 &&
                 x % 3 != 0) {
        // Stepped two-thirds pace: values 3k and 3k+1 bid 2k, value 3k+2
        // bids 2k+1.
        out.push_back(
            make([](int v) { return 2 * (v / 3) + (v % 3 == 2 ? 1 : 0); }));
      }
      break;
    case Structure::AllPay:
      if (x == 2 &&
          (spec.tie_rule == TieRule::FairTies || spec.n == 2))
        out.push_back(make([](int v) { return v == 2 ? 1 : 0; }));
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace auction
