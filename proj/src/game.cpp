#include "auction/game.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace auction {

using nlohmann::json;

std::string to_string(Structure s) {
  switch (s) {
    case Structure::FirstPrice: return "first_price";
    case Structure::SecondPrice: return "second_price";
    case Structure::AllPay: return "all_pay";
  }
  return "?";
}

std::string to_string(TieRule t) {
  return t == TieRule::FairTies ? "fair" : "no_winner";
}

ValueDistribution ValueDistribution::uniform(int size) {
  ValueDistribution d;
  d.pmf.assign(size, Rat(1, size));
  return d;
}

void ValueDistribution::validate(int size) const {
  if (static_cast<int>(pmf.size()) != size)
    throw SpecError("pmf length does not match the value grid");
  Rat total = 0;
  for (const Rat& p : pmf) {
    if (p <= 0) throw SpecError("every value must have strictly positive mass");
    total += p;
  }
  if (total != 1) throw SpecError("pmf must sum to exactly 1");
}

AuctionSpec AuctionSpec::canonical(Structure s, TieRule t, int n, int x,
                                   Rat delta) {
  return canonical_uniform(s, t, n, x, delta);
}

AuctionSpec AuctionSpec::canonical_uniform(Structure s, TieRule t, int n,
                                           int x, Rat delta) {
  AuctionSpec spec;
  spec.structure = s;
  spec.tie_rule = t;
  spec.n = n;
  spec.values = GridSpec{delta, x};
  spec.dist = ValueDistribution::uniform(x + 1);
  spec.bid_levels.reserve(x + 1);
  for (int b = 0; b <= x; ++b) spec.bid_levels.push_back(delta * b);
  spec.validate();
  return spec;
}

bool AuctionSpec::canonical_grids() const {
  if (num_bids() != num_values()) return false;
  for (int b = 0; b < num_bids(); ++b)
    if (bid_levels[b] != values.level(b)) return false;
  return true;
}

void AuctionSpec::validate() const {
  if (n < 2) throw SpecError("need at least 2 bidders");
  if (values.x < 0) throw SpecError("value grid must be nonempty");
  if (values.delta <= 0) throw SpecError("delta must be positive");
  dist.validate(num_values());
  if (bid_levels.empty()) throw SpecError("bid set must be nonempty");
  for (std::size_t i = 1; i < bid_levels.size(); ++i)
    if (bid_levels[i] <= bid_levels[i - 1])
      throw SpecError("bid levels must be strictly increasing");
}

bool BiddingFunction::monotone() const {
  return std::is_sorted(bid_of.begin(), bid_of.end());
}

int BiddingFunction::max_step() const {
  int step = 0;
  for (std::size_t v = 1; v < bid_of.size(); ++v)
    step = std::max(step, bid_of[v] - bid_of[v - 1]);
  return step;
}

bool StrategyProfile::symmetric() const {
  return std::all_of(players.begin(), players.end(),
                     [&](const BiddingFunction& b) { return b == players[0]; });
}

StrategyProfile symmetric_profile(const BiddingFunction& beta, int n) {
  return StrategyProfile{std::vector<BiddingFunction>(n, beta)};
}

void check_profile(const AuctionSpec& spec, const StrategyProfile& profile) {
  if (static_cast<int>(profile.players.size()) != spec.n)
    throw SpecError("profile must have one bidding function per player");
  for (const BiddingFunction& beta : profile.players) {
    if (beta.size() != spec.num_values())
      throw SpecError("bidding function domain must equal the value grid");
    for (int b : beta.bid_of)
      if (b < 0 || b >= spec.num_bids())
        throw SpecError("bid index out of range");
  }
}

namespace {

Rat parse_or_throw(const std::string& text, const char* field) {
  auto r = parse_rational(text);
  if (!r) throw SpecError(std::string("malformed rational in field '") + field +
                          "': " + text);
  return *r;
}

Structure structure_from_string(const std::string& s) {
  if (s == "first_price" || s == "fp") return Structure::FirstPrice;
  if (s == "second_price" || s == "sp") return Structure::SecondPrice;
  if (s == "all_pay" || s == "ap") return Structure::AllPay;
  throw SpecError("unknown structure: " + s);
}

TieRule tie_rule_from_string(const std::string& s) {
  if (s == "fair") return TieRule::FairTies;
  if (s == "no_winner" || s == "none") return TieRule::NoWinnerOnTies;
  throw SpecError("unknown tie rule: " + s);
}

}  // namespace

std::string spec_to_json(const AuctionSpec& spec) {
  json j;
  j["structure"] = to_string(spec.structure);
  j["tie_rule"] = to_string(spec.tie_rule);
  j["n"] = spec.n;
  j["delta"] = to_string(spec.values.delta);
  j["x"] = spec.values.x;
  json pmf = json::array();
  for (const Rat& p : spec.dist.pmf) pmf.push_back(to_string(p));
  j["pmf"] = pmf;
  json bids = json::array();
  for (const Rat& b : spec.bid_levels) bids.push_back(to_string(b));
  j["bids"] = bids;
  return j.dump(2);
}

AuctionSpec spec_from_json(const std::string& text) {
  json j = json::parse(text);
  AuctionSpec spec;
  spec.structure = structure_from_string(j.at("structure").get<std::string>());
  spec.tie_rule = tie_rule_from_string(j.at("tie_rule").get<std::string>());
  spec.n = j.at("n").get<int>();
  spec.values.delta = parse_or_throw(j.at("delta").get<std::string>(), "delta");
  spec.values.x = j.at("x").get<int>();
  for (const auto& p : j.at("pmf"))
    spec.dist.pmf.push_back(parse_or_throw(p.get<std::string>(), "pmf"));
  for (const auto& b : j.at("bids"))
    spec.bid_levels.push_back(parse_or_throw(b.get<std::string>(), "bids"));
  spec.validate();
  return spec;
}

std::string bidding_function_to_json(const BiddingFunction& beta) {
  return json(beta.bid_of).dump();
}

BiddingFunction bidding_function_from_json(const std::string& text) {
  BiddingFunction beta;
  beta.bid_of = json::parse(text).get<std::vector<int>>();
  return beta;
}

}  // namespace auction
