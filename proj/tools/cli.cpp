#include "cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "auction/continuum.hpp"
#include "auction/dominance.hpp"
#include "auction/enumerate.hpp"
#include "auction/game.hpp"
#include "auction/payoff.hpp"
#include "auction/symmetric.hpp"

namespace auction {

namespace {

using nlohmann::json;

Structure parse_structure(const std::string& s) {
  if (s == "fp") return Structure::FirstPrice;
  if (s == "sp") return Structure::SecondPrice;
  if (s == "ap") return Structure::AllPay;
  throw SpecError("--structure: expected fp, sp or ap, got '" + s + "'");
}

TieRule parse_ties(const std::string& s) {
  if (s == "fair") return TieRule::FairTies;
  if (s == "none") return TieRule::NoWinnerOnTies;
  throw SpecError("--ties: expected fair or none, got '" + s + "'");
}

Rat parse_rat_flag(const std::string& name, const std::string& text) {
  auto r = parse_rational(text);
  if (!r) throw SpecError(name + ": '" + text + "' is not a rational p/q");
  return *r;
}

std::vector<Rat> parse_rat_list(const std::string& name,
                                const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_rat_flag(name, item));
  if (out.empty()) throw SpecError(name + ": empty list");
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Expands `--config FILE` into flags appended after the explicit ones. The
// file is a flat key=value document mirroring the subcommand's flags;
// explicit flags win, and unknown keys surface as ordinary unknown-flag
// parse errors naming the key.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw SpecError("--config: missing file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream f(path);
  if (!f) throw SpecError("--config: cannot open '" + path + "'");
  auto given = [&rest](const std::string& flag) {
    return std::any_of(rest.begin(), rest.end(), [&flag](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty())
      throw SpecError("--config: line " + std::to_string(lineno) +
                      ": expected key=value");
    if (!given("--" + key))
      rest.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  return rest;
}

// Shared game-description flags.
struct SpecCli {
  std::string structure = "fp";
  std::string ties = "fair";
  int n = 2;
  int x = 1;
  std::string delta = "1";
  std::string pmf;

  void attach(CLI::App* cmd) {
    cmd->add_option("--structure", structure,
                    "Auction structure: fp, sp or ap")
        ->capture_default_str();
    cmd->add_option("--ties", ties, "Tie rule: fair or none")
        ->capture_default_str();
    cmd->add_option("--n", n, "Number of bidders")->capture_default_str();
    cmd->add_option("--x", x, "Top value index; values are 0..x")
        ->capture_default_str();
    cmd->add_option("--delta", delta, "Grid step as a rational p/q")
        ->capture_default_str();
    cmd->add_option("--pmf", pmf,
                    "Comma-separated value probabilities overriding the "
                    "uniform distribution");
  }

  AuctionSpec build() const {
    auto spec = AuctionSpec::canonical_uniform(
        parse_structure(structure), parse_ties(ties), n, x,
        parse_rat_flag("--delta", delta));
    if (!pmf.empty()) {
      spec.dist.pmf = parse_rat_list("--pmf", pmf);
      spec.validate();
    }
    return spec;
  }
};

struct OutputCli {
  std::string format;  // per-command default filled in attach()
  std::string path;

  void attach(CLI::App* cmd, const std::string& default_format,
              const std::vector<std::string>& allowed) {
    format = default_format;
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember(allowed))
        ->capture_default_str();
    cmd->add_option("--out", path, "Write output to this file instead of "
                                   "standard output");
  }

  void write(const std::string& text, std::ostream& fallback) const {
    if (path.empty()) {
      fallback << text;
      if (!text.empty() && text.back() != '\n') fallback << '\n';
      return;
    }
    std::ofstream f(path);
    if (!f) throw SpecError("--out: cannot open '" + path + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }
};

json rat_json(const Rat& r) {
  return json{{"exact", to_string(r)}, {"decimal", to_double(r)}};
}

json spec_json(const AuctionSpec& spec) { return json::parse(spec_to_json(spec)); }

json function_json(const BiddingFunction& f) { return json(f.bid_of); }

json profile_json(const StrategyProfile& p) {
  json out = json::array();
  for (const auto& f : p.players) out.push_back(function_json(f));
  return out;
}

json witness_json(const DeviationWitness& w) {
  return json{{"player", w.player},
              {"value", w.value},
              {"bid", w.bid},
              {"gain", rat_json(w.gain)}};
}

std::string certificate_kind(CertificateKind k) {
  switch (k) {
    case CertificateKind::Exhausted: return "exhausted";
    case CertificateKind::AnalyticThreshold: return "analytic";
    case CertificateKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

json solve_report_json(const AuctionSpec& spec,
                       const SymmetricSolveReport& report) {
  json eq = json::array();
  for (const auto& f : report.equilibria) eq.push_back(function_json(f));
  return json{
      {"spec", spec_json(spec)},
      {"equilibria", eq},
      {"exists", !report.equilibria.empty()},
      {"certificate",
       {{"kind", certificate_kind(report.certificate.kind)},
        {"reference", report.certificate.reference},
        {"stats",
         {{"nodes", report.certificate.stats.nodes},
          {"leaves", report.certificate.stats.leaves},
          {"pruned", report.certificate.stats.pruned},
          {"verified", report.certificate.stats.verified}}}}},
      {"branch_log", report.branch_log},
      {"notes", report.notes}};
}

std::string functions_csv(const AuctionSpec& spec,
                          const std::vector<BiddingFunction>& funcs) {
  std::ostringstream out;
  out << "value";
  for (std::size_t i = 0; i < funcs.size(); ++i) out << ",se" << i + 1;
  out << '\n';
  for (int v = 0; v < spec.num_values(); ++v) {
    out << to_string(spec.value_level(v));
    for (const auto& f : funcs) out << ',' << to_string(spec.bid_level(f(v)));
    out << '\n';
  }
  return out.str();
}

json enumeration_json(const AuctionSpec& spec, const EnumerationResult& r) {
  json eq = json::array();
  for (const auto& p : r.equilibria) eq.push_back(profile_json(p));
  return json{{"spec", spec_json(spec)},
              {"equilibria", eq},
              {"exists", r.exists},
              {"conclusive", r.conclusive},
              {"scope", r.scope == EnumerationScope::MonotoneUndominated
                            ? "monotone-undominated"
                            : "fully-exhaustive"},
              {"nodes", r.nodes},
              {"pruned", r.pruned},
              {"verified", r.verified},
              {"wall_seconds", r.wall_seconds},
              {"notes", r.notes}};
}

json reduced_json(const AuctionSpec& spec, const ReducedGame& reduced) {
  json trace = json::array();
  for (const auto& d : reduced.trace)
    trace.push_back(json{{"player", d.player},
                         {"value", d.value},
                         {"bid", d.bid},
                         {"round", d.round},
                         {"reason", d.reason}});
  auto counts = strategy_count(spec, reduced);
  json pre = json::array(), post = json::array();
  for (const auto& c : counts.pre) pre.push_back(c.str());
  for (const auto& c : counts.post) post.push_back(c.str());
  return json{{"spec", spec_json(spec)},
              {"allowed", reduced.allowed},
              {"trace", trace},
              {"strategy_counts", {{"pre", pre}, {"post", post}}},
              {"notes", reduced.notes}};
}

std::string fair_class_name(FairTiesExistenceClass c) {
  switch (c) {
    case FairTiesExistenceClass::TwoBidderOddTop: return "two-bidder-odd-top";
    case FairTiesExistenceClass::TwoBidderEvenTop:
      return "two-bidder-even-top";
    case FairTiesExistenceClass::ThreeBidderMultipleOfThree:
      return "three-bidder-multiple-of-three";
    case FairTiesExistenceClass::ThreeBidderOther:
      return "three-bidder-other";
    case FairTiesExistenceClass::OutsideScope: return "outside-scope";
  }
  return "unknown";
}

// --- The tables command. ---

enum class Column { FP2, FP3, AP2, AP3 };

struct TableCell {
  int valuations;  // the row label: number of possible values
  Column column;
  int x;  // top value index actually solved
};

// Filled cells of the two existence grids. Rows are labelled by the number
// of valuations; every solved game has x = valuations - 1 except the
// two-bidder fair-ties row 10, whose source discussion is about an even
// top value of 10.
std::vector<TableCell> table_cells(int which) {
  if (which == 1)
    return {{6, Column::FP3, 5},  {6, Column::AP2, 5},  {6, Column::AP3, 5},
            {7, Column::FP3, 6},  {7, Column::AP2, 6},  {7, Column::AP3, 6},
            {8, Column::FP3, 7},  {8, Column::AP2, 7},  {9, Column::AP2, 8},
            {10, Column::FP2, 10}};
  return {{6, Column::FP3, 5}, {6, Column::AP2, 5}, {6, Column::AP3, 5},
          {7, Column::FP3, 6}, {7, Column::AP2, 6}, {7, Column::AP3, 6},
          {8, Column::AP2, 7}, {9, Column::AP2, 8}};
}

Structure column_structure(Column c) {
  return c == Column::FP2 || c == Column::FP3 ? Structure::FirstPrice
                                              : Structure::AllPay;
}

int column_n(Column c) { return c == Column::FP2 || c == Column::AP2 ? 2 : 3; }

std::string column_name(Column c) {
  switch (c) {
    case Column::FP2: return "FPSB, n = 2";
    case Column::FP3: return "FPSB, n = 3";
    case Column::AP2: return "All-pay, n = 2";
    case Column::AP3: return "All-pay, n = 3";
  }
  return "";
}

// --- Command handlers; each returns the exit code. ---

int cmd_describe(const SpecCli& sc, const OutputCli& oc, std::ostream& out) {
  oc.write(spec_to_json(sc.build()), out);
  return 0;
}

int cmd_reduce(const SpecCli& sc, const OutputCli& oc, std::ostream& out) {
  auto spec = sc.build();
  auto reduced = iterate_strict_dominance(spec, round1_weak_dominance(spec));
  oc.write(reduced_json(spec, reduced).dump(2), out);
  return 0;
}

int cmd_solve_symmetric(const SpecCli& sc, const OutputCli& oc, int cap,
                        bool prune, std::ostream& out) {
  auto spec = sc.build();
  SymmetricSolveOptions options;
  if (cap > 0) options.fair_ties_cap = cap;
  options.prune = prune;
  auto report = solve_symmetric(spec, options);
  if (oc.format == "csv")
    oc.write(functions_csv(spec, report.equilibria), out);
  else
    oc.write(solve_report_json(spec, report).dump(2), out);
  return report.certificate.kind == CertificateKind::Inconclusive ? 2 : 0;
}

int cmd_enumerate(const SpecCli& sc, const OutputCli& oc,
                  const std::string& scope, long long budget, bool collapse,
                  int jobs, std::ostream& out) {
  auto spec = sc.build();
  EnumerationOptions options;
  if (scope == "exhaustive")
    options.scope = EnumerationScope::FullyExhaustive;
  else if (scope != "monotone")
    throw SpecError("--scope: expected monotone or exhaustive");
  if (budget > 0) options.budget = budget;
  options.collapse_permutations = collapse;
  options.jobs = jobs;
  auto reduced = options.scope == EnumerationScope::FullyExhaustive
                     ? round1_weak_dominance(spec)
                     : iterate_strict_dominance(spec,
                                                round1_weak_dominance(spec));
  auto result = enumerate_pure_equilibria(spec, reduced, options);
  oc.write(enumeration_json(spec, result).dump(2), out);
  return result.conclusive ? 0 : 2;
}

int cmd_verify(const SpecCli& sc, const OutputCli& oc,
               const std::string& profile_path, std::ostream& out) {
  auto spec = sc.build();
  std::ifstream f(profile_path);
  if (!f) throw SpecError("--profile: cannot open '" + profile_path + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw SpecError("--profile: " + std::string(e.what()));
  }
  StrategyProfile profile;
  if (doc.is_object() && doc.contains("players")) {
    for (const auto& arr : doc["players"])
      profile.players.push_back(BiddingFunction{arr.get<std::vector<int>>()});
  } else if (doc.is_object() && doc.contains("bid_of")) {
    profile = symmetric_profile(
        BiddingFunction{doc["bid_of"].get<std::vector<int>>()}, spec.n);
  } else {
    throw SpecError("--profile: expected an object with 'players' or "
                    "'bid_of'");
  }
  check_profile(spec, profile);
  auto check = check_equilibrium(spec, profile);
  json result{{"spec", spec_json(spec)},
              {"profile", profile_json(profile)},
              {"is_equilibrium", check.is_equilibrium}};
  if (check.witness) result["witness"] = witness_json(*check.witness);
  oc.write(result.dump(2), out);
  return 0;
}

int cmd_tables(const OutputCli& oc, int which, int jobs, std::ostream& out) {
  if (which != 1 && which != 2)
    throw SpecError("--which: expected 1 (with ties) or 2 (without ties)");
  const TieRule ties = which == 1 ? TieRule::FairTies : TieRule::NoWinnerOnTies;
  EnumerationOptions options;
  options.jobs = jobs;
  std::map<std::pair<int, Column>, bool> filled;
  bool conclusive = true;
  for (const auto& cell : table_cells(which)) {
    auto r = existence_cell(column_structure(cell.column), ties,
                            column_n(cell.column), cell.x, options);
    conclusive &= r.conclusive;
    filled[{cell.valuations, cell.column}] = r.exists;
  }
  const std::vector<Column> columns{Column::FP2, Column::FP3, Column::AP2,
                                    Column::AP3};
  if (oc.format == "json") {
    json cells = json::array();
    for (const auto& [key, exists] : filled)
      cells.push_back(json{{"valuations", key.first},
                           {"column", column_name(key.second)},
                           {"exists", exists}});
    oc.write(json{{"which", which}, {"cells", cells}}.dump(2), out);
  } else {
    std::ostringstream md;
    md << "| Valuations |";
    for (auto c : columns) md << ' ' << column_name(c) << " |";
    md << "\n|---|---|---|---|---|\n";
    for (int row = 6; row <= 10; ++row) {
      md << "| " << row << " |";
      for (auto c : columns) {
        auto it = filled.find({row, c});
        md << ' '
           << (it == filled.end() ? "-" : it->second ? "Yes" : "No") << " |";
      }
      md << '\n';
    }
    oc.write(md.str(), out);
  }
  return conclusive ? 0 : 2;
}

int cmd_asym_fp3(const OutputCli& oc, int x, std::ostream& out) {
  auto profile = construct_asymmetric_fp3(x);
  auto spec = AuctionSpec::canonical_uniform(Structure::FirstPrice,
                                             TieRule::NoWinnerOnTies, 3, x);
  if (oc.format == "csv") {
    oc.write(export_figure1_data(spec, profile), out);
  } else {
    oc.write(json{{"spec", spec_json(spec)},
                  {"profile", profile_json(profile)},
                  {"verified", true}}
                 .dump(2),
             out);
  }
  return 0;
}

int cmd_discretize(const OutputCli& oc, const std::string& structure, int n,
                   const std::string& vbar, int grid_count,
                   std::ostream& out) {
  const Structure s = parse_structure(structure);
  const Rat top = parse_rat_flag("--vbar", vbar);
  if (grid_count < 1) throw SpecError("--grid-count: must be >= 1");
  ContinuousAuction cont =
      s == Structure::AllPay ? ContinuousAuction::uniform_all_pay(n, top)
                             : ContinuousAuction::uniform_first_price(n, top);
  auto analogue = build_discrete_analogue(cont, top / grid_count, grid_count);
  auto report = verify_continuum_match(analogue.spec, analogue.candidate);
  json result{{"spec", spec_json(analogue.spec)},
              {"candidate", function_json(analogue.candidate)},
              {"is_equilibrium", report.is_equilibrium},
              {"tight", report.tight},
              {"intact_gaps", report.intact_gaps}};
  if (report.witness) result["witness"] = witness_json(*report.witness);
  oc.write(result.dump(2), out);
  return 0;
}

int cmd_converge(const OutputCli& oc, const std::string& x,
                 const std::string& deltas, std::ostream& out) {
  auto rows = revenue_convergence(parse_rat_flag("--x", x),
                                  parse_rat_list("--deltas", deltas));
  if (oc.format == "json") {
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back(json{{"delta", rat_json(row.delta)},
                         {"revenue", rat_json(row.revenue)},
                         {"gap", rat_json(row.gap)}});
    oc.write(json{{"rows", arr}}.dump(2), out);
  } else {
    std::ostringstream csv;
    csv << "delta,revenue,gap,gap_decimal\n";
    for (const auto& row : rows)
      csv << to_string(row.delta) << ',' << to_string(row.revenue) << ','
          << to_string(row.gap) << ',' << to_double(row.gap) << '\n';
    oc.write(csv.str(), out);
  }
  return 0;
}

int cmd_thresholds(const OutputCli& oc, int n, int x, std::ostream& out) {
  auto rep = threshold_report(n, x);
  if (oc.format == "markdown") {
    std::ostringstream md;
    md << "| quantity | value |\n|---|---|\n";
    md << "| bidders | " << rep.n << " |\n";
    md << "| top value | " << rep.x << " |\n";
    if (rep.n >= 3) {
      md << "| first-price no-ties nonexistence | "
         << (rep.fp_nonexistence ? "Yes" : "No") << " |\n";
      md << "| first-price critical top (approx) | " << rep.fp_threshold
         << " |\n";
    }
    md << "| all-pay large grid (x >= 10) | "
       << (rep.allpay_large_grid ? "Yes" : "No") << " |\n";
    md << "| all-pay sure-win preference | "
       << (rep.allpay_sure_win ? "Yes" : "No") << " |\n";
    md << "| fair-ties class | " << fair_class_name(rep.fair_ties_class)
       << " |\n";
    oc.write(md.str(), out);
  } else {
    json result{{"n", rep.n},
                {"x", rep.x},
                {"allpay_large_grid", rep.allpay_large_grid},
                {"allpay_sure_win", rep.allpay_sure_win},
                {"fair_ties_class", fair_class_name(rep.fair_ties_class)}};
    if (rep.n >= 3) {
      result["fp_nonexistence"] = rep.fp_nonexistence;
      result["fp_threshold"] = rep.fp_threshold;
    }
    oc.write(result.dump(2), out);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact solver for discrete private-value auction games"};
  app.require_subcommand(1);
  const int default_jobs = std::max(1u, std::thread::hardware_concurrency());

  SpecCli spec_cli;
  std::array<OutputCli, 10> outputs;  // one per subcommand
  auto& [out_describe, out_reduce, out_solve, out_enumerate, out_verify,
         out_tables, out_asym, out_discretize, out_converge, out_thresholds] =
      outputs;
  int exit_code = 0;

  auto* describe = app.add_subcommand("describe",
                                      "Validate a game and print its JSON "
                                      "description");
  auto* reduce = app.add_subcommand("reduce",
                                    "Run the two-stage dominance reduction "
                                    "and report surviving bid sets");
  auto* solve = app.add_subcommand("solve-symmetric",
                                   "Find every symmetric pure equilibrium");
  auto* enumerate = app.add_subcommand("enumerate",
                                       "Enumerate all pure equilibria of "
                                       "the reduced game");
  auto* verify = app.add_subcommand("verify",
                                    "Check a profile from a JSON file "
                                    "against the exact payoffs");
  auto* tables = app.add_subcommand("tables",
                                    "Reproduce an existence grid (1 = with "
                                    "ties, 2 = without)");
  auto* asym = app.add_subcommand("asym-fp3",
                                  "Build and verify the three-bidder "
                                  "two-thirds-line profile");
  auto* discretize = app.add_subcommand("discretize",
                                        "Build a continuum-matching discrete "
                                        "game and verify its candidate");
  auto* converge = app.add_subcommand("converge",
                                      "Half-value revenue against the "
                                      "continuous benchmark as the grid "
                                      "refines");
  auto* thresholds = app.add_subcommand("thresholds",
                                        "Closed-form existence thresholds "
                                        "for given n and x");

  for (auto* cmd : {describe, reduce, solve, enumerate, verify})
    spec_cli.attach(cmd);
  app.footer("Every subcommand accepts --config FILE, a flat key=value file "
             "mirroring its flags; flags given on the command line win.");

  out_describe.attach(describe, "json", {"json"});
  out_reduce.attach(reduce, "json", {"json"});
  int cap = 0;
  bool prune = true;
  out_solve.attach(solve, "json", {"json", "csv"});
  solve->add_option("--cap", cap,
                    "Fair-ties search cap on x (0 keeps the default)");
  solve->add_flag("--no-prune{false}", prune,
                  "Disable prefix pruning (cross-validation runs)");

  std::string scope = "monotone";
  long long budget = 0;
  bool collapse = false;
  int jobs = default_jobs;
  out_enumerate.attach(enumerate, "json", {"json"});
  enumerate->add_option("--scope", scope, "monotone or exhaustive")
      ->capture_default_str();
  enumerate->add_option("--budget", budget,
                        "Node budget (0 keeps the default)");
  enumerate->add_flag("--collapse-permutations", collapse,
                      "Report one profile per player-relabelling orbit");
  enumerate->add_option("--jobs", jobs, "Worker count")->capture_default_str();

  std::string profile_path;
  out_verify.attach(verify, "json", {"json"});
  verify->add_option("--profile", profile_path,
                     "JSON file with 'players' (one bid array each) or a "
                     "symmetric 'bid_of'")
      ->required();

  int which = 0;
  int table_jobs = default_jobs;
  out_tables.attach(tables, "markdown", {"markdown", "json"});
  tables->add_option("--which", which, "1 = with ties, 2 = without ties")
      ->required();
  tables->add_option("--jobs", table_jobs, "Worker count")
      ->capture_default_str();

  int asym_x = 13;
  out_asym.attach(asym, "csv", {"csv", "json"});
  asym->add_option("--x", asym_x, "Top value; not a multiple of 3")
      ->capture_default_str();

  std::string d_structure = "fp", vbar = "1";
  int d_n = 2, grid_count = 1;
  out_discretize.attach(discretize, "json", {"json"});
  discretize->add_option("--structure", d_structure, "fp or ap")
      ->capture_default_str();
  discretize->add_option("--n", d_n, "Number of bidders")
      ->capture_default_str();
  discretize->add_option("--vbar", vbar, "Continuous top value, rational")
      ->required();
  discretize->add_option("--grid-count", grid_count,
                         "Number of value grid points")
      ->required();

  std::string conv_x, conv_deltas;
  out_converge.attach(converge, "csv", {"csv", "json"});
  converge->add_option("--x", conv_x, "Top value, rational")->required();
  converge->add_option("--deltas", conv_deltas,
                       "Comma-separated grid steps, each dividing x")
      ->required();

  int th_n = 2, th_x = 1;
  out_thresholds.attach(thresholds, "json", {"json", "markdown"});
  thresholds->add_option("--n", th_n, "Number of bidders")->required();
  thresholds->add_option("--x", th_x, "Top value index")->required();

  describe->callback(
      [&] { exit_code = cmd_describe(spec_cli, out_describe, out); });
  reduce->callback([&] { exit_code = cmd_reduce(spec_cli, out_reduce, out); });
  solve->callback([&] {
    exit_code = cmd_solve_symmetric(spec_cli, out_solve, cap, prune, out);
  });
  enumerate->callback([&] {
    exit_code = cmd_enumerate(spec_cli, out_enumerate, scope, budget,
                              collapse, jobs, out);
  });
  verify->callback(
      [&] { exit_code = cmd_verify(spec_cli, out_verify, profile_path, out); });
  tables->callback(
      [&] { exit_code = cmd_tables(out_tables, which, table_jobs, out); });
  asym->callback([&] { exit_code = cmd_asym_fp3(out_asym, asym_x, out); });
  discretize->callback([&] {
    exit_code = cmd_discretize(out_discretize, d_structure, d_n, vbar,
                               grid_count, out);
  });
  converge->callback(
      [&] { exit_code = cmd_converge(out_converge, conv_x, conv_deltas, out); });
  thresholds->callback(
      [&] { exit_code = cmd_thresholds(out_thresholds, th_n, th_x, out); });

  try {
    auto expanded = apply_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace auction
