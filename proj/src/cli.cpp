#include "fesenko/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fesenko/analysis.hpp"
#include "fesenko/error.hpp"
#include "fesenko/filtration.hpp"
#include "fesenko/recipes.hpp"
#include "json.hpp"

namespace fesenko::cli {

namespace {

using nlohmann::json;

struct Outcome {
  json report;
  std::string csv;
  std::string text;
  /// {code, message} per failed check.
  std::vector<json> failures;

  void fail(std::string code, std::string message) {
    failures.push_back({{"code", std::move(code)}, {"message", std::move(message)}});
  }
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

Outcome run_lcs(const GroupParams& params, int n_max) {
  const std::vector<EchelonBasis> series = lcs_series(params, n_max);
  const LcsReport rep = lcs_report(series);
  Outcome o;
  o.report = to_json(rep);

  std::ostringstream csv, text;
  csv << "n,gamma_size,delta_size,delta_minus,delta_zero,stable,discrepancies,unflagged\n";
  for (const LcsRow& row : rep.rows) {
    std::size_t all = 0, unflagged = 0;
    for (const DepthSetReport& part : row.parts)
      for (const Discrepancy& d : part.discrepancies) {
        ++all;
        if (d.zone != Zone::unflagged) continue;
        ++unflagged;
        o.fail("UNFLAGGED_DISCREPANCY", "n = " + std::to_string(row.n) + ", " + part.part + ", depth " +
                                            std::to_string(d.depth) + ": " + std::string(to_string(d.kind)));
      }
    const std::size_t gamma_size = row.computed.count_below(params.stable_below());
    std::size_t minus = 0, zero = 0;
    if (row.delta)
      for (int d : row.delta->members()) (depth_part(d, params) == 0 ? minus : zero)++;
    csv << row.n << ',' << gamma_size << ',';
    if (row.delta)
      csv << row.delta->size() << ',' << minus << ',' << zero;
    else
      csv << ",,";
    csv << ',' << yes_no(row.stable) << ',' << all << ',' << unflagged << '\n';

    text << "n=" << row.n << "  |Gamma_n below NT-q|=" << gamma_size;
    if (row.delta) text << "  Delta_n={" << join(row.delta->members()) << "}";
    text << "  stable=" << yes_no(row.stable) << "  rule=" << row.predicted.rule << '\n';
    for (const DepthSetReport& part : row.parts)
      for (const Discrepancy& d : part.discrepancies)
        text << "    " << part.part << " depth " << d.depth << "  " << to_string(d.kind) << "  " << to_string(d.zone)
             << '\n';
  }
  o.csv = csv.str();
  o.text = text.str();
  return o;
}

Outcome run_width(const GroupParams& params, int n_max) {
  const WidthReport rep = width_table(params, n_max);
  Outcome o;
  o.report = to_json(rep);
  o.csv = to_csv(rep);

  std::ostringstream text;
  for (const WidthRow& row : rep.rows)
    text << "n=" << row.n << "  |Delta_n|=" << row.delta_size << " (minus " << row.delta_minus_size << ", zero "
         << row.delta_zero_size << ")  log_p index=" << row.log_p_index << "  stable=" << yes_no(row.stable) << '\n';
  const WidthSummary& s = rep.summary;
  text << "eventually constant from n=" << s.eventual_from << ": " << yes_no(s.eventually_constant);
  if (s.eventual_value) text << " (value " << *s.eventual_value << ")";
  text << ", stable rows considered " << s.stable_rows_considered << '\n';
  for (const ClaimCheck& c : rep.claims) {
    text << "claim \"" << c.name << "\": claimed " << c.claimed << ", computed "
         << (c.computed ? std::to_string(*c.computed) : "n/a") << ", match " << yes_no(c.match) << ", zone "
         << to_string(c.zone) << '\n';
    if (!c.match && c.zone == Zone::unflagged)
      o.fail(c.computed ? "CLAIM_MISMATCH" : "UNDECIDED",
             c.name + ": claimed " + std::to_string(c.claimed) +
                 (c.computed ? ", computed " + std::to_string(*c.computed) : ", no stable rows to decide"));
  }
  if (!s.eventually_constant)
    o.fail("NOT_EVENTUALLY_CONSTANT", std::to_string(s.stable_rows_considered) + " stable rows with n >= " +
                                          std::to_string(s.eventual_from) + "; at least 2 equal values needed");
  o.text = text.str();
  return o;
}

struct Tally {
  std::size_t pass = 0, fail = 0, inapplicable = 0;
};

json verdict_block(const std::vector<RecipeVerdict>& vs, Outcome& o, Tally& t) {
  json list = json::array();
  for (const RecipeVerdict& v : vs) {
    list.push_back(to_json(v));
    switch (v.status) {
      case VerdictStatus::pass: ++t.pass; break;
      case VerdictStatus::inapplicable: ++t.inapplicable; break;
      case VerdictStatus::fail:
        ++t.fail;
        o.fail("VERDICT_FAIL", "recipe " + std::to_string(v.recipe) + " (i, j, a, b) = (" + std::to_string(v.i) +
                                   ", " + std::to_string(v.j) + ", " + std::to_string(v.a) + ", " +
                                   std::to_string(v.b) + ")");
        break;
    }
  }
  return {{"verdicts", std::move(list)}, {"pass", t.pass}, {"fail", t.fail}, {"inapplicable", t.inapplicable}};
}

// Smallest j >= q^2 + q with p dividing neither j nor j + 1, and the first
// later j divisible by p with p not dividing j + 1.
std::vector<RealizeRequest> default_realizations(const GroupParams& params) {
  const int p = params.p(), q = params.q();
  int j = q * q + q;
  while (j % p == 0 || (j + 1) % p == 0) ++j;
  int jc = j + 1;
  while (jc % p != 0 || (jc + 1) % p == 0) ++jc;
  std::vector<RealizeRequest> out;
  for (int jj : {j, jc})
    for (int s = 0; s <= params.r(); ++s) out.push_back({jj + 1, jj, s});
  return out;
}

Outcome run_recipes(const GroupParams& params, const RunConfig& cfg) {
  Outcome o;
  const ConventionCalibration cal = calibrate_convention();
  Tally t1, t2;
  const json one = verdict_block(random_recipe_one_trials(params, cfg.trials, cfg.seed), o, t1);
  std::vector<RecipeVerdict> two = exhaustive_recipe_two_trials(params, 40, 5, cfg.seed);
  const std::size_t exhaustive = two.size();
  for (RecipeVerdict& v : random_recipe_two_trials(params, cfg.trials, cfg.seed)) two.push_back(std::move(v));
  json two_json = verdict_block(two, o, t2);
  two_json["exhaustive_instances"] = exhaustive;

  const std::vector<RealizeRequest> requests = cfg.realize.empty() ? default_realizations(params) : cfg.realize;
  json three = json::array();
  std::ostringstream text;
  text << "calibration: unit u_of_v=" << cal.unit_u_of_v << ", v_of_u=" << cal.unit_v_of_u
       << ", chosen=" << to_string(cal.chosen) << '\n';
  text << "recipe 1: " << t1.pass << " pass, " << t1.fail << " fail, " << t1.inapplicable << " inapplicable\n";
  text << "recipe 2: " << t2.pass << " pass, " << t2.fail << " fail, " << t2.inapplicable << " inapplicable\n";
  std::ostringstream csv;
  csv << "i,j,s,target_depth,status,factors,verified\n";
  for (const RealizeRequest& rq : requests) {
    const RealizationResult res = realize_recipe_three(rq.i, rq.j, rq.s, params);
    three.push_back(to_json(res));
    if (res.status == RealizationStatus::unrealized)
      o.fail("UNREALIZED", "(i, j, s) = (" + std::to_string(rq.i) + ", " + std::to_string(rq.j) + ", " +
                               std::to_string(rq.s) + "): " + res.message);
    text << "recipe 3 (i=" << rq.i << ", j=" << rq.j << ", s=" << rq.s << "): " << to_string(res.status);
    if (res.status == RealizationStatus::precondition)
      text << " (" << res.message << ")";
    else
      text << ", target " << res.target_depth << ", " << res.factor_count() << " factors";
    text << '\n';
    csv << rq.i << ',' << rq.j << ',' << rq.s << ',' << res.target_depth << ',' << to_string(res.status) << ','
        << res.factor_count() << ',' << yes_no(res.verified) << '\n';
  }

  o.report = {{"seed", cfg.seed},
              {"trials", cfg.trials},
              {"calibration",
               {{"unit_u_of_v", cal.unit_u_of_v},
                {"unit_v_of_u", cal.unit_v_of_u},
                {"chosen", std::string(to_string(cal.chosen))}}},
              {"recipe_one", one},
              {"recipe_two", std::move(two_json)},
              {"recipe_three", std::move(three)}};
  o.text = text.str();
  o.csv = csv.str();
  return o;
}

Outcome run_obliquity(const GroupParams& params, int n_max) {
  const ObliquityReport rep = obliquity_table(params, n_max);
  Outcome o;
  o.report = to_json(rep);
  o.csv = to_csv(rep);
  std::ostringstream text;
  for (const ObliquityRow& row : rep.rows) {
    text << "n=" << row.n << "  threshold=" << row.threshold << "  witness=" << row.witness_depth
         << " (in H_n " << yes_no(row.witness_in_hn) << ", in gamma_{n+1} " << yes_no(row.witness_in_gamma_next)
         << ")  index exponent=" << row.index_exponent << "  fact1=" << yes_no(row.fact_one)
         << "  fact2=" << yes_no(row.fact_two) << '\n';
    if (!row.fact_one)
      o.fail("FACT_FAILED", "n = " + std::to_string(row.n) + ": min depth " +
                                (row.min_depth ? std::to_string(*row.min_depth) : "none") + ", predicted " +
                                std::to_string(row.predicted_min_depth));
    if (!row.fact_two)
      o.fail("FACT_FAILED", "n = " + std::to_string(row.n) + ": min p-divisible depth " +
                                (row.min_divisible_depth ? std::to_string(*row.min_divisible_depth) : "none") +
                                ", predicted " + std::to_string(row.predicted_min_divisible_depth));
  }
  if (!rep.monotone_increasing) o.fail("NOT_MONOTONE", "index exponents are not strictly increasing");
  o.text = text.str();
  return o;
}

Outcome run_stability(const GroupParams& small, const GroupParams& large, int n_max) {
  std::vector<EchelonBasis> a, b;
  if (thread_budget() >= 2) {
    auto fa = std::async(std::launch::async, [&] { return lcs_series(small, n_max); });
    b = lcs_series(large, n_max);
    a = fa.get();
  } else {
    a = lcs_series(small, n_max);
    b = lcs_series(large, n_max);
  }
  const StabilityReport rep = stability_check(a, b);
  Outcome o;
  o.report = to_json(rep);
  std::ostringstream csv, text;
  csv << "n,only_small,only_large\n";
  text << "NT " << small.nt() << " vs " << large.nt() << ", compared below " << rep.compared_below
       << ": agree=" << yes_no(rep.agree) << '\n';
  for (const StabilityMismatch& m : rep.mismatches) {
    csv << m.n << ',' << join(m.only_small) << ',' << join(m.only_large) << '\n';
    text << "  n=" << m.n << " only small {" << join(m.only_small) << "} only large {" << join(m.only_large)
         << "}\n";
    o.fail("STABILITY_MISMATCH", "n = " + std::to_string(m.n));
  }
  o.csv = csv.str();
  o.text = text.str();
  return o;
}

Outcome run_oracle(const GroupParams& params, int n_max) {
  const BruteLcs brute = brute_lcs_with_orders(params, n_max);
  const std::vector<EchelonBasis> series = lcs_series(params, n_max);
  Outcome o;
  json rows = json::array();
  std::ostringstream csv, text;
  csv << "n,engine,brute,order,slots,match\n";
  for (int n = 1; n <= n_max; ++n) {
    const DepthSet engine = depth_set(series[n - 1]);
    const DepthSet& bf = brute.depth_sets[n - 1];
    const long long order = brute.orders[n - 1];
    long long expected = 1;
    for (std::size_t k = 0; k < series[n - 1].size(); ++k) expected *= params.p();
    const bool match = engine == bf && order == expected;
    rows.push_back({{"n", n},
                    {"engine", engine.members()},
                    {"brute", bf.members()},
                    {"order", order},
                    {"slots", series[n - 1].size()},
                    {"match", match}});
    csv << n << ',' << join(engine.members()) << ',' << join(bf.members()) << ',' << order << ','
        << series[n - 1].size() << ',' << yes_no(match) << '\n';
    text << "n=" << n << "  engine {" << join(engine.members()) << "}  brute {" << join(bf.members())
         << "}  order " << order << "  match " << yes_no(match) << '\n';
    if (!match) o.fail("ORACLE_MISMATCH", "n = " + std::to_string(n));
  }
  o.report = {{"rows", std::move(rows)}};
  o.csv = csv.str();
  o.text = text.str();
  return o;
}

// ---------------------------------------------------------------------------

int default_n_max(const std::string& sub) {
  if (sub == "obliquity" || sub == "stability") return 5;
  if (sub == "oracle") return 4;
  return 8;
}

json diagnostic(std::string_view code, const std::string& message, const std::string& sub) {
  return {{"diagnostic", {{"code", code}, {"message", message}, {"subcommand", sub}}}};
}

std::string header_line(const RunConfig& cfg, const GroupParams& params) {
  std::ostringstream h;
  h << "# " << tool_name << ' ' << tool_version << " subcommand=" << cfg.subcommand << " p=" << params.p()
    << " r=" << params.r() << " q=" << params.q() << " NT=" << params.nt() << " NS=" << params.ns()
    << " convention=" << to_string(params.convention()) << " guard_band=[" << params.stable_below() << ','
    << params.nt() << ") n_max=" << cfg.n_max;
  if (cfg.subcommand == "recipes") h << " seed=" << cfg.seed << " trials=" << cfg.trials;
  if (cfg.subcommand == "stability") h << " NT_large=" << cfg.nt_large;
  h << '\n';
  return h.str();
}

json envelope(const RunConfig& cfg, const GroupParams& params) {
  json p = to_json(params);
  p["stable_below"] = params.stable_below();
  json e = {{"tool", {{"name", tool_name}, {"version", tool_version}}},
            {"subcommand", cfg.subcommand},
            {"params", std::move(p)},
            {"guard_band", {{"from", params.stable_below()}, {"to", params.nt()}, {"width", params.q()}}},
            {"n_max", cfg.n_max}};
  if (cfg.subcommand == "recipes") e["seed"] = cfg.seed;
  if (cfg.subcommand == "stability") e["nt_large"] = cfg.nt_large;
  return e;
}

RealizeRequest parse_realize(const std::string& s) {
  RealizeRequest r{};
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> r.i >> c1 >> r.j >> c2 >> r.s) || c1 != ',' || c2 != ',' || !in.eof())
    throw Error(ErrorCode::invalid_parameter, "--realize expects i,j,s, got '" + s + "'");
  return r;
}

}  // namespace

unsigned thread_budget() {
  if (const char* env = std::getenv("FWL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "json", convention;
  std::vector<std::string> realize;

  CLI::App app{"Lower central series and width computations for Fesenko groups T(r) over F_p"};
  app.name(std::string(tool_name));
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version));

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"lcs", "depth sets of the lower central series with closed-form comparison"},
      {"width", "|Delta_n| table and width claims"},
      {"recipes", "seeded commutator recipe verdicts and constructive realizations"},
      {"obliquity", "obliquity witness table"},
      {"stability", "compare depth sets at two horizons"},
      {"oracle", "cross-check against brute-force enumeration (tiny horizons)"}};
  for (const auto& [name, desc] : subs) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--p", cfg.p, "odd prime p")->capture_default_str();
    sc->add_option("--r", cfg.r, "q = p^r")->capture_default_str();
    sc->add_option("--nt", cfg.nt, "depth horizon NT (default 120 for r = 1, 60 otherwise)");
    sc->add_option("--n-max", cfg.n_max, "number of lower central series terms");
    sc->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sc->add_option("--out", cfg.out, "output file (default stdout)");
    sc->add_option("--convention", convention, "override the product convention")
        ->check(CLI::IsMember({"u_of_v", "v_of_u"}));
    if (name == "recipes") {
      sc->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
      sc->add_option("--trials", cfg.trials, "randomized instances per recipe")->capture_default_str();
      sc->add_option("--realize", realize, "constructive instance i,j,s (repeatable)");
    }
    if (name == "stability") sc->add_option("--nt-large", cfg.nt_large, "second horizon (default 2 NT)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << '\n';
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << diagnostic("USAGE", e.what(), "").dump() << '\n';
    return exit_usage;
  }

  for (const auto& [name, desc] : subs)
    if (app.got_subcommand(name)) cfg.subcommand = name;
  cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  if (!convention.empty()) cfg.convention = convention_from_string(convention);

  std::optional<GroupParams> params;
  std::optional<GroupParams> large;
  try {
    if (cfg.nt == 0) cfg.nt = cfg.r == 1 ? 120 : 60;
    if (cfg.n_max == 0) cfg.n_max = default_n_max(cfg.subcommand);
    if (cfg.n_max < 1) throw Error(ErrorCode::invalid_parameter, "--n-max must be at least 1");
    if (cfg.trials < 1) throw Error(ErrorCode::invalid_parameter, "--trials must be at least 1");
    for (const std::string& s : realize) cfg.realize.push_back(parse_realize(s));
    params.emplace(cfg.p, cfg.r, cfg.nt, cfg.convention.value_or(calibrated_convention));
    if (cfg.subcommand == "stability") {
      if (cfg.nt_large == 0) cfg.nt_large = 2 * cfg.nt;
      if (cfg.nt_large <= cfg.nt) throw Error(ErrorCode::invalid_parameter, "--nt-large must exceed --nt");
      large = params->with_horizon(cfg.nt_large);
    }
  } catch (const Error& e) {
    err << diagnostic(to_string(e.code()), e.what(), cfg.subcommand).dump() << '\n';
    return exit_usage;
  }

  Outcome o;
  try {
    if (cfg.subcommand == "lcs") o = run_lcs(*params, cfg.n_max);
    else if (cfg.subcommand == "width") o = run_width(*params, cfg.n_max);
    else if (cfg.subcommand == "recipes") o = run_recipes(*params, cfg);
    else if (cfg.subcommand == "obliquity") o = run_obliquity(*params, cfg.n_max);
    else if (cfg.subcommand == "stability") o = run_stability(*params, *large, cfg.n_max);
    else o = run_oracle(*params, cfg.n_max);
  } catch (const Error& e) {
    // Horizon too small for the requested rows and similar parameter limits.
    err << diagnostic(to_string(e.code()), e.what(), cfg.subcommand).dump() << '\n';
    return exit_usage;
  }

  const bool pass = o.failures.empty();
  std::string body;
  if (cfg.format == Format::json) {
    json doc = envelope(cfg, *params);
    doc["report"] = std::move(o.report);
    doc["status"] = pass ? "PASS" : "FAIL";
    doc["diagnostics"] = o.failures;
    body = doc.dump(2) + '\n';
  } else {
    body = header_line(cfg, *params) + (cfg.format == Format::csv ? o.csv : o.text);
    if (cfg.format == Format::text) body += std::string("status: ") + (pass ? "PASS" : "FAIL") + '\n';
  }

  if (cfg.out.empty()) {
    out << body;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!(file << body)) {
      err << diagnostic("IO", "cannot write " + cfg.out, cfg.subcommand).dump() << '\n';
      return exit_usage;
    }
  }
  for (const json& f : o.failures) err << json{{"diagnostic", f}}.dump() << '\n';
  return pass ? exit_pass : exit_failure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back(tool_name.data());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fesenko::cli
