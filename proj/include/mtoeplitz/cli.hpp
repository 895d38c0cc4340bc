#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtoeplitz/bracket.hpp"
#include "mtoeplitz/error.hpp"
#include "mtoeplitz/experiments/checks.hpp"
#include "mtoeplitz/experiments/support_sets.hpp"
#include "mtoeplitz/io/csv.hpp"
#include "mtoeplitz/io/json.hpp"
#include "mtoeplitz/norms.hpp"
#include "mtoeplitz/operator.hpp"
#include "mtoeplitz/rational.hpp"
#include "mtoeplitz/symbol.hpp"
#include "mtoeplitz/symbol_families.hpp"
#include "mtoeplitz/symbol_norms.hpp"

namespace mtoeplitz::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kResource = 2,
  kScope = 3,
  kDispatch = 4,
  kPrecondition = 5,
};

/// Malformed option values, detected before any computation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Value parsing
// ---------------------------------------------------------------------------

inline double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw UsageError(what + ": expected a number, got '" + s + "'");
  return v;
}

/// p, q, r: a number >= 1 or "inf".
inline double parse_exponent(const std::string& s, const std::string& what) {
  if (s == "inf" || s == "infinity") return kInfinity;
  const double v = parse_real(s, what);
  if (!(v >= 1.0)) throw UsageError(what + ": exponent must be >= 1 or inf");
  return v;
}

/// Nonnegative integer, also in scientific form such as 1e6.
inline std::uint64_t parse_count(const std::string& s, const std::string& what) {
  const double v = parse_real(s, what);
  if (!(v >= 0.0) || v > 1.8e19 || std::floor(v) != v) {
    throw UsageError(what + ": expected a nonnegative integer, got '" + s + "'");
  }
  return static_cast<std::uint64_t>(v);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Symbol mini-language: power:a, prodpow:a,b, atom:n (or atom:u/v),
/// cm:@file, mult:@file, tab:@file, inline JSON, or @file / path to a
/// symbol JSON document. Table files hold either a full symbol document or
/// just the table object.
inline SymbolSpec parse_symbol(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return symbol_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("inline symbol JSON: ") + e.what());
    }
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto table = [&](const char* kind, const char* field) {
    if (arg.size() < 2 || arg.front() != '@') throw UsageError(head + " symbols are read from files: " + head + ":@path");
    json doc = read_json_file(arg.substr(1));
    if (doc.is_object() && doc.contains("kind")) return symbol_from_json(doc);
    return symbol_from_json(json{{"kind", kind}, {field, doc}});
  };
  if (head == "power") return SymbolSpec::power(parse_real(arg, "power exponent"));
  if (head == "prodpow") {
    const auto parts = split(arg, ',');
    if (parts.size() != 2) throw UsageError("prodpow needs two exponents: prodpow:a,b");
    return SymbolSpec::product_power(parse_real(parts[0], "prodpow alpha"), parse_real(parts[1], "prodpow beta"));
  }
  if (head == "atom") {
    PositiveRational q(1, 1);
    try {
      q = PositiveRational::parse(arg);
    } catch (const Error&) {
      throw UsageError("atom needs a positive integer or fraction, got '" + arg + "'");
    }
    if (q.is_integer()) return SymbolSpec::atom(q.num());
    return SymbolSpec::tabulated(std::map<PositiveRational, double>{{q, 1.0}});
  }
  if (head == "cm") return table("completely_multiplicative", "prime_values");
  if (head == "mult") return table("multiplicative", "prime_power_values");
  if (head == "tab") {
    if (arg.size() < 2 || arg.front() != '@') throw UsageError("tab symbols are read from files: tab:@path");
    json doc = read_json_file(arg.substr(1));
    if (doc.is_object() && doc.contains("kind")) return symbol_from_json(doc);
    bool rational = false;
    for (const auto& [k, v] : doc.items()) rational = rational || k.find('/') != std::string::npos;
    return symbol_from_json(json{{"kind", rational ? "tab_rationals" : "tab_naturals"}, {"values", doc}});
  }
  const std::string path = !text.empty() && text.front() == '@' ? text.substr(1) : text;
  std::ifstream probe(path);
  if (!probe) throw UsageError("unrecognized symbol '" + text + "'");
  return symbol_from_json(read_json_file(path));
}

/// Test vector for `apply`: ones, unit:c, divisor:p, random:seed, or @file
/// (a JSON array x_1..x_N).
inline TruncatedSequence parse_vector(const std::string& text, std::size_t N) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (text == "ones") return TruncatedSequence(N, 1.0);
  if (head == "unit") {
    const auto c = parse_count(arg, "unit index");
    if (c < 1 || c > N) throw UsageError("unit index outside 1..n");
    return TruncatedSequence::unit(N, c);
  }
  if (head == "divisor") {
    const double p = parse_real(arg, "divisor exponent");
    if (!(p > 1.0 && p < 2.0)) throw UsageError("divisor:p needs 1 < p < 2");
    const auto d = divisor_count_table(N);
    std::vector<double> x(N);
    for (std::size_t n = 1; n <= N; ++n) x[n - 1] = std::pow(static_cast<double>(d[n]), -1.0 / (2.0 - p));
    return TruncatedSequence(std::move(x), p);
  }
  if (head == "random") {
    const auto seed = parse_count(arg, "random seed");
    std::vector<double> x(N);
    for (std::size_t n = 1; n <= N; ++n) x[n - 1] = uniform01(seed, 0, n);
    return TruncatedSequence(std::move(x));
  }
  if (!text.empty() && text.front() == '@') {
    const json doc = read_json_file(text.substr(1));
    if (!doc.is_array()) throw UsageError("vector file must hold a JSON array");
    std::vector<double> x;
    for (const auto& v : doc) x.push_back(v.get<double>());
    return TruncatedSequence(std::move(x));
  }
  throw UsageError("unrecognized vector '" + text + "'");
}

/// 10^3, 10^4, ... up to and including `top`.
inline std::vector<std::uint64_t> decade_schedule(std::uint64_t top, std::uint64_t first = 1000) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = first; m < top; m *= 10) out.push_back(m);
  out.push_back(top);
  return out;
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

/// The parsed invocation: subcommand plus the options given. Serialized into
/// every JSON output; `replay --config file` re-executes it.
struct RunConfig {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> options;  // flags carry ""
  std::vector<std::string> flags;

  json to_json() const {
    json o = json::object();
    for (const auto& [k, v] : options) o[k] = v;
    return {{"subcommand", subcommand}, {"options", o}, {"flags", flags}};
  }

  static RunConfig from_json(const json& j) {
    const json& run = j.contains("run") ? j.at("run") : j;
    RunConfig c;
    try {
      c.subcommand = run.at("subcommand").get<std::string>();
      const json options = run.value("options", json::object());
      const json flags = run.value("flags", json::array());
      for (const auto& [k, v] : options.items()) c.options.emplace_back(k, v.get<std::string>());
      for (const auto& f : flags) c.flags.push_back(f.get<std::string>());
    } catch (const json::exception& e) {
      throw UsageError(std::string("malformed run config: ") + e.what());
    }
    return c;
  }

  std::vector<std::string> args() const {
    std::vector<std::string> out{subcommand};
    for (const auto& [k, v] : options) {
      out.push_back("--" + k);
      out.push_back(v);
    }
    for (const auto& f : flags) out.push_back("--" + f);
    return out;
  }
};

namespace detail {

inline RunConfig capture(const CLI::App& sub) {
  RunConfig c;
  c.subcommand = sub.get_name();
  for (const CLI::Option* o : sub.get_options()) {
    if (o->count() == 0) continue;
    const std::string name = o->get_single_name();
    if (name == "help") continue;
    if (o->get_expected_max() == 0) {
      c.flags.push_back(name);
    } else {
      c.options.emplace_back(name, o->results().back());
    }
  }
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Runs one command; args exclude the program name. Results go to `out`,
/// diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicative Toeplitz operators: truncations, norm brackets and experiment harnesses",
               "mtoeplitz"};
  app.require_subcommand(1, 1);

  struct Settings {
    std::string symbol, p = "2", q = "2", r = "2", n = "", m = "", T = "13", k = "",
                witness = "auto", x = "ones", path = "auto", target, families = "dyadic",
                support = "dyadic", x_rule = "divisor", distribution = "uniform",
                exponents = "1,1,1,1", euler_bound = "1e7", trials = "200", samples = "500",
                levels = "64", direct_levels = "20", config;
    double alpha = 0.6, sigma = 1.0, t_min = 0.0, t_max = 50.0, step = 0.01;
    std::uint64_t seed = 1;
    bool csv = false, json_out = false;
  } s;

  auto add_symbol = [&](CLI::App* c, const std::string& def) {
    c->add_option("--symbol", s.symbol,
                  "power:a | prodpow:a,b | atom:n | cm:@f | mult:@f | tab:@f | JSON | @file (default " +
                      (def.empty() ? std::string("per target") : def) + ")");
  };
  auto add_pq = [&](CLI::App* c) {
    c->add_option("--p", s.p, "input exponent (number or inf)")->capture_default_str();
    c->add_option("--q", s.q, "output exponent (number or inf)")->capture_default_str();
  };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", s.seed, "random seed")->capture_default_str(); };
  auto add_csv = [&](CLI::App* c) { c->add_flag("--csv", s.csv, "write series as CSV (step,name,value)"); };

  auto* matrix = app.add_subcommand("matrix", "dump the N x N truncation a_ij = f(i/j)");
  add_symbol(matrix, "power:2");
  matrix->add_option("--n", s.n, "truncation N")->required();
  matrix->add_flag("--json", s.json_out, "JSON instead of CSV");

  auto* applyc = app.add_subcommand("apply", "y = (M_f x_{<=N})_{<=M}");
  add_symbol(applyc, "power:2");
  applyc->add_option("--n", s.n, "input length N")->required();
  applyc->add_option("--m", s.m, "output length M (default N)");
  applyc->add_option("--x", s.x, "ones | unit:c | divisor:p | random:seed | @file")->capture_default_str();
  applyc->add_option("--path", s.path, "auto | dense | fast")->capture_default_str();
  add_csv(applyc);

  auto* norm = app.add_subcommand("norm", "||f||_r over the positive rationals");
  add_symbol(norm, "power:2");
  norm->add_option("--r", s.r, "exponent r (number or inf)")->capture_default_str();
  norm->add_option("--T", s.T, "enumeration bound for the coprime-pair partial sum");

  auto* scan = app.add_subcommand("scan", "grid scan of |sum_q f(q) q^{it}|");
  add_symbol(scan, "power:2");
  scan->add_option("--t-min", s.t_min)->capture_default_str();
  scan->add_option("--t-max", s.t_max)->capture_default_str();
  scan->add_option("--step", s.step)->capture_default_str();
  scan->add_option("--T", s.T, "support components <= T")->capture_default_str();

  auto* bracketc = app.add_subcommand("bracket", "lower and upper bounds for ||M_f||_{p,q}");
  add_symbol(bracketc, "power:2");
  add_pq(bracketc);
  bracketc->add_option("--witness", s.witness, "auto | delta | diagonal | primorial | ascent | all")
      ->capture_default_str();
  bracketc->add_option("--T", s.T, "largest prime in witness moduli")->capture_default_str();
  bracketc->add_option("--k", s.k, "primorial exponent (default 2)");
  bracketc->add_option("--n", s.n, "ascent index-set size (default 1024)");
  bracketc->add_option("--M", s.m, "witness output truncation (default 65536)");
  add_csv(bracketc);

  auto* verify = app.add_subcommand("verify", "run an experiment harness");
  verify->add_option("--target", s.target, "theorem1 | theorem2 | lemma4 | theorem3 | prop5 | prop6 | dyadic")
      ->required();
  add_symbol(verify, "");
  add_pq(verify);
  verify->add_option("--alpha", s.alpha, "power exponent for the D_alpha harnesses")->capture_default_str();
  verify->add_option("--n", s.n, "truncation N");
  verify->add_option("--m", s.m, "largest truncation M (lemma4)");
  verify->add_option("--T", s.T, "largest prime in the witness schedule (theorem2)")->capture_default_str();
  verify->add_option("--k", s.k, "primorial exponent (theorem2, default 1)");
  verify->add_option("--trials", s.trials, "random trials (theorem1)")->capture_default_str();
  verify->add_option("--distribution", s.distribution, "uniform | heavy (theorem1)")->capture_default_str();
  verify->add_option("--samples", s.samples, "random samples (theorem3)")->capture_default_str();
  verify->add_option("--sigma", s.sigma, "prime decay of the samples (theorem3)")->capture_default_str();
  verify->add_option("--exponents", s.exponents, "a,b,c,d for f,g,h,j = n^-a, ... (lemma4)")
      ->capture_default_str();
  verify->add_option("--euler-bound", s.euler_bound, "prime bound of the Euler products (lemma4)")
      ->capture_default_str();
  verify->add_option("--x-rule", s.x_rule, "divisor | unit | ones (prop5)")->capture_default_str();
  verify->add_option("--support", s.support, "support set (prop6)")->capture_default_str();
  verify->add_option("--levels", s.levels, "dyadic levels (dyadic)")->capture_default_str();
  verify->add_option("--direct-levels", s.direct_levels, "direct cross-check levels (dyadic)")
      ->capture_default_str();
  add_seed(verify);
  add_csv(verify);

  auto* search = app.add_subcommand("search", "rank support families by the growth of ||D_alpha x||_2 / ||x||_p");
  search->add_option("--families", s.families, "comma-separated support sets")->capture_default_str();
  search->add_option("--alpha", s.alpha)->capture_default_str();
  search->add_option("--p", s.p)->capture_default_str();
  search->add_option("--n", s.n, "largest truncation (default 1e6)");
  add_seed(search);
  add_csv(search);

  auto* census = app.add_subcommand("census", "sparsity census of a support set");
  census->add_option("--support", s.support)->capture_default_str();
  census->add_option("--p", s.p)->capture_default_str();
  census->add_option("--n", s.n, "largest X (default 1e7)");
  add_csv(census);

  auto* replay = app.add_subcommand("replay", "re-execute a saved run configuration");
  replay->add_option("--config", s.config, "JSON output or run object of an earlier invocation")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const RunConfig run = detail::capture(*sub);
  if (s.symbol.empty() && sub != verify) s.symbol = "power:2";
  auto emit_json = [&](json j) {
    j["run"] = run.to_json();
    out << j.dump(2) << '\n';
  };

  try {
    if (sub == replay) {
      const auto cfg = RunConfig::from_json(read_json_file(s.config));
      if (cfg.subcommand == "replay") throw UsageError("a replay cannot replay itself");
      return run_cli(cfg.args(), out, err);
    }

    if (sub == matrix) {
      const auto N = parse_count(s.n, "--n");
      const auto f = parse_symbol(s.symbol);
      const auto A = build_matrix(f, N);
      if (!s.json_out) {
        write_csv(out, A);
        return kOk;
      }
      json rows = json::array();
      for (std::size_t i = 1; i <= A.dimension(); ++i) {
        json row = json::array();
        for (std::size_t j = 1; j <= A.dimension(); ++j) row.push_back(A(i, j));
        rows.push_back(row);
      }
      emit_json({{"symbol", symbol_to_json(f)}, {"N", N}, {"matrix", rows}});
      return kOk;
    }

    if (sub == applyc) {
      const auto N = parse_count(s.n, "--n");
      const auto M = s.m.empty() ? N : parse_count(s.m, "--m");
      ApplyPath path = ApplyPath::automatic;
      if (s.path == "dense") path = ApplyPath::dense;
      else if (s.path == "fast") path = ApplyPath::fast;
      else if (s.path != "auto") throw UsageError("--path must be auto, dense or fast");
      const auto f = parse_symbol(s.symbol);
      const auto x = parse_vector(s.x, N);
      const auto y = apply(f, x, M, path);
      if (s.csv) {
        write_csv(out, y);
        return kOk;
      }
      emit_json({{"symbol", symbol_to_json(f)}, {"N", N}, {"M", M}, {"y", y.vector()}});
      return kOk;
    }

    if (sub == norm) {
      const double r = parse_exponent(s.r, "--r");
      const auto f = parse_symbol(s.symbol);
      const auto est = lr_norm(f, r);
      json j = {{"symbol", symbol_to_json(f)}, {"r", extended_real_to_json(r)}};
      j["value"] = est.is_finite() ? json(est.value()) : json("diverges");
      if (norm->count("--T") > 0) {
        const auto part = lr_norm_rationals(f, r, parse_count(s.T, "--T"));
        j["enumeration"] = {{"T", part.enumeration_bound}, {"lower", part.lower}, {"upper", part.upper},
                            {"partial_power", part.partial_power}, {"tail_estimate", part.tail_estimate}};
      }
      emit_json(j);
      return kOk;
    }

    if (sub == scan) {
      const auto f = parse_symbol(s.symbol);
      const auto res = symbol_transform_scan(f, s.t_min, s.t_max, s.step, parse_count(s.T, "--T"));
      emit_json({{"symbol", symbol_to_json(f)}, {"t_star", res.t_star}, {"magnitude", res.magnitude},
                 {"grid_points", res.grid_points}, {"support_points", res.support_points},
                 {"heuristic", res.heuristic}});
      return kOk;
    }

    if (sub == bracketc) {
      const double p = parse_exponent(s.p, "--p");
      const double q = parse_exponent(s.q, "--q");
      BracketOptions opt;
      opt.strategy = parse_witness_strategy(s.witness);
      opt.T = parse_count(s.T, "--T");
      if (!s.k.empty()) opt.k = static_cast<std::uint32_t>(parse_count(s.k, "--k"));
      if (!s.n.empty()) opt.N = parse_count(s.n, "--n");
      if (!s.m.empty()) opt.M = parse_count(s.m, "--M");
      const auto f = parse_symbol(s.symbol);
      require_exponent_pair(p, q);
      const auto b = bracket(f, p, q, opt);
      json j = bracket_to_json(b);
      if (s.csv) {
        out << "name,value\n";
        for (const auto& [k, v] : j.items()) {
          if (!v.is_object()) out << k << ',' << (v.is_number() ? format_real(v.get<double>()) : v.dump()) << '\n';
        }
        return kOk;
      }
      j["symbol"] = symbol_to_json(f);
      emit_json(j);
      return kOk;
    }

    ExperimentReport rep;
    if (sub == verify) {
      const std::string& t = s.target;
      static const std::vector<std::string> kTargets = {"theorem1", "theorem2", "lemma4", "theorem3",
                                                        "prop5",    "prop6",    "dyadic"};
      if (std::find(kTargets.begin(), kTargets.end(), t) == kTargets.end()) {
        throw UnknownTarget("unknown verify target '" + t + "'");
      }
      const double p = parse_exponent(s.p, "--p");
      const double q = parse_exponent(s.q, "--q");
      if (t == "theorem1") {
        const auto trials = parse_count(s.trials, "--trials");
        const auto N = s.n.empty() ? 1024 : parse_count(s.n, "--n");
        const auto dist = parse_vector_distribution(s.distribution);
        if (s.symbol.empty()) {
          rep = check_theorem1_suite(trials, N, s.seed);
        } else {
          const auto f = parse_symbol(s.symbol);
          require_exponent_pair(p, q);
          rep = check_theorem1(f, p, q, trials, N, s.seed, dist);
        }
      } else if (t == "theorem2") {
        const auto f = parse_symbol(s.symbol.empty() ? "power:1" : s.symbol);
        require_exponent_pair(p, q);
        const auto T = parse_count(s.T, "--T");
        const auto k = s.k.empty() ? 1 : parse_count(s.k, "--k");
        std::vector<WitnessStep> sched;
        for (std::uint64_t t2 : sieve_primes(T)) sched.push_back({t2, static_cast<std::uint32_t>(k)});
        rep = check_theorem2_convergence(f, p, q, sched,
                                         s.m.empty() ? std::uint64_t{1} << 16 : parse_count(s.m, "--m"));
      } else if (t == "lemma4") {
        const auto M = s.m.empty() ? 1'000'000 : parse_count(s.m, "--m");
        const auto e = split(s.exponents, ',');
        if (e.size() != 4) throw UsageError("--exponents needs four values a,b,c,d");
        std::vector<PrimeValues> fs;
        for (const auto& v : e) fs.push_back(prime_power_rule(parse_real(v, "--exponents")));
        rep = check_lemma4(fs[0], fs[1], fs[2], fs[3], decade_schedule(M), parse_count(s.euler_bound, "--euler-bound"));
      } else if (t == "theorem3") {
        const auto f = parse_symbol(s.symbol.empty() ? "power:0.6" : s.symbol);
        const double pp = verify->count("--p") ? p : 1.5;
        rep = check_theorem3_ratio(f, pp, parse_count(s.samples, "--samples"), s.seed,
                                   s.n.empty() ? 100'000 : parse_count(s.n, "--n"), s.sigma);
      } else if (t == "prop5") {
        const double pp = verify->count("--p") ? p : 1.5;
        rep = check_prop5(s.alpha, pp, parse_x_rule(s.x_rule),
                          decade_schedule(s.n.empty() ? 1'000'000 : parse_count(s.n, "--n")));
      } else if (t == "prop6") {
        const double pp = verify->count("--p") ? p : 1.5;
        rep = check_prop6_gamma(s.alpha, pp, parse_support_set(s.support),
                                decade_schedule(s.n.empty() ? 1'000'000 : parse_count(s.n, "--n")));
      } else {
        const double pp = verify->count("--p") ? p : 1.5;
        rep = check_dyadic_example(s.alpha, pp, static_cast<std::uint32_t>(parse_count(s.levels, "--levels")),
                                   static_cast<std::uint32_t>(parse_count(s.direct_levels, "--direct-levels")));
      }
    } else if (sub == search) {
      std::vector<SupportSetSpec> fams;
      // Families are separated by ';' when a list: set needs commas.
      for (const auto& name : split(s.families, s.families.find(';') != std::string::npos ? ';' : ',')) {
        fams.push_back(parse_support_set(name));
      }
      const double p = search->count("--p") ? parse_exponent(s.p, "--p") : 1.5;
      rep = search_counterexample(s.alpha, p, fams,
                                  decade_schedule(s.n.empty() ? 1'000'000 : parse_count(s.n, "--n")), s.seed);
    } else if (sub == census) {
      const double p = census->count("--p") ? parse_exponent(s.p, "--p") : 1.5;
      rep = sparsity_census(parse_support_set(s.support), p,
                            decade_schedule(s.n.empty() ? 10'000'000 : parse_count(s.n, "--n")));
    }
    if (s.csv) {
      write_csv(out, rep);
    } else {
      emit_json(report_to_json(rep));
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownTarget& e) {
    err << "dispatch error: " << e.what() << '\n';
    return kDispatch;
  } catch (const Error& e) {
    switch (e.category()) {
      case ErrorCategory::resource:
        err << "resource limit: " << e.what() << '\n';
        return kResource;
      case ErrorCategory::scope:
        err << "outside scope: " << e.what() << '\n';
        return kScope;
      case ErrorCategory::precondition:
        err << "precondition failed: " << e.what() << '\n';
        return kPrecondition;
    }
    return kPrecondition;
  } catch (const json::exception& e) {
    err << "precondition failed: malformed JSON input: " << e.what() << '\n';
    return kPrecondition;
  }
}

}  // namespace mtoeplitz::cli
