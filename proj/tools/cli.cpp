#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "CLI11.hpp"
#include "catlab/bank_io.hpp"
#include "catlab/counterexample.hpp"
#include "catlab/errors.hpp"
#include "catlab/simulator.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace catlab::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view s, std::string_view what) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput("bad number '" + std::string(s) + "' in " + std::string(what));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::vector<double> parse_double_list(std::string_view s, std::string_view what) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(parse_double(part, what));
  return out;
}

// Flags shared by simulate and mse-compare. Field names mirror the flag names,
// which are also the keys of the manifest's config object.
struct SimArgs {
  std::string model = "rasch";
  double theta = 0.0;
  std::size_t n_items = 400;
  std::size_t replications = 2000;
  std::uint64_t seed = 42;
  std::string out = ".";
  std::string a_schedule;  // simulate only; empty means const:1
  double c = 0.0;
  double a_min = 0.5;
  double a_max = 2.0;
  double delta0 = 0.5;
  double b1 = 0.0;
  double eps0 = 1.0;
  std::string b_rule = "offset";
  std::string checkpoints;
  std::string bank;  // simulate only
  bool svg = false;
  std::string standardization = "information";
  std::string solver = "newton";
  unsigned threads = 0;
};

struct DivergeArgs {
  double theta = 0.0;
  double theta0 = -2.7;
  double eps0 = 1.0;
  std::size_t n0 = 0;
  std::size_t horizon = 200;
  std::string out = ".";
};

template <class T>
CLI::Option* flag(CLI::App* cmd, const std::string& name, T& var, const std::string& help) {
  return cmd->add_option(name, var, help)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->capture_default_str();
}

void add_sim_options(CLI::App* cmd, SimArgs& a, bool single_run) {
  flag(cmd, "--model", a.model, "rasch | 2pl | 3pl")
      ->check(CLI::IsMember({"rasch", "1pl", "2pl", "3pl"}));
  flag(cmd, "--theta", a.theta, "true ability");
  flag(cmd, "--n-items", a.n_items, "test length");
  flag(cmd, "--replications", a.replications, "Monte Carlo replications");
  flag(cmd, "--seed", a.seed, "master seed");
  flag(cmd, "--out", a.out, "output directory");
  if (single_run) {
    flag(cmd, "--a-schedule", a.a_schedule,
         "const:A | asc[:LO:HI] | desc[:HI:LO] | strat:L1,L2:BLOCK | explicit:A1,A2,... | cubic");
    flag(cmd, "--bank", a.bank, "finite item bank CSV (a,b[,c])");
  }
  flag(cmd, "--c", a.c, "guessing parameter for every item");
  flag(cmd, "--a-min", a.a_min, "lower discrimination bound m");
  flag(cmd, "--a-max", a.a_max, "upper discrimination bound M");
  flag(cmd, "--delta0", a.delta0, "guessing ceiling is 1 - delta0");
  flag(cmd, "--b1", a.b1, "first item difficulty");
  flag(cmd, "--eps0", a.eps0, "initialization step size");
  flag(cmd, "--b-rule", a.b_rule, "plain | offset")->check(CLI::IsMember({"plain", "offset"}));
  flag(cmd, "--checkpoints", a.checkpoints, "comma-separated test lengths");
  cmd->add_flag("--svg", a.svg, "also write an SVG plot of MSE against n");
  flag(cmd, "--standardization", a.standardization, "information | sum-a2")
      ->check(CLI::IsMember({"information", "sum-a2"}));
  flag(cmd, "--solver", a.solver, "newton | bisection")
      ->check(CLI::IsMember({"newton", "bisection"}));
  flag(cmd, "--threads", a.threads, "worker threads (0: auto; capped by CAT_LAB_THREADS)");
  cmd->add_option("--config", "JSON file of flag values (flags on the command line win)");
}

ordered_json sim_config_json(const SimArgs& a, const std::vector<std::size_t>& checkpoints,
                             bool single_run) {
  std::string cps;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    cps += (i ? "," : "") + std::to_string(checkpoints[i]);
  }
  ordered_json j;
  j["model"] = a.model;
  j["theta"] = a.theta;
  j["n-items"] = a.n_items;
  j["replications"] = a.replications;
  j["seed"] = a.seed;
  j["out"] = a.out;
  if (single_run) j["a-schedule"] = a.a_schedule;
  j["c"] = a.c;
  j["a-min"] = a.a_min;
  j["a-max"] = a.a_max;
  j["delta0"] = a.delta0;
  j["b1"] = a.b1;
  j["eps0"] = a.eps0;
  j["b-rule"] = a.b_rule;
  j["checkpoints"] = cps;
  if (single_run) j["bank"] = a.bank;
  j["svg"] = a.svg;
  j["standardization"] = a.standardization;
  j["solver"] = a.solver;
  j["threads"] = a.threads;
  return j;
}

SimulationConfig build_config(const SimArgs& a, const ASchedule& schedule) {
  SimulationConfig cfg;
  cfg.theta_true = a.theta;
  cfg.model = parse_model(a.model);
  cfg.policy.b1 = a.b1;
  cfg.policy.eps0 = a.eps0;
  cfg.policy.a_schedule = schedule;
  cfg.policy.a_min = a.a_min;
  cfg.policy.a_max = a.a_max;
  cfg.policy.delta0 = a.delta0;
  if (a.c != 0.0) cfg.policy.c_rule = guessing::Constant{a.c};
  cfg.policy.b_rule = a.b_rule == "plain" ? DifficultyRule::PlainTheta
                                          : DifficultyRule::InfoOptimalOffset;
  cfg.n_items = a.n_items;
  cfg.replications = a.replications;
  cfg.master_seed = a.seed;
  cfg.checkpoints = parse_size_list(a.checkpoints);
  cfg.solver.method = a.solver == "bisection" ? RootMethod::Bisection : RootMethod::SafeguardedNewton;
  cfg.standardization = a.standardization == "sum-a2" ? Standardization::SumASquared
                                                      : Standardization::Information;
  cfg.threads = resolve_threads(a.threads, std::getenv("CAT_LAB_THREADS"));
  if (!std::isfinite(a.theta)) throw InvalidInput("theta must be finite");
  if (a.replications == 0) throw InvalidInput("replications must be >= 1");
  return cfg;
}

// Rejects configurations that could only fail inside the replications.
void preflight(const SimulationConfig& cfg, std::ostream& err) {
  const auto issues = validate_policy(cfg.policy, cfg.n_items);
  std::string violations;
  for (const auto& issue : issues) {
    if (issue.severity == PolicyIssue::Severity::Warning) {
      err << "warning: " << issue.message << "\n";
    } else {
      violations += "\n  " + issue.message;
    }
  }
  if (!violations.empty()) throw UsageError("invalid design policy:" + violations);
  if (cfg.bank.is_idealized()) {
    for (std::size_t k = 1; k <= cfg.n_items; ++k) {
      const Item probe(a_at(cfg.policy.a_schedule, k, cfg.n_items), 0.0,
                       c_at(cfg.policy.c_rule, k));
      if (!conforms(probe, cfg.model)) {
        throw UsageError("step " + std::to_string(k) + " item (a = " + format_double(probe.a()) +
                         ", c = " + format_double(probe.c()) + ") is not a " +
                         std::string(to_string(cfg.model)) + " item");
      }
    }
  }
  resolve_checkpoints(cfg);
}

ItemBank load_bank(const std::string& path, ModelKind model, std::size_t n_items) {
  const auto parsed = load_bank_csv(path);
  if (!parsed.ok()) {
    std::string msg = "bank " + path + " is invalid:";
    for (const auto& e : parsed.errors) msg += "\n  line " + std::to_string(e.line) + ": " + e.message;
    throw DataError(msg);
  }
  for (std::size_t i = 0; i < parsed.items.size(); ++i) {
    if (!conforms(parsed.items[i], model)) {
      throw DataError("bank item " + std::to_string(i + 1) + " is not a " +
                      std::string(to_string(model)) + " item");
    }
  }
  if (parsed.items.size() < n_items) {
    throw DataError("bank has " + std::to_string(parsed.items.size()) + " items, test needs " +
                    std::to_string(n_items));
  }
  return ItemBank::finite(parsed.items);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::string summary_csv(const SummaryTable& table) {
  std::string o = "n,bias,variance,mse,info_ratio,std_err_var,ks_stat,fallback_count\n";
  for (const auto& r : table.rows) {
    o += std::to_string(r.n) + "," + format_double(r.bias) + "," + format_double(r.variance) + "," +
         format_double(r.mse) + "," + (r.info_ratio ? format_double(*r.info_ratio) : "") + "," +
         format_double(r.std_err_var) + "," + format_double(r.ks_stat) + "," +
         std::to_string(r.fallback_count) + "\n";
  }
  return o;
}

Series mse_series(const std::string& label, const SummaryTable& table) {
  Series s{label, {}, {}};
  for (const auto& r : table.rows) {
    s.x.push_back(static_cast<double>(r.n));
    s.y.push_back(r.mse);
  }
  return s;
}

void write_manifest(const fs::path& dir, const std::string& command, const ordered_json& config,
                    const ordered_json& seed, const std::vector<std::string>& artifacts) {
  ordered_json m;
  m["command"] = command;
  m["config"] = config;
  m["seed"] = seed;
  m["version"] = CATLAB_VERSION;
  m["artifacts"] = artifacts;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

int cmd_simulate(const SimArgs& a, std::ostream& out, std::ostream& err) {
  SimArgs args = a;
  if (args.a_schedule.empty()) args.a_schedule = "const:1";
  SimulationConfig cfg;
  try {
    cfg = build_config(args, parse_a_schedule(args.a_schedule, args.a_min, args.a_max));
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (!args.bank.empty()) cfg.bank = load_bank(args.bank, cfg.model, cfg.n_items);
  std::vector<std::size_t> checkpoints;
  try {
    preflight(cfg, err);
    checkpoints = resolve_checkpoints(cfg);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }

  const SummaryTable table = run_replications(cfg);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  std::vector<std::string> artifacts{"summary.csv"};
  write_file(dir / "summary.csv", summary_csv(table));
  if (args.svg) {
    write_file(dir / "mse.svg", line_plot({mse_series(args.a_schedule, table)},
                                          "MSE of the ability estimate", "n", "MSE"));
    artifacts.push_back("mse.svg");
  }
  write_manifest(dir, "simulate", sim_config_json(args, checkpoints, true), args.seed, artifacts);
  for (const auto& r : table.rows) {
    out << "n = " << r.n << "  bias = " << format_double(r.bias)
        << "  mse = " << format_double(r.mse) << "  std_err_var = " << format_double(r.std_err_var)
        << "  ks = " << format_double(r.ks_stat) << "\n";
  }
  out << "wrote " << (dir / "summary.csv").string() << "\n";
  return kOk;
}

int cmd_mse_compare(const SimArgs& a, std::ostream& out, std::ostream& err) {
  SimulationConfig asc, desc;
  std::vector<std::size_t> checkpoints;
  try {
    asc = build_config(a, schedule::LinearAscending{a.a_min, a.a_max});
    desc = build_config(a, schedule::LinearDescending{a.a_max, a.a_min});
    preflight(asc, err);
    preflight(desc, err);
    checkpoints = resolve_checkpoints(asc);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }

  const PairedSummary paired = mse_compare(asc, desc);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::vector<std::string> artifacts{"mse_ascending.csv", "mse_descending.csv"};
  write_file(dir / "mse_ascending.csv", summary_csv(paired.ascending));
  write_file(dir / "mse_descending.csv", summary_csv(paired.descending));
  if (a.svg) {
    write_file(dir / "mse_compare.svg",
               line_plot({mse_series("ascending a", paired.ascending),
                          mse_series("descending a", paired.descending)},
                         "MSE: ascending vs descending discrimination", "n", "MSE"));
    artifacts.push_back("mse_compare.svg");
  }
  write_manifest(dir, "mse-compare", sim_config_json(a, checkpoints, false), a.seed, artifacts);
  out << "n,mse_ascending,mse_descending\n";
  for (std::size_t i = 0; i < paired.ascending.rows.size(); ++i) {
    out << paired.ascending.rows[i].n << "," << format_double(paired.ascending.rows[i].mse) << ","
        << format_double(paired.descending.rows[i].mse) << "\n";
  }
  return kOk;
}

int cmd_diverge(const DivergeArgs& a, std::ostream& out, std::ostream& err) {
  const double limit = theta0_upper_limit(a.theta);
  if (!(a.theta0 < limit)) {
    err << "precondition violated: theta0 = " << format_double(a.theta0)
        << " must be < theta - 1 - pi^2/6 = " << format_double(limit) << "\n";
    return kUsageError;
  }
  DivergenceScenario scenario;
  scenario.theta_true = a.theta;
  scenario.theta0 = a.theta0;
  scenario.eps0 = a.eps0;
  scenario.n0 = a.n0;
  scenario.horizon = a.horizon;
  DivergenceTrace trace;
  try {
    trace = build_trajectory(scenario);
  } catch (const InvalidInput& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kUsageError;
  }

  std::string csv = "k,a,b,y,theta_hat,bound_a13,below_theta_minus_1\n";
  for (const auto& s : trace.steps) {
    csv += std::to_string(s.k) + "," + format_double(s.a) + "," + format_double(s.b) + "," +
           std::to_string(s.y) + "," + format_double(s.theta_hat) + "," +
           (s.bound_a13 ? format_double(*s.bound_a13) : "") + "," +
           (s.below_theta_minus_1 ? "1" : "0") + "\n";
  }
  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_file(dir / "trace.csv", csv);

  ordered_json cfg;
  cfg["theta"] = a.theta;
  cfg["theta0"] = a.theta0;
  cfg["eps0"] = a.eps0;
  cfg["n0"] = trace.scenario.n0;
  cfg["horizon"] = a.horizon;
  cfg["out"] = a.out;
  write_manifest(dir, "diverge", cfg, nullptr, {"trace.csv"});

  out << "n0 = " << trace.scenario.n0 << "\n";
  out << "log P(A) = " << format_double(log_prob_event_A(trace, a.theta)) << "\n";
  if (const auto bad = trace.first_violation()) {
    err << "bound check failed at step " << *bad << "\n";
    return kRuntimeFailure;
  }
  out << "all bounds hold for k = 1.." << trace.steps.size() << "\n";
  return kOk;
}

int cmd_bank_inspect(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto parsed = load_bank_csv(path);
  for (const auto& e : parsed.errors) err << path << ": line " << e.line << ": " << e.message << "\n";
  if (!parsed.ok()) return kDataError;
  if (parsed.items.empty()) {
    err << path << ": no items\n";
    return kDataError;
  }
  auto range = [&](auto get) {
    double lo = get(parsed.items.front()), hi = lo;
    for (const auto& it : parsed.items) {
      lo = std::min(lo, get(it));
      hi = std::max(hi, get(it));
    }
    return "[" + format_double(lo) + ", " + format_double(hi) + "]";
  };
  out << "items: " << parsed.items.size() << "\n";
  out << "a: " << range([](const Item& i) { return i.a(); }) << "\n";
  out << "b: " << range([](const Item& i) { return i.b(); }) << "\n";
  out << "c: " << range([](const Item& i) { return i.c(); }) << "\n";
  return kOk;
}

std::string json_to_arg(const std::string& key, const ordered_json& v) {
  if (v.is_string()) return "--" + key + "=" + v.get<std::string>();
  if (v.is_number_integer()) return "--" + key + "=" + v.dump();
  if (v.is_number_float()) return "--" + key + "=" + format_double(v.get<double>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) {
      if (!joined.empty()) joined += ",";
      joined += e.is_string() ? e.get<std::string>()
                              : (e.is_number_float() ? format_double(e.get<double>()) : e.dump());
    }
    return "--" + key + "=" + joined;
  }
  throw UsageError("config key '" + key + "' has an unsupported value");
}

// Splices --config file values in front of the command-line flags, so that
// TakeLast lets the command line win. A manifest.json is accepted as well.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& s) {
    return s == "simulate" || s == "diverge" || s == "mse-compare";
  });
  if (sub == args.end()) return args;
  const std::string command = *sub;
  std::optional<std::string> path;
  for (auto it = sub + 1; it != args.end();) {
    if (*it == "--config") {
      if (it + 1 == args.end()) throw UsageError("--config requires a file");
      path = *(it + 1);
      it = args.erase(it, it + 2);
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  if (!path) return args;

  std::ifstream in(*path);
  if (!in) throw UsageError("cannot open config " + *path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config " + *path + " is not valid JSON: " + e.what());
  }
  if (j.contains("command") && j.contains("config")) {
    if (j["command"] != command) {
      throw UsageError("config " + *path + " is a manifest for '" +
                       j["command"].get<std::string>() + "'");
    }
    j = j["config"];
  }
  if (!j.is_object()) throw UsageError("config " + *path + " must be a JSON object");
  std::vector<std::string> extra;
  for (const auto& [key, value] : j.items()) {
    if (key == "n0" && command == "diverge" && value == 0) continue;
    if (value.is_null() || (value.is_string() && value.get<std::string>().empty())) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
      continue;
    }
    extra.push_back(json_to_arg(key, value));
  }
  const auto pos = std::find(args.begin(), args.end(), command) + 1;
  args.insert(pos, extra.begin(), extra.end());
  return args;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
  return std::string(buf, end);
}

ASchedule parse_a_schedule(std::string_view spec, double a_min, double a_max) {
  const auto parts = split(spec, ':');
  const std::string_view kind = parts[0];
  auto arity = [&](std::size_t n) {
    if (parts.size() != n) {
      throw InvalidInput("a-schedule '" + std::string(spec) + "' has the wrong number of fields");
    }
  };
  if (kind == "const") {
    arity(2);
    return schedule::Constant{parse_double(parts[1], "a-schedule")};
  }
  if (kind == "asc" || kind == "desc") {
    double first = kind == "asc" ? a_min : a_max;
    double second = kind == "asc" ? a_max : a_min;
    if (parts.size() != 1) {
      arity(3);
      first = parse_double(parts[1], "a-schedule");
      second = parse_double(parts[2], "a-schedule");
    }
    if (kind == "asc") return schedule::LinearAscending{first, second};
    return schedule::LinearDescending{first, second};
  }
  if (kind == "strat") {
    arity(3);
    schedule::Stratified s;
    s.levels = parse_double_list(parts[1], "a-schedule levels");
    const auto block = parse_size_list(parts[2]);
    if (block.size() != 1 || block[0] == 0) throw InvalidInput("stratified block length must be >= 1");
    s.block_length = block[0];
    return s;
  }
  if (kind == "explicit") {
    arity(2);
    return schedule::Explicit{parse_double_list(parts[1], "a-schedule values")};
  }
  if (kind == "cubic") {
    arity(1);
    return schedule::CubicDivergent{};
  }
  throw InvalidInput("unknown a-schedule '" + std::string(spec) + "'");
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  for (auto part : split(text, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw InvalidInput("bad count '" + std::string(part) + "'");
    }
    out.push_back(v);
  }
  return out;
}

unsigned resolve_threads(unsigned requested, const char* env_value) {
  if (env_value == nullptr) return requested;
  const std::string_view s(env_value);
  unsigned cap = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || cap == 0) return requested;
  return requested == 0 ? cap : std::min(requested, cap);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  CLI::App app{"Adaptive testing laboratory: simulations, divergence certificate, bank tools",
               "cat_lab"};
  app.set_version_flag("--version", CATLAB_VERSION);
  app.require_subcommand(1);

  SimArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo audit of an adaptive design");
  add_sim_options(simulate, sim, true);

  SimArgs cmp;
  cmp.model = "2pl";
  cmp.n_items = 30;
  cmp.replications = 5000;
  cmp.checkpoints = "10,15,20,25,30";
  auto* compare = app.add_subcommand("mse-compare", "ascending vs descending a-schedules");
  add_sim_options(compare, cmp, false);

  DivergeArgs div;
  auto* diverge = app.add_subcommand("diverge", "certify the divergent a_k = k^3 trajectory");
  flag(diverge, "--theta", div.theta, "true ability");
  flag(diverge, "--theta0", div.theta0, "initial estimate; must be < theta - 1 - pi^2/6");
  flag(diverge, "--eps0", div.eps0, "initialization step size");
  flag(diverge, "--n0", div.n0, "switch step (0: smallest valid)");
  flag(diverge, "--horizon", div.horizon, "number of steps to trace");
  flag(diverge, "--out", div.out, "output directory");
  diverge->add_option("--config", "JSON file of flag values (flags on the command line win)");

  std::string bank_path;
  auto* bank = app.add_subcommand("bank", "item bank utilities");
  bank->require_subcommand(1);
  auto* inspect = bank->add_subcommand("inspect", "validate a bank CSV and print its ranges");
  inspect->add_option("path", bank_path, "bank CSV")->required();

  std::vector<const char*> argv{"cat_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*compare) return cmd_mse_compare(cmp, out, err);
    if (*diverge) return cmd_diverge(div, out, err);
    if (*inspect) return cmd_bank_inspect(bank_path, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsageError;
}

}  // namespace catlab::cli
