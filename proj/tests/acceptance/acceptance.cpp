// Acceptance suite: one PASS/FAIL line per criterion, sizes and tolerances as
// specified. Usage: acceptance [criterion numbers...]; no arguments runs all.
// Exit status is the number of failing criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catlab/counterexample.hpp"
#include "catlab/estimator.hpp"
#include "catlab/irt.hpp"
#include "catlab/simulator.hpp"
#include "catlab/stats.hpp"
#include "cli.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace catlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

SimulationConfig base_config() {
  SimulationConfig c;
  c.master_seed = 42;
  c.threads = 1;
  return c;
}

std::vector<double> errors_at(const std::vector<ReplicationResult>& results, std::size_t idx,
                              bool standardized) {
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& r : results) {
    out.push_back(standardized ? r.records[idx].standardized_error : r.records[idx].theta_hat);
  }
  return out;
}

Outcome criterion1() {
  double worst_rel = 0.0, worst_loc = 0.0;
  for (double a : linspace(0.2, 5.0, 20)) {
    for (double c : linspace(0.0, 0.5, 11)) {
      const double b_star = optimal_difficulty(0.0, a, c);
      const double peak = fisher_info(0.0, Item(a, b_star, c));
      worst_rel = std::max(worst_rel, std::fabs(peak - max_info_closed_form(a, c)) / peak);
      const double b_gs = oracle::golden_section_max(
          [&](double b) { return fisher_info(0.0, Item(a, b, c)); }, b_star - 5.0, b_star + 5.0,
          1e-12);
      worst_loc = std::max(worst_loc, std::fabs(b_gs - b_star));
    }
  }
  return {worst_rel < 1e-10 && worst_loc < 1e-6,
          "max rel err " + num(worst_rel, 3) + " (< 1e-10), golden-section |b - b*| max " +
              num(worst_loc, 3) + " (< 1e-6), 20x11 grid"};
}

Outcome criterion2() {
  double worst = 0.0;
  for (double a : linspace(0.2, 5.0, 20)) {
    for (double c : linspace(0.0, 0.5, 11)) {
      const double s = (1.0 + std::sqrt(1.0 + 8.0 * c)) / 2.0;
      worst = std::max(worst, std::fabs(weight(a, c) - a * s / (c + s)));
    }
  }
  return {worst < 1e-12, "max |w - a s/(c+s)| = " + num(worst, 3) + " (< 1e-12)"};
}

Outcome criterion3() {
  SimulationConfig c = base_config();
  c.model = ModelKind::Rasch;
  c.n_items = 400;
  c.replications = 2000;
  c.checkpoints = {400};
  const auto results = run_replications_detailed(c);
  const auto row = summarize(c, results).rows.back();
  const bool var_ok = std::fabs(row.variance - 0.01) <= 0.15 * 0.01;
  const bool ratio_ok = row.info_ratio && *row.info_ratio >= 0.97 && *row.info_ratio <= 1.03;
  const bool ks_ok = row.ks_stat < 0.05;
  return {var_ok && ratio_ok && ks_ok,
          "var(theta_hat_400) = " + num(row.variance) + " (0.01 +/- 15%), mean 4 I_n/n = " +
              num(row.info_ratio.value_or(NAN)) + " ([0.97, 1.03]), KS = " + num(row.ks_stat) +
              " (< 0.05)"};
}

SimulationConfig two_pl_config(Standardization s) {
  SimulationConfig c = base_config();
  c.model = ModelKind::TwoPL;
  c.policy.a_schedule = schedule::LinearAscending{0.5, 2.0};
  c.n_items = 400;
  c.replications = 2000;
  c.checkpoints = {400};
  c.standardization = s;
  return c;
}

Outcome criterion4() {
  const auto c = two_pl_config(Standardization::SumASquared);
  const auto row = run_replications(c).rows.back();
  const bool ok = std::fabs(row.std_err_var - 1.0) <= 0.10 && row.ks_stat < 0.05;
  return {ok, "var(sqrt(sum a^2) (theta_hat - theta)) = " + num(row.std_err_var) +
                  " (1 +/- 10%), KS = " + num(row.ks_stat) + " (< 0.05)"};
}

// Not a criterion: the same audit under the information scale sum a^2 / 4.
std::string criterion4_diagnostic() {
  const auto c = two_pl_config(Standardization::Information);
  const auto row = run_replications(c).rows.back();
  return "diagnostic 4: with normalizer sum a^2/4 the variance is " + num(row.std_err_var) +
         " and KS = " + num(row.ks_stat);
}

Outcome criterion5() {
  SimulationConfig c = base_config();
  c.model = ModelKind::ThreePL;
  c.policy.a_schedule = schedule::Constant{1.0};
  c.policy.c_rule = guessing::Constant{0.2};
  c.policy.b_rule = DifficultyRule::InfoOptimalOffset;
  c.n_items = 600;
  c.replications = 2000;
  c.checkpoints = {600};
  const auto row = run_replications(c).rows.back();
  const bool ok = std::fabs(row.std_err_var - 1.0) <= 0.15 && row.fallback_count == 0;
  return {ok, "var(sqrt(v_n) (theta_hat - theta)) = " + num(row.std_err_var) +
                  " (1 +/- 15%), fallbacks at n = 600: " + std::to_string(row.fallback_count) +
                  ", KS = " + num(row.ks_stat)};
}

Outcome criterion6() {
  const std::size_t n0 = find_n0(1.0);
  DivergenceScenario s;
  s.theta_true = 0.0;
  s.theta0 = -2.7;
  s.eps0 = 1.0;
  s.horizon = 200;
  const auto trace = build_trajectory(s);
  bool below = true;
  for (const auto& step : trace.steps) {
    if (step.k >= n0) below = below && step.theta_hat < -1.0;
  }
  const double lp = log_prob_event_A(trace, 0.0);

  const auto dir = std::filesystem::temp_directory_path() / "cat_lab_acceptance_diverge";
  std::ostringstream out, err;
  const int code = cli::run({"diverge", "--out", dir.string()}, out, err);
  std::filesystem::remove_all(dir);

  const bool ok = n0 == 13 && trace.all_bounds_ok() && below && std::isfinite(lp) && code == 0;
  return {ok, "n0 = " + std::to_string(n0) + ", bounds " +
                  (trace.all_bounds_ok() ? "hold" : "FAIL") + " over 200 steps, theta_hat < -1 for k >= n0: " +
                  (below ? "yes" : "no") + ", log P(A) = " + num(lp) + ", diverge exit " +
                  std::to_string(code)};
}

Outcome criterion7() {
  const auto rep = bounded_info_demo(2000, 1000, 42, 0.0, 1);
  const bool ok = rep.bound_holds && rep.shrink_ratio > 0.8;
  return {ok, "max observed info " + num(std::max(rep.max_info_at_theta, rep.max_info_at_estimate)) +
                  " <= pi^2/24 = " + num(rep.pi2_over_24) + ", median |err| n=200: " +
                  num(rep.median_abs_err_early) + ", n=2000: " + num(rep.median_abs_err_final) +
                  ", ratio " + num(rep.shrink_ratio) + " (> 0.8)"};
}

Outcome criterion8() {
  SimulationConfig asc = base_config();
  asc.model = ModelKind::TwoPL;
  asc.n_items = 30;
  asc.replications = 5000;
  asc.checkpoints = {10, 15, 20, 25, 30};
  asc.policy.a_schedule = schedule::LinearAscending{0.5, 2.0};
  SimulationConfig desc = asc;
  desc.policy.a_schedule = schedule::LinearDescending{2.0, 0.5};
  const auto paired = mse_compare(asc, desc);
  const double a = paired.ascending.rows.back().mse;
  const double d = paired.descending.rows.back().mse;
  return {a < d, "MSE at n = 30: ascending " + num(a) + ", descending " + num(d)};
}

std::vector<Response> multiroot_fixture() {
  return {Response(Item(1.17, 0.03, 0.0), 0), Response(Item(1.57, 0.74, 0.18), 1),
          Response(Item(1.47, 0.78, 0.27), 1)};
}

Outcome criterion9() {
  const auto r = multiroot_fixture();
  const auto raw = find_roots_raw(r, -8.0, 8.0, 1601);
  const auto est = solve_ability(r, EstimatingMode::ThreePLModified, r.size());
  // sign changes of the modified equation on the same grid
  std::size_t modified_roots = 0;
  double prev = score(-8.0, r, EstimatingMode::ThreePLModified);
  for (int i = 1; i < 1601; ++i) {
    const double v = score(-8.0 + 16.0 * i / 1600, r, EstimatingMode::ThreePLModified);
    if ((prev > 0) != (v > 0)) ++modified_roots;
    prev = v;
  }
  std::string roots;
  for (double x : raw) roots += (roots.empty() ? "" : ", ") + num(x, 10);
  const bool ok = raw.size() >= 2 && modified_roots == 1 &&
                  est.source == EstimateSource::RootOfEquation;
  return {ok, "raw roots {" + roots + "}, modified equation: " + std::to_string(modified_roots) +
                  " root at " + num(est.value, 10)};
}

Outcome criterion10() {
  std::mt19937_64 rng(20240601);
  const oracle::Eq kinds[] = {oracle::Eq::Rasch, oracle::Eq::TwoPL, oracle::Eq::Modified};
  int compared = 0, skipped = 0;
  double worst = 0.0;
  bool monotone = true;
  for (int rep = 0; rep < 100; ++rep) {
    const auto eq = kinds[rep % 3];
    const auto t = oracle::random_transcript(rng, eq);
    const auto r = to_responses(t.items, t.ys);
    const auto mode = to_mode(eq);
    double prev = score(-10.0, r, mode);
    for (int i = 1; i < 2001; ++i) {
      const double v = score(-10.0 + 20.0 * i / 2000, r, mode);
      monotone = monotone && v < prev;
      prev = v;
    }
    if (!solvable(r, mode)) {
      ++skipped;
      continue;
    }
    const double expected = oracle::grid_root(
        [&](double th) { return oracle::score(th, t.items, t.ys, eq); }, -60.0, 60.0);
    const auto est = solve_ability(r, mode, r.size(), {1e-10, RootMethod::Bisection});
    worst = std::max(worst, std::fabs(est.value - expected));
    ++compared;
  }
  return {worst < 1e-8 && monotone && compared > 0,
          std::to_string(compared) + " roots compared (" + std::to_string(skipped) +
              " without a root), max |diff| = " + num(worst, 3) + " (< 1e-8), strictly decreasing on 2001-point grids: " +
              (monotone ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "closed-form information identity", 1.0, criterion1},
      {2, "weight identity", 1.0, criterion2},
      {3, "Rasch asymptotic audit", 60.0, criterion3},
      {4, "2-PL asymptotic audit (sum a^2 scale)", 90.0, criterion4},
      {5, "3-PL asymptotic audit", 120.0, criterion5},
      {6, "divergence certificate", 1.0, criterion6},
      {7, "bounded-information design", 120.0, criterion7},
      {8, "ascending vs descending MSE", 60.0, criterion8},
      {9, "multiple-root diagnostic", 1.0, criterion9},
      {10, "estimator oracle equivalence", 10.0, criterion10},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %2d %s: %s | %s | %.2f s (limit %g s%s)\n", c.id, pass ? "PASS" : "FAIL",
                c.name, o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", exceeded");
    std::fflush(stdout);
    if (c.id == 4) {
      std::printf("             %s\n", criterion4_diagnostic().c_str());
      std::fflush(stdout);
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, wanted.empty() ? all.size() : wanted.size());
  return failures ? 1 : 0;
}
