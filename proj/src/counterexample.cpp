#include "catlab/counterexample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "catlab/designer.hpp"
#include "catlab/errors.hpp"
#include "catlab/estimator.hpp"
#include "catlab/irt.hpp"
#include "catlab/simulator.hpp"
#include "catlab/stats.hpp"

namespace catlab {

double cubic_logistic_tail(std::size_t n0) {
  auto term = [](double k) { return k * k * k * logistic(-k); };
  // t_{k+1} / t_k <= ((k+1)/k)^3 e^{-1} (1 + e^{-k}), and the bound decreases in k.
  auto ratio_bound = [](double k) {
    const double r = (k + 1.0) / k;
    return r * r * r * std::exp(-1.0) * (1.0 + std::exp(-k));
  };
  double sum = 0.0;
  for (double k = static_cast<double>(n0) + 1.0;; k += 1.0) {
    const double t = term(k);
    sum += t;
    const double next_ratio = ratio_bound(k + 1.0);
    if (next_ratio < 1.0) {
      const double remainder = t * ratio_bound(k) / (1.0 - next_ratio);
      if (remainder < 1e-15) break;
    }
  }
  return sum;
}

N0Conditions check_n0_conditions(std::size_t n0, double eps0) {
  N0Conditions out;
  const double m = static_cast<double>(n0) + 1.0;
  const double m3 = m * m * m;
  out.tail_sum = cubic_logistic_tail(n0);
  out.tail_ok = out.tail_sum < 1.0 / 3.0;
  out.step_term = m3 * logistic(-m3 * eps0);
  out.step_ok = out.step_term < 1.0 / 6.0;
  const double n = static_cast<double>(n0);
  const double half = n * (n + 1.0) / 2.0;
  out.cubic_lhs = 3.0 * m3;
  out.cubic_rhs = half * half;
  out.cubic_ok = out.cubic_lhs < out.cubic_rhs;
  return out;
}

std::size_t find_n0(double eps0) {
  if (!(eps0 > 0.0)) throw InvalidInput("eps0 must be > 0");
  for (std::size_t n0 = 1;; ++n0) {
    if (check_n0_conditions(n0, eps0).all()) return n0;
  }
}

double theta0_upper_limit(double theta_true) noexcept {
  return theta_true - 1.0 - std::numbers::pi * std::numbers::pi / 6.0;
}

bool DivergenceTrace::all_bounds_ok() const noexcept { return !first_violation(); }

std::optional<std::size_t> DivergenceTrace::first_violation() const noexcept {
  for (const auto& s : steps) {
    if (!s.bound_ok) return s.k;
  }
  return std::nullopt;
}

DivergenceTrace build_trajectory(DivergenceScenario scenario) {
  if (!(scenario.eps0 > 0.0)) throw InvalidInput("eps0 must be > 0");
  const double limit = theta0_upper_limit(scenario.theta_true);
  if (!(scenario.theta0 < limit)) {
    throw InvalidInput("precondition violated: theta0 < theta - 1 - pi^2/6 = " +
                       std::to_string(limit) + " required, got theta0 = " +
                       std::to_string(scenario.theta0));
  }
  if (scenario.n0 == 0) {
    scenario.n0 = find_n0(scenario.eps0);
  } else if (!check_n0_conditions(scenario.n0, scenario.eps0).all()) {
    throw InvalidInput("n0 = " + std::to_string(scenario.n0) +
                       " does not satisfy the three n0 conditions");
  }
  if (scenario.horizon <= scenario.n0) {
    throw InvalidInput("horizon must exceed n0 = " + std::to_string(scenario.n0));
  }
  const std::size_t n0 = scenario.n0;

  SimulationConfig config;
  config.theta_true = scenario.theta_true;
  config.model = ModelKind::TwoPL;
  config.policy.b1 = scenario.theta0;
  config.policy.eps0 = scenario.eps0;
  config.policy.a_schedule = schedule::CubicDivergent{};
  config.policy.b_rule = DifficultyRule::PlainTheta;
  config.n_items = scenario.horizon;
  config.solver = SolverOptions{1e-10, RootMethod::Bisection};
  config.enforce_policy = false;

  const Transcript transcript =
      run_session(config, [n0](const Item&, std::size_t k) { return k <= n0 ? 0 : 1; });

  DivergenceTrace trace;
  trace.scenario = scenario;
  const auto responses = transcript.responses();
  const double ceiling = scenario.theta_true - 1.0;
  const double tol = config.solver.tol;
  double bound = scenario.theta0;
  double previous = scenario.theta0;
  for (std::size_t k = 1; k <= responses.size(); ++k) {
    const Response& r = responses[k - 1];
    TraceStep s;
    s.k = k;
    s.a = r.item.a();
    s.b = r.item.b();
    s.y = r.y;
    const double x = s.a * (scenario.theta_true - s.b);
    s.log_prob_term = r.y ? log_logistic(x) : log_logistic(-x);
    if (k <= n0) {
      s.theta_hat = scenario.theta0 - scenario.eps0 * static_cast<double>(k);
    } else {
      s.theta_hat = transcript.estimate_after(k - 1)->value;
      const double j = static_cast<double>(k);
      bound += 1.0 / (j * j);
      s.bound_a13 = bound;
      s.bound_ok = s.theta_hat <= bound;
      if (k == n0 + 1) {
        s.bound_ok = s.bound_ok && s.theta_hat <= scenario.theta0;
      } else {
        // After n0 every response is correct, so the estimates cannot decrease.
        s.bound_ok = s.bound_ok && s.theta_hat >= previous - tol;
      }
    }
    s.below_theta_minus_1 = s.theta_hat < ceiling;
    if (k >= n0) s.bound_ok = s.bound_ok && s.below_theta_minus_1;
    previous = s.theta_hat;
    trace.steps.push_back(s);
  }
  return trace;
}

DivergenceTrace divergent_trajectory(const DivergenceScenario& scenario) {
  DivergenceTrace trace = build_trajectory(scenario);
  if (auto k = trace.first_violation()) {
    const auto& s = trace.steps[*k - 1];
    throw BoundViolation(*k, "theta_hat = " + std::to_string(s.theta_hat) +
                                 (s.bound_a13 ? ", bound = " + std::to_string(*s.bound_a13) : ""));
  }
  return trace;
}

double log_prob_event_A(const DivergenceTrace& trace, double theta_true) {
  double total = 0.0;
  for (const auto& s : trace.steps) {
    const double x = s.a * (theta_true - s.b);
    total += s.y ? log_logistic(x) : log_logistic(-x);
  }
  return total;
}

BoundedInfoReport bounded_info_demo(std::size_t n, std::size_t replications, std::uint64_t seed,
                                    double theta_true, unsigned threads) {
  if (n < 10) throw InvalidInput("bounded_info_demo needs n >= 10");
  if (replications == 0) throw InvalidInput("replications must be >= 1");

  SimulationConfig config;
  config.theta_true = theta_true;
  config.model = ModelKind::TwoPL;
  schedule::Explicit harmonic;
  for (std::size_t j = 1; j <= n; ++j) harmonic.values.push_back(1.0 / static_cast<double>(j));
  config.policy.a_schedule = std::move(harmonic);
  config.policy.b_rule = DifficultyRule::PlainTheta;
  config.n_items = n;
  config.enforce_policy = false;

  BoundedInfoReport report;
  report.n = n;
  report.early_n = n / 10;
  report.replications = replications;
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    report.info_bound += 0.25 / (jd * jd);
  }
  report.pi2_over_24 = std::numbers::pi * std::numbers::pi / 24.0;

  std::vector<double> err_early(replications);
  std::vector<double> err_final(replications);
  std::vector<double> info_theta(replications);
  std::vector<double> info_hat(replications);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::optional<std::size_t> failed;
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= replications) return;
      try {
        RandomStream rng(seed, i);
        const Transcript t = run_session(config, rng);
        const auto early = t.estimate_after(report.early_n - 1);
        const auto last = t.estimate_after(n - 1);
        if (!early || !last) {
          throw InitializationIncomplete("responses never flipped before step " +
                                         std::to_string(report.early_n));
        }
        err_early[i] = std::fabs(early->value - theta_true);
        err_final[i] = std::fabs(last->value - theta_true);
        info_theta[i] = observed_info(theta_true, t.responses());
        info_hat[i] = observed_info(last->value, t.responses());
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        if (!failed || i < *failed) {
          failed = i;
          failure = e.what();
        }
      }
    }
  };
  unsigned workers = threads ? threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(replications, 256)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failed) throw ReplicationError(*failed, failure);

  report.max_info_at_theta = *std::max_element(info_theta.begin(), info_theta.end());
  report.max_info_at_estimate = *std::max_element(info_hat.begin(), info_hat.end());
  report.bound_holds = report.max_info_at_theta <= report.info_bound &&
                       report.max_info_at_estimate <= report.info_bound &&
                       report.info_bound < report.pi2_over_24;
  report.median_abs_err_early = median(err_early);
  report.median_abs_err_final = median(err_final);
  report.shrink_ratio = report.median_abs_err_final / report.median_abs_err_early;
  return report;
}

}  // namespace catlab
