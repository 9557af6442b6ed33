#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace catlab {

// Unbounded-discrimination design (a_k = k^3) under the forced response
// pattern "incorrect up to n0, correct afterwards". On that event the 2-PL
// maximum likelihood recursion stays below theta - 1 forever, which is
// certified here step by step.

struct N0Conditions {
  double tail_sum = 0.0;        // sum_{k > n0} k^3 / (1 + e^k)
  bool tail_ok = false;         // tail_sum < 1/3
  double step_term = 0.0;       // (n0+1)^3 / (1 + e^{(n0+1)^3 eps0})
  bool step_ok = false;         // step_term < 1/6
  double cubic_lhs = 0.0;       // 3 (n0+1)^3
  double cubic_rhs = 0.0;       // sum_{k <= n0} k^3
  bool cubic_ok = false;        // cubic_lhs < cubic_rhs
  bool all() const noexcept { return tail_ok && step_ok && cubic_ok; }
};

N0Conditions check_n0_conditions(std::size_t n0, double eps0);

// sum_{k > n0} k^3 / (1 + e^k), summed until a geometric-ratio bound on the
// remainder falls below 1e-15.
double cubic_logistic_tail(std::size_t n0);

// Smallest n0 meeting all three conditions.
std::size_t find_n0(double eps0);

struct DivergenceScenario {
  double theta_true = 0.0;
  double theta0 = -2.7;   // initial estimate, must satisfy theta0 < theta_true - 1 - pi^2/6
  double eps0 = 1.0;
  std::size_t n0 = 0;     // 0: use find_n0(eps0)
  std::size_t horizon = 200;
};

// theta_true - 1 - pi^2/6
double theta0_upper_limit(double theta_true) noexcept;

struct TraceStep {
  std::size_t k = 0;
  double a = 0.0;
  double b = 0.0;
  int y = 0;
  double theta_hat = 0.0;
  std::optional<double> bound_a13;  // theta0 + sum_{j=n0+1}^{k} 1/j^2, for k > n0
  bool below_theta_minus_1 = false;
  bool bound_ok = true;             // every check applicable at this step
  double log_prob_term = 0.0;       // log P(Y_k = y_k | theta_true)
};

struct DivergenceTrace {
  DivergenceScenario scenario;  // with n0 resolved
  std::vector<TraceStep> steps;
  bool all_bounds_ok() const noexcept;
  std::optional<std::size_t> first_violation() const noexcept;
};

// Builds the forced-response trajectory and evaluates every bound without
// throwing. Throws InvalidInput if the scenario preconditions fail.
DivergenceTrace build_trajectory(DivergenceScenario scenario);

// build_trajectory, then throws BoundViolation at the first failing step.
DivergenceTrace divergent_trajectory(const DivergenceScenario& scenario);

// Log-probability of the forced response pattern, summed in log space.
double log_prob_event_A(const DivergenceTrace& trace, double theta_true);

// Shows that a_j = 1/j starves the test of information.
struct BoundedInfoReport {
  std::size_t n = 0;
  std::size_t early_n = 0;           // n / 10
  std::size_t replications = 0;
  double info_bound = 0.0;           // (1/4) sum_{j<=n} 1/j^2
  double pi2_over_24 = 0.0;
  double max_info_at_theta = 0.0;    // over replications, observed_info(theta_true)
  double max_info_at_estimate = 0.0; // over replications, observed_info(theta_hat_n)
  bool bound_holds = false;
  double median_abs_err_early = 0.0;
  double median_abs_err_final = 0.0;
  double shrink_ratio = 0.0;         // final / early
};

BoundedInfoReport bounded_info_demo(std::size_t n, std::size_t replications, std::uint64_t seed,
                                    double theta_true = 0.0, unsigned threads = 0);

}  // namespace catlab
