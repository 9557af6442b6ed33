#include "catlab/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "catlab/errors.hpp"
#include "catlab/stats.hpp"

namespace catlab {

std::string_view to_string(Standardization s) {
  return s == Standardization::Information ? "information" : "sum-a2";
}

std::vector<std::size_t> resolve_checkpoints(const SimulationConfig& config) {
  std::vector<std::size_t> cps = config.checkpoints;
  if (cps.empty()) {
    for (std::size_t n : {25, 50, 100, 200, 400}) {
      if (n < config.n_items) cps.push_back(n);
    }
    cps.push_back(config.n_items);
  }
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 2 || cps[i] > config.n_items) {
      throw InvalidInput("checkpoint " + std::to_string(cps[i]) +
                         " is infeasible: estimates exist only for 2 <= n <= n_items (" +
                         std::to_string(config.n_items) + ")");
    }
    if (i > 0 && cps[i] <= cps[i - 1]) {
      throw InvalidInput("checkpoints must be strictly ascending");
    }
  }
  return cps;
}

int draw_response(double theta_true, const Item& item, RandomStream& rng) noexcept {
  return rng.uniform() < icc(theta_true, item) ? 1 : 0;
}

namespace {

void check_policy(const SimulationConfig& config) {
  if (config.n_items == 0) throw InvalidInput("n_items must be positive");
  if (!config.enforce_policy) return;
  const auto issues = validate_policy(config.policy, config.n_items);
  if (has_violations(issues)) {
    std::string msg = "invalid design policy:";
    for (const auto& issue : issues) {
      if (issue.severity == PolicyIssue::Severity::Violation) msg += " " + issue.message + ";";
    }
    throw InvalidInput(msg);
  }
}

}  // namespace

Transcript run_session(const SimulationConfig& config, const Responder& respond) {
  check_policy(config);
  const EstimatingMode mode = mode_for(config.model);
  ItemBank bank = config.bank;
  SessionState state;
  state.n_total = config.n_items;
  for (std::size_t k = 1; k <= config.n_items; ++k) {
    const Item item = next_item(state, config.policy, bank);
    if (!conforms(item, config.model)) {
      throw InvalidInput("step " + std::to_string(k) + " selected an item outside the " +
                         std::string(to_string(config.model)) + " model");
    }
    state.transcript.push(Response(item, respond(item, k)));
    if (state.transcript.has_both_outcomes()) {
      state.transcript.record_estimate(solve_ability(state.transcript, mode, k, config.solver));
    }
  }
  return std::move(state.transcript);
}

Transcript run_session(const SimulationConfig& config, RandomStream& rng) {
  return run_session(config, [&](const Item& item, std::size_t) {
    return draw_response(config.theta_true, item, rng);
  });
}

ReplicationResult summarize_session(const SimulationConfig& config, const Transcript& transcript,
                                    const std::vector<std::size_t>& checkpoints) {
  ReplicationResult result;
  const auto responses = transcript.responses();
  double sum_a2 = 0.0;
  double sum_v = 0.0;
  std::size_t consumed = 0;
  for (std::size_t n : checkpoints) {
    if (n > responses.size()) {
      throw InvalidInput("checkpoint " + std::to_string(n) + " beyond transcript length");
    }
    for (; consumed < n; ++consumed) {
      const Item& item = responses[consumed].item;
      sum_a2 += item.a() * item.a();
      sum_v += max_info_closed_form(item.a(), item.c());
    }
    const auto& estimate = transcript.estimate_after(n - 1);
    if (!estimate) {
      throw InitializationIncomplete("no ability estimate at checkpoint " + std::to_string(n) +
                                     ": responses have not yet flipped");
    }
    CheckpointRecord rec;
    rec.n = n;
    rec.theta_hat = estimate->value;
    rec.observed_info = observed_info(estimate->value, responses.first(n));
    rec.normalizer = config.standardization == Standardization::Information ? sum_v : sum_a2;
    rec.standardized_error = std::sqrt(rec.normalizer) * (rec.theta_hat - config.theta_true);
    rec.fallback = estimate->source == EstimateSource::Fallback;
    result.records.push_back(rec);
  }
  return result;
}

std::vector<ReplicationResult> run_replications_detailed(const SimulationConfig& config) {
  if (config.replications == 0) throw InvalidInput("replications must be >= 1");
  check_policy(config);
  const auto checkpoints = resolve_checkpoints(config);

  std::vector<ReplicationResult> results(config.replications);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::size_t> failed_index;
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.replications) return;
      try {
        RandomStream rng(config.master_seed, i);
        const Transcript t = run_session(config, rng);
        results[i] = summarize_session(config, t, checkpoints);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing index so the error is reproducible.
        if (!failed_index || i < *failed_index) {
          failed_index = i;
          failure = e.what();
        }
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u,
                                 static_cast<unsigned>(std::min<std::size_t>(config.replications, 256)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failed_index) throw ReplicationError(*failed_index, failure);
  return results;
}

SummaryTable summarize(const SimulationConfig& config,
                       const std::vector<ReplicationResult>& results) {
  SummaryTable table;
  if (results.empty()) return table;
  const std::size_t n_cp = results.front().records.size();
  const double r = static_cast<double>(results.size());
  std::vector<double> est(results.size());
  std::vector<double> z(results.size());
  for (std::size_t j = 0; j < n_cp; ++j) {
    SummaryRow row;
    row.n = results.front().records[j].n;
    double sq = 0.0;
    double ratio = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& rec = results[i].records.at(j);
      est[i] = rec.theta_hat;
      z[i] = rec.standardized_error;
      const double err = rec.theta_hat - config.theta_true;
      sq += err * err;
      ratio += 4.0 * rec.observed_info / static_cast<double>(rec.n);
      row.fallback_count += rec.fallback ? 1 : 0;
    }
    row.bias = mean(est) - config.theta_true;
    row.variance = sample_variance(est);
    row.mse = sq / r;
    if (config.model == ModelKind::Rasch) row.info_ratio = ratio / r;
    row.std_err_var = sample_variance(z);
    row.ks_stat = ks_statistic(z);
    table.rows.push_back(row);
  }
  return table;
}

SummaryTable run_replications(const SimulationConfig& config) {
  return summarize(config, run_replications_detailed(config));
}

namespace {

bool same_except_schedule(const SimulationConfig& x, const SimulationConfig& y) {
  const auto& p = x.policy;
  const auto& q = y.policy;
  return x.theta_true == y.theta_true && x.model == y.model && x.n_items == y.n_items &&
         x.replications == y.replications && x.master_seed == y.master_seed &&
         x.bank.is_idealized() == y.bank.is_idealized() && p.b1 == q.b1 && p.eps0 == q.eps0 &&
         p.a_min == q.a_min && p.a_max == q.a_max && p.c_rule == q.c_rule &&
         p.delta0 == q.delta0 && p.b_rule == q.b_rule &&
         x.standardization == y.standardization;
}

}  // namespace

PairedSummary mse_compare(const SimulationConfig& ascending, const SimulationConfig& descending) {
  if (resolve_checkpoints(ascending) != resolve_checkpoints(descending)) {
    throw InvalidInput("mse_compare: checkpoint grids differ");
  }
  if (!same_except_schedule(ascending, descending)) {
    throw InvalidInput("mse_compare: configurations must differ only in the a-schedule");
  }
  return {run_replications(ascending), run_replications(descending)};
}

}  // namespace catlab
