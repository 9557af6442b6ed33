#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlab/designer.hpp"
#include "catlab/estimator.hpp"
#include "catlab/random.hpp"

namespace catlab {

// Scale used to standardize theta_hat - theta at a checkpoint.
//   Information: n/4 (Rasch), sum a^2/4 (2-PL), v_n (3-PL); all equal normalizer_v.
//   SumASquared: sum a_i^2 for every model, the literal 2-PL display.
enum class Standardization { Information, SumASquared };

std::string_view to_string(Standardization s);

struct SimulationConfig {
  double theta_true = 0.0;
  ModelKind model = ModelKind::Rasch;
  DesignPolicy policy;
  ItemBank bank = ItemBank::idealized();
  std::size_t n_items = 400;
  std::size_t replications = 2000;
  std::uint64_t master_seed = 42;
  std::vector<std::size_t> checkpoints;  // empty: {25, 50, 100, 200, 400} up to n_items, plus n_items
  SolverOptions solver{1e-10, RootMethod::SafeguardedNewton};
  Standardization standardization = Standardization::Information;
  unsigned threads = 0;         // 0: one per hardware thread
  bool enforce_policy = true;   // reject policies with invariant violations
};

// Resolved, validated checkpoint grid. Throws InvalidInput for checkpoints
// outside [2, n_items] (no estimate can exist before step 2) or not ascending.
std::vector<std::size_t> resolve_checkpoints(const SimulationConfig& config);

struct CheckpointRecord {
  std::size_t n = 0;
  double theta_hat = 0.0;
  double observed_info = 0.0;  // at theta_hat
  double normalizer = 0.0;
  double standardized_error = 0.0;  // sqrt(normalizer) (theta_hat - theta)
  bool fallback = false;
};

struct ReplicationResult {
  std::vector<CheckpointRecord> records;
};

struct SummaryRow {
  std::size_t n = 0;
  double bias = 0.0;
  double variance = 0.0;
  double mse = 0.0;
  std::optional<double> info_ratio;  // mean 4 I_n(theta_hat) / n, Rasch only
  double std_err_var = 0.0;
  double ks_stat = 0.0;
  std::size_t fallback_count = 0;
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
  friend bool operator==(const SummaryTable&, const SummaryTable&) = default;
};

inline bool operator==(const SummaryRow& a, const SummaryRow& b) {
  return a.n == b.n && a.bias == b.bias && a.variance == b.variance && a.mse == b.mse &&
         a.info_ratio == b.info_ratio && a.std_err_var == b.std_err_var &&
         a.ks_stat == b.ks_stat && a.fallback_count == b.fallback_count;
}

class ReplicationError : public std::runtime_error {
 public:
  ReplicationError(std::size_t index, const std::string& what)
      : std::runtime_error("replication " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Returns 1 with probability icc(theta_true, item); consumes exactly one uniform.
int draw_response(double theta_true, const Item& item, RandomStream& rng) noexcept;

// Supplies y for the item administered at 1-based step k.
using Responder = std::function<int(const Item& item, std::size_t k)>;

// One adaptive session: select, respond, and (once both outcomes are seen)
// estimate, recording the estimate after every step from k0 on. The step
// index is used as the fallback index when the modified equation has no root.
Transcript run_session(const SimulationConfig& config, const Responder& respond);
Transcript run_session(const SimulationConfig& config, RandomStream& rng);

ReplicationResult summarize_session(const SimulationConfig& config, const Transcript& transcript,
                                    const std::vector<std::size_t>& checkpoints);

// All replications, indexed by replication number. Stream i is seeded from
// (master_seed, i); results do not depend on thread count or scheduling.
std::vector<ReplicationResult> run_replications_detailed(const SimulationConfig& config);

SummaryTable summarize(const SimulationConfig& config,
                       const std::vector<ReplicationResult>& results);

SummaryTable run_replications(const SimulationConfig& config);

struct PairedSummary {
  SummaryTable ascending;
  SummaryTable descending;
};

// Runs both configurations with the same per-replication seeds (common random
// numbers). They must agree in everything but the a-schedule.
PairedSummary mse_compare(const SimulationConfig& ascending, const SimulationConfig& descending);

}  // namespace catlab
