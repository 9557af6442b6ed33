#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catlab/estimator.hpp"
#include "catlab/irt.hpp"

namespace catlab {

// Discrimination schedules: a_k as a function of the 1-based step k.
namespace schedule {
struct Constant {
  double a = 1.0;
  bool operator==(const Constant&) const = default;
};
struct LinearAscending {
  double lo = 0.5;
  double hi = 2.0;
  bool operator==(const LinearAscending&) const = default;
};
struct LinearDescending {
  double hi = 2.0;
  double lo = 0.5;
  bool operator==(const LinearDescending&) const = default;
};
// a-stratified: levels in ascending order, each used for block_length steps.
struct Stratified {
  std::vector<double> levels;
  std::size_t block_length = 1;
  bool operator==(const Stratified&) const = default;
};
struct Explicit {
  std::vector<double> values;
  bool operator==(const Explicit&) const = default;
};
// a_k = k^3. Ignores [m, M]; only meaningful for the divergence construction.
struct CubicDivergent {
  bool operator==(const CubicDivergent&) const = default;
};
}  // namespace schedule

using ASchedule = std::variant<schedule::Constant, schedule::LinearAscending,
                               schedule::LinearDescending, schedule::Stratified,
                               schedule::Explicit, schedule::CubicDivergent>;

namespace guessing {
struct Zero {
  bool operator==(const Zero&) const = default;
};
struct Constant {
  double c = 0.0;
  bool operator==(const Constant&) const = default;
};
struct Explicit {
  std::vector<double> values;
  bool operator==(const Explicit&) const = default;
};
}  // namespace guessing

using CRule = std::variant<guessing::Zero, guessing::Constant, guessing::Explicit>;

enum class DifficultyRule {
  PlainTheta,          // b_{k+1} = current estimate
  InfoOptimalOffset,   // b_{k+1} = optimal_difficulty(estimate, a, c)
};

struct DesignPolicy {
  double b1 = 0.0;
  double eps0 = 1.0;
  ASchedule a_schedule = schedule::Constant{1.0};
  double a_min = 0.5;  // m
  double a_max = 2.0;  // M
  CRule c_rule = guessing::Zero{};
  double delta0 = 0.5;
  DifficultyRule b_rule = DifficultyRule::InfoOptimalOffset;
};

double a_at(const ASchedule& a_schedule, std::size_t k, std::size_t n_total);
double c_at(const CRule& rule, std::size_t k);

std::string describe(const ASchedule& a_schedule);
std::string describe(const CRule& rule);
std::string_view to_string(DifficultyRule rule);

struct PolicyIssue {
  enum class Severity { Violation, Warning };
  Severity severity;
  std::string message;
};

// Every invariant violation of the policy for a test of length n_total.
// An empty result means the policy is valid. CubicDivergent yields a warning.
std::vector<PolicyIssue> validate_policy(const DesignPolicy& policy, std::size_t n_total);
bool has_violations(const std::vector<PolicyIssue>& issues);

// Either the idealized continuum of items or a finite pool used without replacement.
// Copies share the immutable item list but carry their own usage marks.
class ItemBank {
 public:
  static ItemBank idealized() { return ItemBank(); }
  static ItemBank finite(std::vector<Item> items);

  bool is_idealized() const noexcept { return items_ == nullptr; }
  std::span<const Item> items() const noexcept;
  bool used(std::size_t index) const { return used_.at(index); }
  std::size_t used_count() const noexcept;
  void mark_used(std::size_t index);

  // Unused item maximizing fisher_info at theta; ties go to the lowest index.
  std::size_t best_unused(double theta) const;

 private:
  std::shared_ptr<const std::vector<Item>> items_;
  std::vector<bool> used_;
};

enum class Phase { Initializing, Adaptive };

struct SessionState {
  Transcript transcript;
  std::size_t n_total = 0;  // planned test length, for length-aware schedules

  Phase phase() const noexcept {
    return transcript.has_both_outcomes() ? Phase::Adaptive : Phase::Initializing;
  }
  std::size_t step_index() const noexcept { return transcript.size(); }
};

struct Selection {
  Item item;
  std::optional<std::size_t> bank_index;
  bool operator==(const Selection&) const = default;
};

// Item for step k + 1 given k completed steps. Does not mutate the bank.
Selection select_next(const SessionState& state, const DesignPolicy& policy,
                      const ItemBank& bank);

// select_next followed by marking the chosen bank item as used.
Item next_item(const SessionState& state, const DesignPolicy& policy, ItemBank& bank);

}  // namespace catlab
