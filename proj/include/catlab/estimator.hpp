#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "catlab/irt.hpp"

namespace catlab {

struct Response {
  Response(const Item& item, int y);

  Item item;
  std::uint8_t y;  // 1 = correct, 0 = incorrect
};

enum class EstimateSource { RootOfEquation, Fallback };

struct AbilityEstimate {
  double value = 0.0;
  double observed_info = 0.0;
  EstimateSource source = EstimateSource::RootOfEquation;
};

// Ordered record of administered items and responses, with the estimate
// computed after each step. k0 is the 1-based step at which the response
// first differs from the first response; estimates exist from k0 onward.
class Transcript {
 public:
  void push(const Response& response);
  // Attaches an estimate to the most recent step. Throws before k0.
  void record_estimate(const AbilityEstimate& estimate);

  std::span<const Response> responses() const noexcept { return responses_; }
  const std::optional<AbilityEstimate>& estimate_after(std::size_t step) const {
    return estimates_.at(step);
  }
  std::optional<AbilityEstimate> latest_estimate() const;
  std::optional<std::size_t> k0() const noexcept { return k0_; }
  bool has_both_outcomes() const noexcept { return k0_.has_value(); }
  std::size_t size() const noexcept { return responses_.size(); }
  bool empty() const noexcept { return responses_.empty(); }

  // Checks the k0 / estimate-presence invariant over the whole record.
  bool well_formed() const;

 private:
  std::vector<Response> responses_;
  std::vector<std::optional<AbilityEstimate>> estimates_;
  std::optional<std::size_t> k0_;
};

// Which estimating function to evaluate.
//   RaschScore       sum (Y - G(theta - b))
//   TwoPLScore       sum a (Y - G(a(theta - b)))
//   ThreePLModified  sum w(a, c) (Y - c - (1 - c) G(a(theta - b))), fixed weights
//   ThreePLRaw       likelihood equation with theta-dependent weights; not monotone
enum class EstimatingMode { RaschScore, TwoPLScore, ThreePLRaw, ThreePLModified };

std::string_view to_string(EstimatingMode mode);
EstimatingMode mode_for(ModelKind model);
bool is_monotone(EstimatingMode mode) noexcept;

// Throws InvalidInput if any item is outside the family the mode requires.
void check_mode(std::span<const Response> responses, EstimatingMode mode);

double score(double theta, std::span<const Response> responses, EstimatingMode mode);

struct ScoreAndSlope {
  double value;
  double slope;
};

// Score and its theta-derivative in one pass (monotone modes only).
ScoreAndSlope score_and_slope(double theta, std::span<const Response> responses,
                              EstimatingMode mode);

// Sum of the fixed per-item weights of a monotone mode.
double total_weight(std::span<const Response> responses, EstimatingMode mode);

// Whether the estimating equation has a root. For ThreePLModified this is
// sum w Y > sum w c; the two Rasch/2-PL modes are always solvable once both
// outcomes are present. Throws InitializationIncomplete on one-outcome data.
bool solvable(std::span<const Response> responses, EstimatingMode mode);

// Predetermined fallback sequence r(k) = -ln(1 + k) - 2, decreasing to -infinity.
double fallback_value(std::size_t k) noexcept;

enum class RootMethod {
  Bisection,          // sign-bracketing bisection to width <= tol
  SafeguardedNewton,  // Newton steps confined to the current sign bracket
};

struct SolverOptions {
  double tol = 1e-10;
  RootMethod method = RootMethod::Bisection;
};

// Largest |theta| the bracket search may reach before giving up.
inline constexpr double kBracketLimit = 1e6;

AbilityEstimate solve_ability(std::span<const Response> responses, EstimatingMode mode,
                              std::size_t fallback_index, const SolverOptions& options = {},
                              std::optional<double> previous = std::nullopt);

// Uses the transcript's latest estimate (if any) to center the bracket.
AbilityEstimate solve_ability(const Transcript& transcript, EstimatingMode mode,
                              std::size_t fallback_index, const SolverOptions& options = {});

// All sign changes of the raw 3-PL likelihood equation on a uniform grid over
// [lo, hi], each refined by bisection. Ascending order.
std::vector<double> find_roots_raw(std::span<const Response> responses, double lo, double hi,
                                   std::size_t grid_points, double tol = 1e-12);

// Sum of per-item Fisher information at theta.
double observed_info(double theta, std::span<const Response> responses) noexcept;

// Sum of max_info_closed_form(a_k, c_k); equals sum a_k^2 / 4 when c == 0.
double normalizer_v(std::span<const Response> responses);

}  // namespace catlab
