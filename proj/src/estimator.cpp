#include "catlab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "catlab/errors.hpp"

namespace catlab {

Response::Response(const Item& item_, int y_) : item(item_), y(static_cast<std::uint8_t>(y_)) {
  if (y_ != 0 && y_ != 1) {
    throw InvalidInput("response must be 0 or 1, got " + std::to_string(y_));
  }
}

void Transcript::push(const Response& response) {
  responses_.push_back(response);
  estimates_.emplace_back();
  if (!k0_ && response.y != responses_.front().y) {
    k0_ = responses_.size();
  }
}

void Transcript::record_estimate(const AbilityEstimate& estimate) {
  if (!k0_) {
    throw InitializationIncomplete("cannot record an estimate before both outcomes are observed");
  }
  estimates_.back() = estimate;
}

std::optional<AbilityEstimate> Transcript::latest_estimate() const {
  for (auto it = estimates_.rbegin(); it != estimates_.rend(); ++it) {
    if (*it) return *it;
  }
  return std::nullopt;
}

bool Transcript::well_formed() const {
  std::optional<std::size_t> first_flip;
  for (std::size_t i = 1; i < responses_.size(); ++i) {
    if (responses_[i].y != responses_[0].y) {
      first_flip = i + 1;
      break;
    }
  }
  if (first_flip != k0_) return false;
  for (std::size_t i = 0; i < estimates_.size(); ++i) {
    const bool after_k0 = k0_ && i + 1 >= *k0_;
    if (estimates_[i].has_value() != after_k0) return false;
  }
  return true;
}

std::string_view to_string(EstimatingMode mode) {
  switch (mode) {
    case EstimatingMode::RaschScore:
      return "rasch";
    case EstimatingMode::TwoPLScore:
      return "2pl";
    case EstimatingMode::ThreePLRaw:
      return "3pl-raw";
    case EstimatingMode::ThreePLModified:
      return "3pl-modified";
  }
  return "unknown";
}

EstimatingMode mode_for(ModelKind model) {
  switch (model) {
    case ModelKind::Rasch:
      return EstimatingMode::RaschScore;
    case ModelKind::TwoPL:
      return EstimatingMode::TwoPLScore;
    case ModelKind::ThreePL:
      return EstimatingMode::ThreePLModified;
  }
  return EstimatingMode::ThreePLModified;
}

bool is_monotone(EstimatingMode mode) noexcept { return mode != EstimatingMode::ThreePLRaw; }

void check_mode(std::span<const Response> responses, EstimatingMode mode) {
  ModelKind family = ModelKind::ThreePL;
  if (mode == EstimatingMode::RaschScore) family = ModelKind::Rasch;
  if (mode == EstimatingMode::TwoPLScore) family = ModelKind::TwoPL;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (!conforms(responses[i].item, family)) {
      throw InvalidInput("item " + std::to_string(i + 1) + " is not a " +
                         std::string(to_string(family)) + " item but mode is " +
                         std::string(to_string(mode)));
    }
  }
}

namespace {

double fixed_weight(const Item& item, EstimatingMode mode) {
  switch (mode) {
    case EstimatingMode::RaschScore:
      return 1.0;
    case EstimatingMode::TwoPLScore:
      return item.a();
    default:
      return weight(item.a(), item.c());
  }
}

// Y - c - (1 - c) G written so that neither outcome loses the small tail:
// Y = 1 gives (1 - c) Q, Y = 0 gives -(c + (1 - c) G).
double residual(std::uint8_t y, double c, const LogisticPair& gq) noexcept {
  return y ? (1.0 - c) * gq.q : -(c + (1.0 - c) * gq.g);
}

double raw_weight(const Item& item, const LogisticPair& gq) noexcept {
  // a e^x / (c + e^x) = a G / (G + c Q)
  if (item.c() == 0.0) return item.a();
  const double denom = gq.g + item.c() * gq.q;
  return denom > 0.0 ? item.a() * gq.g / denom : 0.0;
}

// Evaluators used inside the solvers, after the items were checked once.
double score_unchecked(double theta, std::span<const Response> responses, EstimatingMode mode) {
  double sum = 0.0;
  if (mode == EstimatingMode::ThreePLRaw) {
    for (const auto& r : responses) {
      const auto gq = logistic_pair(r.item.a() * (theta - r.item.b()));
      sum += raw_weight(r.item, gq) * residual(r.y, r.item.c(), gq);
    }
    return sum;
  }
  for (const auto& r : responses) {
    const auto gq = logistic_pair(r.item.a() * (theta - r.item.b()));
    sum += fixed_weight(r.item, mode) * residual(r.y, r.item.c(), gq);
  }
  return sum;
}

ScoreAndSlope score_and_slope_unchecked(double theta, std::span<const Response> responses,
                                        EstimatingMode mode) {
  double value = 0.0;
  double slope = 0.0;
  for (const auto& r : responses) {
    const auto gq = logistic_pair(r.item.a() * (theta - r.item.b()));
    const double w = fixed_weight(r.item, mode);
    const double c = r.item.c();
    value += w * residual(r.y, c, gq);
    slope -= w * (1.0 - c) * r.item.a() * gq.g * gq.q;
  }
  return {value, slope};
}

void require_both_outcomes(std::span<const Response> responses) {
  bool has0 = false;
  bool has1 = false;
  for (const auto& r : responses) {
    (r.y ? has1 : has0) = true;
  }
  if (!has0 || !has1) {
    throw InitializationIncomplete("initialization incomplete: responses contain a single outcome");
  }
}

// Bisection on a non-increasing function with f(lo) > 0 > f(hi).
// When the midpoint lands on an exact-zero plateau, the plateau edges are
// located and their midpoint returned, which does not depend on where the
// plateau was first hit.
template <typename F>
double bisect_decreasing(F&& f, double lo, double hi, double tol) {
  auto edge = [&](double a, double b, auto&& on_a_side) {
    while (b - a > tol) {
      const double mid = a + 0.5 * (b - a);
      if (mid <= a || mid >= b) break;
      (on_a_side(f(mid)) ? a : b) = mid;
    }
    return a + 0.5 * (b - a);
  };
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double v = f(mid);
    if (v > 0.0) {
      lo = mid;
    } else if (v < 0.0) {
      hi = mid;
    } else {
      const double left = edge(lo, mid, [](double fv) { return fv > 0.0; });
      const double right = edge(mid, hi, [](double fv) { return fv >= 0.0; });
      return 0.5 * (left + right);
    }
  }
  return lo + 0.5 * (hi - lo);
}

struct Bracket {
  double lo;
  double hi;
};

template <typename F>
Bracket expand_bracket(F&& f, double center) {
  double step_lo = 4.0;
  double step_hi = 4.0;
  double lo = center - step_lo;
  double hi = center + step_hi;
  double flo = f(lo);
  double fhi = f(hi);
  while (!(flo > 0.0)) {
    if (flo < 0.0) {
      hi = lo;
      fhi = flo;
    }
    step_lo *= 2.0;
    lo = center - step_lo;
    if (std::fabs(lo) > kBracketLimit) {
      throw DegenerateTranscript("degenerate transcript: no sign change of the score above theta = " +
                                 std::to_string(lo));
    }
    flo = f(lo);
  }
  while (!(fhi < 0.0)) {
    if (fhi > 0.0) lo = hi;
    step_hi *= 2.0;
    hi = center + step_hi;
    if (std::fabs(hi) > kBracketLimit) {
      throw DegenerateTranscript("degenerate transcript: no sign change of the score below theta = " +
                                 std::to_string(hi));
    }
    fhi = f(hi);
  }
  return {lo, hi};
}

double solve_bisection(std::span<const Response> responses, EstimatingMode mode, double center,
                       double tol) {
  auto f = [&](double t) { return score_unchecked(t, responses, mode); };
  const Bracket br = expand_bracket(f, center);
  return bisect_decreasing(f, br.lo, br.hi, tol);
}

// Newton iteration that keeps a sign bracket [lo, hi]. A step leaving the
// bracket (or a vanishing slope) is replaced by bisection once both ends are
// known, or by a doubling excursion toward the unknown end otherwise.
double solve_newton(std::span<const Response> responses, EstimatingMode mode, double center,
                    double tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo = -inf;
  double hi = inf;
  double excursion = 4.0;
  double x = center;
  for (int iter = 0; iter < 200; ++iter) {
    const auto [f, d] = score_and_slope_unchecked(x, responses, mode);
    if (f > 0.0) {
      lo = x;
    } else if (f < 0.0) {
      hi = x;
    } else if (d < 0.0) {
      return x;
    } else {
      return solve_bisection(responses, mode, center, tol);
    }
    if (hi - lo <= tol) return lo + 0.5 * (hi - lo);

    double next = (d < 0.0) ? x - f / d : (f > 0.0 ? inf : -inf);
    if (std::fabs(next - x) <= 0.5 * tol && !(std::isfinite(lo) && std::isfinite(hi))) {
      // Converged from one side: step just past x toward the root to close the bracket.
      next = x + (f > 0.0 ? 0.5 * tol : -0.5 * tol);
    } else if (!(next > lo && next < hi) || !std::isfinite(next)) {
      if (std::isfinite(lo) && std::isfinite(hi)) {
        next = lo + 0.5 * (hi - lo);
      } else {
        next = std::isfinite(lo) ? lo + excursion : hi - excursion;
        excursion *= 2.0;
      }
    } else if (!std::isfinite(lo) || !std::isfinite(hi)) {
      // Cap long steps into unexplored territory.
      const double cap = excursion;
      if (std::fabs(next - x) > cap) {
        next = x + std::copysign(cap, next - x);
        excursion *= 2.0;
      }
    }
    if (std::fabs(next) > kBracketLimit) {
      throw DegenerateTranscript("degenerate transcript: estimate escaped |theta| <= 1e6");
    }
    const double dx = next - x;
    x = next;
    if (std::fabs(dx) <= 0.5 * tol && std::isfinite(lo) && std::isfinite(hi)) {
      return x;
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    return solve_bisection(responses, mode, center, tol);
  }
  auto fn = [&](double t) { return score_unchecked(t, responses, mode); };
  return bisect_decreasing(fn, lo, hi, tol);
}

}  // namespace

double score(double theta, std::span<const Response> responses, EstimatingMode mode) {
  check_mode(responses, mode);
  return score_unchecked(theta, responses, mode);
}

ScoreAndSlope score_and_slope(double theta, std::span<const Response> responses,
                              EstimatingMode mode) {
  if (!is_monotone(mode)) {
    throw InvalidInput("score_and_slope requires a monotone estimating mode");
  }
  check_mode(responses, mode);
  return score_and_slope_unchecked(theta, responses, mode);
}

double total_weight(std::span<const Response> responses, EstimatingMode mode) {
  if (!is_monotone(mode)) {
    throw InvalidInput("the raw 3-PL equation has no fixed weights");
  }
  double sum = 0.0;
  for (const auto& r : responses) sum += fixed_weight(r.item, mode);
  return sum;
}

bool solvable(std::span<const Response> responses, EstimatingMode mode) {
  require_both_outcomes(responses);
  check_mode(responses, mode);
  switch (mode) {
    case EstimatingMode::RaschScore:
    case EstimatingMode::TwoPLScore:
      return true;
    case EstimatingMode::ThreePLRaw:
      throw InvalidInput("solvability is only defined for the monotone estimating modes");
    case EstimatingMode::ThreePLModified:
      break;
  }
  // sum w (Y - c) > 0, with a relative margin so that exact ties that are
  // blurred by rounding still count as ties.
  double margin = 0.0;
  double scale = 0.0;
  for (const auto& r : responses) {
    const double w = fixed_weight(r.item, mode);
    margin += w * (static_cast<double>(r.y) - r.item.c());
    scale += w;
  }
  return margin > 1e-12 * scale;
}

double fallback_value(std::size_t k) noexcept {
  return -std::log1p(static_cast<double>(k)) - 2.0;
}

AbilityEstimate solve_ability(std::span<const Response> responses, EstimatingMode mode,
                              std::size_t fallback_index, const SolverOptions& options,
                              std::optional<double> previous) {
  if (!is_monotone(mode)) {
    throw InvalidInput("solve_ability requires a monotone estimating mode; the raw 3-PL "
                       "equation is available only through find_roots_raw");
  }
  if (!(options.tol > 0.0)) {
    throw InvalidInput("solver tolerance must be positive");
  }
  if (!solvable(responses, mode)) {
    const double r = fallback_value(fallback_index);
    return {r, observed_info(r, responses), EstimateSource::Fallback};
  }
  const double center = previous.value_or(0.0);
  const double value = options.method == RootMethod::Bisection
                           ? solve_bisection(responses, mode, center, options.tol)
                           : solve_newton(responses, mode, center, options.tol);
  return {value, observed_info(value, responses), EstimateSource::RootOfEquation};
}

AbilityEstimate solve_ability(const Transcript& transcript, EstimatingMode mode,
                              std::size_t fallback_index, const SolverOptions& options) {
  std::optional<double> previous;
  if (auto last = transcript.latest_estimate()) previous = last->value;
  return solve_ability(transcript.responses(), mode, fallback_index, options, previous);
}

std::vector<double> find_roots_raw(std::span<const Response> responses, double lo, double hi,
                                   std::size_t grid_points, double tol) {
  if (grid_points < 2) {
    throw InvalidInput("find_roots_raw needs at least 2 grid points");
  }
  std::vector<double> roots;
  if (!(lo < hi)) return roots;

  auto f = [&](double t) { return score(t, responses, EstimatingMode::ThreePLRaw); };
  auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);

  double prev_t = lo;
  int prev_s = sign(f(lo));
  if (prev_s == 0) roots.push_back(lo);
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double t = (i + 1 == grid_points) ? hi : lo + step * static_cast<double>(i);
    const int s = sign(f(t));
    if (s == 0) {
      if (prev_s != 0) roots.push_back(t);
    } else if (prev_s != 0 && s != prev_s) {
      double a = prev_t;
      double b = t;
      while (b - a > tol) {
        const double mid = a + 0.5 * (b - a);
        if (mid <= a || mid >= b) break;
        const int sm = sign(f(mid));
        if (sm == 0) {
          a = b = mid;
          break;
        }
        (sm == prev_s ? a : b) = mid;
      }
      roots.push_back(a + 0.5 * (b - a));
    }
    prev_t = t;
    prev_s = s;
  }
  return roots;
}

double observed_info(double theta, std::span<const Response> responses) noexcept {
  double sum = 0.0;
  for (const auto& r : responses) sum += fisher_info(theta, r.item);
  return sum;
}

double normalizer_v(std::span<const Response> responses) {
  double sum = 0.0;
  for (const auto& r : responses) sum += max_info_closed_form(r.item.a(), r.item.c());
  return sum;
}

}  // namespace catlab
