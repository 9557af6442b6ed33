#include "catlab/designer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "catlab/errors.hpp"

namespace catlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double linear(double from, double to, std::size_t k, std::size_t n_total) {
  if (n_total <= 1) return from;
  const double t = static_cast<double>(k - 1) / static_cast<double>(n_total - 1);
  return from + (to - from) * t;
}

// Shortest round-trip form, so a described schedule parses back to the same values.
std::string num(double v) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
  return std::string(buf, end);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
  return out;
}

}  // namespace

double a_at(const ASchedule& a_schedule, std::size_t k, std::size_t n_total) {
  if (k == 0) throw InvalidInput("schedule steps are 1-based");
  return std::visit(
      overloaded{
          [](const schedule::Constant& s) { return s.a; },
          [&](const schedule::LinearAscending& s) { return linear(s.lo, s.hi, k, n_total); },
          [&](const schedule::LinearDescending& s) { return linear(s.hi, s.lo, k, n_total); },
          [&](const schedule::Stratified& s) {
            if (s.levels.empty() || s.block_length == 0) {
              throw InvalidInput("stratified schedule needs levels and a positive block length");
            }
            const std::size_t level = (k + s.block_length - 1) / s.block_length;
            return s.levels[std::min(level, s.levels.size()) - 1];
          },
          [&](const schedule::Explicit& s) {
            if (k > s.values.size()) {
              throw InvalidInput("explicit a-schedule has " + std::to_string(s.values.size()) +
                                 " entries, step " + std::to_string(k) + " requested");
            }
            return s.values[k - 1];
          },
          [&](const schedule::CubicDivergent&) {
            const double kd = static_cast<double>(k);
            return kd * kd * kd;
          },
      },
      a_schedule);
}

double c_at(const CRule& rule, std::size_t k) {
  if (k == 0) throw InvalidInput("schedule steps are 1-based");
  return std::visit(overloaded{
                        [](const guessing::Zero&) { return 0.0; },
                        [](const guessing::Constant& r) { return r.c; },
                        [&](const guessing::Explicit& r) {
                          if (k > r.values.size()) {
                            throw InvalidInput("explicit c-schedule has " +
                                               std::to_string(r.values.size()) +
                                               " entries, step " + std::to_string(k) +
                                               " requested");
                          }
                          return r.values[k - 1];
                        },
                    },
                    rule);
}

std::string describe(const ASchedule& a_schedule) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const schedule::Constant& s) { os << "const:" << num(s.a); },
                 [&](const schedule::LinearAscending& s) { os << "asc:" << num(s.lo) << ":" << num(s.hi); },
                 [&](const schedule::LinearDescending& s) {
                   os << "desc:" << num(s.hi) << ":" << num(s.lo);
                 },
                 [&](const schedule::Stratified& s) {
                   os << "strat:" << join(s.levels) << ":" << s.block_length;
                 },
                 [&](const schedule::Explicit& s) { os << "explicit:" << join(s.values); },
                 [&](const schedule::CubicDivergent&) { os << "cubic"; },
             },
             a_schedule);
  return os.str();
}

std::string describe(const CRule& rule) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const guessing::Zero&) { os << "zero"; },
                 [&](const guessing::Constant& r) { os << "const:" << num(r.c); },
                 [&](const guessing::Explicit& r) { os << "explicit:" << join(r.values); },
             },
             rule);
  return os.str();
}

std::string_view to_string(DifficultyRule rule) {
  return rule == DifficultyRule::PlainTheta ? "plain" : "offset";
}

std::vector<PolicyIssue> validate_policy(const DesignPolicy& policy, std::size_t n_total) {
  using Severity = PolicyIssue::Severity;
  std::vector<PolicyIssue> issues;
  auto violation = [&](std::string msg) { issues.push_back({Severity::Violation, std::move(msg)}); };

  if (!(policy.eps0 > 0.0) || !std::isfinite(policy.eps0)) violation("eps0 must be > 0");
  if (!std::isfinite(policy.b1)) violation("b1 must be finite");
  if (!(policy.a_min > 0.0)) violation("lower bound m must be > 0");
  if (!(policy.a_min <= policy.a_max) || !std::isfinite(policy.a_max)) {
    violation("bounds must satisfy m <= M < infinity");
  }
  if (!(policy.delta0 > 0.0 && policy.delta0 <= 1.0)) violation("delta0 must lie in (0, 1]");

  const bool cubic = std::holds_alternative<schedule::CubicDivergent>(policy.a_schedule);
  if (cubic) {
    issues.push_back({Severity::Warning,
                      "theory-violating counterexample mode: a_k = k^3 ignores the bounds [m, M]"});
  }

  const std::size_t steps = std::max<std::size_t>(n_total, 1);
  bool reported_high = false;
  bool reported_low = false;
  for (std::size_t k = 1; k <= steps && !cubic; ++k) {
    double a = 0.0;
    try {
      a = a_at(policy.a_schedule, k, steps);
    } catch (const InvalidInput& e) {
      violation(e.what());
      break;
    }
    if (a > policy.a_max && !reported_high) {
      violation("a exceeds M at step " + std::to_string(k));
      reported_high = true;
    }
    if (!(a >= policy.a_min) && !reported_low) {
      violation("a below m at step " + std::to_string(k));
      reported_low = true;
    }
  }

  const double ceiling = 1.0 - policy.delta0;
  for (std::size_t k = 1; k <= steps; ++k) {
    double c = 0.0;
    try {
      c = c_at(policy.c_rule, k);
    } catch (const InvalidInput& e) {
      violation(e.what());
      break;
    }
    if (!(c >= 0.0)) {
      violation("c negative at step " + std::to_string(k));
      break;
    }
    if (c > ceiling) {
      violation("c exceeds the ceiling 1 - delta0 at step " + std::to_string(k));
      break;
    }
  }
  return issues;
}

bool has_violations(const std::vector<PolicyIssue>& issues) {
  return std::any_of(issues.begin(), issues.end(), [](const PolicyIssue& i) {
    return i.severity == PolicyIssue::Severity::Violation;
  });
}

ItemBank ItemBank::finite(std::vector<Item> items) {
  ItemBank bank;
  bank.used_.assign(items.size(), false);
  bank.items_ = std::make_shared<const std::vector<Item>>(std::move(items));
  return bank;
}

std::span<const Item> ItemBank::items() const noexcept {
  if (!items_) return {};
  return *items_;
}

std::size_t ItemBank::used_count() const noexcept {
  return static_cast<std::size_t>(std::count(used_.begin(), used_.end(), true));
}

void ItemBank::mark_used(std::size_t index) {
  if (is_idealized()) return;
  if (used_.at(index)) throw InvalidInput("bank item " + std::to_string(index) + " already used");
  used_[index] = true;
}

std::size_t ItemBank::best_unused(double theta) const {
  const auto pool = items();
  std::optional<std::size_t> best;
  double best_info = -1.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (used_[i]) continue;
    const double info = fisher_info(theta, pool[i]);
    if (info > best_info) {
      best_info = info;
      best = i;
    }
  }
  if (!best) throw BankExhausted("bank exhausted: all " + std::to_string(pool.size()) + " items used");
  return *best;
}

Selection select_next(const SessionState& state, const DesignPolicy& policy,
                      const ItemBank& bank) {
  const auto& transcript = state.transcript;
  const std::size_t k = state.step_index();  // completed steps
  const std::size_t n_total = std::max(state.n_total, k + 1);

  // Point around which the next item is centered.
  double target = policy.b1;
  if (state.phase() == Phase::Initializing) {
    if (k > 0) {
      const double dir = transcript.responses().front().y ? 1.0 : -1.0;
      target = policy.b1 + dir * policy.eps0 * static_cast<double>(k);
    }
  } else {
    const auto estimate = transcript.latest_estimate();
    if (!estimate) {
      throw InvalidInput("adaptive phase requires a current ability estimate");
    }
    target = estimate->value;
  }

  if (!bank.is_idealized()) {
    const std::size_t idx = bank.best_unused(target);
    return {bank.items()[idx], idx};
  }

  const double a = a_at(policy.a_schedule, k + 1, n_total);
  const double c = c_at(policy.c_rule, k + 1);
  double b = target;
  if (state.phase() == Phase::Adaptive && policy.b_rule == DifficultyRule::InfoOptimalOffset) {
    b = optimal_difficulty(target, a, c);
  }
  return {Item(a, b, c), std::nullopt};
}

Item next_item(const SessionState& state, const DesignPolicy& policy, ItemBank& bank) {
  const Selection sel = select_next(state, policy, bank);
  if (sel.bank_index) bank.mark_used(*sel.bank_index);
  return sel.item;
}

}  // namespace catlab
