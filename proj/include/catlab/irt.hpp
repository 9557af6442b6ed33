#pragma once

#include <cmath>
#include <string_view>

namespace catlab {

// Item parameters of the three-parameter logistic model.
// Rasch items have a = 1, c = 0; 2-PL items have c = 0.
// Validation happens once, here, so evaluation code does not re-check.
class Item {
 public:
  Item(double a, double b, double c = 0.0);

  static Item rasch(double b) { return Item(1.0, b, 0.0); }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

  friend bool operator==(const Item&, const Item&) = default;

 private:
  double a_;
  double b_;
  double c_;
};

enum class ModelKind { Rasch, TwoPL, ThreePL };

std::string_view to_string(ModelKind model);
ModelKind parse_model(std::string_view name);

// True when the item belongs to the given model family (exact comparison).
bool conforms(const Item& item, ModelKind model) noexcept;

// G(t) together with 1 - G(t), each computed without cancellation.
struct LogisticPair {
  double g;
  double q;
};

inline LogisticPair logistic_pair(double t) noexcept {
  // exp() only ever sees a non-positive argument.
  const double e = std::exp(-std::fabs(t));
  const double inv = 1.0 / (1.0 + e);
  return t >= 0.0 ? LogisticPair{inv, e * inv} : LogisticPair{e * inv, inv};
}

inline double logistic(double t) noexcept { return logistic_pair(t).g; }

// log G(t) and log(1 - G(t)) = log G(-t), finite for every finite t.
double log_logistic(double t) noexcept;

// P(Y = 1 | theta) = c + (1 - c) G(a (theta - b)).
double icc(double theta, const Item& item) noexcept;

// Per-item Fisher information (1 - c) a^2 e^{2x} / ((c + e^x)(1 + e^x)^2), x = a (theta - b),
// evaluated as (1 - c) a^2 G^2 Q / (c + (1 - c) G) so that no exponential overflows.
double fisher_info(double theta, const Item& item) noexcept;

// Difficulty maximizing fisher_info for fixed (a, c): theta - log((1 + sqrt(1 + 8c)) / 2) / a.
double optimal_difficulty(double theta, double a, double c);

// Value of fisher_info at the optimal difficulty:
// a^2 / (8 (1 - c)^2) * [1 - 20c - 8c^2 + (1 + 8c)^{3/2}].
double max_info_closed_form(double a, double c);

// Fixed weight of the modified 3-PL estimating equation:
// a (1 + sqrt(1 + 8c)) / (2c + 1 + sqrt(1 + 8c)).
double weight(double a, double c);

}  // namespace catlab
