#include "catlab/irt.hpp"

#include <string>

#include "catlab/errors.hpp"

namespace catlab {

namespace {

void require_discrimination_and_guessing(double a, double c) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidInput("discrimination a must be finite and > 0, got " + std::to_string(a));
  }
  if (!(c >= 0.0 && c < 1.0)) {
    throw InvalidInput("guessing c must lie in [0, 1), got " + std::to_string(c));
  }
}

}  // namespace

Item::Item(double a, double b, double c) : a_(a), b_(b), c_(c) {
  require_discrimination_and_guessing(a, c);
  if (!std::isfinite(b)) {
    throw InvalidInput("difficulty b must be finite");
  }
}

std::string_view to_string(ModelKind model) {
  switch (model) {
    case ModelKind::Rasch:
      return "rasch";
    case ModelKind::TwoPL:
      return "2pl";
    case ModelKind::ThreePL:
      return "3pl";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  if (name == "rasch" || name == "1pl") return ModelKind::Rasch;
  if (name == "2pl") return ModelKind::TwoPL;
  if (name == "3pl") return ModelKind::ThreePL;
  throw InvalidInput("unknown model '" + std::string(name) + "' (expected rasch, 2pl or 3pl)");
}

bool conforms(const Item& item, ModelKind model) noexcept {
  switch (model) {
    case ModelKind::Rasch:
      return item.a() == 1.0 && item.c() == 0.0;
    case ModelKind::TwoPL:
      return item.c() == 0.0;
    case ModelKind::ThreePL:
      return true;
  }
  return false;
}

double log_logistic(double t) noexcept {
  // log G(t) = -log(1 + e^{-t})
  return t >= 0.0 ? -std::log1p(std::exp(-t)) : t - std::log1p(std::exp(t));
}

double icc(double theta, const Item& item) noexcept {
  const double g = logistic(item.a() * (theta - item.b()));
  return item.c() + (1.0 - item.c()) * g;
}

double fisher_info(double theta, const Item& item) noexcept {
  const auto [g, q] = logistic_pair(item.a() * (theta - item.b()));
  const double c = item.c();
  const double a2 = item.a() * item.a();
  if (c == 0.0) {
    return a2 * g * q;
  }
  const double p = c + (1.0 - c) * g;
  return (1.0 - c) * a2 * g * g * q / p;
}

double optimal_difficulty(double theta, double a, double c) {
  require_discrimination_and_guessing(a, c);
  return theta - std::log((1.0 + std::sqrt(1.0 + 8.0 * c)) / 2.0) / a;
}

double max_info_closed_form(double a, double c) {
  require_discrimination_and_guessing(a, c);
  const double root = std::sqrt(1.0 + 8.0 * c);
  const double bracket = 1.0 - 20.0 * c - 8.0 * c * c + root * root * root;
  return a * a / (8.0 * (1.0 - c) * (1.0 - c)) * bracket;
}

double weight(double a, double c) {
  require_discrimination_and_guessing(a, c);
  const double root = std::sqrt(1.0 + 8.0 * c);
  return a * (1.0 + root) / (2.0 * c + 1.0 + root);
}

}  // namespace catlab
