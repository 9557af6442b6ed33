#include "svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace catlab::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fixed(double v, int precision = 2) {
  char buf[64];
  auto end = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision).ptr;
  return std::string(buf, end);
}

std::string tick_label(double v) {
  if (std::fabs(v) < 1e-12) v = 0.0;
  char buf[64];
  auto end = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4).ptr;
  return std::string(buf, end);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double pad = std::max(std::fabs(lo) * 0.1, 1e-3);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string line_plot(const std::vector<Series>& series, std::string_view title,
                      std::string_view x_label, std::string_view y_label) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.settle();
  yr.lo = std::min(yr.lo, 0.0);
  yr.settle();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
       fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(title) + "</text>\n";

  // axes
  o += "<g stroke=\"black\" fill=\"none\">\n";
  o += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" +
       fixed(kLeft + pw) + "\" y2=\"" + fixed(kTop + ph) + "\"/>\n";
  o += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(kLeft) +
       "\" y2=\"" + fixed(kTop + ph) + "\"/>\n";
  o += "</g>\n";

  const int ticks = 5;
  o += "<g>\n";
  for (int i = 0; i <= ticks; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / ticks;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / ticks;
    const double x = px(xv), y = py(yv);
    o += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" + fixed(x) +
         "\" y2=\"" + fixed(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(kTop + ph + 18) +
         "\" text-anchor=\"middle\">" + tick_label(xv) + "</text>\n";
    o += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft) +
         "\" y2=\"" + fixed(y) + "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(y + 4) + "\" text-anchor=\"end\">" +
         tick_label(yv) + "</text>\n";
  }
  o += "</g>\n";
  o += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 10) +
       "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  o += "<text x=\"16\" y=\"" + fixed(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fixed(kTop + ph / 2) + ")\">" + escape(y_label) + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    std::string pts;
    const auto& sr = series[s];
    for (std::size_t i = 0; i < std::min(sr.x.size(), sr.y.size()); ++i) {
      if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i])) continue;
      if (!pts.empty()) pts += ' ';
      pts += fixed(px(sr.x[i])) + "," + fixed(py(sr.y[i]));
    }
    o += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    const double ly = kTop + 14.0 + 16.0 * static_cast<double>(s);
    o += "<line x1=\"" + fixed(kLeft + pw - 150) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" +
         fixed(kLeft + pw - 130) + "\" y2=\"" + fixed(ly - 4) + "\" stroke=\"" + color +
         "\" stroke-width=\"2\"/>\n";
    o += "<text x=\"" + fixed(kLeft + pw - 124) + "\" y=\"" + fixed(ly) + "\">" +
         escape(sr.label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

}  // namespace catlab::cli
