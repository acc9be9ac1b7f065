#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "dietbot/chart.hpp"

namespace dietbot {

namespace {

constexpr double kWidth = 640, kHeight = 360;
constexpr double kLeft = 64, kRight = 624, kTop = 48, kBottom = 292;
constexpr std::array<const char*, 6> kPalette = {"#4e79a7", "#f28e2b", "#59a14f",
                                                 "#e15759", "#76b7b2", "#edc948"};

// Fixed two-decimal coordinates keep output identical across platforms.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string tick_label(double v, double step) {
  char buf[32];
  if (step >= 1.0) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.2f", v);
  }
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string clip_label(const std::string& s, std::size_t max_chars) {
  if (s.size() <= max_chars) return s;
  return s.substr(0, max_chars - 2) + "..";
}

/// 1-2-5 step giving at most ~5 intervals up to `max`.
double nice_step(double max) {
  const double raw = max / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= f * mag) return f * mag;
  }
  return 10.0 * mag;
}

class SvgWriter {
 public:
  explicit SvgWriter(const ChartSpec& spec) : spec_(spec) {}

  std::string build() {
    open();
    bool any = std::any_of(spec_.series.begin(), spec_.series.end(),
                           [](const ChartSeries& s) { return !s.values.empty(); });
    if (!any || spec_.categories.empty()) {
      out_ += "  <text class=\"no-data\" x=\"320.00\" y=\"190.00\" text-anchor=\"middle\" "
              "font-size=\"16\" fill=\"#777777\">No data</text>\n";
      return close();
    }
    axes();
    switch (spec_.kind) {
      case ChartKind::timeseries: timeseries(); break;
      case ChartKind::bars:
      case ChartKind::grouped_bars: bars(); break;
    }
    goal();
    legend();
    return close();
  }

 private:
  void open() {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
            "height=\"360\" viewBox=\"0 0 640 360\" font-family=\"sans-serif\" "
            "class=\"chart " + std::string(chart_kind_id(spec_.kind)) + "\">\n";
    out_ += "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" + num(kWidth) +
            "\" height=\"" + num(kHeight) + "\" fill=\"#ffffff\"/>\n";
    out_ += "  <text class=\"title\" x=\"320.00\" y=\"24.00\" text-anchor=\"middle\" "
            "font-size=\"15\" font-weight=\"bold\">" + escape(spec_.title) + "</text>\n";
  }

  std::string close() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

  double y_of(double v) const { return kBottom - (v / y_max_) * (kBottom - kTop); }

  double slot_width() const { return (kRight - kLeft) / static_cast<double>(spec_.categories.size()); }
  double slot_center(std::size_t i) const { return kLeft + slot_width() * (static_cast<double>(i) + 0.5); }

  void axes() {
    double max = spec_.goal_line.value_or(0.0);
    for (const auto& s : spec_.series) {
      for (double v : s.values) max = std::max(max, v);
    }
    if (max <= 0.0) max = 1.0;
    const double step = nice_step(max * 1.1);
    y_max_ = std::ceil(max * 1.1 / step) * step;

    out_ += "  <g class=\"y-axis\" font-size=\"10\" fill=\"#333333\">\n";
    for (double v = 0.0; v <= y_max_ + step * 1e-9; v += step) {
      const std::string y = num(y_of(v));
      out_ += "    <line class=\"grid\" x1=\"" + num(kLeft) + "\" y1=\"" + y + "\" x2=\"" +
              num(kRight) + "\" y2=\"" + y + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
      out_ += "    <text class=\"tick\" x=\"" + num(kLeft - 6) + "\" y=\"" + num(y_of(v) + 3) +
              "\" text-anchor=\"end\">" + tick_label(v, step) + "</text>\n";
    }
    out_ += "    <text class=\"units\" x=\"14.00\" y=\"" + num((kTop + kBottom) / 2) +
            "\" text-anchor=\"middle\" transform=\"rotate(-90 14.00 " + num((kTop + kBottom) / 2) +
            ")\">" + escape(spec_.units) + "</text>\n";
    out_ += "  </g>\n";

    out_ += "  <g class=\"x-axis\" font-size=\"10\" fill=\"#333333\">\n";
    out_ += "    <line class=\"axis\" x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
            num(kRight) + "\" y2=\"" + num(kBottom) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    const std::size_t max_chars = spec_.categories.size() > 8 ? 6 : 14;
    for (std::size_t i = 0; i < spec_.categories.size(); ++i) {
      out_ += "    <text class=\"tick\" x=\"" + num(slot_center(i)) + "\" y=\"" + num(kBottom + 16) +
              "\" text-anchor=\"middle\">" + escape(clip_label(spec_.categories[i], max_chars)) +
              "</text>\n";
    }
    out_ += "  </g>\n";
  }

  void timeseries() {
    for (std::size_t s = 0; s < spec_.series.size(); ++s) {
      const auto& series = spec_.series[s];
      const char* color = kPalette[s % kPalette.size()];
      out_ += "  <g class=\"series\" data-label=\"" + escape(series.label) + "\">\n";
      std::string points;
      for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (i) points += ' ';
        points += num(slot_center(i)) + "," + num(y_of(series.values[i]));
      }
      out_ += "    <polyline class=\"series-line\" points=\"" + points + "\" fill=\"none\" stroke=\"" +
              color + "\" stroke-width=\"2\"/>\n";
      for (std::size_t i = 0; i < series.values.size(); ++i) {
        out_ += "    <circle class=\"point\" cx=\"" + num(slot_center(i)) + "\" cy=\"" +
                num(y_of(series.values[i])) + "\" r=\"3.50\" fill=\"" + color + "\"/>\n";
      }
      out_ += "  </g>\n";
    }
  }

  void bars() {
    const double group = slot_width() * 0.7;
    const double bar = group / static_cast<double>(spec_.series.size());
    for (std::size_t s = 0; s < spec_.series.size(); ++s) {
      const auto& series = spec_.series[s];
      const char* color = kPalette[s % kPalette.size()];
      out_ += "  <g class=\"series\" data-label=\"" + escape(series.label) + "\">\n";
      for (std::size_t i = 0; i < series.values.size(); ++i) {
        const double x = slot_center(i) - group / 2 + bar * static_cast<double>(s);
        const double y = y_of(series.values[i]);
        out_ += "    <rect class=\"bar\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
                num(bar) + "\" height=\"" + num(kBottom - y) + "\" fill=\"" + color + "\"/>\n";
      }
      out_ += "  </g>\n";
    }
  }

  void goal() {
    if (!spec_.goal_line) return;
    const std::string y = num(y_of(*spec_.goal_line));
    out_ += "  <line class=\"goal-line\" x1=\"" + num(kLeft) + "\" y1=\"" + y + "\" x2=\"" +
            num(kRight) + "\" y2=\"" + y +
            "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    out_ += "  <text class=\"goal-label\" x=\"" + num(kRight) + "\" y=\"" + num(y_of(*spec_.goal_line) - 4) +
            "\" text-anchor=\"end\" font-size=\"10\" fill=\"#c0392b\">goal</text>\n";
  }

  void legend() {
    if (spec_.series.size() < 2) return;
    out_ += "  <g class=\"legend\" font-size=\"11\">\n";
    double x = kLeft;
    for (std::size_t s = 0; s < spec_.series.size(); ++s) {
      out_ += "    <g class=\"legend-entry\">\n";
      out_ += "      <rect x=\"" + num(x) + "\" y=\"326.00\" width=\"12.00\" height=\"12.00\" fill=\"" +
              kPalette[s % kPalette.size()] + "\"/>\n";
      out_ += "      <text x=\"" + num(x + 16) + "\" y=\"336.00\">" +
              escape(spec_.series[s].label) + "</text>\n";
      out_ += "    </g>\n";
      x += 200;
    }
    out_ += "  </g>\n";
  }

  const ChartSpec& spec_;
  std::string out_;
  double y_max_ = 1.0;
};

}  // namespace

std::string render(const ChartSpec& spec) {
  validate(spec);
  return SvgWriter(spec).build();
}

}  // namespace dietbot
