#include "bcs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace bcs {

const char* plot_metric_name(PlotMetric m) {
  switch (m) {
    case PlotMetric::kRse: return "rse";
    case PlotMetric::kExact: return "exact";
    case PlotMetric::kFp: return "fp";
    case PlotMetric::kFn: return "fn";
    case PlotMetric::kIters: return "iters";
  }
  return "?";
}

std::optional<PlotMetric> parse_plot_metric(const std::string& name) {
  for (PlotMetric m : kAllPlotMetrics)
    if (name == plot_metric_name(m)) return m;
  return std::nullopt;
}

namespace {

const char* metric_title(PlotMetric m) {
  switch (m) {
    case PlotMetric::kRse: return "Relative square error";
    case PlotMetric::kExact: return "Exact recovery rate";
    case PlotMetric::kFp: return "False positive rate";
    case PlotMetric::kFn: return "False negative rate";
    case PlotMetric::kIters: return "Mean ADMM iterations";
  }
  return "?";
}

double metric_value(const AggregateRow& row, PlotMetric m) {
  switch (m) {
    case PlotMetric::kRse: return row.rse_mean;
    case PlotMetric::kExact: return row.exact_rate;
    case PlotMetric::kFp: return row.fp_mean;
    case PlotMetric::kFn: return row.fn_mean;
    case PlotMetric::kIters: return row.iters_mean;
  }
  return 0.0;
}

bool rate_metric(PlotMetric m) {
  return m == PlotMetric::kExact || m == PlotMetric::kFp || m == PlotMetric::kFn;
}

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                           "#17becf", "#9467bd", "#ff7f0e"};

struct Series {
  Method method;
  bool known_k;
  std::vector<std::pair<int, double>> points;  // (m, value), m ascending
};

// Tick step of the form {1,2,5}*10^p giving at most `slots` intervals.
double nice_step(double span, int slots) {
  const double raw = span / slots;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mult * mag >= raw) return mult * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_curves(const std::vector<AggregateRow>& rows, PlotMetric metric,
                          bool log_y) {
  if (rows.empty()) fail(ErrorCode::kPrecondition, "no aggregated rows to plot");

  // Group into series ordered by (method, known_k).
  std::vector<Series> series;
  for (Method method : kAllMethods) {
    for (int kk = 0; kk <= 1; ++kk) {
      Series s{method, kk == 1, {}};
      for (const auto& row : rows)
        if (row.method == method && row.known_k == (kk == 1))
          s.points.emplace_back(row.m, metric_value(row, metric));
      if (!s.points.empty()) {
        std::sort(s.points.begin(), s.points.end());
        series.push_back(std::move(s));
      }
    }
  }
  if (series.empty()) fail(ErrorCode::kPrecondition, "no series to plot");

  std::set<int> m_set;
  double vmax = 0.0, vmin_pos = 0.0;
  for (const auto& s : series)
    for (const auto& [m, v] : s.points) {
      m_set.insert(m);
      vmax = std::max(vmax, v);
      if (v > 0.0 && (vmin_pos == 0.0 || v < vmin_pos)) vmin_pos = v;
    }
  const double x_lo = static_cast<double>(*m_set.begin());
  const double x_hi = static_cast<double>(*m_set.rbegin());
  const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;

  if (log_y && vmax <= 0.0)
    fail(ErrorCode::kPrecondition, "log scale requires positive values");

  double y_lo, y_hi;  // data range (log10 units when log_y)
  if (log_y) {
    if (vmin_pos == 0.0) vmin_pos = vmax;
    y_lo = std::floor(std::log10(std::max(vmin_pos, 1e-16)));
    y_hi = std::ceil(std::log10(vmax));
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  } else if (rate_metric(metric)) {
    y_lo = 0.0;
    y_hi = 1.0;
  } else {
    y_lo = 0.0;
    y_hi = vmax > 0.0 ? 1.05 * vmax : 1.0;
  }

  constexpr double kWidth = 720, kHeight = 480;
  constexpr double kLeft = 72, kRight = 150, kTop = 48, kBottom = 56;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  auto x_pix = [&](double m) { return kLeft + (m - x_lo) / x_span * plot_w; };
  auto y_pix = [&](double v) {
    double t;
    if (log_y)
      t = v <= 0.0 ? 0.0 : (std::log10(v) - y_lo) / (y_hi - y_lo);
    else
      t = (v - y_lo) / (y_hi - y_lo);
    t = std::clamp(t, 0.0, 1.0);
    return kTop + (1.0 - t) * plot_h;
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(kWidth, "%.0f") + "\" height=\"" + fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " +
         fmt(kWidth, "%.0f") + " " + fmt(kHeight, "%.0f") + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(kLeft + plot_w / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         metric_title(metric) + "</text>\n";

  // Axes.
  svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
         "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  // x ticks: at every m present.
  for (int m : m_set) {
    const double x = x_pix(m);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           std::to_string(m) + "</text>\n";
  }
  svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">measurements "
         "m</text>\n";

  // y ticks.
  auto y_tick = [&](double value, const std::string& label) {
    const double y = y_pix(value);
    svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft + plot_w) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 9) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + label +
           "</text>\n";
  };
  if (log_y) {
    int decade_step = 1;
    while ((y_hi - y_lo) / decade_step > 8) ++decade_step;
    for (double d = y_lo; d <= y_hi + 1e-9; d += decade_step)
      y_tick(std::pow(10.0, d), "1e" + fmt(d, "%.0f"));
  } else {
    const double step = nice_step(y_hi - y_lo, 5);
    for (double v = y_lo; v <= y_hi + step * 1e-9; v += step) y_tick(v, fmt(v, "%g"));
  }

  // Series.
  double legend_y = kTop + 10;
  for (const auto& s : series) {
    const char* color = kPalette[static_cast<int>(s.method)];
    const bool dashed = s.known_k;
    std::string points;
    for (const auto& [m, v] : s.points) {
      if (!points.empty()) points += ' ';
      points += fmt(x_pix(m)) + "," + fmt(y_pix(v));
    }
    svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.8\"" +
           (dashed ? std::string(" stroke-dasharray=\"6,4\"") : std::string()) + "/>\n";
    for (const auto& [m, v] : s.points)
      svg += "<circle cx=\"" + fmt(x_pix(m)) + "\" cy=\"" + fmt(y_pix(v)) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";

    const double lx = kLeft + plot_w + 14;
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(legend_y) + "\" x2=\"" + fmt(lx + 24) +
           "\" y2=\"" + fmt(legend_y) + "\" stroke=\"" + color + "\" stroke-width=\"1.8\"" +
           (dashed ? std::string(" stroke-dasharray=\"6,4\"") : std::string()) + "/>\n";
    svg += "<text x=\"" + fmt(lx + 30) + "\" y=\"" + fmt(legend_y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           std::string(method_name(s.method)) + (s.known_k ? " (known k)" : "") + "</text>\n";
    legend_y += 18;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace bcs
