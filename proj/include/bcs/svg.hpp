#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcs/bench.hpp"

namespace bcs {

enum class PlotMetric { kRse = 0, kExact, kFp, kFn, kIters };

inline constexpr PlotMetric kAllPlotMetrics[] = {PlotMetric::kRse, PlotMetric::kExact,
                                                 PlotMetric::kFp, PlotMetric::kFn,
                                                 PlotMetric::kIters};

const char* plot_metric_name(PlotMetric m);  // file stem: rse, exact, fp, fn, iters
std::optional<PlotMetric> parse_plot_metric(const std::string& name);

// Standalone SVG 1.1 line chart of one metric against m: one polyline per
// (method, known_k) group, legend, deterministic bytes for identical input.
// log_y switches the y axis to decades (values <= 0 sit on the bottom edge).
std::string render_curves(const std::vector<AggregateRow>& rows, PlotMetric metric,
                          bool log_y = false);

}  // namespace bcs
