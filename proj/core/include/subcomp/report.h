// Copyright 2026 The subcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBCOMP_REPORT_H_
#define SUBCOMP_REPORT_H_

// Machine-readable results and layer-curve figures.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "subcomp/curve.h"

namespace subcomp {

/// One CSV row. `run` is the run index, or "mean" / "std" for aggregates.
struct ResultRow {
  CurveKey key;
  int layer = 0;
  std::string run;
  double value = 0.0;
};

/// Run rows plus per-layer mean and std rows, sorted by
/// (model, task, op, mode, filter, layer, run) with runs before mean before std.
std::vector<ResultRow> result_rows(ResultSet const& results);

/// RFC-4180 CSV text with header `model,task,op,mode,filter,layer,run,value`.
/// Values use the shortest representation that round-trips a double.
std::string results_to_csv(ResultSet const& results);

/// Throws ValidationError on empty results, IoError on write failure.
void emit_csv(ResultSet const& results, std::filesystem::path const& path);

struct PlotSeries {
  std::string label;
  LayerCurve curve;
  std::string color;  // empty = palette
};

struct PlotStyle {
  std::string title;
  std::string x_label = "layer";
  std::string y_label = "value";
  std::optional<double> y_min = 0.0;  // nullopt = fit to data
  std::optional<double> y_max = 1.0;
  int width = 640;
  int height = 400;
};

/// Self-contained SVG 1.1: mean line per series over a translucent
/// mean +/- 1 std ribbon, with a legend. All series must share the same
/// layer axis.
std::string render_plot(std::vector<PlotSeries> const& series, PlotStyle const& style);
void emit_plot(std::vector<PlotSeries> const& series, PlotStyle const& style,
               std::filesystem::path const& path);

/// Conventional colors: add green, multiply orange, absdiff red, original
/// orange, composed green, baseline black.
std::string default_color(std::string const& label, std::size_t index);

enum class PlotLayout {
  /// One figure per (model, task, mode, filter), one series per op.
  PerModel,
  /// One figure per (task, filter), all models and modes overlaid.
  Overlay,
};

/// Writes `results.csv` and one SVG per figure group into `out_dir`.
/// Returns the written paths, CSV first, figures in key order.
std::vector<std::filesystem::path> emit_report(ResultSet const& results,
                                               std::filesystem::path const& out_dir,
                                               PlotLayout layout = PlotLayout::PerModel);

}  // namespace subcomp

#endif  // SUBCOMP_REPORT_H_
