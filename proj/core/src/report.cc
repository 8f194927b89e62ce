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

#include "subcomp/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "subcomp/errors.h"

namespace subcomp {

namespace {

// Ordering of the run column: numbered runs, then mean, then std.
std::tuple<int, int> run_order(std::string const& run) {
  if (run == "mean") return {1, 0};
  if (run == "std") return {2, 0};
  return {0, std::stoi(run)};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string csv_field(std::string const& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string xml_escape(std::string const& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

void write_text(std::filesystem::path const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::vector<ResultRow> result_rows(ResultSet const& results) {
  std::vector<ResultRow> rows;
  for (auto const& series : results) {
    for (auto const& p : series.curve.points) {
      for (std::size_t r = 0; r < p.samples.size(); ++r) {
        rows.push_back({series.key, p.layer, std::to_string(r), p.samples[r]});
      }
      rows.push_back({series.key, p.layer, "mean", p.mean});
      rows.push_back({series.key, p.layer, "std", p.std});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](ResultRow const& a, ResultRow const& b) {
    auto const ka = std::tie(a.key.model, a.key.task, a.key.op, a.key.mode, a.key.filter);
    auto const kb = std::tie(b.key.model, b.key.task, b.key.op, b.key.mode, b.key.filter);
    if (ka != kb) return ka < kb;
    if (a.layer != b.layer) return a.layer < b.layer;
    return run_order(a.run) < run_order(b.run);
  });
  return rows;
}

std::string results_to_csv(ResultSet const& results) {
  std::string out = "model,task,op,mode,filter,layer,run,value\r\n";
  for (auto const& row : result_rows(results)) {
    out += csv_field(row.key.model) + ',' + csv_field(row.key.task) + ',' +
           csv_field(row.key.op) + ',' + csv_field(row.key.mode) + ',' +
           csv_field(row.key.filter) + ',' + std::to_string(row.layer) + ',' + row.run + ',' +
           format_double(row.value) + "\r\n";
  }
  return out;
}

void emit_csv(ResultSet const& results, std::filesystem::path const& path) {
  bool const any = std::any_of(results.begin(), results.end(),
                               [](CurveSeries const& s) { return !s.curve.points.empty(); });
  if (!any) throw ValidationError("emit_csv: no results to write");
  write_text(path, results_to_csv(results));
}

std::string default_color(std::string const& label, std::size_t index) {
  static constexpr char const* kPalette[] = {"#1f77b4", "#9467bd", "#8c564b",
                                             "#e377c2", "#17becf", "#bcbd22"};
  auto has = [&](char const* word) { return label.find(word) != std::string::npos; };
  if (has("baseline")) return "#000000";
  if (has("original")) return "#ff7f0e";
  if (has("multiply")) return "#ff7f0e";
  if (has("absdiff")) return "#d62728";
  if (has("add") || has("composed")) return "#2ca02c";
  return kPalette[index % std::size(kPalette)];
}

std::string render_plot(std::vector<PlotSeries> const& series, PlotStyle const& style) {
  if (series.empty()) throw ValidationError("emit_plot: no curves");
  auto const axis = series.front().curve.layers();
  if (axis.empty()) throw ValidationError("emit_plot: empty curve");
  for (auto const& s : series) {
    if (s.curve.layers() != axis) {
      throw ValidationError("emit_plot: curve \"" + s.label + "\" has a different layer axis");
    }
  }

  double lo = style.y_min.value_or(INFINITY);
  double hi = style.y_max.value_or(-INFINITY);
  if (!style.y_min || !style.y_max) {
    for (auto const& s : series) {
      for (auto const& p : s.curve.points) {
        if (!style.y_min) lo = std::min(lo, p.mean - p.std);
        if (!style.y_max) hi = std::max(hi, p.mean + p.std);
      }
    }
  }
  if (!(hi > lo)) hi = lo + 1.0;

  double const left = 60, right = 160, top = 40, bottom = 50;
  double const w = style.width, h = style.height;
  double const pw = w - left - right, ph = h - top - bottom;
  int const x0 = axis.front(), x1 = axis.back();
  auto sx = [&](double layer) {
    return x1 == x0 ? left + pw / 2 : left + pw * (layer - x0) / (x1 - x0);
  };
  auto sy = [&](double v) {
    v = std::clamp(v, lo, hi);
    return top + ph * (1.0 - (v - lo) / (hi - lo));
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(style.width) + "\" height=\"" + std::to_string(style.height) +
         "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
         std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed(w) + "\" height=\"" + fixed(h) +
         "\" fill=\"#ffffff\"/>\n";
  if (!style.title.empty()) {
    svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" "
           "font-size=\"14\">" + xml_escape(style.title) + "</text>\n";
  }

  // Axes, ticks and grid.
  svg += "<g stroke=\"#000000\" stroke-width=\"1\" fill=\"none\">\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top + ph) + "\" x2=\"" +
         fixed(left + pw) + "\" y2=\"" + fixed(top + ph) + "\"/>\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) +
         "\" y2=\"" + fixed(top + ph) + "\"/>\n";
  svg += "</g>\n<g fill=\"#000000\">\n";
  int const y_ticks = 5;
  for (int i = 0; i <= y_ticks; ++i) {
    double const v = lo + (hi - lo) * i / y_ticks;
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(sy(v)) + "\" x2=\"" +
           fixed(left + pw) + "\" y2=\"" + fixed(sy(v)) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(sy(v) + 4) +
           "\" text-anchor=\"end\">" + fixed(v) + "</text>\n";
  }
  std::size_t const x_step = std::max<std::size_t>(1, (axis.size() + 9) / 10);
  for (std::size_t i = 0; i < axis.size(); i += x_step) {
    svg += "<text x=\"" + fixed(sx(axis[i])) + "\" y=\"" + fixed(top + ph + 16) +
           "\" text-anchor=\"middle\">" + std::to_string(axis[i]) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(h - 12) +
         "\" text-anchor=\"middle\">" + xml_escape(style.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fixed(top + ph / 2) + "\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 " + fixed(top + ph / 2) + ")\">" +
         xml_escape(style.y_label) + "</text>\n";
  svg += "</g>\n";

  // Ribbons first so every mean line is drawn on top.
  for (std::size_t k = 0; k < series.size(); ++k) {
    auto const& s = series[k];
    std::string const color = s.color.empty() ? default_color(s.label, k) : s.color;
    std::string pts;
    for (auto const& p : s.curve.points) {
      pts += fixed(sx(p.layer)) + "," + fixed(sy(p.mean + p.std)) + " ";
    }
    for (auto it = s.curve.points.rbegin(); it != s.curve.points.rend(); ++it) {
      pts += fixed(sx(it->layer)) + "," + fixed(sy(it->mean - it->std)) + " ";
    }
    pts.pop_back();
    svg += "<polygon class=\"ribbon\" points=\"" + pts + "\" fill=\"" + color +
           "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    auto const& s = series[k];
    std::string const color = s.color.empty() ? default_color(s.label, k) : s.color;
    std::string pts;
    for (auto const& p : s.curve.points) {
      pts += fixed(sx(p.layer)) + "," + fixed(sy(p.mean)) + " ";
    }
    pts.pop_back();
    svg += "<polyline class=\"mean\" points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
  }

  // Legend.
  double const lx = left + pw + 16;
  svg += "<g class=\"legend\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    auto const& s = series[k];
    std::string const color = s.color.empty() ? default_color(s.label, k) : s.color;
    double const ly = top + 10 + 20.0 * static_cast<double>(k);
    svg += "<rect x=\"" + fixed(lx) + "\" y=\"" + fixed(ly - 8) +
           "\" width=\"14\" height=\"10\" fill=\"" + color + "\" fill-opacity=\"0.6\"/>\n";
    svg += "<text x=\"" + fixed(lx + 20) + "\" y=\"" + fixed(ly + 1) + "\">" +
           xml_escape(s.label) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(lx) + "\" y=\"" +
         fixed(top + 10 + 20.0 * static_cast<double>(series.size()) + 6) +
         "\" font-size=\"10\" fill=\"#555555\">bands: mean &#177; 1 std</text>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

void emit_plot(std::vector<PlotSeries> const& series, PlotStyle const& style,
               std::filesystem::path const& path) {
  write_text(path, render_plot(series, style));
}

namespace {

std::string file_safe(std::string const& s) {
  std::string out;
  for (char c : s) {
    bool const ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

std::string metric_label(std::string const& task) {
  if (task == "geometry") return "P@1";
  if (task == "word_type") return "weighted F1";
  if (task == "word_length") return "accuracy";
  return "value";
}

}  // namespace

std::vector<std::filesystem::path> emit_report(ResultSet const& results,
                                               std::filesystem::path const& out_dir,
                                               PlotLayout layout) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  written.push_back(out_dir / "results.csv");
  emit_csv(results, written.back());

  // Group key -> series, in a deterministic order.
  std::map<std::vector<std::string>, std::vector<CurveSeries const*>> groups;
  for (auto const& series : results) {
    auto const& k = series.key;
    std::vector<std::string> group =
        layout == PlotLayout::PerModel
            ? std::vector<std::string>{k.task, k.model, k.mode, k.filter}
            : std::vector<std::string>{k.task, k.filter};
    groups[group].push_back(&series);
  }
  for (auto const& [group, members] : groups) {
    std::vector<PlotSeries> plot;
    for (auto const* m : members) {
      std::string label = m->key.op;
      if (layout == PlotLayout::Overlay) label = m->key.model + " " + m->key.mode + ": " + label;
      plot.push_back({label, m->curve, ""});
    }
    if (layout == PlotLayout::Overlay) {
      // Same-op series from different sides would share a palette color.
      for (std::size_t i = 0; i < plot.size(); ++i) {
        plot[i].color = default_color("", i);
      }
    }
    PlotStyle style;
    style.y_label = metric_label(group.front());
    std::string name;
    for (auto const& part : group) {
      style.title += (style.title.empty() ? "" : " / ") + part;
      name += (name.empty() ? "" : "__") + file_safe(part);
    }
    written.push_back(out_dir / (name + ".svg"));
    emit_plot(plot, style, written.back());
  }
  return written;
}

}  // namespace subcomp
