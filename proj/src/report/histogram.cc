/* Copyright 2026 The capharness Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "capharness/report/histogram.h"

#include <algorithm>
#include <cmath>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"

namespace capharness {

HistogramFormat ParseHistogramFormat(std::string_view name) {
  if (name == "csv") return HistogramFormat::kCsv;
  if (name == "svg") return HistogramFormat::kSvg;
  throw ConfigError("unknown histogram format '" + std::string(name) + "' (expected csv or svg)");
}

namespace {

void CheckSeries(std::span<const LengthStats> series) {
  if (series.empty()) throw Error("histogram needs at least one series");
  for (const LengthStats& s : series) {
    if (s.histogram.empty() || s.total_references == 0) {
      throw Error("histogram series '" + s.name + "' has no references");
    }
  }
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string Num(double v) { return FormatFixed(v, 2); }

constexpr const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                    "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

}  // namespace

std::string HistogramCsv(std::span<const LengthStats> series) {
  CheckSeries(series);
  const bool multi = series.size() > 1;
  std::string out = multi ? "dataset,bucket,count\n" : "bucket,count\n";
  for (const LengthStats& s : series) {
    for (const auto& [bucket, count] : s.histogram) {
      if (multi) {
        std::string name = s.name;
        if (name.find_first_of(",\"\n") != std::string::npos) {
          std::string quoted = "\"";
          for (char c : name) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
          name = quoted + "\"";
        }
        out += name + ",";
      }
      out += std::to_string(bucket) + "," + std::to_string(count) + "\n";
    }
  }
  return out;
}

std::string HistogramSvg(std::span<const LengthStats> series) {
  CheckSeries(series);
  std::size_t lo = series[0].histogram.begin()->first;
  std::size_t hi = lo;
  std::size_t peak = 0;
  for (const LengthStats& s : series) {
    lo = std::min(lo, s.histogram.begin()->first);
    hi = std::max(hi, s.histogram.rbegin()->first);
    for (const auto& [bucket, count] : s.histogram) peak = std::max(peak, count);
  }
  const double width = 720, height = 400;
  const double left = 60, right = 20, top = 40, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const std::size_t buckets = hi - lo + 1;
  const double slot = plot_w / static_cast<double>(buckets);
  const double bar = slot * 0.8 / static_cast<double>(series.size());

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(width) +
                    "\" height=\"" + Num(height) + "\" viewBox=\"0 0 " + Num(width) + " " +
                    Num(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  svg += "<line x1=\"" + Num(left) + "\" y1=\"" + Num(top + plot_h) + "\" x2=\"" +
         Num(left + plot_w) + "\" y2=\"" + Num(top + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + Num(left) + "\" y1=\"" + Num(top) + "\" x2=\"" + Num(left) +
         "\" y2=\"" + Num(top + plot_h) + "\" stroke=\"black\"/>\n";
  // y ticks
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double value = static_cast<double>(peak) * i / kTicks;
    const double y = top + plot_h - plot_h * i / kTicks;
    svg += "<line x1=\"" + Num(left - 4) + "\" y1=\"" + Num(y) + "\" x2=\"" + Num(left) +
           "\" y2=\"" + Num(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + Num(left - 6) + "\" y=\"" + Num(y + 4) +
           "\" text-anchor=\"end\">" + FormatFixed(value, value == std::floor(value) ? 0 : 1) +
           "</text>\n";
  }
  // x labels, thinned so they do not overlap
  const std::size_t step = std::max<std::size_t>(1, (buckets + 29) / 30);
  for (std::size_t b = 0; b < buckets; b += step) {
    const double x = left + slot * (static_cast<double>(b) + 0.5);
    svg += "<text x=\"" + Num(x) + "\" y=\"" + Num(top + plot_h + 14) +
           "\" text-anchor=\"middle\">" + std::to_string(lo + b) + "</text>\n";
  }
  // bars
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % std::size(kPalette)];
    svg += "<g fill=\"" + std::string(color) + "\">\n";
    for (const auto& [bucket, count] : series[si].histogram) {
      const double h = plot_h * static_cast<double>(count) / static_cast<double>(peak);
      const double x = left + slot * static_cast<double>(bucket - lo) + slot * 0.1 +
                       bar * static_cast<double>(si);
      svg += "<rect x=\"" + Num(x) + "\" y=\"" + Num(top + plot_h - h) + "\" width=\"" +
             Num(bar) + "\" height=\"" + Num(h) + "\"><title>" + XmlEscape(series[si].name) +
             " length " + std::to_string(bucket) + ": " + std::to_string(count) +
             "</title></rect>\n";
    }
    svg += "</g>\n";
  }
  // axis labels
  svg += "<text x=\"" + Num(left + plot_w / 2) + "\" y=\"" + Num(height - 20) +
         "\" text-anchor=\"middle\">caption length (tokens)</text>\n";
  svg += "<text x=\"16\" y=\"" + Num(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         Num(top + plot_h / 2) + ")\">references</text>\n";
  // legend
  for (std::size_t si = 0; si < series.size(); ++si) {
    const double y = 12 + 16 * static_cast<double>(si);
    const double x = left + plot_w - 160;
    svg += "<rect x=\"" + Num(x) + "\" y=\"" + Num(y) + "\" width=\"10\" height=\"10\" fill=\"" +
           std::string(kPalette[si % std::size(kPalette)]) + "\"/>\n";
    svg += "<text class=\"legend\" x=\"" + Num(x + 14) + "\" y=\"" + Num(y + 9) + "\">" +
           XmlEscape(series[si].name) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string RenderHistogram(std::span<const LengthStats> series, HistogramFormat format) {
  return format == HistogramFormat::kCsv ? HistogramCsv(series) : HistogramSvg(series);
}

}  // namespace capharness
