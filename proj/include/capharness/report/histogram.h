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

#ifndef CAPHARNESS_REPORT_HISTOGRAM_H_
#define CAPHARNESS_REPORT_HISTOGRAM_H_

#include <span>
#include <string>
#include <string_view>

#include "capharness/datasets/manifest.h"

namespace capharness {

enum class HistogramFormat { kCsv, kSvg };

// "csv" or "svg". Throws ConfigError.
HistogramFormat ParseHistogramFormat(std::string_view name);

// One series: "bucket,count" rows. Several: "dataset,bucket,count" rows,
// series in input order. Only non-empty buckets are listed. Throws Error
// when `series` is empty or any series has no references.
std::string HistogramCsv(std::span<const LengthStats> series);

// Grouped bar chart, one color per series, with axis labels and a legend
// naming each series. Buckets run from the shortest to the longest length
// seen. Same errors as HistogramCsv.
std::string HistogramSvg(std::span<const LengthStats> series);

std::string RenderHistogram(std::span<const LengthStats> series, HistogramFormat format);

}  // namespace capharness

#endif  // CAPHARNESS_REPORT_HISTOGRAM_H_
