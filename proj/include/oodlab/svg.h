// Copyright 2026 The oodlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal self-contained SVG plots for scenario reports.

#ifndef OODLAB_SVG_H_
#define OODLAB_SVG_H_

#include <string>
#include <utility>
#include <vector>

#include "oodlab/testing.h"

namespace oodlab {

struct HistogramSeries {
  std::string label;
  std::vector<double> values;
};

// Overlaid step histograms on a shared binning of all series.
std::string svg_histograms(const std::string& title, const std::vector<HistogramSeries>& series,
                           std::size_t bins = 60);

// ROC curves, decimated to at most max_points vertices per curve.
std::string svg_roc_curves(const std::string& title,
                           const std::vector<std::pair<std::string, RocResult>>& curves,
                           std::size_t max_points = 2000);

// Vertical bars with the value printed above each bar. Values may be negative;
// bars then hang from the top axis.
std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values, int decimals = 4);

}  // namespace oodlab

#endif  // OODLAB_SVG_H_
