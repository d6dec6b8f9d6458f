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

#include "oodlab/svg.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

#include "oodlab/errors.h"

namespace oodlab {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string color(std::size_t i) { return kColors[i % std::size(kColors)]; }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Canvas {
 public:
  Canvas(const std::string& title) {
    out_.imbue(std::locale::classic());
    out_ << std::setprecision(6);
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
         << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
         << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(kWidth / 2, 22, title, "middle", 15);
  }

  std::ostringstream& raw() { return out_; }

  void text(double x, double y, const std::string& s, const char* anchor = "start",
            int size = 12) {
    out_ << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
         << "\" font-size=\"" << size << "\">" << escape(s) << "</text>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0, const char* dash = nullptr) {
    out_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << '"';
    if (dash) out_ << " stroke-dasharray=\"" << dash << '"';
    out_ << "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out_ << x << ',' << y << ' ';
    out_ << "\"/>\n";
  }

  void frame() {
    out_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w()
         << "\" height=\"" << plot_h() << "\" fill=\"none\" stroke=\"black\"/>\n";
  }

  void legend(const std::vector<std::string>& labels) {
    double y = kTop + 16;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      line(kLeft + plot_w() - 150, y - 4, kLeft + plot_w() - 130, y - 4, color(i), 3);
      text(kLeft + plot_w() - 125, y, labels[i]);
      y += 16;
    }
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

  static double plot_w() { return kWidth - kLeft - kRight; }
  static double plot_h() { return kHeight - kTop - kBottom; }

 private:
  std::ostringstream out_;
};

std::string tick(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(3) << v;
  return s.str();
}

void axis_ticks(Canvas& c, double xlo, double xhi, double ylo, double yhi) {
  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    const double x = kLeft + f * Canvas::plot_w();
    const double y = kTop + Canvas::plot_h() - f * Canvas::plot_h();
    c.text(x, kTop + Canvas::plot_h() + 16, tick(xlo + f * (xhi - xlo)), "middle");
    c.text(kLeft - 6, y + 4, tick(ylo + f * (yhi - ylo)), "end");
  }
}

}  // namespace

std::string svg_histograms(const std::string& title, const std::vector<HistogramSeries>& series,
                           std::size_t bins) {
  if (series.empty() || bins == 0) throw InvalidArgument("histogram needs series and bins");
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo < hi)) throw InvalidArgument("histogram needs a finite, non-degenerate range");
  const double width = (hi - lo) / static_cast<double>(bins);

  std::vector<std::vector<double>> density(series.size(), std::vector<double>(bins, 0.0));
  double peak = 0.0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::size_t finite = 0;
    for (double v : series[s].values) {
      if (!std::isfinite(v)) continue;
      const auto b = std::min(bins - 1, static_cast<std::size_t>((v - lo) / width));
      density[s][b] += 1.0;
      ++finite;
    }
    for (double& d : density[s]) {
      d /= std::max<std::size_t>(finite, 1) * width;
      peak = std::max(peak, d);
    }
  }
  if (!(peak > 0.0)) peak = 1.0;

  Canvas c(title);
  c.frame();
  axis_ticks(c, lo, hi, 0.0, peak);
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t b = 0; b < bins; ++b) {
      const double x0 = kLeft + Canvas::plot_w() * static_cast<double>(b) / bins;
      const double x1 = kLeft + Canvas::plot_w() * static_cast<double>(b + 1) / bins;
      const double y = kTop + Canvas::plot_h() * (1.0 - density[s][b] / peak);
      pts.emplace_back(x0, y);
      pts.emplace_back(x1, y);
    }
    c.polyline(pts, color(s));
    labels.push_back(series[s].label);
  }
  c.legend(labels);
  c.text(kLeft + Canvas::plot_w() / 2, kHeight - 12, "score", "middle");
  return c.finish();
}

std::string svg_roc_curves(const std::string& title,
                           const std::vector<std::pair<std::string, RocResult>>& curves,
                           std::size_t max_points) {
  if (curves.empty() || max_points < 2) throw InvalidArgument("roc plot needs curves");
  Canvas c(title);
  c.frame();
  axis_ticks(c, 0.0, 1.0, 0.0, 1.0);
  c.line(kLeft, kTop + Canvas::plot_h(), kLeft + Canvas::plot_w(), kTop, "#999999", 1, "4,4");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const RocResult& roc = curves[i].second;
    if (roc.sizes.empty() || roc.sizes.size() != roc.powers.size()) {
      throw InvalidArgument("malformed roc curve");
    }
    const std::size_t stride = std::max<std::size_t>(1, roc.sizes.size() / max_points);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < roc.sizes.size(); k += stride) {
      pts.emplace_back(kLeft + roc.sizes[k] * Canvas::plot_w(),
                       kTop + (1.0 - roc.powers[k]) * Canvas::plot_h());
    }
    pts.emplace_back(kLeft + roc.sizes.back() * Canvas::plot_w(),
                     kTop + (1.0 - roc.powers.back()) * Canvas::plot_h());
    c.polyline(pts, color(i));
    labels.push_back(curves[i].first + " (AUC " + tick(roc.auc) + ")");
  }
  c.legend(labels);
  c.text(kLeft + Canvas::plot_w() / 2, kHeight - 12, "size (in-distribution rejected)", "middle");
  return c.finish();
}

std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values, int decimals) {
  if (labels.empty() || labels.size() != values.size()) {
    throw InvalidArgument("bar chart needs one label per value");
  }
  double lo = 0.0, hi = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("bar values must be finite");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) hi = 1.0;
  Canvas c(title);
  c.frame();
  const double span = hi - lo;
  const auto ypos = [&](double v) { return kTop + Canvas::plot_h() * (hi - v) / span; };
  const double slot = Canvas::plot_w() / static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double y0 = ypos(0.0), y1 = ypos(values[i]);
    const double x = kLeft + slot * (static_cast<double>(i) + 0.2);
    c.raw() << "<rect x=\"" << x << "\" y=\"" << std::min(y0, y1) << "\" width=\"" << slot * 0.6
            << "\" height=\"" << std::abs(y1 - y0) << "\" fill=\"" << color(i) << "\"/>\n";
    std::ostringstream v;
    v.imbue(std::locale::classic());
    v << std::fixed << std::setprecision(decimals) << values[i];
    const double label_y = values[i] < 0.0 ? std::max(y0, y1) - 6 : std::min(y0, y1) - 6;
    c.text(x + slot * 0.3, label_y, v.str(), "middle");
    c.text(x + slot * 0.3, kTop + Canvas::plot_h() + 16, labels[i], "middle");
  }
  return c.finish();
}

}  // namespace oodlab
