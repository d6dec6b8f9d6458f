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

#include "oodlab/csv.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

#include "oodlab/errors.h"

namespace oodlab {

std::string format_significant(double value, int digits) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(digits) << value;
  return os.str();
}

std::string format_truncated(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // The small guard keeps values that are exact decimals at this precision
  // (like -13.8165000000) from losing their last digit to representation error.
  const double scaled = value * scale;
  const double guard = 1e-12 * std::max(1.0, std::abs(scaled));
  const double truncated = std::trunc(scaled + (scaled < 0 ? -guard : guard));
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(decimals) << truncated / scale;
  return os.str();
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InvalidArgument("csv row width mismatch");
  rows_.push_back(std::move(cells));
}

void CsvTable::add_numeric_row(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  for (double v : values) cells.push_back(format_significant(v));
  add_row(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

}  // namespace oodlab
