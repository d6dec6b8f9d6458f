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

#ifndef OODLAB_CSV_H_
#define OODLAB_CSV_H_

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace oodlab {

// "%.6g"-style rendering with '.' as decimal separator regardless of locale.
std::string format_significant(double value, int digits = 6);

// Fixed-point rendering that drops digits past `decimals` (truncation toward
// zero), e.g. -13.82556 -> "-13.8255" at 4 decimals.
std::string format_truncated(double value, int decimals);

// Comma-separated table with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_numeric_row(std::initializer_list<double> values);

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace oodlab

#endif  // OODLAB_CSV_H_
