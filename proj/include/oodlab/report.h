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

// Named scenarios: each resolves its parameters, runs the library operations
// and produces a JSON report plus CSV/SVG artifacts.

#ifndef OODLAB_REPORT_H_
#define OODLAB_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oodlab/errors.h"

namespace oodlab {

inline constexpr int kReportSchemaVersion = 1;

const std::vector<std::string>& scenario_names();
bool is_known_scenario(std::string_view name);

class UnknownScenario : public Error {
 public:
  explicit UnknownScenario(const std::string& name)
      : Error("unknown scenario '" + name + "'") {}
};

struct ScenarioConfig {
  std::string scenario;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::optional<std::size_t> sample_count;  // scenario default when empty
  std::filesystem::path output_dir = ".";
  bool plots = true;
};

// Reads {"scenario", "seed", "n", "params"}; every key optional. The "config"
// block of a report has this shape.
ScenarioConfig scenario_config_from_json(const nlohmann::json& j);

struct ScenarioArtifact {
  std::string filename;
  std::string contents;
};

struct ScenarioOutput {
  nlohmann::json report;
  std::vector<ScenarioArtifact> tables;  // CSV
  std::vector<ScenarioArtifact> plots;   // SVG
  std::vector<std::string> warnings;
};

// Runs the scenario in memory. Throws UnknownScenario, InvalidArgument for
// bad parameters, and other exceptions for runtime failures.
ScenarioOutput compute_scenario(const ScenarioConfig& config);

// compute_scenario plus file output. Returns the process exit status
// (0 ok, 1 runtime failure, 2 unknown scenario, 3 invalid parameters) and
// writes a single diagnostic line to `err` on failure. Nothing is written to
// disk unless the computation succeeds.
int run_scenario(const ScenarioConfig& config, std::ostream& err);

}  // namespace oodlab

#endif  // OODLAB_REPORT_H_
