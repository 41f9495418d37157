// Copyright 2026 The matchmap Authors
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

#ifndef MATCHMAP_IO_H_
#define MATCHMAP_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matchmap/dataset.h"
#include "matchmap/gen_model.h"
#include "matchmap/harness.h"
#include "matchmap/separation.h"

namespace matchmap {

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);
// Strict decimal parse of a whole field; throws InvalidInput on junk or on
// non-finite results.
double ParseDouble(std::string_view text);

// Vector files: one vector per line, comma-separated, no header. Every line
// must have the same number of fields. A trailing newline is optional.
VectorSet ParseVectorCsv(std::string_view text);
std::string VectorCsv(const VectorSet& vectors);
// Noise-level files are vector files with a single column.
std::vector<double> ParseScalarCsv(std::string_view text);
std::string ScalarCsv(const std::vector<double>& values);

// Mapping files: lines "i,j" with 1-based indices, one per i in 1..n. An
// optional "i,j" header line is accepted. Returns the 0-based map sorted by
// i. Throws InvalidInput if the i values are not exactly 1..n or j values
// repeat or are < 1.
std::vector<std::size_t> ParseMappingCsv(std::string_view text);
std::string MappingCsv(const std::vector<std::size_t>& assignment);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// {"n","m","d","theta_sharp":[[..]..],"sigma_sharp":[..],"pi_star":[1-based]}
std::string InstanceParamsToJson(const InstanceParams& params, int indent = 2);
InstanceParams InstanceParamsFromJson(std::string_view text);

// Separation distances plus the LSNS, LSL and mild-heteroscedasticity
// detection thresholds for the instance at level alpha, and whether the
// instance lies inside each region. The LSL entry is null for alpha >= 1/2.
std::string SeparationDocument(const InstanceParams& params, double alpha);

// Experiment configuration. `grid` switches from a single run to a
// detection heatmap over exp2 instances.
struct ExperimentConfig {
  TrialConfig trial;
  std::optional<std::vector<double>> a_grid;
  std::optional<std::vector<double>> b_grid;
  bool has_grid() const { return a_grid.has_value(); }
};
// Unknown keys are rejected. Throws ConfigError on any schema violation.
ExperimentConfig ParseExperimentConfig(std::string_view text);
std::string ExperimentConfigToJson(const ExperimentConfig& config);

std::string TrialReportToJson(const TrialReport& report,
                              const ExperimentConfig& config);
std::string HeatmapToJson(const Heatmap& map);

// Header row holds the b values after an empty first field; each following
// line is an a value then the error rates. Rows are in ascending a.
std::string HeatmapCsv(const Heatmap& map, std::size_t method_index);
// Binary 8-bit PGM (P5), width |b|, height |a|, largest a in the first row.
// Error rate 0 maps to 0, error rate 1 to 255.
std::string HeatmapPgm(const Heatmap& map, std::size_t method_index);

}  // namespace matchmap

#endif  // MATCHMAP_IO_H_
