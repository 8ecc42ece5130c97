// Copyright 2026 The tamco Authors.
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

// Text, JSON, CSV and SVG renderings of tables and schedules. Every artifact
// carries a RunManifest so results can be traced to their input and
// configuration.

#ifndef TAMCO_REPORT_H_
#define TAMCO_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tamco/core_model.h"
#include "tamco/oracle.h"
#include "tamco/scheduler.h"
#include "tamco/wrapper_design.h"

namespace tamco {

inline constexpr const char* kToolName = "tamco";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string input_sha256;
  WrapperOptions wrapper;
  double epsilon = 1e-9;
  // Omitted from the artifact when empty.
  std::string timestamp;
};

std::string sha256_hex(std::string_view bytes);

// Current UTC time as ISO-8601, e.g. 2026-10-19T12:00:00Z.
std::string utc_timestamp();

RunManifest make_manifest(std::string_view input_bytes,
                          const SchedulerOptions& options,
                          bool with_timestamp);

std::string manifest_to_json(const RunManifest& manifest);

// `# manifest: {...}` line prefixed to CSV and text artifacts.
std::string manifest_comment(const RunManifest& manifest);

// JSON document:
//   {"soc", "w_max", "t_min", "makespan",
//    "assignments": [{"core", "name", "width", "start", "finish"}],
//    "manifest": {...}}
std::string schedule_to_json(const TestSchedule& schedule,
                             const RunManifest& manifest);

struct ScheduleDocument {
  TestSchedule schedule;
  std::string manifest_json;  // raw "manifest" object, empty if absent
};

// Inverse of schedule_to_json. Throws std::runtime_error on malformed input.
ScheduleDocument schedule_from_json(std::string_view text);

std::string schedule_to_text(const TestSchedule& schedule,
                             const RunManifest& manifest);

struct SvgLayout {
  double plot_width = 960.0;  // pixels for the whole makespan
  double wire_height = 16.0;  // pixels per TAM wire
};

// Gantt-style bin: x is time, y stacks TAM wires. Wires are handed out
// lowest-index-first at each start, so a test may be drawn as several
// rectangles when its wires are not contiguous; the heights of a test's
// rectangles always add up to its width times the wire height.
std::string schedule_to_svg(const TestSchedule& schedule,
                            const RunManifest& manifest,
                            const SvgLayout& layout = {});

std::string band_table_to_text(const WrapperBandTable& table,
                               const CoreSpec& core,
                               const RunManifest& manifest);

std::string band_table_to_json(const WrapperBandTable& table,
                               const CoreSpec& core, Width max_width,
                               const RunManifest& manifest);

// Throws std::runtime_error on malformed input.
WrapperBandTable band_table_from_json(std::string_view text);

struct SweepRow {
  Width width = 0;
  Cycles makespan = 0;
};

std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const RunManifest& manifest);

struct GapRow {
  std::uint64_t seed = 0;
  std::size_t cores = 0;
  Width w_max = 0;
  GapResult gap;
};

// Header: seed,cores,w_max,heuristic,oracle,ratio
std::string gap_to_csv(const std::vector<GapRow>& rows,
                       const RunManifest& manifest);

std::string validation_to_text(const ValidationReport& report);

}  // namespace tamco

#endif  // TAMCO_REPORT_H_
