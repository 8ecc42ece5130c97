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

// Rectangle-packing test scheduler.
//
// Every core contributes a set of (TAM wires, test time) rectangles taken
// from its wrapper designs. Cores are ranked by the diagonal of their
// tallest rectangle, with times scaled by the smallest peak-width test time
// across the SOC, and then placed by an event-driven loop over a bin of
// fixed height (the TAM width) and open width (time). Wires are fungible:
// the bin is a cumulative capacity, not a geometric strip.

#ifndef TAMCO_SCHEDULER_H_
#define TAMCO_SCHEDULER_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tamco/core_model.h"
#include "tamco/wrapper_design.h"

namespace tamco {

struct TestRectangle {
  int core_id = 0;
  Width height = 0;  // TAM_u
  Cycles width = 0;  // test time at that TAM_u

  friend bool operator==(const TestRectangle&,
                         const TestRectangle&) = default;
};

struct RectangleSet {
  int core_id = 0;
  std::vector<TestRectangle> rects;  // strictly decreasing height

  Width peak_tam() const { return rects.front().height; }
  Cycles peak_time() const { return rects.front().width; }
  const TestRectangle* find(Width height) const;

  friend bool operator==(const RectangleSet&, const RectangleSet&) = default;
};

// One rectangle per distinct TAM_u reached by design_wrapper at widths
// 1..w_max. When several widths reach the same TAM_u the shortest test time
// is kept.
RectangleSet build_rectangle_set(const CoreSpec& core, Width w_max,
                                 const WrapperOptions& options = {});

std::vector<RectangleSet> build_rectangle_sets(
    const SocSpec& soc, Width w_max, const WrapperOptions& options = {});

// Smallest peak-width test time over all cores.
Cycles compute_t_min(std::span<const RectangleSet> sets);

// Tallest height that fits in `available` wires, if any.
std::optional<Width> possible_tam(const RectangleSet& set, Width available);

struct DiagonalKey {
  int core_id = 0;
  double peak_tam = 0;
  double normalized_time = 0;
  double diagonal = 0;
};

std::vector<DiagonalKey> diagonal_keys(std::span<const RectangleSet> sets,
                                       Cycles t_min);

// Sorts keys by descending diagonal (relative tolerance `epsilon`), then by
// taller peak, then by lower core id. Returns the core ids in that order.
std::vector<int> order_by_diagonal(std::vector<DiagonalKey> keys,
                                   double epsilon = 1e-9);

// Same ordering computed from rectangle sets. Diagonals are compared
// exactly in integer arithmetic when the squares fit in 127 bits.
std::vector<int> diagonal_order(std::span<const RectangleSet> sets,
                                Cycles t_min, double epsilon = 1e-9);

enum class AssignmentSource {
  kNone,
  kInitialPeak,     // taken from INITIAL at its peak width
  kInitialReduced,  // taken from INITIAL at a reduced width
  kPending,         // served from the PENDING queue
};

const char* to_string(AssignmentSource source);

// Per-core state of the schedule.
struct CoreSlot {
  int core_id = 0;
  std::string name;
  Width width = 0;
  Cycles start = 0;
  Cycles finish = 0;
  bool scheduled = false;
  bool complete = false;
  Width peak_tam = 0;
  AssignmentSource source = AssignmentSource::kNone;
};

struct TestSchedule {
  std::string soc_name;
  Width w_max = 0;
  Cycles t_min = 0;
  Cycles makespan = 0;
  std::vector<CoreSlot> cores;

  // Loop state while scheduling.
  Width available = 0;
  Cycles now = 0;

  CoreSlot* slot(int core_id);
  const CoreSlot* slot(int core_id) const;

  // w_max * makespan - sum of width * duration.
  std::int64_t idle_area() const;
  // Filled fraction of the bin, 0 for an empty schedule.
  double utilization() const;
};

// Empty schedule with one unscheduled slot per set.
TestSchedule make_schedule(std::span<const RectangleSet> sets, Width w_max);

// Starts `set`'s core at `now` on `width` wires. Throws std::logic_error if
// the core is already scheduled, `width` is not one of its heights, or fewer
// than `width` wires are free.
void apply_assignment(TestSchedule& schedule, const RectangleSet& set,
                      Width width, Cycles now);

struct SchedulerOptions {
  WrapperOptions wrapper;
  double epsilon = 1e-9;
};

TestSchedule schedule_rectangles(std::span<const RectangleSet> sets,
                                 Width w_max,
                                 const SchedulerOptions& options = {});

// Builds the rectangle sets for `soc` and schedules them. Throws
// std::invalid_argument for w_max < 1 or an invalid SOC.
TestSchedule schedule_tests(const SocSpec& soc, Width w_max,
                            const SchedulerOptions& options = {});

}  // namespace tamco

#endif  // TAMCO_SCHEDULER_H_
