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

#include "tamco/oracle.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace tamco {
namespace {

struct Placement {
  Cycles start = 0;
  Cycles finish = 0;
  Width width = 0;
};

// Depth-first search over (next core, rectangle) decisions; each choice is
// started as early as the wires already committed allow.
class ExactSearch {
 public:
  ExactSearch(std::span<const RectangleSet> sets, Width w_max)
      : sets_(sets), w_max_(w_max), placed_(sets.size()),
        is_placed_(sets.size(), false) {
    for (const RectangleSet& set : sets) {
      std::int64_t area = std::numeric_limits<std::int64_t>::max();
      for (const TestRectangle& r : set.rects) {
        area = std::min(area, r.height * r.width);
      }
      min_area_.push_back(area);
      remaining_area_ += area;
    }
  }

  std::vector<Placement> run() {
    search(0, 0, 0);
    return best_;
  }

 private:
  // Wires busy at instant t.
  Width usage_at(Cycles t) const {
    Width used = 0;
    for (std::size_t i = 0; i < placed_.size(); ++i) {
      if (is_placed_[i] && placed_[i].start <= t && t < placed_[i].finish) {
        used += placed_[i].width;
      }
    }
    return used;
  }

  bool fits(Cycles t, Cycles duration, Width height) const {
    if (usage_at(t) + height > w_max_) return false;
    for (std::size_t i = 0; i < placed_.size(); ++i) {
      if (!is_placed_[i]) continue;
      const Cycles s = placed_[i].start;
      if (s > t && s < t + duration && usage_at(s) + height > w_max_) {
        return false;
      }
    }
    return true;
  }

  Cycles earliest_start(Cycles duration, Width height) const {
    std::vector<Cycles> candidates{0};
    for (std::size_t i = 0; i < placed_.size(); ++i) {
      if (is_placed_[i]) candidates.push_back(placed_[i].finish);
    }
    std::sort(candidates.begin(), candidates.end());
    for (Cycles t : candidates) {
      if (fits(t, duration, height)) return t;
    }
    return candidates.back();  // everything has finished by then
  }

  void search(std::size_t depth, Cycles makespan, std::int64_t area) {
    if (depth == sets_.size()) {
      if (makespan < best_makespan_) {
        best_makespan_ = makespan;
        best_ = placed_;
      }
      return;
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (is_placed_[i]) continue;
      remaining_area_ -= min_area_[i];
      for (const TestRectangle& r : sets_[i].rects) {
        const Cycles start = earliest_start(r.width, r.height);
        const Cycles finish = start + r.width;
        const Cycles span = std::max(makespan, finish);
        const std::int64_t filled = area + r.height * r.width;
        const Cycles area_bound = (filled + remaining_area_ + w_max_ - 1) / w_max_;
        if (std::max(span, area_bound) >= best_makespan_) continue;
        placed_[i] = {start, finish, r.height};
        is_placed_[i] = true;
        search(depth + 1, span, filled);
        is_placed_[i] = false;
      }
      remaining_area_ += min_area_[i];
    }
  }

  std::span<const RectangleSet> sets_;
  Width w_max_;
  std::vector<Placement> placed_;
  std::vector<bool> is_placed_;
  std::vector<std::int64_t> min_area_;
  std::int64_t remaining_area_ = 0;
  Cycles best_makespan_ = std::numeric_limits<Cycles>::max();
  std::vector<Placement> best_;
};

std::string describe(Cycles t, Width used, Width w_max) {
  std::ostringstream out;
  out << used << " wires busy at t=" << t << " (TAM width " << w_max << ")";
  return out.str();
}

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kCapacity:
      return "capacity";
    case ViolationKind::kDoubleSchedule:
      return "double-schedule";
    case ViolationKind::kBadWidth:
      return "bad-width";
    case ViolationKind::kBadDuration:
      return "bad-duration";
    case ViolationKind::kNegativeTime:
      return "negative-time";
    case ViolationKind::kMissing:
      return "missing";
  }
  return "?";
}

ValidationReport validate(const TestSchedule& schedule,
                          std::span<const RectangleSet> sets, Width w_max) {
  ValidationReport report;
  std::map<int, const RectangleSet*> by_id;
  for (const RectangleSet& set : sets) by_id[set.core_id] = &set;

  auto flag = [&](ViolationKind kind, int core, std::string detail) {
    report.violations.push_back({kind, core, std::move(detail)});
  };

  std::set<int> seen;
  std::vector<std::pair<Cycles, Width>> events;  // (time, +/- width)
  std::int64_t filled = 0;
  for (const CoreSlot& slot : schedule.cores) {
    if (!seen.insert(slot.core_id).second) {
      flag(ViolationKind::kDoubleSchedule, slot.core_id,
           "core appears more than once");
      continue;
    }
    if (!slot.scheduled) {
      flag(ViolationKind::kMissing, slot.core_id, "core never scheduled");
      continue;
    }
    if (slot.start < 0 || slot.finish < 0) {
      flag(ViolationKind::kNegativeTime, slot.core_id, "negative start/finish");
    }
    auto it = by_id.find(slot.core_id);
    const TestRectangle* rect =
        it == by_id.end() ? nullptr : it->second->find(slot.width);
    if (it == by_id.end()) {
      flag(ViolationKind::kBadWidth, slot.core_id, "core not in the SOC");
    } else if (rect == nullptr) {
      flag(ViolationKind::kBadWidth, slot.core_id,
           "width " + std::to_string(slot.width) +
               " is not one of the core's TAM_u values");
    } else if (slot.finish - slot.start != rect->width) {
      flag(ViolationKind::kBadDuration, slot.core_id,
           "runs " + std::to_string(slot.finish - slot.start) +
               " cycles, rectangle says " + std::to_string(rect->width));
    }
    report.makespan = std::max(report.makespan, slot.finish);
    if (slot.finish > slot.start && slot.width > 0) {
      events.emplace_back(slot.start, slot.width);
      events.emplace_back(slot.finish, -slot.width);
      filled += slot.width * (slot.finish - slot.start);
    }
  }
  for (const auto& [id, set] : by_id) {
    if (!seen.contains(id)) {
      flag(ViolationKind::kMissing, id, "core missing from schedule");
    }
  }

  // Releases sort before acquisitions at equal times.
  std::sort(events.begin(), events.end());
  Width busy = 0;
  bool overloaded = false;
  for (std::size_t i = 0; i < events.size(); ++i) {
    busy += events[i].second;
    const bool last_at_time =
        i + 1 == events.size() || events[i + 1].first != events[i].first;
    if (!last_at_time) continue;
    if (busy > w_max && !overloaded) {
      flag(ViolationKind::kCapacity, 0, describe(events[i].first, busy, w_max));
    }
    overloaded = busy > w_max;
  }

  if (report.makespan > 0 && w_max > 0) {
    report.utilization = static_cast<double>(filled) /
                         (static_cast<double>(w_max) *
                          static_cast<double>(report.makespan));
  }
  report.ok = report.violations.empty();
  return report;
}

InstanceTooLarge::InstanceTooLarge(std::size_t cores, std::uint64_t choices)
    : std::runtime_error("instance too large for the exact scheduler: " +
                         std::to_string(cores) + " cores, " +
                         std::to_string(choices) + " rectangle choices"),
      cores_(cores),
      choices_(choices) {}

TestSchedule exact_schedule(std::span<const RectangleSet> sets, Width w_max,
                            const OracleLimits& limits) {
  if (w_max < 1) throw std::invalid_argument("TAM width must be >= 1");
  const Cycles t_min = compute_t_min(sets);  // also rejects empty input
  std::uint64_t choices = 1;
  for (const RectangleSet& set : sets) {
    if (set.peak_tam() > w_max) {
      throw std::invalid_argument("rectangle taller than the TAM");
    }
    choices = std::min<std::uint64_t>(choices * set.rects.size(),
                                      std::numeric_limits<std::uint32_t>::max());
  }
  if (sets.size() > limits.max_cores || choices > limits.max_choices) {
    throw InstanceTooLarge(sets.size(), choices);
  }

  const std::vector<Placement> best = ExactSearch(sets, w_max).run();
  TestSchedule schedule = make_schedule(sets, w_max);
  schedule.t_min = t_min;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    CoreSlot& slot = schedule.cores[i];
    slot.start = best[i].start;
    slot.finish = best[i].finish;
    slot.width = best[i].width;
    slot.scheduled = true;
    slot.complete = true;
    schedule.makespan = std::max(schedule.makespan, slot.finish);
  }
  schedule.now = schedule.makespan;
  return schedule;
}

TestSchedule exact_schedule(const SocSpec& soc, Width w_max,
                            const WrapperOptions& options,
                            const OracleLimits& limits) {
  const auto sets = build_rectangle_sets(soc, w_max, options);
  TestSchedule schedule = exact_schedule(sets, w_max, limits);
  schedule.soc_name = soc.name;
  for (std::size_t i = 0; i < soc.cores.size(); ++i) {
    schedule.cores[i].name = soc.cores[i].name;
  }
  return schedule;
}

GapResult gap_report(const SocSpec& soc, Width w_max,
                     const SchedulerOptions& options,
                     const OracleLimits& limits) {
  const auto sets = build_rectangle_sets(soc, w_max, options.wrapper);
  const TestSchedule heuristic = schedule_rectangles(sets, w_max, options);
  const TestSchedule oracle = exact_schedule(sets, w_max, limits);
  if (!validate(heuristic, sets, w_max).ok) {
    throw std::logic_error("heuristic schedule failed validation");
  }
  if (!validate(oracle, sets, w_max).ok) {
    throw std::logic_error("exact schedule failed validation");
  }
  GapResult gap;
  gap.heuristic = heuristic.makespan;
  gap.oracle = oracle.makespan;
  gap.ratio = static_cast<double>(gap.heuristic) / static_cast<double>(gap.oracle);
  return gap;
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo,
                         std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

SocSpec random_soc(std::uint64_t seed, const RandomSocParams& params) {
  std::mt19937_64 rng(seed);
  SocSpec soc;
  soc.name = "random-" + std::to_string(seed);
  const auto cores = uniform_int(rng, params.min_cores, params.max_cores);
  for (int i = 1; i <= cores; ++i) {
    CoreSpec core;
    core.id = i;
    core.name = "r" + std::to_string(i);
    core.num_inputs =
        static_cast<int>(uniform_int(rng, params.min_pins, params.max_pins));
    core.num_outputs =
        static_cast<int>(uniform_int(rng, params.min_pins, params.max_pins));
    core.num_patterns =
        uniform_int(rng, params.min_patterns, params.max_patterns);
    const auto chains = uniform_int(rng, params.min_chains, params.max_chains);
    for (int c = 0; c < chains; ++c) {
      core.scan_chain_lengths.push_back(uniform_int(
          rng, params.min_chain_length, params.max_chain_length));
    }
    soc.cores.push_back(std::move(core));
  }
  return soc;
}

}  // namespace tamco
