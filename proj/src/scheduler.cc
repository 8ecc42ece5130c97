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

#include "tamco/scheduler.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

namespace tamco {
namespace {

// True when `a` should be scheduled before `b` given diagonals that are
// already known to compare as `diag_cmp` (-1 less, 0 tie, 1 greater).
bool precedes(int diag_cmp, double peak_a, int id_a, double peak_b,
              int id_b) {
  if (diag_cmp != 0) return diag_cmp > 0;
  if (peak_a != peak_b) return peak_a > peak_b;
  return id_a < id_b;
}

int fuzzy_compare(double a, double b, double epsilon) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (std::fabs(a - b) <= epsilon * scale) return 0;
  return a < b ? -1 : 1;
}

// Insertion sort: the fuzzy comparison is not a strict weak order, so the
// standard sorts are off the table. Core counts are small.
template <typename T, typename Before>
void insertion_sort(std::vector<T>& items, Before before) {
  for (std::size_t i = 1; i < items.size(); ++i) {
    T item = items[i];
    std::size_t j = i;
    while (j > 0 && before(item, items[j - 1])) {
      items[j] = items[j - 1];
      --j;
    }
    items[j] = item;
  }
}

void check_sets(std::span<const RectangleSet> sets) {
  if (sets.empty()) throw std::invalid_argument("no rectangle sets");
  for (const RectangleSet& set : sets) {
    if (set.rects.empty()) {
      throw std::invalid_argument("core " + std::to_string(set.core_id) +
                                  " has no rectangles");
    }
  }
}

}  // namespace

const TestRectangle* RectangleSet::find(Width height) const {
  for (const TestRectangle& r : rects) {
    if (r.height == height) return &r;
  }
  return nullptr;
}

RectangleSet build_rectangle_set(const CoreSpec& core, Width w_max,
                                 const WrapperOptions& options) {
  if (w_max < 1) throw std::invalid_argument("TAM width must be >= 1");
  std::map<Width, Cycles, std::greater<>> best;
  for (Width w = 1; w <= w_max; ++w) {
    const WrapperPlan plan = design_wrapper(core, w, options);
    auto [it, inserted] =
        best.try_emplace(plan.tam_utilized, plan.test_time.cycles);
    if (!inserted) it->second = std::min(it->second, plan.test_time.cycles);
  }
  RectangleSet set;
  set.core_id = core.id;
  for (const auto& [height, time] : best) {
    set.rects.push_back({core.id, height, time});
  }
  return set;
}

std::vector<RectangleSet> build_rectangle_sets(const SocSpec& soc, Width w_max,
                                               const WrapperOptions& options) {
  check_soc(soc);
  std::vector<RectangleSet> sets;
  sets.reserve(soc.cores.size());
  for (const CoreSpec& core : soc.cores) {
    sets.push_back(build_rectangle_set(core, w_max, options));
  }
  return sets;
}

Cycles compute_t_min(std::span<const RectangleSet> sets) {
  check_sets(sets);
  Cycles t_min = std::numeric_limits<Cycles>::max();
  for (const RectangleSet& set : sets) t_min = std::min(t_min, set.peak_time());
  return t_min;
}

std::optional<Width> possible_tam(const RectangleSet& set, Width available) {
  for (const TestRectangle& r : set.rects) {
    if (r.height <= available) return r.height;
  }
  return std::nullopt;
}

std::vector<DiagonalKey> diagonal_keys(std::span<const RectangleSet> sets,
                                       Cycles t_min) {
  if (t_min <= 0) throw std::invalid_argument("t_min must be positive");
  std::vector<DiagonalKey> keys;
  for (const RectangleSet& set : sets) {
    DiagonalKey key;
    key.core_id = set.core_id;
    key.peak_tam = set.peak_tam();
    key.normalized_time =
        static_cast<double>(set.peak_time()) / static_cast<double>(t_min);
    key.diagonal = std::hypot(key.peak_tam, key.normalized_time);
    keys.push_back(key);
  }
  return keys;
}

std::vector<int> order_by_diagonal(std::vector<DiagonalKey> keys,
                                   double epsilon) {
  insertion_sort(keys, [epsilon](const DiagonalKey& a, const DiagonalKey& b) {
    return precedes(fuzzy_compare(a.diagonal, b.diagonal, epsilon), a.peak_tam,
                    a.core_id, b.peak_tam, b.core_id);
  });
  std::vector<int> ids;
  for (const DiagonalKey& k : keys) ids.push_back(k.core_id);
  return ids;
}

std::vector<int> diagonal_order(std::span<const RectangleSet> sets,
                                Cycles t_min, double epsilon) {
  check_sets(sets);
  if (t_min <= 0) throw std::invalid_argument("t_min must be positive");

  // DL^2 * t_min^2 = (peak * t_min)^2 + peak_time^2 orders cores exactly.
  struct Exact {
    int core_id;
    Width peak;
    unsigned __int128 key;
  };
  std::vector<Exact> exact;
  for (const RectangleSet& set : sets) {
    std::int64_t scaled = 0;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(set.peak_tam()), t_min,
                               &scaled)) {
      return order_by_diagonal(diagonal_keys(sets, t_min), epsilon);
    }
    const auto a = static_cast<unsigned __int128>(scaled);
    const auto b = static_cast<unsigned __int128>(set.peak_time());
    exact.push_back({set.core_id, set.peak_tam(), a * a + b * b});
  }
  insertion_sort(exact, [](const Exact& a, const Exact& b) {
    const int cmp = a.key == b.key ? 0 : (a.key < b.key ? -1 : 1);
    return precedes(cmp, a.peak, a.core_id, b.peak, b.core_id);
  });
  std::vector<int> ids;
  for (const Exact& e : exact) ids.push_back(e.core_id);
  return ids;
}

const char* to_string(AssignmentSource source) {
  switch (source) {
    case AssignmentSource::kNone:
      return "none";
    case AssignmentSource::kInitialPeak:
      return "initial-peak";
    case AssignmentSource::kInitialReduced:
      return "initial-reduced";
    case AssignmentSource::kPending:
      return "pending";
  }
  return "?";
}

CoreSlot* TestSchedule::slot(int core_id) {
  for (CoreSlot& s : cores) {
    if (s.core_id == core_id) return &s;
  }
  return nullptr;
}

const CoreSlot* TestSchedule::slot(int core_id) const {
  return const_cast<TestSchedule*>(this)->slot(core_id);
}

std::int64_t TestSchedule::idle_area() const {
  std::int64_t used = 0;
  for (const CoreSlot& s : cores) used += s.width * (s.finish - s.start);
  return static_cast<std::int64_t>(w_max) * makespan - used;
}

double TestSchedule::utilization() const {
  if (w_max == 0 || makespan == 0) return 0.0;
  const double bin = static_cast<double>(w_max) * static_cast<double>(makespan);
  return (bin - static_cast<double>(idle_area())) / bin;
}

TestSchedule make_schedule(std::span<const RectangleSet> sets, Width w_max) {
  TestSchedule schedule;
  schedule.w_max = w_max;
  schedule.available = w_max;
  for (const RectangleSet& set : sets) {
    CoreSlot slot;
    slot.core_id = set.core_id;
    slot.peak_tam = set.rects.empty() ? 0 : set.peak_tam();
    schedule.cores.push_back(slot);
  }
  return schedule;
}

void apply_assignment(TestSchedule& schedule, const RectangleSet& set,
                      Width width, Cycles now) {
  CoreSlot* slot = schedule.slot(set.core_id);
  if (slot == nullptr) throw std::logic_error("core not in schedule");
  if (slot->scheduled) throw std::logic_error("core already scheduled");
  const TestRectangle* rect = set.find(width);
  if (rect == nullptr) throw std::logic_error("width is not a core height");
  if (width > schedule.available) throw std::logic_error("not enough wires");
  slot->start = now;
  slot->scheduled = true;
  slot->finish = now + rect->width;
  slot->width = width;
  schedule.available -= width;
}

TestSchedule schedule_rectangles(std::span<const RectangleSet> sets,
                                 Width w_max,
                                 const SchedulerOptions& options) {
  if (w_max < 1) throw std::invalid_argument("TAM width must be >= 1");
  check_sets(sets);
  for (const RectangleSet& set : sets) {
    if (set.peak_tam() > w_max) {
      throw std::invalid_argument("rectangle taller than the TAM");
    }
  }

  TestSchedule schedule = make_schedule(sets, w_max);
  schedule.t_min = compute_t_min(sets);

  std::map<int, std::size_t> index_of;
  for (std::size_t i = 0; i < sets.size(); ++i) index_of[sets[i].core_id] = i;

  std::deque<std::size_t> initial;
  for (int id : diagonal_order(sets, schedule.t_min, options.epsilon)) {
    initial.push_back(index_of.at(id));
  }
  std::deque<std::size_t> pending;
  bool idle = false;
  std::size_t scheduled = 0;

  auto assign = [&](std::size_t i, Width width, AssignmentSource source) {
    apply_assignment(schedule, sets[i], width, schedule.now);
    schedule.cores[i].source = source;
    ++scheduled;
  };
  auto serve_pending = [&] {
    if (pending.empty()) return false;
    const std::size_t front = pending.front();
    if (sets[front].peak_tam() > schedule.available) return false;
    assign(front, sets[front].peak_tam(), AssignmentSource::kPending);
    pending.pop_front();
    return true;
  };

  while (scheduled < sets.size()) {
    if (schedule.available > 0 && !idle) {
      if (!initial.empty()) {
        const std::size_t c = initial.front();
        initial.pop_front();
        const Width peak = sets[c].peak_tam();
        if (schedule.available >= peak) {
          assign(c, peak, AssignmentSource::kInitialPeak);
        } else if (auto fit = possible_tam(sets[c], schedule.available);
                   fit && *fit >= (peak + 1) / 2) {
          assign(c, *fit, AssignmentSource::kInitialReduced);
        } else {
          pending.push_back(c);
        }
        serve_pending();
      } else if (!serve_pending()) {
        idle = true;
      }
      continue;
    }

    // Out of wires or idle: jump to the next finish event.
    Cycles next = std::numeric_limits<Cycles>::max();
    for (const CoreSlot& s : schedule.cores) {
      if (s.scheduled && !s.complete && s.finish > schedule.now) {
        next = std::min(next, s.finish);
      }
    }
    if (next == std::numeric_limits<Cycles>::max()) {
      throw std::logic_error("scheduler stalled with no running test");
    }
    schedule.now = next;
    for (CoreSlot& s : schedule.cores) {
      if (s.scheduled && !s.complete && s.finish == next) {
        schedule.available += s.width;
        s.complete = true;
      }
    }
    idle = false;
  }

  // Drain the tests still running.
  for (CoreSlot& s : schedule.cores) {
    schedule.makespan = std::max(schedule.makespan, s.finish);
    if (!s.complete) {
      schedule.available += s.width;
      s.complete = true;
    }
  }
  schedule.now = schedule.makespan;
  return schedule;
}

TestSchedule schedule_tests(const SocSpec& soc, Width w_max,
                            const SchedulerOptions& options) {
  if (w_max < 1) throw std::invalid_argument("TAM width must be >= 1");
  const auto sets = build_rectangle_sets(soc, w_max, options.wrapper);
  TestSchedule schedule = schedule_rectangles(sets, w_max, options);
  schedule.soc_name = soc.name;
  for (std::size_t i = 0; i < soc.cores.size(); ++i) {
    schedule.cores[i].name = soc.cores[i].name;
  }
  return schedule;
}

}  // namespace tamco
