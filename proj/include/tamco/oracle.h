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

// Independent checks for schedules: a feasibility validator, an exhaustive
// scheduler for tiny SOCs, the heuristic/optimum gap and a seeded random
// SOC generator that feeds them.

#ifndef TAMCO_ORACLE_H_
#define TAMCO_ORACLE_H_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamco/core_model.h"
#include "tamco/scheduler.h"

namespace tamco {

enum class ViolationKind {
  kCapacity,
  kDoubleSchedule,
  kBadWidth,
  kBadDuration,
  kNegativeTime,
  kMissing,  // a core of the SOC never appears in the schedule
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int core_id = 0;  // 0 when the violation is not tied to one core
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  Cycles makespan = 0;
  // Filled area / (w_max * makespan).
  double utilization = 0.0;
};

// Checks a schedule against the rectangle sets it claims to use: every core
// placed once, on one of its heights, for exactly that height's test time,
// never before time 0, and never more than w_max wires busy at once (event
// sweep over start/finish times; a test frees its wires at its finish time).
ValidationReport validate(const TestSchedule& schedule,
                          std::span<const RectangleSet> sets, Width w_max);

class InstanceTooLarge : public std::runtime_error {
 public:
  InstanceTooLarge(std::size_t cores, std::uint64_t choices);
  std::size_t cores() const { return cores_; }
  std::uint64_t choices() const { return choices_; }

 private:
  std::size_t cores_;
  std::uint64_t choices_;
};

struct OracleLimits {
  std::size_t max_cores = 6;
  // Product of the rectangle-set sizes.
  std::uint64_t max_choices = 100000;
};

// Minimum-makespan schedule over all left-shifted schedules: every choice
// of one rectangle per core in every placement order, each rectangle
// started at the earliest time with enough free wires. Branches that
// cannot beat the incumbent are cut, which keeps the search exact. Throws
// InstanceTooLarge when `limits` are exceeded.
TestSchedule exact_schedule(std::span<const RectangleSet> sets, Width w_max,
                            const OracleLimits& limits = {});

TestSchedule exact_schedule(const SocSpec& soc, Width w_max,
                            const WrapperOptions& options = {},
                            const OracleLimits& limits = {});

struct GapResult {
  Cycles heuristic = 0;
  Cycles oracle = 0;
  double ratio = 0.0;  // heuristic / oracle
};

// Runs both schedulers, validates both schedules (std::logic_error if either
// fails) and compares makespans.
GapResult gap_report(const SocSpec& soc, Width w_max,
                     const SchedulerOptions& options = {},
                     const OracleLimits& limits = {});

// Generator ranges for random SOCs, all inclusive.
struct RandomSocParams {
  int min_cores = 2;
  int max_cores = 5;
  int min_pins = 1;  // inputs and outputs, each
  int max_pins = 64;
  int min_chains = 0;
  int max_chains = 8;
  int min_chain_length = 1;
  int max_chain_length = 200;
  int min_patterns = 1;
  int max_patterns = 50;
};

// Uniform integer in [lo, hi] from a 64-bit Mersenne Twister. Unlike
// std::uniform_int_distribution the draw sequence is the same on every
// standard library.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo,
                         std::int64_t hi);

SocSpec random_soc(std::uint64_t seed, const RandomSocParams& params = {});

}  // namespace tamco

#endif  // TAMCO_ORACLE_H_
