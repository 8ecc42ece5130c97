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

// Domain types shared by the wrapper designer, the scheduler and the
// validators: cores, SOCs and the core test-time formula.

#ifndef TAMCO_CORE_MODEL_H_
#define TAMCO_CORE_MODEL_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tamco {

// Clock cycles. Test times on the larger benchmarks overflow 32 bits once
// multiplied by TAM widths, so everything time-like is 64-bit.
using Cycles = std::int64_t;

// Number of TAM wires.
using Width = int;

struct TestTime {
  Cycles cycles = 0;

  friend auto operator<=>(const TestTime&, const TestTime&) = default;
};

// How the "total IO" term of Total_Scan_Element counts functional pins.
enum class TotalIoPolicy {
  // max(I + B, O + B): the length a single wrapper chain reaches when every
  // scan element sits on it. This is the default.
  kLongerSide,
  // I + O + 2B: every wrapper cell counted once.
  kAllCells,
};

struct CoreSpec {
  int id = 0;
  std::string name;
  int num_inputs = 0;
  int num_outputs = 0;
  // A bidirectional pin gets one input-side and one output-side cell.
  int num_bidirs = 0;
  std::int64_t num_patterns = 1;
  std::vector<std::int64_t> scan_chain_lengths;

  bool is_combinational() const { return scan_chain_lengths.empty(); }

  // Wrapper cells on the scan-in side (I + B) and scan-out side (O + B).
  std::int64_t input_cells() const { return num_inputs + num_bidirs; }
  std::int64_t output_cells() const { return num_outputs + num_bidirs; }
  // I + O + 2B.
  std::int64_t wrapper_cells() const { return input_cells() + output_cells(); }

  std::int64_t total_scan_length() const;

  // Total_Scan_Element: total IO (per `policy`) plus all internal scan
  // flip-flops.
  std::int64_t total_scan_elements(
      TotalIoPolicy policy = TotalIoPolicy::kLongerSide) const;

  friend bool operator==(const CoreSpec&, const CoreSpec&) = default;
};

struct SocSpec {
  std::string name;
  std::vector<CoreSpec> cores;

  // Null when no core has that id.
  const CoreSpec* find(int id) const;

  friend bool operator==(const SocSpec&, const SocSpec&) = default;
};

// Throws std::invalid_argument describing the first broken invariant of a
// core: negative counts, zero patterns or a zero-length scan chain.
void check_core(const CoreSpec& core);

// Checks every core plus the SOC-level invariants: at least one core and
// ids running 1..N in list order.
void check_soc(const SocSpec& soc);

// p * (1 + max(s_i, s_o)) + min(s_i, s_o), in exact integer arithmetic.
// Throws std::invalid_argument for p < 1 or negative shift lengths and
// std::overflow_error when the result does not fit in 64 bits.
TestTime compute_test_time(std::int64_t patterns, std::int64_t scan_in,
                           std::int64_t scan_out);

}  // namespace tamco

#endif  // TAMCO_CORE_MODEL_H_
