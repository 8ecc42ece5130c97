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

// Balanced wrapper scan-chain construction.
//
// A sequential core is wrapped by packing its internal scan chains, longest
// first, into wrapper chains capped at
//
//   Peak_Scan_Element = ceil(Total_Scan_Element / max(1, floor(W / 2)))
//
// and then padding the wrapper chains with functional input and output
// cells, one cell at a time onto the currently shortest chain. A
// combinational core is either wired directly (one TAM wire per wrapper
// cell) or, when it has more cells than wires, cut into W chains.

#ifndef TAMCO_WRAPPER_DESIGN_H_
#define TAMCO_WRAPPER_DESIGN_H_

#include <cstdint>
#include <vector>

#include "tamco/core_model.h"

namespace tamco {

// Where an internal scan chain goes when several wrapper chains can take it.
enum class FitRule {
  kBestFit,   // the chain left longest without passing the cap
  kFirstFit,  // the lowest-index chain with room
};

enum class IoPadding {
  // Opens empty wrapper chains (while TAM lines remain) whenever the
  // existing chains cannot absorb the I/O cells without growing the longest
  // chain. Default; reproduces the TAM_u steps of the published core 6 table.
  kSpillToNewChain,
  // I/O cells only ever go onto chains created for scan chains.
  kExistingChainsOnly,
};

struct WrapperOptions {
  FitRule fit = FitRule::kBestFit;
  IoPadding io_padding = IoPadding::kSpillToNewChain;
  TotalIoPolicy total_io = TotalIoPolicy::kLongerSide;

  friend bool operator==(const WrapperOptions&,
                         const WrapperOptions&) = default;
};

const char* to_string(FitRule rule);
const char* to_string(IoPadding padding);
const char* to_string(TotalIoPolicy policy);

struct WrapperChain {
  std::vector<std::int64_t> internal_lengths;
  std::int64_t input_cells = 0;
  std::int64_t output_cells = 0;

  std::int64_t internal_length() const;
  std::int64_t scan_in_length() const {
    return input_cells + internal_length();
  }
  std::int64_t scan_out_length() const {
    return output_cells + internal_length();
  }
};

struct WrapperPlan {
  int core_id = 0;
  Width w_max = 0;
  bool direct_connect = false;
  std::vector<WrapperChain> chains;
  Width tam_utilized = 0;
  std::int64_t scan_in = 0;   // s_i
  std::int64_t scan_out = 0;  // s_o
  // Zero for combinational cores.
  std::int64_t peak_scan_element = 0;
  TestTime test_time;

  std::int64_t longest_chain() const {
    return scan_in > scan_out ? scan_in : scan_out;
  }
};

// Builds the wrapper for `core` with at most `w_max` TAM wires. Throws
// std::invalid_argument for w_max < 1 or an invalid core.
WrapperPlan design_wrapper(const CoreSpec& core, Width w_max,
                           const WrapperOptions& options = {});

struct WrapperBand {
  Width width_lo = 0;  // inclusive
  Width width_hi = 0;  // inclusive
  Width tam_utilized = 0;
  std::int64_t scan_in = 0;
  std::int64_t scan_out = 0;
  std::int64_t longest_chain = 0;
  TestTime test_time;

  friend bool operator==(const WrapperBand&, const WrapperBand&) = default;
};

struct WrapperBandTable {
  int core_id = 0;
  // Widest band first, down to the band containing width 1.
  std::vector<WrapperBand> rows;

  friend bool operator==(const WrapperBandTable&,
                         const WrapperBandTable&) = default;
};

// Runs design_wrapper for every width 1..w_max and merges neighbouring
// widths whose (TAM_u, s_i, s_o) agree.
WrapperBandTable wrapper_table(const CoreSpec& core, Width w_max,
                               const WrapperOptions& options = {});

}  // namespace tamco

#endif  // TAMCO_WRAPPER_DESIGN_H_
