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

#include "tamco/core_model.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tamco {

std::int64_t CoreSpec::total_scan_length() const {
  return std::accumulate(scan_chain_lengths.begin(), scan_chain_lengths.end(),
                         std::int64_t{0});
}

std::int64_t CoreSpec::total_scan_elements(TotalIoPolicy policy) const {
  const std::int64_t io = policy == TotalIoPolicy::kAllCells
                              ? wrapper_cells()
                              : std::max(input_cells(), output_cells());
  return io + total_scan_length();
}

const CoreSpec* SocSpec::find(int id) const {
  auto it = std::find_if(cores.begin(), cores.end(),
                         [id](const CoreSpec& c) { return c.id == id; });
  return it == cores.end() ? nullptr : &*it;
}

void check_core(const CoreSpec& core) {
  const std::string where = "core '" + core.name + "': ";
  if (core.num_inputs < 0 || core.num_outputs < 0 || core.num_bidirs < 0) {
    throw std::invalid_argument(where + "pin counts must be non-negative");
  }
  if (core.num_patterns < 1) {
    throw std::invalid_argument(where + "needs at least one test pattern");
  }
  for (std::int64_t len : core.scan_chain_lengths) {
    if (len < 1) {
      throw std::invalid_argument(where + "scan chain lengths must be >= 1");
    }
  }
}

void check_soc(const SocSpec& soc) {
  if (soc.cores.empty()) {
    throw std::invalid_argument("soc '" + soc.name + "' has no cores");
  }
  int expected = 1;
  for (const CoreSpec& core : soc.cores) {
    check_core(core);
    if (core.id != expected++) {
      throw std::invalid_argument("core ids must run 1..N in order");
    }
  }
}

TestTime compute_test_time(std::int64_t patterns, std::int64_t scan_in,
                           std::int64_t scan_out) {
  if (patterns < 1) {
    throw std::invalid_argument("test time needs at least one pattern");
  }
  if (scan_in < 0 || scan_out < 0) {
    throw std::invalid_argument("scan lengths must be non-negative");
  }
  const std::int64_t longer = std::max(scan_in, scan_out);
  const std::int64_t shorter = std::min(scan_in, scan_out);
  std::int64_t shift = 0;
  std::int64_t product = 0;
  std::int64_t total = 0;
  if (__builtin_add_overflow(longer, std::int64_t{1}, &shift) ||
      __builtin_mul_overflow(patterns, shift, &product) ||
      __builtin_add_overflow(product, shorter, &total)) {
    throw std::overflow_error("test time exceeds 64-bit cycle counter");
  }
  return TestTime{total};
}

}  // namespace tamco
