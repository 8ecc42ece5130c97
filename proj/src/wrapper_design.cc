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

#include "tamco/wrapper_design.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <utility>

namespace tamco {
namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Adds `cells` unit cells, each to the chain whose side length (scan-in when
// `input_side`) is currently smallest, lowest index on ties.
void pad_cells(std::vector<WrapperChain>& chains, std::int64_t cells,
               bool input_side) {
  if (cells == 0) return;
  using Entry = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t k = 0; k < chains.size(); ++k) {
    heap.emplace(input_side ? chains[k].scan_in_length()
                            : chains[k].scan_out_length(),
                 k);
  }
  for (std::int64_t c = 0; c < cells; ++c) {
    auto [len, k] = heap.top();
    heap.pop();
    if (input_side) {
      ++chains[k].input_cells;
    } else {
      ++chains[k].output_cells;
    }
    heap.emplace(len + 1, k);
  }
}

void finalize(WrapperPlan& plan, const CoreSpec& core) {
  plan.tam_utilized = static_cast<Width>(plan.chains.size());
  if (!plan.direct_connect) {
    plan.scan_in = 0;
    plan.scan_out = 0;
    for (const WrapperChain& chain : plan.chains) {
      plan.scan_in = std::max(plan.scan_in, chain.scan_in_length());
      plan.scan_out = std::max(plan.scan_out, chain.scan_out_length());
    }
  }
  if (plan.tam_utilized > plan.w_max) {
    throw std::logic_error("wrapper uses more TAM lines than allowed");
  }
  plan.test_time =
      compute_test_time(core.num_patterns, plan.scan_in, plan.scan_out);
}

WrapperPlan design_combinational(const CoreSpec& core, Width w_max) {
  WrapperPlan plan;
  plan.core_id = core.id;
  plan.w_max = w_max;
  const std::int64_t in = core.input_cells();
  const std::int64_t out = core.output_cells();

  if (in + out <= w_max) {
    // One wire per wrapper cell; a pinless core still occupies one line.
    plan.direct_connect = true;
    for (std::int64_t i = 0; i < in; ++i) plan.chains.push_back({{}, 1, 0});
    for (std::int64_t o = 0; o < out; ++o) plan.chains.push_back({{}, 0, 1});
    if (plan.chains.empty()) plan.chains.emplace_back();
    plan.scan_in = 1;
    plan.scan_out = 1;
  } else {
    plan.chains.resize(static_cast<std::size_t>(w_max));
    pad_cells(plan.chains, in, /*input_side=*/true);
    pad_cells(plan.chains, out, /*input_side=*/false);
  }
  finalize(plan, core);
  if (!plan.direct_connect &&
      (plan.scan_in != ceil_div(in, w_max) ||
       plan.scan_out != ceil_div(out, w_max))) {
    throw std::logic_error("combinational chains are not balanced");
  }
  return plan;
}

WrapperPlan design_sequential(const CoreSpec& core, Width w_max,
                              const WrapperOptions& options) {
  WrapperPlan plan;
  plan.core_id = core.id;
  plan.w_max = w_max;

  const std::int64_t mid_lines = std::max<std::int64_t>(1, w_max / 2);
  plan.peak_scan_element =
      ceil_div(core.total_scan_elements(options.total_io), mid_lines);

  std::vector<std::size_t> order(core.scan_chain_lengths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return core.scan_chain_lengths[a] > core.scan_chain_lengths[b];
  });

  auto& chains = plan.chains;
  std::vector<std::int64_t> lengths;  // internal length per wrapper chain
  for (std::size_t idx : order) {
    const std::int64_t len = core.scan_chain_lengths[idx];
    std::ptrdiff_t target = -1;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      if (lengths[k] + len > plan.peak_scan_element) continue;
      if (options.fit == FitRule::kFirstFit) {
        target = static_cast<std::ptrdiff_t>(k);
        break;
      }
      if (target < 0 || lengths[k] > lengths[static_cast<std::size_t>(target)]) {
        target = static_cast<std::ptrdiff_t>(k);
      }
    }
    if (target < 0) {
      chains.emplace_back();
      lengths.push_back(0);
      target = static_cast<std::ptrdiff_t>(chains.size() - 1);
    }
    chains[static_cast<std::size_t>(target)].internal_lengths.push_back(len);
    lengths[static_cast<std::size_t>(target)] += len;
  }

  const std::int64_t in = core.input_cells();
  const std::int64_t out = core.output_cells();
  if (options.io_padding == IoPadding::kSpillToNewChain) {
    const std::int64_t need = std::max(in, out);
    while (static_cast<Width>(chains.size()) < w_max) {
      const std::int64_t longest =
          *std::max_element(lengths.begin(), lengths.end());
      std::int64_t room = 0;
      for (std::int64_t l : lengths) room += longest - l;
      if (room >= need) break;
      chains.emplace_back();
      lengths.push_back(0);
    }
  }
  pad_cells(chains, in, /*input_side=*/true);
  pad_cells(chains, out, /*input_side=*/false);
  finalize(plan, core);
  return plan;
}

}  // namespace

const char* to_string(FitRule rule) {
  return rule == FitRule::kBestFit ? "best-fit" : "first-fit";
}

const char* to_string(IoPadding padding) {
  return padding == IoPadding::kSpillToNewChain ? "spill-to-new-chain"
                                                : "existing-chains-only";
}

const char* to_string(TotalIoPolicy policy) {
  return policy == TotalIoPolicy::kLongerSide ? "longer-side" : "all-cells";
}

std::int64_t WrapperChain::internal_length() const {
  return std::accumulate(internal_lengths.begin(), internal_lengths.end(),
                         std::int64_t{0});
}

WrapperPlan design_wrapper(const CoreSpec& core, Width w_max,
                           const WrapperOptions& options) {
  if (w_max < 1) throw std::invalid_argument("TAM width must be >= 1");
  check_core(core);
  return core.is_combinational() ? design_combinational(core, w_max)
                                 : design_sequential(core, w_max, options);
}

WrapperBandTable wrapper_table(const CoreSpec& core, Width w_max,
                               const WrapperOptions& options) {
  if (w_max < 1) throw std::invalid_argument("TAM width must be >= 1");
  WrapperBandTable table;
  table.core_id = core.id;
  for (Width w = 1; w <= w_max; ++w) {
    const WrapperPlan plan = design_wrapper(core, w, options);
    if (!table.rows.empty()) {
      WrapperBand& last = table.rows.back();
      if (last.tam_utilized == plan.tam_utilized &&
          last.scan_in == plan.scan_in && last.scan_out == plan.scan_out) {
        last.width_hi = w;
        continue;
      }
    }
    table.rows.push_back({w, w, plan.tam_utilized, plan.scan_in,
                          plan.scan_out, plan.longest_chain(),
                          plan.test_time});
  }
  std::reverse(table.rows.begin(), table.rows.end());
  return table;
}

}  // namespace tamco
