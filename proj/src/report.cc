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

#include "tamco/report.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tamco {
namespace {

using Json = nlohmann::ordered_json;

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

Json manifest_object(const RunManifest& m) {
  Json config;
  config["fit"] = to_string(m.wrapper.fit);
  config["io_padding"] = to_string(m.wrapper.io_padding);
  config["total_io"] = to_string(m.wrapper.total_io);
  config["bidir_policy"] = "one-cell-per-side";
  config["pattern_merge"] = "sum";
  config["epsilon"] = m.epsilon;
  Json out;
  out["tool"] = m.tool;
  out["version"] = m.version;
  out["input_sha256"] = m.input_sha256;
  out["config"] = std::move(config);
  if (!m.timestamp.empty()) out["timestamp"] = m.timestamp;
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* palette(std::size_t i) {
  static const char* kColors[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                  "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
                                  "#9c755f", "#bab0ac"};
  return kColors[i % std::size(kColors)];
}

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw std::runtime_error(std::string("missing key '") + key + "'");
  }
  return j.at(key).get<T>();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << int{digest[i]};
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest make_manifest(std::string_view input_bytes,
                          const SchedulerOptions& options,
                          bool with_timestamp) {
  RunManifest m;
  m.input_sha256 = sha256_hex(input_bytes);
  m.wrapper = options.wrapper;
  m.epsilon = options.epsilon;
  if (with_timestamp) m.timestamp = utc_timestamp();
  return m;
}

std::string manifest_to_json(const RunManifest& manifest) {
  return manifest_object(manifest).dump();
}

std::string manifest_comment(const RunManifest& manifest) {
  return "# manifest: " + manifest_to_json(manifest) + "\n";
}

std::string schedule_to_json(const TestSchedule& schedule,
                             const RunManifest& manifest) {
  Json doc;
  doc["soc"] = schedule.soc_name;
  doc["w_max"] = schedule.w_max;
  doc["t_min"] = schedule.t_min;
  doc["makespan"] = schedule.makespan;
  Json assignments = Json::array();
  for (const CoreSlot& s : schedule.cores) {
    Json a;
    a["core"] = s.core_id;
    a["name"] = s.name;
    a["width"] = s.width;
    a["start"] = s.start;
    a["finish"] = s.finish;
    assignments.push_back(std::move(a));
  }
  doc["assignments"] = std::move(assignments);
  doc["manifest"] = manifest_object(manifest);
  return doc.dump(2) + "\n";
}

ScheduleDocument schedule_from_json(std::string_view text) {
  const Json doc = parse_json(text);
  ScheduleDocument out;
  try {
    TestSchedule& s = out.schedule;
    s.soc_name = require<std::string>(doc, "soc");
    s.w_max = require<Width>(doc, "w_max");
    s.t_min = require<Cycles>(doc, "t_min");
    s.makespan = require<Cycles>(doc, "makespan");
    for (const Json& a : require<Json>(doc, "assignments")) {
      CoreSlot slot;
      slot.core_id = require<int>(a, "core");
      slot.name = require<std::string>(a, "name");
      slot.width = require<Width>(a, "width");
      slot.start = require<Cycles>(a, "start");
      slot.finish = require<Cycles>(a, "finish");
      slot.scheduled = true;
      slot.complete = true;
      s.cores.push_back(slot);
    }
    s.available = s.w_max;
    s.now = s.makespan;
    if (doc.contains("manifest")) out.manifest_json = doc.at("manifest").dump();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad schedule document: ") + e.what());
  }
  return out;
}

std::string schedule_to_text(const TestSchedule& schedule,
                             const RunManifest& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest);
  out << "soc " << schedule.soc_name << "  TAM width " << schedule.w_max
      << "\n\n";
  out << std::left << std::setw(6) << "core" << std::setw(12) << "name"
      << std::right << std::setw(7) << "width" << std::setw(12) << "start"
      << std::setw(12) << "finish" << '\n';
  for (const CoreSlot& s : schedule.cores) {
    out << std::left << std::setw(6) << s.core_id << std::setw(12) << s.name
        << std::right << std::setw(7) << s.width << std::setw(12) << s.start
        << std::setw(12) << s.finish << '\n';
  }
  out << "\nmakespan     " << schedule.makespan << '\n';
  out << "t_min        " << schedule.t_min << '\n';
  out << "utilization  " << fixed(schedule.utilization(), 4) << '\n';
  return out.str();
}

std::string schedule_to_svg(const TestSchedule& schedule,
                            const RunManifest& manifest,
                            const SvgLayout& layout) {
  const double margin_left = 70.0;
  const double margin_top = 30.0;
  const double x_scale =
      schedule.makespan > 0
          ? layout.plot_width / static_cast<double>(schedule.makespan)
          : 0.0;
  const double y_scale = layout.wire_height;
  const double plot_height = y_scale * schedule.w_max;
  const double total_w = margin_left + layout.plot_width + 20.0;
  const double total_h = margin_top + plot_height + 40.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fixed(total_w, 0) << "\" height=\"" << fixed(total_h, 0) << "\">\n";
  out << "<!-- " << xml_escape(manifest_to_json(manifest)) << " -->\n";
  out << "<title>" << xml_escape(schedule.soc_name) << " test schedule, TAM width "
      << schedule.w_max << ", makespan " << schedule.makespan << "</title>\n";
  out << "<g id=\"bin\" transform=\"translate(" << fixed(margin_left, 0) << ","
      << fixed(margin_top, 0) << ")\" data-x-scale=\"" << fixed(x_scale, 9)
      << "\" data-y-scale=\"" << fixed(y_scale, 3) << "\">\n";
  out << "<rect class=\"bin\" x=\"0\" y=\"0\" width=\""
      << fixed(layout.plot_width, 3) << "\" height=\"" << fixed(plot_height, 3)
      << "\" fill=\"#f4f4f4\" stroke=\"#333333\"/>\n";

  // Hand out wires lowest index first, in start order.
  std::vector<std::size_t> order(schedule.cores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return schedule.cores[a].start < schedule.cores[b].start;
  });
  std::vector<Cycles> free_at(static_cast<std::size_t>(schedule.w_max), 0);
  for (std::size_t idx : order) {
    const CoreSlot& s = schedule.cores[idx];
    if (!s.scheduled || s.width <= 0) continue;
    std::vector<std::size_t> wires;
    for (std::size_t k = 0; k < free_at.size() && wires.size() < std::size_t(s.width); ++k) {
      if (free_at[k] <= s.start) wires.push_back(k);
    }
    // An infeasible schedule is still drawn, on the earliest-free wires.
    for (std::size_t k = 0; wires.size() < std::size_t(s.width) && k < free_at.size(); ++k) {
      if (std::find(wires.begin(), wires.end(), k) == wires.end()) wires.push_back(k);
    }
    std::sort(wires.begin(), wires.end());
    for (std::size_t k : wires) free_at[k] = s.finish;

    for (std::size_t i = 0; i < wires.size();) {
      std::size_t j = i;
      while (j + 1 < wires.size() && wires[j + 1] == wires[j] + 1) ++j;
      const double x = x_scale * static_cast<double>(s.start);
      const double w = x_scale * static_cast<double>(s.finish - s.start);
      const double y = y_scale * static_cast<double>(wires[i]);
      const double h = y_scale * static_cast<double>(j - i + 1);
      out << "<rect class=\"test\" data-core=\"" << s.core_id << "\" x=\""
          << fixed(x, 6) << "\" y=\"" << fixed(y, 6) << "\" width=\""
          << fixed(w, 6) << "\" height=\"" << fixed(h, 6) << "\" fill=\""
          << palette(idx) << "\" stroke=\"#222222\"><title>"
          << xml_escape(s.name) << ": " << s.width << " wires, " << s.start
          << "-" << s.finish << "</title></rect>\n";
      if (i == 0) {
        out << "<text x=\"" << fixed(x + 2.0, 3) << "\" y=\""
            << fixed(y + std::min(h, y_scale) - 4.0, 3)
            << "\" font-size=\"10\" font-family=\"sans-serif\">"
            << xml_escape(s.name) << "</text>\n";
      }
      i = j + 1;
    }
  }
  out << "</g>\n";
  out << "<text x=\"" << fixed(margin_left, 0) << "\" y=\""
      << fixed(margin_top + plot_height + 25.0, 0)
      << "\" font-size=\"12\" font-family=\"sans-serif\">time (cycles): 0 to "
      << schedule.makespan << "</text>\n";
  out << "<text x=\"5\" y=\"" << fixed(margin_top + 12.0, 0)
      << "\" font-size=\"12\" font-family=\"sans-serif\">"
      << schedule.w_max << " wires</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string band_table_to_text(const WrapperBandTable& table,
                               const CoreSpec& core,
                               const RunManifest& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest);
  out << "core " << core.id << " (" << core.name << ")\n\n";
  out << std::left << std::setw(10) << "TAM size" << std::right
      << std::setw(14) << "TAM utilized" << std::setw(20)
      << "longest scan chain" << std::setw(14) << "test time" << '\n';
  for (const WrapperBand& row : table.rows) {
    std::string range = std::to_string(row.width_lo);
    if (row.width_hi != row.width_lo) {
      range += "-" + std::to_string(row.width_hi);
    }
    out << std::left << std::setw(10) << range << std::right << std::setw(14)
        << row.tam_utilized << std::setw(20) << row.longest_chain
        << std::setw(14) << row.test_time.cycles << '\n';
  }
  return out.str();
}

std::string band_table_to_json(const WrapperBandTable& table,
                               const CoreSpec& core, Width max_width,
                               const RunManifest& manifest) {
  Json doc;
  doc["core"] = core.id;
  doc["name"] = core.name;
  doc["max_width"] = max_width;
  Json rows = Json::array();
  for (const WrapperBand& row : table.rows) {
    Json r;
    r["width_lo"] = row.width_lo;
    r["width_hi"] = row.width_hi;
    r["tam_utilized"] = row.tam_utilized;
    r["scan_in"] = row.scan_in;
    r["scan_out"] = row.scan_out;
    r["longest_chain"] = row.longest_chain;
    r["test_time"] = row.test_time.cycles;
    rows.push_back(std::move(r));
  }
  doc["bands"] = std::move(rows);
  doc["manifest"] = manifest_object(manifest);
  return doc.dump(2) + "\n";
}

WrapperBandTable band_table_from_json(std::string_view text) {
  const Json doc = parse_json(text);
  WrapperBandTable table;
  try {
    table.core_id = require<int>(doc, "core");
    for (const Json& r : require<Json>(doc, "bands")) {
      WrapperBand band;
      band.width_lo = require<Width>(r, "width_lo");
      band.width_hi = require<Width>(r, "width_hi");
      band.tam_utilized = require<Width>(r, "tam_utilized");
      band.scan_in = require<std::int64_t>(r, "scan_in");
      band.scan_out = require<std::int64_t>(r, "scan_out");
      band.longest_chain = require<std::int64_t>(r, "longest_chain");
      band.test_time.cycles = require<Cycles>(r, "test_time");
      table.rows.push_back(band);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad band table: ") + e.what());
  }
  return table;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const RunManifest& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest) << "width,makespan\n";
  for (const SweepRow& row : rows) out << row.width << ',' << row.makespan << '\n';
  return out.str();
}

std::string gap_to_csv(const std::vector<GapRow>& rows,
                       const RunManifest& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest) << "seed,cores,w_max,heuristic,oracle,ratio\n";
  for (const GapRow& row : rows) {
    out << row.seed << ',' << row.cores << ',' << row.w_max << ','
        << row.gap.heuristic << ',' << row.gap.oracle << ','
        << fixed(row.gap.ratio, 6) << '\n';
  }
  return out.str();
}

std::string validation_to_text(const ValidationReport& report) {
  std::ostringstream out;
  out << (report.ok ? "ok" : "INVALID") << "  makespan " << report.makespan
      << "  utilization " << fixed(report.utilization, 4) << '\n';
  for (const Violation& v : report.violations) {
    out << "  " << to_string(v.kind);
    if (v.core_id != 0) out << " core " << v.core_id;
    out << ": " << v.detail << '\n';
  }
  return out.str();
}

}  // namespace tamco
