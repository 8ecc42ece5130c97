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

// tamco: wrapper tables, TAM schedules, validation and oracle gaps for SOC
// test descriptions.
//
// Exit codes: 0 ok, 1 validation failure, 2 parse/input error, 3 unknown
// core selector, 4 instance too large for the exact oracle.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tamco/oracle.h"
#include "tamco/report.h"
#include "tamco/scheduler.h"
#include "tamco/soc_format.h"
#include "tamco/wrapper_design.h"

namespace {

using namespace tamco;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitParse = 2;
constexpr int kExitSelector = 3;
constexpr int kExitOracle = 4;

// Thrown to unwind to main with a specific exit code.
struct ExitError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitError{kExitParse, "cannot read '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ExitError{kExitParse, "cannot write '" + path + "'"};
  out << text;
}

SocSpec load_soc(const std::string& path, const std::string& bytes) {
  ParseResult result = parse_soc_auto(bytes);
  for (const ParseDiagnostic& d : result.diagnostics) {
    std::cerr << format_diagnostic(d, path) << '\n';
  }
  if (!result.ok()) throw ExitError{kExitParse, "could not parse '" + path + "'"};
  return *result.soc;
}

struct CommonFlags {
  std::string fit = "best";
  std::string io_padding = "spill";
  std::string total_io = "longer-side";
  double epsilon = 1e-9;
  bool no_timestamp = false;
  std::string output;

  SchedulerOptions options() const {
    SchedulerOptions o;
    o.wrapper.fit = fit == "first" ? FitRule::kFirstFit : FitRule::kBestFit;
    o.wrapper.io_padding = io_padding == "existing"
                               ? IoPadding::kExistingChainsOnly
                               : IoPadding::kSpillToNewChain;
    o.wrapper.total_io = total_io == "all-cells" ? TotalIoPolicy::kAllCells
                                                 : TotalIoPolicy::kLongerSide;
    o.epsilon = epsilon;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--fit", flags.fit, "Internal chain placement rule")
      ->check(CLI::IsMember({"best", "first"}))
      ->capture_default_str();
  cmd->add_option("--io-padding", flags.io_padding,
                  "Whether wrapper cells may open new chains")
      ->check(CLI::IsMember({"spill", "existing"}))
      ->capture_default_str();
  cmd->add_option("--total-io", flags.total_io,
                  "Wrapper cells counted in the per-chain target")
      ->check(CLI::IsMember({"longer-side", "all-cells"}))
      ->capture_default_str();
  cmd->add_option("--epsilon", flags.epsilon,
                  "Relative tolerance for floating diagonal ties")
      ->capture_default_str();
  cmd->add_flag("--no-timestamp", flags.no_timestamp,
                "Leave the timestamp out of the manifest");
  cmd->add_option("-o,--output", flags.output, "Output file (default stdout)");
}

const CoreSpec* select_core(const SocSpec& soc, const std::string& sel) {
  for (const CoreSpec& c : soc.cores) {
    if (c.name == sel) return &c;
  }
  for (const CoreSpec& c : soc.cores) {
    if (c.name == "m" + sel) return &c;
  }
  try {
    std::size_t used = 0;
    const int id = std::stoi(sel, &used);
    if (used == sel.size()) return soc.find(id);
  } catch (const std::exception&) {
  }
  return nullptr;
}

std::vector<Width> parse_widths(const std::string& list) {
  std::vector<Width> widths;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int w = 0;
    try {
      w = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty() || w < 1) {
      throw ExitError{kExitParse, "bad width '" + item + "'"};
    }
    widths.push_back(w);
  }
  if (widths.empty()) throw ExitError{kExitParse, "no widths given"};
  return widths;
}

// Wrapper options recorded in a schedule's manifest, if any.
WrapperOptions options_from_manifest(const std::string& manifest_json,
                                     WrapperOptions fallback) {
  if (manifest_json.empty()) return fallback;
  const auto m = nlohmann::json::parse(manifest_json, nullptr, false);
  if (m.is_discarded() || !m.contains("config")) return fallback;
  const auto& c = m["config"];
  WrapperOptions o = fallback;
  if (c.value("fit", "") == to_string(FitRule::kFirstFit)) o.fit = FitRule::kFirstFit;
  if (c.value("fit", "") == to_string(FitRule::kBestFit)) o.fit = FitRule::kBestFit;
  if (c.value("io_padding", "") == to_string(IoPadding::kExistingChainsOnly)) {
    o.io_padding = IoPadding::kExistingChainsOnly;
  }
  if (c.value("io_padding", "") == to_string(IoPadding::kSpillToNewChain)) {
    o.io_padding = IoPadding::kSpillToNewChain;
  }
  if (c.value("total_io", "") == to_string(TotalIoPolicy::kAllCells)) {
    o.total_io = TotalIoPolicy::kAllCells;
  }
  if (c.value("total_io", "") == to_string(TotalIoPolicy::kLongerSide)) {
    o.total_io = TotalIoPolicy::kLongerSide;
  }
  return o;
}

std::string manifest_digest(const std::string& manifest_json) {
  const auto m = nlohmann::json::parse(manifest_json, nullptr, false);
  if (m.is_discarded()) return {};
  return m.value("input_sha256", "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SOC test wrapper design and TAM scheduling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // wrapper-table
  CommonFlags wt_flags;
  std::string wt_file, wt_core;
  Width wt_max = 64;
  bool wt_json = false;
  auto* wt = app.add_subcommand("wrapper-table",
                                "Wrapper design bands for one core");
  wt->add_option("soc", wt_file, "SOC file (canonical or ITC'02)")->required();
  wt->add_option("--core", wt_core, "Core name, mN suffix or numeric id")
      ->required();
  wt->add_option("--max-width", wt_max, "Widest TAM to try")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  wt->add_flag("--json", wt_json, "Machine-readable output");
  add_common(wt, wt_flags);

  // schedule
  CommonFlags sc_flags;
  std::string sc_file, sc_format = "text";
  Width sc_width = 0;
  auto* sc = app.add_subcommand("schedule", "Schedule all core tests");
  sc->add_option("soc", sc_file, "SOC file")->required();
  sc->add_option("--width", sc_width, "TAM width")
      ->required()
      ->check(CLI::PositiveNumber);
  sc->add_option("--format", sc_format, "Output format")
      ->check(CLI::IsMember({"text", "json", "svg"}))
      ->capture_default_str();
  add_common(sc, sc_flags);

  // sweep
  CommonFlags sw_flags;
  std::string sw_file, sw_widths;
  auto* sw = app.add_subcommand("sweep", "Makespan for several TAM widths");
  sw->add_option("soc", sw_file, "SOC file")->required();
  sw->add_option("--widths", sw_widths, "Comma-separated TAM widths")
      ->required();
  add_common(sw, sw_flags);

  // validate
  CommonFlags va_flags;
  std::string va_schedule, va_soc;
  Width va_width = 0;
  auto* va = app.add_subcommand("validate", "Check a schedule JSON file");
  va->add_option("schedule", va_schedule, "Schedule JSON")->required();
  va->add_option("soc", va_soc, "SOC file the schedule was built from")
      ->required();
  va->add_option("--width", va_width, "TAM width (overrides the document)")
      ->check(CLI::PositiveNumber);
  add_common(va, va_flags);

  // gap
  CommonFlags gp_flags;
  std::string gp_file;
  bool gp_random = false;
  int gp_trials = 1;
  std::uint64_t gp_seed = 1;
  Width gp_width = 8;
  std::size_t gp_max_cores = OracleLimits{}.max_cores;
  std::uint64_t gp_max_choices = OracleLimits{}.max_choices;
  auto* gp = app.add_subcommand("gap", "Heuristic makespan versus optimum");
  gp->add_option("soc", gp_file, "SOC file (omit with --random)");
  gp->add_flag("--random", gp_random, "Use seeded random SOCs");
  gp->add_option("--trials", gp_trials, "Random SOCs to try")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gp->add_option("--seed", gp_seed, "First seed; trial i uses seed + i")
      ->capture_default_str();
  gp->add_option("--width", gp_width, "TAM width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gp->add_option("--max-cores", gp_max_cores, "Oracle core limit")
      ->capture_default_str();
  gp->add_option("--max-choices", gp_max_choices,
                 "Oracle limit on the product of rectangle-set sizes")
      ->capture_default_str();
  add_common(gp, gp_flags);

  // convert
  CommonFlags cv_flags;
  std::string cv_file;
  auto* cv = app.add_subcommand("convert", "Rewrite a SOC file as canonical text");
  cv->add_option("soc", cv_file, "SOC file")->required();
  cv->add_option("-o,--output", cv_flags.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*wt) {
      const std::string bytes = read_file(wt_file);
      const SocSpec soc = load_soc(wt_file, bytes);
      const CoreSpec* core = select_core(soc, wt_core);
      if (core == nullptr) {
        throw ExitError{kExitSelector, "no core matches '" + wt_core + "'"};
      }
      const SchedulerOptions opts = wt_flags.options();
      const RunManifest manifest =
          make_manifest(bytes, opts, !wt_flags.no_timestamp);
      const WrapperBandTable table = wrapper_table(*core, wt_max, opts.wrapper);
      write_output(wt_flags.output,
                   wt_json ? band_table_to_json(table, *core, wt_max, manifest)
                           : band_table_to_text(table, *core, manifest));
      return kExitOk;
    }

    if (*sc) {
      const std::string bytes = read_file(sc_file);
      const SocSpec soc = load_soc(sc_file, bytes);
      const SchedulerOptions opts = sc_flags.options();
      const RunManifest manifest =
          make_manifest(bytes, opts, !sc_flags.no_timestamp);
      const TestSchedule schedule = schedule_tests(soc, sc_width, opts);
      std::string text;
      if (sc_format == "json") {
        text = schedule_to_json(schedule, manifest);
      } else if (sc_format == "svg") {
        text = schedule_to_svg(schedule, manifest);
      } else {
        text = schedule_to_text(schedule, manifest);
      }
      write_output(sc_flags.output, text);
      return kExitOk;
    }

    if (*sw) {
      const std::string bytes = read_file(sw_file);
      const SocSpec soc = load_soc(sw_file, bytes);
      const std::vector<Width> widths = parse_widths(sw_widths);
      const SchedulerOptions opts = sw_flags.options();
      std::vector<SweepRow> rows;
      for (Width w : widths) {
        rows.push_back({w, schedule_tests(soc, w, opts).makespan});
      }
      write_output(sw_flags.output,
                   sweep_to_csv(rows, make_manifest(bytes, opts,
                                                    !sw_flags.no_timestamp)));
      return kExitOk;
    }

    if (*va) {
      const std::string soc_bytes = read_file(va_soc);
      const SocSpec soc = load_soc(va_soc, soc_bytes);
      ScheduleDocument doc;
      try {
        doc = schedule_from_json(read_file(va_schedule));
      } catch (const std::runtime_error& e) {
        throw ExitError{kExitParse, va_schedule + ": " + e.what()};
      }
      Width width = doc.schedule.w_max;
      if (va_width > 0 && va_width != width) {
        std::cerr << "warning: --width " << va_width
                  << " differs from the schedule's w_max " << width
                  << "; validating with " << va_width << '\n';
        width = va_width;
      }
      if (width < 1) throw ExitError{kExitParse, "schedule has no usable w_max"};
      const std::string digest = manifest_digest(doc.manifest_json);
      if (!digest.empty() && digest != sha256_hex(soc_bytes)) {
        std::cerr << "warning: " << va_soc
                  << " does not match the schedule's input digest\n";
      }
      const WrapperOptions wopts = options_from_manifest(
          doc.manifest_json, va_flags.options().wrapper);
      doc.schedule.w_max = width;
      const auto sets = build_rectangle_sets(soc, width, wopts);
      const ValidationReport report = validate(doc.schedule, sets, width);
      write_output(va_flags.output, validation_to_text(report));
      return report.ok ? kExitOk : kExitInvalid;
    }

    if (*gp) {
      if (gp_random == !gp_file.empty()) {
        throw ExitError{kExitParse, "give either a SOC file or --random"};
      }
      const SchedulerOptions opts = gp_flags.options();
      OracleLimits limits;
      limits.max_cores = gp_max_cores;
      limits.max_choices = gp_max_choices;
      std::vector<GapRow> rows;
      std::string input_bytes;
      if (gp_random) {
        input_bytes = "random seed=" + std::to_string(gp_seed) +
                      " trials=" + std::to_string(gp_trials);
        for (int i = 0; i < gp_trials; ++i) {
          const std::uint64_t seed = gp_seed + static_cast<std::uint64_t>(i);
          const SocSpec soc = random_soc(seed);
          rows.push_back({seed, soc.cores.size(), gp_width,
                          gap_report(soc, gp_width, opts, limits)});
        }
      } else {
        input_bytes = read_file(gp_file);
        const SocSpec soc = load_soc(gp_file, input_bytes);
        rows.push_back({0, soc.cores.size(), gp_width,
                        gap_report(soc, gp_width, opts, limits)});
      }
      write_output(gp_flags.output,
                   gap_to_csv(rows, make_manifest(input_bytes, opts,
                                                  !gp_flags.no_timestamp)));
      return kExitOk;
    }

    if (*cv) {
      const std::string bytes = read_file(cv_file);
      write_output(cv_flags.output, emit_canonical(load_soc(cv_file, bytes)));
      return kExitOk;
    }
  } catch (const ExitError& e) {
    std::cerr << "tamco: " << e.message << '\n';
    return e.code;
  } catch (const InstanceTooLarge& e) {
    std::cerr << "tamco: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tamco: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::logic_error& e) {
    // A schedule that failed its own validation.
    std::cerr << "tamco: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "tamco: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitOk;
}
