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

#include "tamco/soc_format.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tamco {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits into lines (LF or CRLF), drops `#` comments when `comments` is set,
// tokenizes on blanks and skips lines without tokens.
std::vector<Line> tokenize(std::string_view text, bool comments) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (comments) {
      if (auto hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
    }
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      if (i > start) line.tokens.push_back(raw.substr(start, i - start));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::optional<std::int64_t> to_int(std::string_view token) {
  std::int64_t value = 0;
  if (token.empty() || token.front() == '-' || token.front() == '+') {
    return std::nullopt;
  }
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                   value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

bool fits_int(std::int64_t v) { return v <= std::numeric_limits<int>::max(); }

class Diagnostics {
 public:
  void error(int line, std::string message) {
    items_.push_back({line, Severity::kError, std::move(message)});
  }
  void warning(int line, std::string message) {
    items_.push_back({line, Severity::kWarning, std::move(message)});
  }
  bool any_error() const {
    return std::any_of(items_.begin(), items_.end(), [](const auto& d) {
      return d.severity == Severity::kError;
    });
  }
  std::vector<ParseDiagnostic> take() { return std::move(items_); }

 private:
  std::vector<ParseDiagnostic> items_;
};

ParseResult finish(SocSpec soc, Diagnostics& diag) {
  ParseResult result;
  result.diagnostics = diag.take();
  if (!result.has_errors()) result.soc = std::move(soc);
  return result;
}

// Parses one `core ...` line of the canonical grammar. Returns false after
// reporting the first problem on the line.
bool parse_core_line(const Line& line, CoreSpec& core, Diagnostics& diag) {
  const auto& tok = line.tokens;
  std::size_t i = 1;
  if (i >= tok.size()) {
    diag.error(line.number, "missing core name");
    return false;
  }
  core.name = std::string(tok[i++]);

  auto keyword_int = [&](std::string_view key,
                         std::int64_t& out) -> bool {
    if (i >= tok.size() || tok[i] != key) {
      std::string found =
          i < tok.size() ? "found '" + std::string(tok[i]) + "'" : "end of line";
      diag.error(line.number,
                 "missing '" + std::string(key) + "' (" + found + ")");
      return false;
    }
    ++i;
    if (i >= tok.size()) {
      diag.error(line.number,
                 "expected integer after '" + std::string(key) + "'");
      return false;
    }
    auto value = to_int(tok[i]);
    if (!value) {
      diag.error(line.number, "expected non-negative integer after '" +
                                  std::string(key) + "', found '" +
                                  std::string(tok[i]) + "'");
      return false;
    }
    ++i;
    out = *value;
    return true;
  };

  std::int64_t inputs = 0, outputs = 0, bidirs = 0, patterns = 0;
  if (!keyword_int("inputs", inputs) || !keyword_int("outputs", outputs) ||
      !keyword_int("bidirs", bidirs) || !keyword_int("patterns", patterns)) {
    return false;
  }
  if (!fits_int(inputs) || !fits_int(outputs) || !fits_int(bidirs)) {
    diag.error(line.number, "pin count out of range");
    return false;
  }
  if (patterns < 1) {
    diag.error(line.number, "patterns must be >= 1");
    return false;
  }
  if (i >= tok.size() || tok[i] != "scan") {
    diag.error(line.number, "missing 'scan'");
    return false;
  }
  ++i;
  core.num_inputs = static_cast<int>(inputs);
  core.num_outputs = static_cast<int>(outputs);
  core.num_bidirs = static_cast<int>(bidirs);
  core.num_patterns = patterns;
  for (; i < tok.size(); ++i) {
    auto len = to_int(tok[i]);
    if (!len) {
      diag.error(line.number, "expected scan chain length, found '" +
                                  std::string(tok[i]) + "'");
      return false;
    }
    if (*len == 0) {
      diag.error(line.number, "scan chain length must be >= 1");
      return false;
    }
    core.scan_chain_lengths.push_back(*len);
  }
  return true;
}

bool is_token(const std::string& s) {
  return !s.empty() && std::none_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#';
  });
}

}  // namespace

bool ParseResult::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const ParseDiagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

std::string format_diagnostic(const ParseDiagnostic& d,
                              std::string_view file) {
  std::ostringstream out;
  if (!file.empty()) out << file << ':';
  out << d.line << ": "
      << (d.severity == Severity::kError ? "error" : "warning") << ": "
      << d.message;
  return out.str();
}

ParseResult parse_canonical(std::string_view text) {
  Diagnostics diag;
  SocSpec soc;
  bool have_header = false;
  std::set<std::string> names;

  for (const Line& line : tokenize(text, /*comments=*/true)) {
    std::string_view head = line.tokens.front();
    if (head == "soc") {
      if (have_header) {
        diag.error(line.number, "duplicate 'soc' header");
        continue;
      }
      if (!soc.cores.empty()) {
        diag.error(line.number, "'soc' header must precede core lines");
        continue;
      }
      if (line.tokens.size() != 2) {
        diag.error(line.number, "'soc' takes exactly one name");
        continue;
      }
      soc.name = std::string(line.tokens[1]);
      have_header = true;
    } else if (head == "core") {
      if (!have_header) {
        diag.error(line.number, "missing 'soc' header before first core");
        have_header = true;  // report once
      }
      CoreSpec core;
      if (!parse_core_line(line, core, diag)) continue;
      if (!names.insert(core.name).second) {
        diag.error(line.number, "duplicate core name '" + core.name + "'");
        continue;
      }
      core.id = static_cast<int>(soc.cores.size()) + 1;
      soc.cores.push_back(std::move(core));
    } else {
      diag.error(line.number,
                 "unknown directive '" + std::string(head) + "'");
    }
  }
  if (!have_header) diag.error(0, "missing 'soc' header");
  // A rejected core line already explains an empty SOC.
  if (soc.cores.empty() && !diag.any_error()) diag.error(0, "no core lines");
  return finish(std::move(soc), diag);
}

ParseResult parse_itc02(std::string_view text) {
  Diagnostics diag;
  SocSpec soc;

  struct Module {
    int number = 0;
    int line = 0;
    int level = 1;
    CoreSpec core;
    std::int64_t patterns = 0;
    int tests_seen = 0;
    std::size_t missing_chains = 0;  // lengths still expected on next lines
  };
  std::map<int, Module> modules;
  std::vector<int> order;
  Module* awaiting = nullptr;
  std::optional<std::int64_t> total_modules;

  auto lines = tokenize(text, /*comments=*/true);
  for (const Line& line : lines) {
    const auto& tok = line.tokens;

    // Scan chain lengths continued from the previous Module line.
    if (awaiting != nullptr && awaiting->missing_chains > 0) {
      bool all_ints = std::all_of(tok.begin(), tok.end(),
                                  [](auto t) { return to_int(t).has_value(); });
      if (all_ints) {
        for (auto t : tok) {
          if (awaiting->missing_chains == 0) {
            diag.error(line.number, "more scan chain lengths than declared");
            break;
          }
          auto len = *to_int(t);
          if (len == 0) diag.error(line.number, "scan chain length 0");
          awaiting->core.scan_chain_lengths.push_back(len);
          --awaiting->missing_chains;
        }
        continue;
      }
      diag.error(awaiting->line, "module " + std::to_string(awaiting->number) +
                                     " lists fewer scan chains than declared");
      awaiting->missing_chains = 0;
      awaiting = nullptr;
    }

    std::string_view head = tok.front();
    if (head == "SocName") {
      if (tok.size() >= 2) soc.name = std::string(tok[1]);
      continue;
    }
    if (head == "TotalModules") {
      if (tok.size() >= 2) total_modules = to_int(tok[1]);
      continue;
    }
    if (head != "Module") {
      diag.warning(line.number,
                   "ignored construct '" + std::string(head) + "'");
      continue;
    }
    if (tok.size() < 3 || !to_int(tok[1])) {
      diag.error(line.number, "malformed Module line");
      continue;
    }
    const int number = static_cast<int>(*to_int(tok[1]));
    auto [it, inserted] = modules.try_emplace(number);
    Module& mod = it->second;
    if (inserted) {
      mod.number = number;
      mod.line = line.number;
      order.push_back(number);
    }

    if (tok[2] == "Tests" || tok[2] == "Test") {
      bool any = false;
      for (std::size_t i = 3; i < tok.size(); ++i) {
        if (tok[i] == "Patterns" && i + 1 < tok.size()) {
          if (auto p = to_int(tok[i + 1])) {
            mod.patterns += *p;
            ++mod.tests_seen;
            any = true;
          } else {
            diag.error(line.number, "malformed Patterns value");
          }
          ++i;
        } else if ((tok[i] == "ScanUse" || tok[i] == "TamUse" ||
                    tok[i] == "Power") &&
                   i + 1 < tok.size()) {
          ++i;  // per-test flags do not affect CoreSpec
        }
      }
      if (!any && !(tok.size() >= 4 && tok[3] == "0")) {
        diag.warning(line.number, "test line without Patterns ignored");
      }
      continue;
    }

    // Module N [Level L] Inputs I Outputs O Bidirs B ScanChains S : l1..lS
    bool ok = true;
    std::int64_t chains = 0;
    std::size_t i = 2;
    while (i < tok.size() && tok[i] != ":") {
      std::string_view key = tok[i];
      if (i + 1 >= tok.size()) {
        ok = false;
        break;
      }
      auto value = to_int(tok[i + 1]);
      if (!value || !fits_int(*value)) {
        ok = false;
        break;
      }
      int v = static_cast<int>(*value);
      if (key == "Level") {
        mod.level = v;
      } else if (key == "Inputs") {
        mod.core.num_inputs = v;
      } else if (key == "Outputs") {
        mod.core.num_outputs = v;
      } else if (key == "Bidirs") {
        mod.core.num_bidirs = v;
      } else if (key == "ScanChains") {
        chains = v;
      } else {
        diag.warning(line.number, "ignored module field '" + std::string(key) +
                                      "'");
      }
      i += 2;
    }
    if (!ok) {
      diag.error(line.number, "malformed Module line");
      continue;
    }
    mod.core.scan_chain_lengths.clear();
    for (++i; i < tok.size(); ++i) {
      auto len = to_int(tok[i]);
      if (!len) {
        diag.error(line.number, "malformed scan chain length '" +
                                    std::string(tok[i]) + "'");
        break;
      }
      if (*len == 0) diag.error(line.number, "scan chain length 0");
      mod.core.scan_chain_lengths.push_back(*len);
    }
    const auto listed = static_cast<std::int64_t>(
        mod.core.scan_chain_lengths.size());
    if (listed > chains) {
      diag.error(line.number, "more scan chain lengths than declared");
    } else if (listed < chains) {
      mod.missing_chains = static_cast<std::size_t>(chains - listed);
      awaiting = &mod;
    }
  }
  if (awaiting != nullptr && awaiting->missing_chains > 0) {
    diag.error(awaiting->line, "module " + std::to_string(awaiting->number) +
                                   " lists fewer scan chains than declared");
  }

  for (int number : order) {
    Module& mod = modules[number];
    const std::string label = "module " + std::to_string(number);
    if (mod.level == 0) {
      diag.warning(mod.line, label + " is the top level; skipped");
      continue;
    }
    if (mod.level > 1) {
      diag.warning(mod.line, label + " hierarchy level " +
                                 std::to_string(mod.level) + " flattened");
    }
    if (mod.patterns == 0) {
      diag.warning(mod.line, label + " has no test patterns; skipped");
      continue;
    }
    if (mod.tests_seen > 1) {
      diag.warning(mod.line, label + ": " + std::to_string(mod.tests_seen) +
                                 " tests merged, pattern counts summed");
    }
    mod.core.name = "m" + std::to_string(number);
    mod.core.num_patterns = mod.patterns;
    mod.core.id = static_cast<int>(soc.cores.size()) + 1;
    soc.cores.push_back(mod.core);
  }
  if (total_modules && *total_modules != static_cast<std::int64_t>(order.size())) {
    diag.warning(0, "TotalModules says " + std::to_string(*total_modules) +
                        " but " + std::to_string(order.size()) +
                        " modules were found");
  }
  if (soc.cores.empty()) diag.error(0, "no parsable module block");
  if (soc.name.empty()) soc.name = "unnamed";
  return finish(std::move(soc), diag);
}

ParseResult parse_soc_auto(std::string_view text) {
  auto lines = tokenize(text, /*comments=*/true);
  if (!lines.empty() && (lines.front().tokens.front() == "soc" ||
                         lines.front().tokens.front() == "core")) {
    return parse_canonical(text);
  }
  return parse_itc02(text);
}

std::string emit_canonical(const SocSpec& soc) {
  check_soc(soc);
  if (!is_token(soc.name)) {
    throw std::invalid_argument("soc name is not a single token");
  }
  std::ostringstream out;
  out << "soc " << soc.name << '\n';
  for (const CoreSpec& core : soc.cores) {
    if (!is_token(core.name)) {
      throw std::invalid_argument("core name '" + core.name +
                                  "' is not a single token");
    }
    out << "core " << core.name << " inputs " << core.num_inputs
        << " outputs " << core.num_outputs << " bidirs " << core.num_bidirs
        << " patterns " << core.num_patterns << " scan";
    for (std::int64_t len : core.scan_chain_lengths) out << ' ' << len;
    out << '\n';
  }
  return out.str();
}

}  // namespace tamco
