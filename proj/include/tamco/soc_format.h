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

// Readers and the writer for SOC descriptions.
//
// The canonical format is line oriented, whitespace separated and case
// sensitive; `#` starts a comment that runs to end of line:
//
//   soc NAME
//   core NAME inputs INT outputs INT bidirs INT patterns INT scan INT*
//   ...
//
// The ITC'02 reader understands the module/test blocks of the benchmark
// files and keeps only pin counts, summed pattern counts and scan chains.

#ifndef TAMCO_SOC_FORMAT_H_
#define TAMCO_SOC_FORMAT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tamco/core_model.h"

namespace tamco {

enum class Severity { kError, kWarning };

struct ParseDiagnostic {
  int line = 0;  // 1-based; 0 for whole-file problems
  Severity severity = Severity::kError;
  std::string message;
};

struct ParseResult {
  std::optional<SocSpec> soc;  // empty whenever an error was reported
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return soc.has_value(); }
  bool has_errors() const;
};

// "file:line: error: message".
std::string format_diagnostic(const ParseDiagnostic& d,
                              std::string_view file = {});

ParseResult parse_canonical(std::string_view text);

ParseResult parse_itc02(std::string_view text);

// Canonical text if the first token is `soc` or `core`, ITC'02 otherwise.
ParseResult parse_soc_auto(std::string_view text);

// Inverse of parse_canonical. Throws std::invalid_argument when a name is
// not a single token or the SOC breaks an invariant.
std::string emit_canonical(const SocSpec& soc);

}  // namespace tamco

#endif  // TAMCO_SOC_FORMAT_H_
