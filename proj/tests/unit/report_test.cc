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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <regex>
#include <string>

#include "json.hpp"
#include "tamco/report.h"
#include "test_util.h"

namespace tamco {
namespace {

RunManifest fixed_manifest() {
  return make_manifest("soc x\n", SchedulerOptions{}, false);
}

double attr(const std::string& tag, const std::string& name) {
  const std::regex re(name + "=\"([-0-9.e]+)\"");
  std::smatch m;
  REQUIRE(std::regex_search(tag, m, re));
  return std::stod(m[1]);
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("manifest carries the resolved configuration") {
  SchedulerOptions opts;
  opts.wrapper.fit = FitRule::kFirstFit;
  opts.epsilon = 1e-6;
  const auto j = nlohmann::json::parse(
      manifest_to_json(make_manifest("abc", opts, false)));
  CHECK(j["tool"] == "tamco");
  CHECK(j["version"] == kToolVersion);
  CHECK(j["input_sha256"] == sha256_hex("abc"));
  CHECK(j["config"]["fit"] == "first-fit");
  CHECK(j["config"]["io_padding"] == "spill-to-new-chain");
  CHECK(j["config"]["total_io"] == "longer-side");
  CHECK(j["config"]["pattern_merge"] == "sum");
  CHECK(j["config"]["epsilon"] == 1e-6);
  CHECK_FALSE(j.contains("timestamp"));

  const auto stamped = nlohmann::json::parse(
      manifest_to_json(make_manifest("abc", opts, true)));
  REQUIRE(stamped.contains("timestamp"));
  CHECK(std::regex_match(stamped["timestamp"].get<std::string>(),
                         std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
}

TEST_CASE("schedule JSON keys and round trip") {
  const TestSchedule s = schedule_tests(testing::d695(), 32);
  const std::string text = schedule_to_json(s, fixed_manifest());
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"soc", "w_max", "t_min", "makespan",
                                         "assignments", "manifest"});
  std::vector<std::string> akeys;
  for (auto it = j["assignments"][0].begin(); it != j["assignments"][0].end(); ++it) {
    akeys.push_back(it.key());
  }
  CHECK(akeys ==
        std::vector<std::string>{"core", "name", "width", "start", "finish"});

  const ScheduleDocument doc = schedule_from_json(text);
  CHECK(doc.schedule.soc_name == "d695");
  CHECK(doc.schedule.w_max == 32);
  CHECK(doc.schedule.makespan == s.makespan);
  CHECK(doc.schedule.t_min == s.t_min);
  REQUIRE(doc.schedule.cores.size() == s.cores.size());
  for (std::size_t i = 0; i < s.cores.size(); ++i) {
    CHECK(doc.schedule.cores[i].core_id == s.cores[i].core_id);
    CHECK(doc.schedule.cores[i].name == s.cores[i].name);
    CHECK(doc.schedule.cores[i].width == s.cores[i].width);
    CHECK(doc.schedule.cores[i].start == s.cores[i].start);
    CHECK(doc.schedule.cores[i].finish == s.cores[i].finish);
  }
  CHECK(nlohmann::json::parse(doc.manifest_json)["tool"] == "tamco");
  CHECK(schedule_to_json(doc.schedule, fixed_manifest()) == text);
}

TEST_CASE("malformed schedule JSON") {
  CHECK_THROWS_AS(schedule_from_json("{"), std::runtime_error);
  CHECK_THROWS_AS(schedule_from_json("{\"soc\": \"x\"}"), std::runtime_error);
  CHECK_THROWS_AS(schedule_from_json(
                      R"({"soc":"x","w_max":"wide","t_min":1,"makespan":1,"assignments":[]})"),
                  std::runtime_error);
}

TEST_CASE("text rendering lists every core") {
  const TestSchedule s = schedule_tests(testing::d695(), 24);
  const std::string text = schedule_to_text(s, fixed_manifest());
  CHECK(text.rfind("# manifest: {", 0) == 0);
  for (const CoreSlot& c : s.cores) CHECK(text.find(c.name) != std::string::npos);
  CHECK(text.find("makespan     " + std::to_string(s.makespan)) != std::string::npos);
  CHECK(text.find("t_min        " + std::to_string(s.t_min)) != std::string::npos);
  CHECK(text.find("utilization") != std::string::npos);
}

TEST_CASE("SVG rectangles match the schedule") {
  for (Width w : {16, 24, 40, 64}) {
    const TestSchedule s = schedule_tests(testing::d695(), w);
    const SvgLayout layout;
    const std::string svg = schedule_to_svg(s, fixed_manifest(), layout);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);

    const std::regex group_re("<g id=\"bin\"[^>]*>");
    std::smatch g;
    REQUIRE(std::regex_search(svg, g, group_re));
    const double xs = attr(g.str(), "data-x-scale");
    const double ys = attr(g.str(), "data-y-scale");
    CHECK(xs == doctest::Approx(layout.plot_width / double(s.makespan)));
    CHECK(ys == layout.wire_height);

    std::map<int, double> height_sum;
    std::map<int, int> wire_rows;
    const std::regex rect_re("<rect class=\"test\"[^>]*>");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), rect_re);
         it != std::sregex_iterator(); ++it) {
      const std::string tag = it->str();
      const int core = int(attr(tag, "data-core"));
      const CoreSlot& slot = *s.slot(core);
      CHECK(attr(tag, "x") == doctest::Approx(slot.start * xs).epsilon(1e-6));
      CHECK(attr(tag, "width") ==
            doctest::Approx((slot.finish - slot.start) * xs).epsilon(1e-6));
      const double y = attr(tag, "y");
      const double h = attr(tag, "height");
      CHECK(y >= 0);
      CHECK(y + h <= ys * w + 1e-6);
      height_sum[core] += h;
    }
    for (const CoreSlot& c : s.cores) {
      CHECK(height_sum[c.core_id] == doctest::Approx(c.width * ys));
    }
  }
}

TEST_CASE("band table JSON round trip") {
  const CoreSpec core = testing::p93791_core6();
  for (Width w : {1, 7, 64}) {
    const WrapperBandTable table = wrapper_table(core, w);
    const std::string text = band_table_to_json(table, core, w, fixed_manifest());
    CHECK(band_table_from_json(text) == table);
  }
  CHECK_THROWS_AS(band_table_from_json("[]"), std::runtime_error);
}

TEST_CASE("band table text") {
  const CoreSpec core = testing::p93791_core6();
  const std::string text =
      band_table_to_text(wrapper_table(core, 64), core, fixed_manifest());
  CHECK(text.find("TAM size") != std::string::npos);
  CHECK(text.find("\n32-47 ") != std::string::npos);
  CHECK(text.find("\n1 ") != std::string::npos);
}

TEST_CASE("CSV artifacts") {
  const std::string sweep =
      sweep_to_csv({{16, 100}, {24, 80}}, fixed_manifest());
  CHECK(sweep.substr(sweep.find('\n') + 1) == "width,makespan\n16,100\n24,80\n");
  const std::string gap =
      gap_to_csv({{7, 3, 8, {120, 100, 1.2}}}, fixed_manifest());
  CHECK(gap.substr(gap.find('\n') + 1) ==
        "seed,cores,w_max,heuristic,oracle,ratio\n7,3,8,120,100,1.200000\n");
}

TEST_CASE("validation text") {
  ValidationReport r;
  r.ok = false;
  r.makespan = 10;
  r.violations.push_back({ViolationKind::kCapacity, 0, "9 wires busy at t=0"});
  r.violations.push_back({ViolationKind::kBadWidth, 3, "width 5"});
  const std::string text = validation_to_text(r);
  CHECK(text.rfind("INVALID", 0) == 0);
  CHECK(text.find("capacity: 9 wires") != std::string::npos);
  CHECK(text.find("bad-width core 3: width 5") != std::string::npos);
}

TEST_CASE("renderings are byte-identical across runs") {
  const SocSpec soc = testing::d695();
  const RunManifest m = fixed_manifest();
  CHECK(schedule_to_svg(schedule_tests(soc, 40), m) ==
        schedule_to_svg(schedule_tests(soc, 40), m));
  CHECK(schedule_to_json(schedule_tests(soc, 40), m) ==
        schedule_to_json(schedule_tests(soc, 40), m));
}

}  // namespace
}  // namespace tamco
