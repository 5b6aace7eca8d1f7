// Copyright 2026 The GridSplit Authors.
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

#include <doctest.h>

#include <functional>
#include <random>

#include "gridsplit/error.hpp"
#include "gridsplit/model.hpp"
#include "test_support.hpp"

using namespace gridsplit;
using namespace gridsplit::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidField;
}

}  // namespace

TEST_CASE("validate_system accepts the three-bus path") {
  const ValidatedSystem vsys = validate_system(three_bus_path(), {0, 2});
  CHECK(vsys.island_count() == 2);
  CHECK(vsys.sys.generator_ids() == std::vector<int>{0, 2});
  CHECK(vsys.sys.load_ids() == std::vector<int>{1});
}

TEST_CASE("validate_system rejects a disconnected graph") {
  PowerSystem sys;
  sys.buses = {make_generator(0, 10.0), make_generator(1, 10.0), make_load(2, 5.0)};
  sys.lines = {make_line(0, 0, 1)};
  CHECK(code_of([&] { validate_system(sys, {0, 1}); }) == ErrorCode::DisconnectedGraph);
}

TEST_CASE("validate_system rejects duplicate references") {
  CHECK(code_of([&] { validate_system(three_bus_path(), {0, 0}); }) ==
        ErrorCode::BadReference);
}

TEST_CASE("validate_system rejects a non-generator reference") {
  CHECK(code_of([&] { validate_system(three_bus_path(), {0, 1}); }) ==
        ErrorCode::BadReference);
}

TEST_CASE("validate_system rejects duplicate lines and self-loops") {
  PowerSystem sys = three_bus_path();
  sys.lines.push_back(make_line(2, 0, 1));
  CHECK(code_of([&] { validate_system(sys, {0, 2}); }) == ErrorCode::DuplicateLine);

  PowerSystem loop = three_bus_path();
  loop.lines[1].from = loop.lines[1].to = 1;
  loop.lines[1].id = 1;
  CHECK(code_of([&] { validate_system(loop, {0, 2}); }) == ErrorCode::DuplicateLine);
}

TEST_CASE("validate_system requires one blackstart generator per island") {
  PowerSystem sys = three_bus_path();
  sys.buses[2].blackstart = false;
  CHECK(code_of([&] { validate_system(sys, {0, 2}); }) ==
        ErrorCode::InsufficientBlackstart);
}

TEST_CASE("validate_system rejects kind and field mismatches") {
  PowerSystem sys = three_bus_path();
  sys.buses[1].gen_capacity = 5.0;  // load bus with generator data
  CHECK(code_of([&] { validate_system(sys, {0, 2}); }) == ErrorCode::InvalidField);

  PowerSystem junction_sys = three_bus_path();
  junction_sys.buses[1] = make_junction(1);
  CHECK(validate_system(junction_sys, {0, 2}).island_count() == 2);  // junctions are fine
}

TEST_CASE("islands_of splits the path at the tripped line") {
  const PowerSystem sys = three_bus_path();
  const std::vector<int> retained{0};
  const std::vector<int> refs{0, 2};
  const std::vector<Island> islands = islands_of(sys, retained, refs);
  REQUIRE(islands.size() == 2);
  CHECK(islands[0].buses == std::vector<int>{0, 1});
  CHECK(islands[0].lines == std::vector<int>{0});
  CHECK(islands[0].index == 1);
  CHECK(islands[0].reference == 0);
  CHECK(islands[1].buses == std::vector<int>{2});
  CHECK(islands[1].lines.empty());
  CHECK(islands[1].index == 2);
}

TEST_CASE("islands_of with every line retained is the identity partition") {
  const PowerSystem sys = three_bus_path();
  const std::vector<int> all{0, 1};
  const std::vector<Island> islands = islands_of(sys, all);
  REQUIRE(islands.size() == 1);
  CHECK(islands[0].buses == std::vector<int>{0, 1, 2});
  CHECK(islands[0].lines == std::vector<int>{0, 1});
}

TEST_CASE("islands_of matches an independent DFS labeling on random forests") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const GeneratedCase gc = small_case(100 + trial, 5 + trial % 4, 2, 4);
    const std::vector<int> forest = random_valid_forest(gc.system, gc.refs, rng);
    const std::vector<int> expected = dfs_components(gc.system, forest);
    const std::vector<int> got = component_labels(gc.system, forest);
    CHECK(got == expected);

    // Partition property: every bus in exactly one island.
    const std::vector<Island> islands = islands_of(gc.system, forest, gc.refs);
    std::vector<int> seen(gc.system.bus_count(), 0);
    size_t total = 0;
    for (const Island& isl : islands) {
      total += isl.buses.size();
      for (int b : isl.buses) ++seen[b];
    }
    CHECK(total == static_cast<size_t>(gc.system.bus_count()));
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("induced retained lines cover chords inside islands") {
  // square 0-1-2-3-0 with chord 0-2; forest {0-1, 1-2} keeps island {0,1,2}
  PowerSystem sys;
  sys.buses = {make_generator(0, 20.0), make_load(1, 5.0), make_load(2, 5.0),
               make_generator(3, 20.0)};
  sys.lines = {make_line(0, 0, 1), make_line(1, 1, 2), make_line(2, 2, 3),
               make_line(3, 0, 3), make_line(4, 0, 2)};
  const std::vector<int> forest{0, 1};
  CHECK(induced_retained_lines(sys, forest) == std::vector<int>{0, 1, 4});
}

TEST_CASE("is_valid_islanding accepts separations and rejects merges") {
  const PowerSystem sys = three_bus_path();
  const std::vector<int> refs{0, 2};
  CHECK(is_valid_islanding(sys, std::vector<int>{0}, refs));
  CHECK(is_valid_islanding(sys, std::vector<int>{1}, refs));  // {0} and {1,2}
  CHECK(is_valid_islanding(sys, std::vector<int>{0, 1}, refs) == false);  // merged refs
  CHECK(is_valid_islanding(sys, std::vector<int>{}, refs) == false);      // 3 islands
}
