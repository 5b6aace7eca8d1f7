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

#include <cmath>
#include <random>

#include "gridsplit/error.hpp"
#include "gridsplit/objectives.hpp"
#include "test_support.hpp"

using namespace gridsplit;
using namespace gridsplit::testing;

namespace {

std::vector<double> random_served(const PowerSystem& sys, std::mt19937& rng,
                                  double overshoot = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> served;
  for (int id : sys.load_ids()) served.push_back(sys.buses[id].max_load * overshoot * unit(rng));
  return served;
}

}  // namespace

TEST_CASE("f2_disruption sums pre-flow magnitudes over tripped lines") {
  const PowerSystem sys = three_bus_path(5.0, 2.0);
  CHECK(f2_disruption(sys, std::vector<int>{0, 1}) == 0.0);  // nothing tripped
  CHECK(f2_disruption(sys, std::vector<int>{0}) == doctest::Approx(2.0));

  PowerSystem negative = three_bus_path();
  negative.lines[1].pre_flow = -7.0;
  CHECK(f2_disruption(negative, std::vector<int>{0}) == doctest::Approx(7.0));
}

TEST_CASE("f2_disruption equals the brute-force complement sum on random subsets") {
  std::mt19937 rng(3);
  const GeneratedCase gc = small_case(42, 8, 2, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> retained;
    std::vector<char> mask(gc.system.line_count(), 0);
    for (int l = 0; l < gc.system.line_count(); ++l)
      if (unit(rng) < 0.5) {
        retained.push_back(l);
        mask[l] = 1;
      }
    double expected = 0.0;
    for (const Line& line : gc.system.lines)
      if (!mask[line.id]) expected += std::abs(line.pre_flow);
    CHECK(f2_disruption(gc.system, retained) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("f2_bar splits into cross-island flow plus weighted sink flow") {
  std::mt19937 rng(7);
  const GeneratedCase gc = small_case(43, 8, 2, 4);
  const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
  const std::vector<int> forest = random_valid_forest(gc.system, gc.refs, rng);

  const std::vector<int> induced = induced_retained_lines(gc.system, forest);
  const std::vector<double> no_sink(gc.system.load_ids().size(), 0.0);
  CHECK(f2_bar(vsys, forest, no_sink, 2.0) ==
        doctest::Approx(f2_disruption(gc.system, induced)).epsilon(1e-12));

  std::vector<double> sink = no_sink;
  sink[0] = 3.0;
  CHECK(f2_bar(vsys, forest, sink, 2.0) ==
        doctest::Approx(f2_disruption(gc.system, induced) + 6.0).epsilon(1e-12));
}

TEST_CASE("relaxed cross-island term matches the partition form on bases") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const GeneratedCase gc = small_case(900 + trial, 7, trial % 2 ? 3 : 2, 4);
    const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
    const AugmentedGraph g = augment(vsys);
    const std::vector<int> forest = random_valid_forest(gc.system, gc.refs, rng);
    const std::vector<double> no_sink(gc.system.load_ids().size(), 0.0);
    CHECK(f2_phi_bar(g, forest) ==
          doctest::Approx(f2_bar(vsys, forest, no_sink, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("f3_shedding prices the unserved load") {
  PowerSystem sys;
  sys.buses = {make_generator(0, 20.0), make_load(1, 10.0, 3.0)};
  sys.lines = {make_line(0, 0, 1, 10.0)};
  CHECK(f3_shedding(sys, std::vector<double>{10.0}) == 0.0);
  CHECK(f3_shedding(sys, std::vector<double>{4.0}) == doctest::Approx(18.0));
  CHECK_THROWS_AS(f3_shedding(sys, std::vector<double>{11.5}), Error);
  CHECK_THROWS_AS(f3_shedding(sys, std::vector<double>{-0.5}), Error);
}

TEST_CASE("f3_shedding matches elementwise recomputation") {
  std::mt19937 rng(13);
  const GeneratedCase gc = small_case(44, 9, 2, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> served = random_served(gc.system, rng);
    double expected = 0.0;
    const std::vector<int> loads = gc.system.load_ids();
    for (size_t i = 0; i < loads.size(); ++i)
      expected += gc.system.buses[loads[i]].shed_cost_slope *
                  (gc.system.buses[loads[i]].max_load - served[i]);
    CHECK(f3_shedding(gc.system, served) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("f3_shedding_min never increases when the load set grows") {
  std::mt19937 rng(17);
  const GeneratedCase gc = small_case(45, 8, 2, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> lambda{random_served(gc.system, rng)};
    const double small = f3_shedding_min(gc.system, lambda);
    lambda.push_back(random_served(gc.system, rng));
    const double large = f3_shedding_min(gc.system, lambda);
    CHECK(large <= small + 1e-12);
  }
  CHECK(std::isinf(f3_shedding_min(gc.system, {})));
}

TEST_CASE("f4 balance penalty on a two-island split") {
  // gen 8 | load 10 in one island -> 2 MW excess
  PowerSystem sys;
  sys.buses = {make_generator(0, 8.0), make_load(1, 10.0, 1.0), make_generator(2, 30.0)};
  sys.lines = {make_line(0, 0, 1, 10.0), make_line(1, 1, 2, 0.0)};
  const std::vector<int> forest{0};
  CHECK(f4_balance_penalty(sys, forest, std::vector<double>{10.0}) == doctest::Approx(2.0));
  CHECK(f4_balance_penalty(sys, forest, std::vector<double>{8.0}) == 0.0);
}

TEST_CASE("f5 load bound penalty activates only above the limit") {
  PowerSystem sys;
  sys.buses = {make_generator(0, 30.0), make_load(1, 10.0, 1.0)};
  sys.lines = {make_line(0, 0, 1, 10.0)};
  CHECK(f5_load_bound_penalty(sys, std::vector<int>{0}, std::vector<double>{10.0}) == 0.0);
  CHECK(f5_load_bound_penalty(sys, std::vector<int>{0}, std::vector<double>{15.0}) ==
        doctest::Approx(5.0));
}

TEST_CASE("simplified f4 and f5 equal their expanded forms") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const GeneratedCase gc = small_case(1000 + trial, 8, 2 + trial % 2, 4);
    const std::vector<int> forest = random_valid_forest(gc.system, gc.refs, rng);
    const std::vector<double> served = random_served(gc.system, rng, 1.3);
    CHECK(f4_balance_penalty(gc.system, forest, served) ==
          doctest::Approx(f4_balance_expanded(gc.system, forest, served)).epsilon(1e-12));
    CHECK(f5_load_bound_penalty(gc.system, forest, served) ==
          doctest::Approx(f5_load_bound_expanded(gc.system, forest, served)).epsilon(1e-12));
  }
}

TEST_CASE("f6 blackstart penalty counts unrestorable islands") {
  PowerSystem sys;
  sys.buses = {make_generator(0, 10.0, true), make_generator(1, 10.0, false),
               make_generator(2, 10.0, true), make_load(3, 5.0, 1.0)};
  sys.lines = {make_line(0, 0, 1), make_line(1, 1, 2), make_line(2, 2, 3)};

  CHECK(f6_blackstart_penalty(sys, std::vector<int>{0, 1, 2}) == 0.0);  // one island
  // islands {0}, {1}, {2,3}: bus-1 island has no blackstart unit
  CHECK(f6_blackstart_penalty(sys, std::vector<int>{2}) == doctest::Approx(1.0));
  // islands {0}, {1}, {2}, {3}: two of them lack blackstart
  CHECK(f6_blackstart_penalty(sys, std::vector<int>{}) == doctest::Approx(2.0));
}

TEST_CASE("expanded f6 counts foreign buses, not missing blackstart units") {
  // The audit form goes positive for every multi-island split even when all
  // islands hold blackstart units; n - |V_k| - b_k + 1 per island.
  PowerSystem sys;
  sys.buses = {make_generator(0, 10.0, true), make_generator(1, 10.0, true),
               make_load(2, 5.0, 1.0)};
  sys.lines = {make_line(0, 0, 1), make_line(1, 1, 2)};
  // islands {0}, {1,2}
  const double expected = std::max(0.0, 3.0 - 1.0 - 1.0 + 1.0) +  // island {0}
                          std::max(0.0, 3.0 - 2.0 - 1.0 + 1.0);   // island {1,2}
  CHECK(f6_blackstart_expanded(sys, std::vector<int>{1}) == doctest::Approx(expected));
  CHECK(f6_blackstart_penalty(sys, std::vector<int>{1}) == 0.0);
}

TEST_CASE("chi_bar relaxations of the penalties match the partition forms on bases") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const GeneratedCase gc = small_case(1100 + trial, 8, 2 + trial % 2, 4);
    const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
    const AugmentedGraph g = augment(vsys);
    const std::vector<int> forest = random_valid_forest(gc.system, gc.refs, rng);
    const std::vector<double> served = random_served(gc.system, rng, 1.2);

    CHECK(f4_bar(g, forest, served) ==
          doctest::Approx(f4_balance_penalty(gc.system, forest, served)).epsilon(1e-9));
    CHECK(f5_bar(g, forest, served) ==
          doctest::Approx(f5_load_bound_penalty(gc.system, forest, served)).epsilon(1e-9));
    CHECK(f6_bar(g, forest) ==
          doctest::Approx(f6_blackstart_penalty(gc.system, forest)).epsilon(1e-9));
  }
}

TEST_CASE("penalty relaxations are nonincreasing and supermodular") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const GeneratedCase gc = small_case(57, 8, 3, 5);
  const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
  const AugmentedGraph g = augment(vsys);
  const std::vector<double> served = random_served(gc.system, rng, 1.2);
  std::uniform_int_distribution<int> edge(0, g.edge_count() - 1);

  auto check_term = [&](auto&& f) {
    for (int sample = 0; sample < 400; ++sample) {
      std::vector<int> t_set = random_edge_subset(g.edge_count(), 0.5, rng);
      std::vector<int> s_set;
      for (int e : t_set)
        if (unit(rng) < 0.6) s_set.push_back(e);
      const int extra = edge(rng);
      if (std::find(t_set.begin(), t_set.end(), extra) != t_set.end()) continue;
      std::vector<int> s_plus = s_set, t_plus = t_set;
      s_plus.push_back(extra);
      t_plus.push_back(extra);
      CHECK(f(s_set) >= f(t_set) - 1e-9);
      CHECK(f(s_plus) - f(s_set) <= f(t_plus) - f(t_set) + 1e-9);
    }
  };
  check_term([&](const std::vector<int>& e) { return f2_phi_bar(g, e); });
  check_term([&](const std::vector<int>& e) { return f4_bar(g, e, served); });
  check_term([&](const std::vector<int>& e) { return f5_bar(g, e, served); });
  check_term([&](const std::vector<int>& e) { return f6_bar(g, e); });
}

TEST_CASE("total objective is the weighted sum of its parts") {
  std::mt19937 rng(31);
  const GeneratedCase gc = small_case(58, 8, 2, 4);
  const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
  const DenseMatrix a_bar = build_coherency(vsys).coherence;
  const std::vector<int> forest = random_valid_forest(gc.system, gc.refs, rng);
  const std::vector<double> served = random_served(gc.system, rng);
  std::vector<double> sink(gc.system.load_ids().size(), 0.0);
  sink[0] = 1.5;

  ObjectiveWeights w;
  w.alpha = {1.0, 2.0, 0.5, 3.0, 4.0, 5.0};
  w.beta = 7.0;

  const ObjectiveBreakdown got = total_objective(vsys, forest, served, sink, a_bar, w);
  const double f1n = f1_coherency(vsys, forest, a_bar);
  CHECK(got.f1 == doctest::Approx(f1n * f1n).epsilon(1e-12));
  CHECK(got.f2 == doctest::Approx(f2_bar(vsys, forest, sink, w.beta)).epsilon(1e-12));
  CHECK(got.f3 == doctest::Approx(f3_shedding(gc.system, served)).epsilon(1e-12));
  CHECK(got.f4 == doctest::Approx(f4_balance_penalty(gc.system, forest, served)).epsilon(1e-12));
  CHECK(got.f5 ==
        doctest::Approx(f5_load_bound_penalty(gc.system, forest, served)).epsilon(1e-12));
  CHECK(got.f6 == doctest::Approx(f6_blackstart_penalty(gc.system, forest)).epsilon(1e-12));
  CHECK(got.sink_penalty == doctest::Approx(w.beta * 1.5).epsilon(1e-12));
  const double manual = 1.0 * got.f1 + 2.0 * got.f2 + 0.5 * got.f3 + 3.0 * got.f4 +
                        4.0 * got.f5 + 5.0 * got.f6;
  CHECK(got.total == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("scaling every weight scales the total") {
  std::mt19937 rng(37);
  const GeneratedCase gc = small_case(59, 7, 2, 3);
  const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
  const DenseMatrix a_bar = build_coherency(vsys).coherence;
  const std::vector<int> forest = random_valid_forest(gc.system, gc.refs, rng);
  const std::vector<double> served = random_served(gc.system, rng);
  const std::vector<double> sink(gc.system.load_ids().size(), 0.0);

  ObjectiveWeights w;
  const double base = total_objective(vsys, forest, served, sink, a_bar, w).total;
  for (double& a : w.alpha) a *= 2.5;
  CHECK(total_objective(vsys, forest, served, sink, a_bar, w).total ==
        doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("feasible balanced strategies reduce the total to the core metrics") {
  // two islands, each self-sufficient, no shedding, no sink flow
  PowerSystem sys;
  sys.buses = {make_generator(0, 20.0), make_load(1, 10.0, 2.0),
               make_generator(2, 20.0), make_load(3, 8.0, 3.0)};
  sys.lines = {make_line(0, 0, 1, 10.0, 50.0), make_line(1, 1, 2, -3.0, 50.0),
               make_line(2, 2, 3, 8.0, 50.0)};
  sys.buses[1].max_load = 13.0;  // absorbs both feeds pre-islanding
  const ValidatedSystem vsys = validate_system(sys, {0, 2});

  DenseMatrix binary(2, 2);
  binary(0, 0) = 1.0;
  binary(1, 1) = 1.0;

  const std::vector<int> forest{0, 2};
  const std::vector<double> served{13.0, 8.0};  // note: island capacity covers both
  const std::vector<double> sink{0.0, 0.0};
  ObjectiveWeights w;
  const ObjectiveBreakdown got = total_objective(vsys, forest, served, sink, binary, w);
  CHECK(got.f1 == 0.0);
  CHECK(got.f4 == 0.0);
  CHECK(got.f5 == 0.0);
  CHECK(got.f6 == 0.0);
  CHECK(got.sink_penalty == 0.0);
  CHECK(got.total == doctest::Approx(got.f2 + got.f3).epsilon(1e-12));
  CHECK(got.f2 == doctest::Approx(3.0));  // the tripped tie carried 3 MW
}
