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
#include <cstdlib>
#include <random>

#include "gridsplit/coherency.hpp"
#include "gridsplit/error.hpp"
#include "gridsplit/search.hpp"
#include "test_support.hpp"

using namespace gridsplit;
using namespace gridsplit::testing;

namespace {

DenseMatrix binary_two_island() {
  DenseMatrix b(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;
  return b;
}

/// Two self-sufficient communities joined by a weak tie; the greedy start is
/// already the global optimum.
ValidatedSystem balanced_pair() {
  PowerSystem sys;
  sys.buses = {make_generator(0, 20.0), make_load(1, 13.0, 2.0),
               make_generator(2, 20.0), make_load(3, 8.0, 3.0)};
  sys.lines = {make_line(0, 0, 1, 10.0, 50.0), make_line(1, 1, 2, -3.0, 50.0),
               make_line(2, 2, 3, 8.0, 50.0)};
  return validate_system(sys, {0, 2});
}

/// Ring engineered so the greedy start strands a large load behind a small
/// generator; one exchange moves it next to the big generator.
ValidatedSystem strained_ring() {
  PowerSystem sys;
  sys.buses = {make_generator(0, 60.0), make_load(1, 12.0, 2.0),
               make_load(2, 6.0, 1.0),  make_generator(3, 10.0),
               make_load(4, 18.0, 9.0), make_load(5, 8.0, 2.0)};
  sys.lines = {make_line(0, 0, 1, 10.0, 40.0), make_line(1, 1, 2, 2.0, 40.0),
               make_line(2, 2, 3, 9.0, 40.0),  make_line(3, 3, 4, 10.0, 40.0),
               make_line(4, 4, 5, 3.0, 40.0),  make_line(5, 0, 5, 9.0, 40.0)};
  return validate_system(sys, {0, 3});
}

}  // namespace

TEST_CASE("initialize keeps the heavier line of the path") {
  const ValidatedSystem vsys = validate_system(three_bus_path(5.0, 2.0), {0, 2});
  const AugmentedGraph g = augment(vsys);
  ObjectiveWeights w;
  const IslandingStrategy st = initialize(g, vsys, w);
  CHECK(st.retained == std::vector<int>{0});
}

TEST_CASE("initialize breaks flow ties by line id") {
  const ValidatedSystem vsys = validate_system(three_bus_path(4.0, 4.0), {0, 2});
  const AugmentedGraph g = augment(vsys);
  ObjectiveWeights w;
  CHECK(initialize(g, vsys, w).retained == std::vector<int>{0});
}

TEST_CASE("initialize always produces a basis") {
  ObjectiveWeights w;
  for (int trial = 0; trial < 100; ++trial) {
    const GeneratedCase gc = small_case(1600 + trial, 6 + trial % 5, 2 + trial % 2, 4);
    const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
    const AugmentedGraph g = augment(vsys);
    std::vector<int> basis = initialize(g, vsys, w).retained;
    for (int e : g.super_edge_ids()) basis.push_back(e);
    CHECK(is_basis(g, basis));
  }
}

TEST_CASE("a start at the global optimum accepts no swaps") {
  const ValidatedSystem vsys = balanced_pair();
  ObjectiveWeights w;
  const IslandingResult alg = local_search(vsys, binary_two_island(), w);
  CHECK(alg.iterations == 0);
  CHECK(alg.terminated_by == TerminationReason::LocalOptimum);

  const IslandingResult opt = brute_force_oracle(vsys, binary_two_island(), w);
  CHECK(alg.breakdown.total == doctest::Approx(opt.breakdown.total).epsilon(1e-9));
  CHECK(alg.strategy.retained == opt.strategy.retained);
}

TEST_CASE("a strained start improves strictly and reaches the oracle optimum") {
  const ValidatedSystem vsys = strained_ring();
  ObjectiveWeights w;
  const DenseMatrix a_bar = build_coherency(vsys).coherence;

  const IslandingResult alg = local_search(vsys, a_bar, w);
  CHECK(alg.iterations >= 1);
  CHECK(alg.breakdown.total < alg.initial_total);

  const IslandingResult opt = brute_force_oracle(vsys, a_bar, w);
  CHECK(alg.breakdown.total == doctest::Approx(opt.breakdown.total).epsilon(1e-6));
}

TEST_CASE("the exhaustive oracle never loses to the local search") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const GeneratedCase gc = small_case(1700 + trial, 7 + trial % 3, 2, 3);
    const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
    const DenseMatrix a_bar = build_coherency(vsys).coherence;
    ObjectiveWeights w;
    const IslandingResult alg = local_search(vsys, a_bar, w);
    const IslandingResult opt = brute_force_oracle(vsys, a_bar, w);
    CHECK(opt.breakdown.total <= alg.breakdown.total + 1e-9);
    CHECK(is_valid_islanding(gc.system, alg.strategy.retained, gc.refs));
    CHECK(is_valid_islanding(gc.system, opt.strategy.retained, gc.refs));
  }
}

TEST_CASE("oracle candidate counts on hand-countable systems") {
  // 3-bus path, two references: two ways to cut one line
  const ValidatedSystem path3 = validate_system(three_bus_path(), {0, 2});
  ObjectiveWeights w;
  const IslandingResult r3 = brute_force_oracle(path3, binary_two_island(), w);
  CHECK(r3.swaps_evaluated == 2);

  // 4-bus path of generators, refs at the ends: any of the 3 lines separates
  PowerSystem path4;
  path4.buses = {make_generator(0, 10.0), make_generator(1, 10.0),
                 make_generator(2, 10.0), make_generator(3, 10.0)};
  path4.lines = {make_line(0, 0, 1), make_line(1, 1, 2), make_line(2, 2, 3)};
  const ValidatedSystem vsys4 = validate_system(path4, {0, 3});
  CHECK(brute_force_oracle(vsys4, binary_two_island(), w).swaps_evaluated == 3);

  // refs {0, 1, 3}: the cut must split 0|1 and 1|3 -> exactly two forests
  DenseMatrix b3(4, 3);
  const ValidatedSystem vsys43 = validate_system(path4, {0, 1, 3});
  CHECK(brute_force_oracle(vsys43, b3, w).swaps_evaluated == 2);

  // against the independent subset enumeration
  const GeneratedCase gc = small_case(1800, 7, 2, 3);
  const ValidatedSystem vsys7 = validate_system(gc.system, gc.refs);
  const DenseMatrix a_bar = build_coherency(vsys7).coherence;
  const IslandingResult r7 = brute_force_oracle(vsys7, a_bar, w);
  CHECK(r7.swaps_evaluated ==
        static_cast<long long>(all_valid_forests(gc.system, gc.refs).size()));
}

TEST_CASE("oracle rejects instances with too many excess edges") {
  CaseGenOptions opt;
  opt.buses = 8;
  opt.islands = 2;
  opt.extra_lines = 14;
  opt.seed = 4;
  const GeneratedCase gc = random_case(opt);
  if (gc.system.line_count() - (gc.system.bus_count() - 2) > 12) {
    const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
    ObjectiveWeights w;
    CHECK_THROWS_AS(brute_force_oracle(vsys, build_coherency(vsys).coherence, w), Error);
  }
}

TEST_CASE("half-optimality certificate on random instances") {
  for (int trial = 0; trial < 6; ++trial) {
    const GeneratedCase gc = small_case(1900 + trial, 6 + trial % 4, 2 + trial % 2, 4);
    const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
    const DenseMatrix a_bar = build_coherency(vsys).coherence;
    ObjectiveWeights w;
    const IslandingResult alg = local_search(vsys, a_bar, w);
    const IslandingResult opt = brute_force_oracle(vsys, a_bar, w);
    const double z = 10.0 * alg.initial_total;
    CHECK(optimality_certificate(alg, opt, z) >= 0.5 - 1e-9);
  }
}

TEST_CASE("certificate edge cases") {
  const ValidatedSystem vsys = balanced_pair();
  ObjectiveWeights w;
  const IslandingResult alg = local_search(vsys, binary_two_island(), w);
  CHECK(optimality_certificate(alg, alg, 10.0 * alg.breakdown.total + 1.0) ==
        doctest::Approx(1.0));
  // offset equal to the optimum is degenerate unless the results coincide
  CHECK(optimality_certificate(alg, alg, alg.breakdown.total) == doctest::Approx(1.0));
  IslandingResult worse = alg;
  worse.breakdown.total += 5.0;
  CHECK_THROWS_AS(optimality_certificate(worse, alg, alg.breakdown.total), Error);
  CHECK_THROWS_AS(optimality_certificate(worse, alg, alg.breakdown.total - 10.0), Error);
}

TEST_CASE("accepted swaps stay within the geometric-decay budget") {
  for (int trial = 0; trial < 6; ++trial) {
    const GeneratedCase gc = small_case(2000 + trial, 8, 2, 4);
    const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
    const DenseMatrix a_bar = build_coherency(vsys).coherence;
    ObjectiveWeights w;
    w.epsilon = 0.05;
    const IslandingResult r = local_search(vsys, a_bar, w);
    if (r.breakdown.total <= 0.0 || r.initial_total <= 0.0) continue;
    const double bound =
        std::ceil(std::log(r.breakdown.total / r.initial_total) / std::log(0.95));
    CHECK(static_cast<double>(r.iterations) <= bound + 1e-9);
  }
}

TEST_CASE("identical inputs give identical results, at any thread budget") {
  const GeneratedCase gc = small_case(2100, 9, 2, 5);
  const ValidatedSystem vsys = validate_system(gc.system, gc.refs);
  const DenseMatrix a_bar = build_coherency(vsys).coherence;
  ObjectiveWeights w;

  setenv("GRIDSPLIT_THREADS", "1", 1);
  const IslandingResult first = local_search(vsys, a_bar, w);
  const IslandingResult second = local_search(vsys, a_bar, w);
  setenv("GRIDSPLIT_THREADS", "3", 1);
  const IslandingResult threaded = local_search(vsys, a_bar, w);
  unsetenv("GRIDSPLIT_THREADS");

  CHECK(first.strategy.retained == second.strategy.retained);
  CHECK(first.strategy.served == second.strategy.served);
  CHECK(first.breakdown.total == second.breakdown.total);
  CHECK(first.iterations == second.iterations);
  CHECK(first.swaps_evaluated == second.swaps_evaluated);

  CHECK(first.strategy.retained == threaded.strategy.retained);
  CHECK(first.strategy.served == threaded.strategy.served);
  CHECK(first.breakdown.total == threaded.breakdown.total);
  CHECK(first.swaps_evaluated == threaded.swaps_evaluated);
}
