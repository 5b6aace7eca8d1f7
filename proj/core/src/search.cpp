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

#include "gridsplit/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "gridsplit/error.hpp"
#include "gridsplit/union_find.hpp"

namespace gridsplit {

namespace {

// Improvements below this are treated as noise so the epsilon = 0 search
// terminates under floating-point arithmetic.
constexpr double kMinImprovement = 1e-9;

// With epsilon > 0 the accepted-swap count is capped by the steepest
// possible decay down to this fraction of the starting objective.
constexpr double kObjectiveFloorRatio = 1e-12;

std::vector<int> sorted_insert(std::vector<int> set, int add, int remove) {
  set.erase(std::find(set.begin(), set.end(), remove));
  set.insert(std::upper_bound(set.begin(), set.end(), add), add);
  return set;
}

struct Candidate {
  int add = -1;
  int remove = -1;
};

}  // namespace

int thread_budget() {
  const char* env = std::getenv("GRIDSPLIT_THREADS");
  long value = 0;
  if (env != nullptr && *env != '\0') value = std::strtol(env, nullptr, 10);
  if (value <= 0) value = static_cast<long>(std::thread::hardware_concurrency());
  if (value <= 0) value = 1;
  return static_cast<int>(std::min<long>(value, 64));
}

Evaluation evaluate_islanding(const ValidatedSystem& vsys,
                              std::span<const int> forest,
                              const DenseMatrix& a_bar,
                              const ObjectiveWeights& w) {
  Evaluation ev;
  ev.flow = post_islanding_dispatch(vsys, forest, w);
  ev.breakdown =
      total_objective(vsys, forest, ev.flow.served, ev.flow.sink_flow, a_bar, w);
  return ev;
}

IslandingStrategy initialize(const AugmentedGraph& g, const ValidatedSystem& vsys,
                             const ObjectiveWeights& w) {
  const PowerSystem& sys = vsys.sys;

  // Greedy maximum-weight forest on |pre_flow|; supernode edges join first,
  // ties broken by ascending line id.
  std::vector<int> order(sys.line_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(sys.lines[a].pre_flow) > std::abs(sys.lines[b].pre_flow);
  });

  UnionFind uf(g.node_count());
  for (int r : g.refs) uf.unite(g.supernode(), r);

  IslandingStrategy strategy;
  for (int l : order) {
    if (uf.unite(sys.lines[l].from, sys.lines[l].to)) strategy.retained.push_back(l);
  }
  std::sort(strategy.retained.begin(), strategy.retained.end());

  strategy.served = post_islanding_dispatch(vsys, strategy.retained, w).served;
  return strategy;
}

namespace {

// Evaluates one scan of candidate exchanges in lexicographic (add, remove)
// order and returns the first acceptable one. Evaluations may proceed in
// parallel blocks, but acceptance always picks the scan-order-first
// candidate, so the result is independent of the thread budget.
struct ScanOutcome {
  std::optional<Candidate> accepted;
  Evaluation evaluation;           // of the accepted candidate
  long long examined = 0;          // candidates examined in scan order
};

ScanOutcome scan_for_improvement(const AugmentedGraph& g, const ValidatedSystem& vsys,
                                 const std::vector<int>& forest,
                                 const DenseMatrix& a_bar, const ObjectiveWeights& w,
                                 double current_total, int threads) {
  const PowerSystem& sys = vsys.sys;
  std::vector<char> in_forest(sys.line_count(), 0);
  for (int l : forest) in_forest[l] = 1;

  std::vector<Candidate> candidates;
  for (int add = 0; add < sys.line_count(); ++add) {
    if (in_forest[add]) continue;
    for (int remove : forest) candidates.push_back({add, remove});
  }

  // The exchange test runs on the full spanning tree of the augmented
  // graph; cycles between islands close through the supernode.
  std::vector<int> basis = forest;
  for (int e : g.super_edge_ids()) basis.push_back(e);

  const double bar = (1.0 - w.epsilon) * current_total;
  auto acceptable = [&](const ObjectiveBreakdown& b) {
    return b.total < bar && current_total - b.total > kMinImprovement;
  };

  auto evaluate_candidate = [&](const Candidate& c) -> std::optional<Evaluation> {
    if (!exchange_valid(g, basis, c.add, c.remove)) return std::nullopt;
    return evaluate_islanding(vsys, sorted_insert(forest, c.add, c.remove), a_bar, w);
  };

  ScanOutcome outcome;
  if (threads <= 1 || candidates.size() < 16) {
    for (const Candidate& c : candidates) {
      std::optional<Evaluation> ev = evaluate_candidate(c);
      if (!ev) continue;
      ++outcome.examined;
      if (acceptable(ev->breakdown)) {
        outcome.accepted = c;
        outcome.evaluation = std::move(*ev);
        return outcome;
      }
    }
    return outcome;
  }

  const size_t block = static_cast<size_t>(threads) * 4;
  std::vector<std::optional<Evaluation>> slots(block);
  std::vector<std::exception_ptr> errors(block);
  for (size_t begin = 0; begin < candidates.size(); begin += block) {
    const size_t end = std::min(candidates.size(), begin + block);
    std::fill(slots.begin(), slots.end(), std::nullopt);
    std::fill(errors.begin(), errors.end(), nullptr);

    std::atomic<size_t> next{begin};
    auto worker = [&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= end) return;
        try {
          slots[i - begin] = evaluate_candidate(candidates[i]);
        } catch (...) {
          errors[i - begin] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    for (size_t i = begin; i < end; ++i) {
      if (errors[i - begin]) std::rethrow_exception(errors[i - begin]);
      std::optional<Evaluation>& ev = slots[i - begin];
      if (!ev) continue;
      ++outcome.examined;
      if (acceptable(ev->breakdown)) {
        outcome.accepted = candidates[i];
        outcome.evaluation = std::move(*ev);
        return outcome;
      }
    }
  }
  return outcome;
}

}  // namespace

IslandingResult local_search(const ValidatedSystem& vsys, const DenseMatrix& a_bar,
                             const ObjectiveWeights& w) {
  if (w.epsilon < 0.0 || w.epsilon >= 0.5)
    raise(ErrorCode::InvalidField, "epsilon must lie in [0, 0.5)");

  const AugmentedGraph g = augment(vsys);
  const int threads = thread_budget();

  IslandingResult result;
  result.strategy = initialize(g, vsys, w);
  {
    Evaluation ev = evaluate_islanding(vsys, result.strategy.retained, a_bar, w);
    result.flow = std::move(ev.flow);
    result.breakdown = ev.breakdown;
  }
  result.initial_total = result.breakdown.total;

  long long cap;
  if (w.epsilon > 0.0) {
    cap = static_cast<long long>(
        std::ceil(std::log(kObjectiveFloorRatio) / std::log(1.0 - w.epsilon)));
  } else {
    cap = 10LL * vsys.sys.line_count() * vsys.sys.line_count();
  }

  for (;;) {
    ScanOutcome outcome = scan_for_improvement(
        g, vsys, result.strategy.retained, a_bar, w, result.breakdown.total, threads);
    result.swaps_evaluated += outcome.examined;
    if (!outcome.accepted) {
      result.terminated_by = TerminationReason::LocalOptimum;
      break;
    }

    result.strategy.retained = sorted_insert(result.strategy.retained,
                                             outcome.accepted->add,
                                             outcome.accepted->remove);
    {
      std::vector<int> with_super = result.strategy.retained;
      for (int e : g.super_edge_ids()) with_super.push_back(e);
      if (!is_basis(g, with_super))
        throw std::logic_error("exchange left a non-basis retained set");
    }
    result.strategy.served = outcome.evaluation.flow.served;
    result.flow = std::move(outcome.evaluation.flow);
    result.breakdown = outcome.evaluation.breakdown;
    ++result.iterations;

    if (result.iterations >= cap) {
      result.terminated_by = TerminationReason::IterationCap;
      break;
    }
  }
  return result;
}

IslandingResult brute_force_oracle(const ValidatedSystem& vsys,
                                   const DenseMatrix& a_bar,
                                   const ObjectiveWeights& w) {
  const PowerSystem& sys = vsys.sys;
  const int n = sys.bus_count();
  const int m = vsys.island_count();
  const int excess = sys.line_count() - (n - m);
  if (excess > 12)
    raise(ErrorCode::TooLarge,
          "cycle space has " + std::to_string(excess) + " excess edges (limit 12)");

  // Reference tag per union-find root: -1 when the component holds none.
  std::vector<int> ref_tag(n, -1);
  for (size_t k = 0; k < vsys.refs.size(); ++k) ref_tag[vsys.refs[k]] = static_cast<int>(k);

  IslandingResult best;
  bool found = false;
  long long evaluated = 0;
  std::vector<int> chosen;

  struct Frame {
    UnionFind uf;
    std::vector<int> tag;
  };

  auto consider = [&](const std::vector<int>& forest) {
    ++evaluated;
    Evaluation ev = evaluate_islanding(vsys, forest, a_bar, w);
    const bool better =
        !found || ev.breakdown.total < best.breakdown.total - 1e-12;
    // Exact near-ties keep the first (lexicographically smallest) forest.
    if (better) {
      best.strategy.retained = forest;
      best.strategy.served = ev.flow.served;
      best.flow = std::move(ev.flow);
      best.breakdown = ev.breakdown;
      found = true;
    }
  };

  // Include/exclude recursion over line ids; including an edge may never
  // join two reference components.
  auto recurse = [&](auto&& self, int idx, Frame frame) -> void {
    const int components = frame.uf.components();
    if (components == m) {
      consider(chosen);
      return;
    }
    const int remaining = sys.line_count() - idx;
    if (components - m > remaining) return;  // cannot reach m components
    if (idx >= sys.line_count()) return;

    const Line& line = sys.lines[idx];
    const int ru = frame.uf.find(line.from);
    const int rv = frame.uf.find(line.to);
    if (ru != rv && !(frame.tag[ru] >= 0 && frame.tag[rv] >= 0)) {
      Frame next = frame;
      next.uf.unite(line.from, line.to);
      const int root = next.uf.find(line.from);
      next.tag[root] = std::max(frame.tag[ru], frame.tag[rv]);
      chosen.push_back(idx);
      self(self, idx + 1, std::move(next));
      chosen.pop_back();
    }
    self(self, idx + 1, std::move(frame));
  };

  recurse(recurse, 0, Frame{UnionFind(n), ref_tag});

  if (!found)
    raise(ErrorCode::BadReference, "no retained forest separates the references");
  best.initial_total = best.breakdown.total;
  best.swaps_evaluated = evaluated;
  best.terminated_by = TerminationReason::LocalOptimum;
  return best;
}

double optimality_certificate(const IslandingResult& alg,
                              const IslandingResult& opt, double z) {
  const double a = alg.breakdown.total;
  const double o = opt.breakdown.total;
  if (z < std::max(a, o) - 1e-9)
    raise(ErrorCode::BadZ, "offset must dominate both objective totals");
  const double denom = z - o;
  if (denom < 1e-15) {
    if (std::abs(a - o) <= 1e-12) return 1.0;
    raise(ErrorCode::BadZ, "offset equals the optimum while the results differ");
  }
  return (z - a) / denom;
}

}  // namespace gridsplit
