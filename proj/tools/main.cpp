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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridsplit/casegen.hpp"
#include "gridsplit/caseio.hpp"
#include "gridsplit/coherency.hpp"
#include "gridsplit/error.hpp"
#include "gridsplit/search.hpp"

namespace {

using namespace gridsplit;

struct SolveFlags {
  std::string case_path;
  std::string out_path;
  std::string dot_path;
  std::vector<int> refs;
  int islands = 0;
  double epsilon = -1.0;
  std::vector<double> alpha;
  double beta = -1.0;
  double gamma = -1.0;
  double z = -1.0;
};

void add_common_flags(CLI::App* cmd, SolveFlags& fl) {
  cmd->add_option("case", fl.case_path, "case file (JSON, schema_version 1)")->required();
  cmd->add_option("--refs", fl.refs, "reference generator bus ids (overrides the case file)")
      ->delimiter(',');
  cmd->add_option("--islands", fl.islands, "number of islands; must match the reference count");
  cmd->add_option("--epsilon", fl.epsilon, "acceptance margin in [0, 0.5)");
  cmd->add_option("--alpha", fl.alpha, "six objective trade-off weights")->delimiter(',');
  cmd->add_option("--beta", fl.beta, "capacity-violation weight");
  cmd->add_option("--gamma", fl.gamma, "dispatch sink-flow weight");
  cmd->add_option("--Z", fl.z, "optimality-bound offset (default: 10x initial objective)");
  cmd->add_option("--out", fl.out_path, "write the plan as JSON");
  cmd->add_option("--dot", fl.dot_path, "write the plan as Graphviz DOT");
}

LoadedCase load_with_flags(const SolveFlags& fl) {
  LoadedCase loaded = load_case(fl.case_path);

  if (!fl.refs.empty() && fl.refs != loaded.system.refs) {
    loaded.system = validate_system(loaded.system.sys, fl.refs);
    loaded.coherence = build_coherency(loaded.system).coherence;
  }
  if (fl.islands > 0 && fl.islands != loaded.system.island_count())
    raise(ErrorCode::BadReference,
          std::to_string(loaded.system.refs.size()) + " reference generators for --islands=" +
              std::to_string(fl.islands));

  if (fl.epsilon >= 0.0) loaded.weights.epsilon = fl.epsilon;
  if (!fl.alpha.empty()) {
    if (fl.alpha.size() != 6) raise(ErrorCode::InvalidField, "--alpha needs six values");
    for (int i = 0; i < 6; ++i) loaded.weights.alpha[i] = fl.alpha[i];
  }
  if (fl.beta > 0.0) loaded.weights.beta = fl.beta;
  if (fl.gamma > 0.0) loaded.weights.gamma = fl.gamma;
  if (fl.z > 0.0) loaded.weights.z_offset = fl.z;
  return loaded;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::ParseError, path + ": cannot write file");
  out << content;
}

void print_breakdown(const char* label, const IslandingResult& r) {
  std::printf("%s: total=%.6g  f1=%.6g f2=%.6g f3=%.6g f4=%.6g f5=%.6g f6=%.6g sink=%.6g\n",
              label, r.breakdown.total, r.breakdown.f1, r.breakdown.f2, r.breakdown.f3,
              r.breakdown.f4, r.breakdown.f5, r.breakdown.f6, r.breakdown.sink_penalty);
}

void emit_plan_files(const SolveFlags& fl, const ValidatedSystem& vsys,
                     const IslandingResult& result) {
  if (!fl.out_path.empty())
    write_file(fl.out_path, export_plan(vsys, result, PlanFormat::Json));
  if (!fl.dot_path.empty())
    write_file(fl.dot_path, export_plan(vsys, result, PlanFormat::Dot));
}

int cmd_validate(const std::string& path) {
  const LoadedCase loaded = load_case(path);
  const PowerSystem& sys = loaded.system.sys;
  std::printf("OK: %d buses (%zu generators, %zu loads), %d lines, %d islands\n",
              sys.bus_count(), sys.generator_ids().size(), sys.load_ids().size(),
              sys.line_count(), loaded.system.island_count());
  return 0;
}

int cmd_flow(const std::string& path) {
  const LoadedCase loaded = load_case(path);
  const PowerSystem& sys = loaded.system.sys;
  std::printf("%-6s %-6s %-6s %14s %14s %9s\n", "line", "from", "to", "flow_mw",
              "capacity_mw", "loading");
  for (const Line& l : sys.lines)
    std::printf("%-6d %-6d %-6d %14.6f %14.6f %8.1f%%\n", l.id, l.from, l.to, l.pre_flow,
                l.capacity, 100.0 * std::abs(l.pre_flow) / l.capacity);
  return 0;
}

int cmd_coherency(const SolveFlags& fl) {
  const LoadedCase loaded = load_with_flags(fl);
  const std::vector<int> gens = loaded.system.sys.generator_ids();
  std::printf("coherence matrix (%zu generators x %d islands):\n", gens.size(),
              loaded.system.island_count());
  for (size_t r = 0; r < gens.size(); ++r) {
    std::printf("bus %-4d", gens[r]);
    for (int c = 0; c < loaded.coherence.cols(); ++c)
      std::printf(" %12.8f", loaded.coherence(static_cast<int>(r), c));
    std::printf("\n");
  }
  return 0;
}

int cmd_solve(const SolveFlags& fl) {
  const LoadedCase loaded = load_with_flags(fl);
  const auto start = std::chrono::steady_clock::now();
  const IslandingResult result = local_search(loaded.system, loaded.coherence, loaded.weights);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();

  print_breakdown("solution", result);
  std::printf("iterations=%lld swaps_evaluated=%lld terminated_by=%s wall_time_ms=%.2f\n",
              result.iterations, result.swaps_evaluated,
              result.terminated_by == TerminationReason::LocalOptimum ? "local_optimum"
                                                                      : "iteration_cap",
              ms);
  emit_plan_files(fl, loaded.system, result);
  return 0;
}

int cmd_oracle(const SolveFlags& fl) {
  const LoadedCase loaded = load_with_flags(fl);
  const IslandingResult alg = local_search(loaded.system, loaded.coherence, loaded.weights);
  const IslandingResult opt = brute_force_oracle(loaded.system, loaded.coherence, loaded.weights);

  const double z = loaded.weights.z_offset > 0.0 ? loaded.weights.z_offset
                                                 : 10.0 * alg.initial_total;
  const double ratio = optimality_certificate(alg, opt, z);

  print_breakdown("search", alg);
  print_breakdown("oracle", opt);
  std::printf("candidates_enumerated=%lld\n", opt.swaps_evaluated);
  std::printf("certificate: Z=%.17g ratio=%.9f (threshold 0.5)\n", z, ratio);
  emit_plan_files(fl, loaded.system, opt);
  return 0;
}

int cmd_gen(const std::string& out_path, const CaseGenOptions& options) {
  const GeneratedCase generated = random_case(options);
  const ValidatedSystem vsys = validate_system(generated.system, generated.refs);
  write_file(out_path, case_to_json(vsys.sys, vsys.refs));
  std::printf("wrote %s: %d buses, %d lines, %d islands\n", out_path.c_str(),
              vsys.sys.bus_count(), vsys.sys.line_count(), vsys.island_count());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridsplit - controlled-islanding planner"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  SolveFlags oracle_flags;
  SolveFlags coherency_flags;
  std::string validate_path;
  std::string flow_path;

  std::string gen_out;
  CaseGenOptions gen_options;

  CLI::App* solve = app.add_subcommand("solve", "run the local search and export the plan");
  add_common_flags(solve, solve_flags);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "exhaustive optimum plus the local-search certificate ratio");
  add_common_flags(oracle, oracle_flags);

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a case file");
  validate->add_option("case", validate_path, "case file")->required();

  CLI::App* flow = app.add_subcommand("flow", "report the pre-islanding line flows");
  flow->add_option("case", flow_path, "case file")->required();

  CLI::App* coherency = app.add_subcommand("coherency", "print the coherence matrix");
  coherency->add_option("case", coherency_flags.case_path, "case file")->required();
  coherency->add_option("--refs", coherency_flags.refs, "reference generator bus ids")
      ->delimiter(',');

  CLI::App* gen = app.add_subcommand("gen", "write a random synthetic case");
  gen->add_option("out", gen_out, "output case file")->required();
  gen->add_option("--buses", gen_options.buses, "bus count");
  gen->add_option("--islands", gen_options.islands, "island count");
  gen->add_option("--extra-lines", gen_options.extra_lines, "lines beyond a spanning tree");
  gen->add_option("--seed", gen_options.seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(solve_flags);
    if (oracle->parsed()) return cmd_oracle(oracle_flags);
    if (validate->parsed()) return cmd_validate(validate_path);
    if (flow->parsed()) return cmd_flow(flow_path);
    if (coherency->parsed()) return cmd_coherency(coherency_flags);
    if (gen->parsed()) return cmd_gen(gen_out, gen_options);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
