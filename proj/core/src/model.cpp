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

#include "gridsplit/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "gridsplit/error.hpp"
#include "gridsplit/union_find.hpp"

namespace gridsplit {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

std::string bus_label(int id) { return "bus " + std::to_string(id); }

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::DuplicateLine: return "DuplicateLine";
    case ErrorCode::BadReference: return "BadReference";
    case ErrorCode::InsufficientBlackstart: return "InsufficientBlackstart";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::SingularInteriorBlock: return "SingularInteriorBlock";
    case ErrorCode::MissingGeneratorData: return "MissingGeneratorData";
    case ErrorCode::SingularU1: return "SingularU1";
    case ErrorCode::UnbalancedInjections: return "UnbalancedInjections";
    case ErrorCode::SingularB: return "SingularB";
    case ErrorCode::LpFailure: return "LpFailure";
    case ErrorCode::LoadBoundViolated: return "LoadBoundViolated";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadZ: return "BadZ";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::DisconnectedGraph:
    case ErrorCode::DuplicateLine:
    case ErrorCode::BadReference:
    case ErrorCode::InsufficientBlackstart:
    case ErrorCode::InvalidField:
    case ErrorCode::ParseError:
    case ErrorCode::LoadBoundViolated:
      return true;
    default:
      return false;
  }
}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

std::vector<int> PowerSystem::generator_ids() const {
  std::vector<int> out;
  for (const Bus& b : buses)
    if (b.kind == BusKind::Generator) out.push_back(b.id);
  return out;
}

std::vector<int> PowerSystem::load_ids() const {
  std::vector<int> out;
  for (const Bus& b : buses)
    if (b.kind == BusKind::Load) out.push_back(b.id);
  return out;
}

ValidatedSystem validate_system(const PowerSystem& sys, std::vector<int> refs) {
  const int n = sys.bus_count();
  if (n == 0) raise(ErrorCode::InvalidField, "system has no buses");

  for (int i = 0; i < n; ++i) {
    const Bus& b = sys.buses[i];
    if (b.id != i)
      raise(ErrorCode::InvalidField,
            "bus ids must be contiguous 0..n-1; position " + std::to_string(i) +
                " holds id " + std::to_string(b.id));
    if (!finite_nonneg(b.gen_capacity) || !finite_nonneg(b.max_load) ||
        !finite_nonneg(b.shed_cost_slope))
      raise(ErrorCode::InvalidField,
            bus_label(b.id) + ": capacities, loads and cost slopes must be finite and nonnegative");
    const bool has_gen_fields = b.gen_capacity > 0.0 || b.inertia > 0.0 ||
                                b.voltage > 0.0 || b.rotor_angle != 0.0 || b.blackstart;
    const bool has_load_fields = b.max_load > 0.0 || b.shed_cost_slope > 0.0;
    switch (b.kind) {
      case BusKind::Generator:
        if (has_load_fields)
          raise(ErrorCode::InvalidField, bus_label(b.id) + ": generator bus carries load fields");
        break;
      case BusKind::Load:
        if (has_gen_fields)
          raise(ErrorCode::InvalidField, bus_label(b.id) + ": load bus carries generator fields");
        break;
      case BusKind::Junction:
        if (has_gen_fields || has_load_fields)
          raise(ErrorCode::InvalidField, bus_label(b.id) + ": junction bus carries injection fields");
        break;
    }
  }

  std::set<std::pair<int, int>> seen;
  for (int l = 0; l < sys.line_count(); ++l) {
    const Line& line = sys.lines[l];
    if (line.id != l)
      raise(ErrorCode::InvalidField, "line ids must be contiguous 0..L-1");
    if (line.from < 0 || line.from >= n || line.to < 0 || line.to >= n)
      raise(ErrorCode::InvalidField, "line " + std::to_string(l) + ": endpoint out of range");
    if (line.from == line.to)
      raise(ErrorCode::DuplicateLine, "line " + std::to_string(l) + " is a self-loop");
    if (line.from > line.to)
      raise(ErrorCode::InvalidField,
            "line " + std::to_string(l) + ": endpoints must be stored with from < to");
    if (!seen.insert({line.from, line.to}).second)
      raise(ErrorCode::DuplicateLine,
            "more than one line between buses " + std::to_string(line.from) + " and " +
                std::to_string(line.to));
    if (!std::isfinite(line.capacity) || line.capacity <= 0.0)
      raise(ErrorCode::InvalidField, "line " + std::to_string(l) + ": capacity must be finite and positive");
    if (!std::isfinite(line.susceptance) || line.susceptance <= 0.0)
      raise(ErrorCode::InvalidField, "line " + std::to_string(l) + ": susceptance must be finite and positive");
    if (!std::isfinite(line.pre_flow))
      raise(ErrorCode::InvalidField, "line " + std::to_string(l) + ": flow must be finite");
  }

  UnionFind uf(n);
  for (const Line& line : sys.lines) uf.unite(line.from, line.to);
  if (uf.components() != 1)
    raise(ErrorCode::DisconnectedGraph,
          std::to_string(uf.components()) + " components; the network must be connected");

  if (refs.empty()) raise(ErrorCode::BadReference, "no reference generators given");
  std::set<int> distinct;
  for (int r : refs) {
    if (r < 0 || r >= n || sys.buses[r].kind != BusKind::Generator)
      raise(ErrorCode::BadReference, bus_label(r) + " is not a generator");
    if (!distinct.insert(r).second)
      raise(ErrorCode::BadReference, bus_label(r) + " referenced twice");
  }

  int blackstart_count = 0;
  for (const Bus& b : sys.buses)
    if (b.kind == BusKind::Generator && b.blackstart) ++blackstart_count;
  if (blackstart_count < static_cast<int>(refs.size()))
    raise(ErrorCode::InsufficientBlackstart,
          std::to_string(blackstart_count) + " blackstart generators for " +
              std::to_string(refs.size()) + " islands");

  return ValidatedSystem{sys, std::move(refs)};
}

std::vector<int> component_labels(const PowerSystem& sys,
                                  std::span<const int> retained_lines) {
  UnionFind uf(sys.bus_count());
  for (int l : retained_lines) uf.unite(sys.lines[l].from, sys.lines[l].to);

  // Scanning buses in id order assigns labels ordered by the smallest
  // contained bus id.
  std::vector<int> labels(sys.bus_count(), -1);
  std::map<int, int> root_to_label;
  for (int b = 0; b < sys.bus_count(); ++b) {
    const int root = uf.find(b);
    const auto it = root_to_label.try_emplace(root, static_cast<int>(root_to_label.size())).first;
    labels[b] = it->second;
  }
  return labels;
}

std::vector<Island> islands_of(const PowerSystem& sys,
                               std::span<const int> retained_lines,
                               std::span<const int> refs) {
  const std::vector<int> labels = component_labels(sys, retained_lines);
  const int count = *std::max_element(labels.begin(), labels.end()) + 1;

  std::vector<Island> islands(count);
  for (int b = 0; b < sys.bus_count(); ++b) islands[labels[b]].buses.push_back(b);
  for (const Line& line : sys.lines)
    if (labels[line.from] == labels[line.to])
      islands[labels[line.from]].lines.push_back(line.id);

  for (size_t k = 0; k < refs.size(); ++k) {
    Island& isl = islands[labels[refs[k]]];
    if (isl.reference < 0) {
      isl.reference = refs[k];
      isl.index = static_cast<int>(k) + 1;
    } else {
      // Two references in one component: no unique assignment.
      isl.reference = -1;
      isl.index = 0;
    }
  }
  return islands;
}

bool is_valid_islanding(const PowerSystem& sys,
                        std::span<const int> retained_lines,
                        std::span<const int> refs) {
  const std::vector<int> labels = component_labels(sys, retained_lines);
  const int count = *std::max_element(labels.begin(), labels.end()) + 1;
  if (count != static_cast<int>(refs.size())) return false;
  std::vector<int> refs_in(count, 0);
  for (int r : refs) ++refs_in[labels[r]];
  return std::all_of(refs_in.begin(), refs_in.end(), [](int c) { return c == 1; });
}

std::vector<int> induced_retained_lines(const PowerSystem& sys,
                                        std::span<const int> retained_lines) {
  const std::vector<int> labels = component_labels(sys, retained_lines);
  std::vector<int> out;
  for (const Line& line : sys.lines)
    if (labels[line.from] == labels[line.to]) out.push_back(line.id);
  return out;
}

}  // namespace gridsplit
