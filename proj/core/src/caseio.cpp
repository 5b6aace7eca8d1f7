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

#include "gridsplit/caseio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gridsplit/coherency.hpp"
#include "gridsplit/dispatch.hpp"
#include "gridsplit/error.hpp"

namespace gridsplit {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Deterministic JSON emission. Keys are written in a fixed order and numbers
// with 17 significant digits, so equal values produce equal bytes and
// doubles survive a round trip exactly.

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(long long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

std::string int_array(std::span<const int> xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out + "]";
}

std::string double_array(std::span<const double> xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Parsing helpers carrying a field path into every error message.

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  raise(ErrorCode::ParseError, path + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path + "." + key, "missing required field");
  return *it;
}

double num_req(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number()) parse_fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double num_or(const json& obj, const char* key, const std::string& path, double def) {
  const auto it = obj.find(key);
  if (it == obj.end()) return def;
  if (!it->is_number()) parse_fail(path + "." + key, "expected a number");
  return it->get<double>();
}

int int_req(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_integer()) parse_fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool bool_or(const json& obj, const char* key, const std::string& path, bool def) {
  const auto it = obj.find(key);
  if (it == obj.end()) return def;
  if (!it->is_boolean()) parse_fail(path + "." + key, "expected a boolean");
  return it->get<bool>();
}

std::string str_req(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) parse_fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

int line_of_offset(const std::string& text, size_t byte) {
  return 1 + static_cast<int>(std::count(text.begin(),
                                         text.begin() + std::min(byte, text.size()), '\n'));
}

void check_explicit_flows(const PowerSystem& sys) {
  // Flows must balance the full pre-islanding load: loads draw max_load,
  // junctions draw nothing, and the implied generator output stays
  // nonnegative.
  std::vector<double> outflow(sys.bus_count(), 0.0);
  for (const Line& line : sys.lines) {
    outflow[line.from] += line.pre_flow;
    outflow[line.to] -= line.pre_flow;
  }
  for (const Bus& b : sys.buses) {
    switch (b.kind) {
      case BusKind::Load:
        if (std::abs(outflow[b.id] + b.max_load) > 1e-6)
          raise(ErrorCode::InvalidField,
                "bus " + std::to_string(b.id) + ": flows violate conservation by " +
                    fmt(std::abs(outflow[b.id] + b.max_load)) + " MW");
        break;
      case BusKind::Junction:
        if (std::abs(outflow[b.id]) > 1e-6)
          raise(ErrorCode::InvalidField,
                "bus " + std::to_string(b.id) + ": flows violate conservation by " +
                    fmt(std::abs(outflow[b.id])) + " MW");
        break;
      case BusKind::Generator:
        if (outflow[b.id] < -1e-6)
          raise(ErrorCode::InvalidField,
                "bus " + std::to_string(b.id) + ": implied generation is negative");
        break;
    }
  }
}

ObjectiveWeights parse_weights(const json& w, const std::string& path) {
  ObjectiveWeights out;
  if (const auto it = w.find("alpha"); it != w.end()) {
    if (!it->is_array() || it->size() != 6)
      parse_fail(path + ".alpha", "expected an array of 6 numbers");
    for (int i = 0; i < 6; ++i) {
      if (!(*it)[i].is_number()) parse_fail(path + ".alpha", "expected an array of 6 numbers");
      out.alpha[i] = (*it)[i].get<double>();
      if (!(out.alpha[i] > 0.0)) parse_fail(path + ".alpha", "weights must be positive");
    }
  }
  out.beta = num_or(w, "beta", path, out.beta);
  out.gamma = num_or(w, "gamma", path, out.gamma);
  out.epsilon = num_or(w, "epsilon", path, out.epsilon);
  out.z_offset = num_or(w, "Z", path, out.z_offset);
  if (!(out.beta > 0.0)) parse_fail(path + ".beta", "must be positive");
  if (!(out.gamma > 0.0)) parse_fail(path + ".gamma", "must be positive");
  if (out.epsilon < 0.0 || out.epsilon >= 0.5)
    parse_fail(path + ".epsilon", "must lie in [0, 0.5)");
  if (out.z_offset < 0.0) parse_fail(path + ".Z", "must be nonnegative");
  return out;
}

}  // namespace

LoadedCase load_case_from_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::ParseError,
          origin + ":" + std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!root.is_object()) raise(ErrorCode::ParseError, origin + ": top level must be an object");

  if (str_req(root, "schema_version", origin) != "1")
    parse_fail(origin + ".schema_version", "unsupported schema version");

  const json& buses = member(root, "buses", origin);
  if (!buses.is_array()) parse_fail(origin + ".buses", "expected an array");

  PowerSystem sys;
  for (size_t i = 0; i < buses.size(); ++i) {
    const std::string path = origin + ".buses[" + std::to_string(i) + "]";
    const json& jb = buses[i];
    if (!jb.is_object()) parse_fail(path, "expected an object");
    Bus b;
    b.id = int_req(jb, "id", path);
    const std::string kind = str_req(jb, "kind", path);
    if (kind == "generator") {
      b.kind = BusKind::Generator;
      b.gen_capacity = num_req(jb, "gen_capacity", path);
      b.inertia = num_or(jb, "inertia", path, 1.0);
      b.voltage = num_or(jb, "voltage", path, 1.0);
      b.rotor_angle = num_or(jb, "rotor_angle", path, 0.0);
      b.blackstart = bool_or(jb, "blackstart", path, false);
    } else if (kind == "load") {
      b.kind = BusKind::Load;
      b.max_load = num_req(jb, "max_load", path);
      b.shed_cost_slope = num_or(jb, "shed_cost_slope", path, 1.0);
    } else if (kind == "junction") {
      b.kind = BusKind::Junction;
    } else {
      parse_fail(path + ".kind", "expected generator, load or junction");
    }
    sys.buses.push_back(b);
  }

  const json& lines = member(root, "lines", origin);
  if (!lines.is_array()) parse_fail(origin + ".lines", "expected an array");
  bool flows_complete = !lines.empty();
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string path = origin + ".lines[" + std::to_string(i) + "]";
    const json& jl = lines[i];
    if (!jl.is_object()) parse_fail(path, "expected an object");
    Line line;
    line.id = static_cast<int>(i);
    line.from = int_req(jl, "from", path);
    line.to = int_req(jl, "to", path);
    line.susceptance = num_or(jl, "susceptance", path, 1.0);
    line.capacity = num_req(jl, "capacity", path);
    if (jl.contains("pre_flow")) {
      line.pre_flow = num_req(jl, "pre_flow", path);
    } else {
      flows_complete = false;
    }
    if (line.from > line.to) {
      std::swap(line.from, line.to);
      line.pre_flow = -line.pre_flow;
    }
    sys.lines.push_back(line);
  }

  const json& jrefs = member(root, "refs", origin);
  if (!jrefs.is_array()) parse_fail(origin + ".refs", "expected an array of bus ids");
  std::vector<int> refs;
  for (const json& r : jrefs) {
    if (!r.is_number_integer()) parse_fail(origin + ".refs", "expected an array of bus ids");
    refs.push_back(r.get<int>());
  }

  LoadedCase out{validate_system(sys, refs), DenseMatrix(), ObjectiveWeights()};
  PowerSystem& vsys = out.system.sys;

  if (!flows_complete) {
    // Fill the operating point: full load, capacity-proportional generation.
    std::vector<double> injections(vsys.bus_count(), 0.0);
    double total_load = 0.0;
    double total_capacity = 0.0;
    for (const Bus& b : vsys.buses) {
      if (b.kind == BusKind::Load) total_load += b.max_load;
      if (b.kind == BusKind::Generator) total_capacity += b.gen_capacity;
    }
    if (total_load > 0.0 && total_capacity <= 0.0)
      raise(ErrorCode::InvalidField, "no generation capacity to cover the load");
    for (const Bus& b : vsys.buses) {
      if (b.kind == BusKind::Load) injections[b.id] = -b.max_load;
      if (b.kind == BusKind::Generator && total_capacity > 0.0)
        injections[b.id] = total_load * b.gen_capacity / total_capacity;
    }
    const std::vector<double> flows = dc_power_flow(vsys, injections);
    for (Line& line : vsys.lines) line.pre_flow = flows[line.id];
  } else {
    check_explicit_flows(vsys);
  }

  if (const auto it = root.find("weights"); it != root.end()) {
    if (!it->is_object()) parse_fail(origin + ".weights", "expected an object");
    out.weights = parse_weights(*it, origin + ".weights");
  }

  const std::vector<int> gens = vsys.generator_ids();
  if (const auto it = root.find("coherence_matrix"); it != root.end()) {
    const std::string path = origin + ".coherence_matrix";
    if (!it->is_array() || it->size() != gens.size())
      parse_fail(path, "expected one row per generator bus");
    out.coherence = DenseMatrix(static_cast<int>(gens.size()), out.system.island_count());
    for (size_t r = 0; r < it->size(); ++r) {
      const json& row = (*it)[r];
      if (!row.is_array() || static_cast<int>(row.size()) != out.system.island_count())
        parse_fail(path, "expected one column per island");
      for (int c = 0; c < out.system.island_count(); ++c) {
        if (!row[c].is_number()) parse_fail(path, "expected numeric entries");
        out.coherence(static_cast<int>(r), c) = row[c].get<double>();
      }
    }
  } else {
    out.coherence = build_coherency(out.system).coherence;
  }

  return out;
}

LoadedCase load_case(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_case_from_text(buffer.str(), path);
}

namespace {

std::string plan_to_json_text(const ValidatedSystem& vsys, const IslandingResult& result) {
  const PowerSystem& sys = vsys.sys;
  const std::vector<int> loads = sys.load_ids();
  const std::vector<int> retained = induced_retained_lines(sys, result.strategy.retained);
  std::vector<char> retained_mask(sys.line_count(), 0);
  for (int l : retained) retained_mask[l] = 1;
  std::vector<int> tripped;
  for (int l = 0; l < sys.line_count(); ++l)
    if (!retained_mask[l]) tripped.push_back(l);

  std::vector<Island> islands = islands_of(sys, result.strategy.retained, vsys.refs);
  std::sort(islands.begin(), islands.end(),
            [](const Island& a, const Island& b) { return a.index < b.index; });

  std::vector<double> served_by_bus(sys.bus_count(), 0.0);
  std::vector<double> max_by_bus(sys.bus_count(), 0.0);
  for (size_t i = 0; i < loads.size(); ++i) {
    served_by_bus[loads[i]] = result.strategy.served[i];
    max_by_bus[loads[i]] = sys.buses[loads[i]].max_load;
  }

  std::string out = "{\n";
  out += "  \"schema_version\": \"1\",\n";
  out += "  \"islands\": [\n";
  for (size_t k = 0; k < islands.size(); ++k) {
    const Island& isl = islands[k];
    double capacity = 0.0;
    double served = 0.0;
    double shed = 0.0;
    int blackstart = 0;
    for (int bid : isl.buses) {
      const Bus& b = sys.buses[bid];
      if (b.kind == BusKind::Generator) {
        capacity += b.gen_capacity;
        if (b.blackstart) ++blackstart;
      } else if (b.kind == BusKind::Load) {
        served += served_by_bus[bid];
        shed += max_by_bus[bid] - served_by_bus[bid];
      }
    }
    out += "    {\"index\": " + fmt(isl.index) +
           ", \"reference\": " + fmt(isl.reference) +
           ", \"buses\": " + int_array(isl.buses) +
           ", \"gen_capacity_mw\": " + fmt(capacity) +
           ", \"served_load_mw\": " + fmt(served) +
           ", \"shed_mw\": " + fmt(shed) +
           ", \"blackstart_count\": " + fmt(blackstart) + "}";
    out += (k + 1 < islands.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"tripped_lines\": " + int_array(tripped) + ",\n";
  out += "  \"retained_lines\": " + int_array(retained) + ",\n";
  out += "  \"served_load\": [\n";
  for (size_t i = 0; i < loads.size(); ++i) {
    out += "    {\"bus\": " + fmt(loads[i]) +
           ", \"served_mw\": " + fmt(result.strategy.served[i]) +
           ", \"max_mw\": " + fmt(sys.buses[loads[i]].max_load) + "}";
    out += (i + 1 < loads.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  const ObjectiveBreakdown& b = result.breakdown;
  out += "  \"objective\": {\"f1\": " + fmt(b.f1) + ", \"f2\": " + fmt(b.f2) +
         ", \"f3\": " + fmt(b.f3) + ", \"f4\": " + fmt(b.f4) + ", \"f5\": " + fmt(b.f5) +
         ", \"f6\": " + fmt(b.f6) + ", \"sink_penalty\": " + fmt(b.sink_penalty) +
         ", \"total\": " + fmt(b.total) + "},\n";
  out += "  \"iterations\": " + fmt(result.iterations) + ",\n";
  out += "  \"swaps_evaluated\": " + fmt(result.swaps_evaluated) + ",\n";
  out += std::string("  \"terminated_by\": ") +
         (result.terminated_by == TerminationReason::LocalOptimum
              ? "\"local_optimum\""
              : "\"iteration_cap\"") +
         "\n";
  out += "}\n";
  return out;
}

const char* kIslandPalette[] = {
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
    "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd",
};

std::string plan_to_dot_text(const ValidatedSystem& vsys, const IslandingResult& result) {
  const PowerSystem& sys = vsys.sys;
  const std::vector<int> retained = induced_retained_lines(sys, result.strategy.retained);
  std::vector<char> retained_mask(sys.line_count(), 0);
  for (int l : retained) retained_mask[l] = 1;

  const std::vector<Island> islands = islands_of(sys, result.strategy.retained, vsys.refs);
  std::vector<int> island_of(sys.bus_count(), -1);
  for (const Island& isl : islands) {
    if (isl.index == 0) continue;  // no unique reference: leave unassigned
    for (int bid : isl.buses) island_of[bid] = isl.index;
  }

  std::string out = "graph islanding {\n";
  out += "  overlap=false;\n  node [style=filled fontname=\"Helvetica\"];\n";
  for (const Bus& b : sys.buses) {
    std::string attrs;
    if (island_of[b.id] < 0) {
      attrs = "fillcolor=\"black\" fontcolor=\"white\"";
    } else {
      const int color = (island_of[b.id] - 1) % 10;
      attrs = std::string("fillcolor=\"") + kIslandPalette[color] + "\"";
    }
    switch (b.kind) {
      case BusKind::Generator: attrs += " shape=doublecircle"; break;
      case BusKind::Load: attrs += " shape=circle"; break;
      case BusKind::Junction: attrs += " shape=diamond"; break;
    }
    for (int r : vsys.refs)
      if (r == b.id) attrs += " penwidth=3";
    out += "  " + fmt(b.id) + " [" + attrs + "];\n";
  }
  for (const Line& line : sys.lines) {
    std::string attrs = retained_mask[line.id]
                            ? "color=\"gray40\""
                            : "color=\"red\" style=dashed penwidth=2";
    out += "  " + fmt(line.from) + " -- " + fmt(line.to) + " [" + attrs + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace

std::string export_plan(const ValidatedSystem& vsys, const IslandingResult& result,
                        PlanFormat format) {
  return format == PlanFormat::Json ? plan_to_json_text(vsys, result)
                                    : plan_to_dot_text(vsys, result);
}

std::string case_to_json(const PowerSystem& sys, std::span<const int> refs,
                         const ObjectiveWeights* weights,
                         const DenseMatrix* coherence) {
  std::string out = "{\n  \"schema_version\": \"1\",\n  \"buses\": [\n";
  for (int i = 0; i < sys.bus_count(); ++i) {
    const Bus& b = sys.buses[i];
    out += "    {\"id\": " + fmt(b.id);
    switch (b.kind) {
      case BusKind::Generator:
        out += ", \"kind\": \"generator\", \"gen_capacity\": " + fmt(b.gen_capacity) +
               ", \"inertia\": " + fmt(b.inertia) + ", \"voltage\": " + fmt(b.voltage) +
               ", \"rotor_angle\": " + fmt(b.rotor_angle) +
               ", \"blackstart\": " + (b.blackstart ? "true" : "false");
        break;
      case BusKind::Load:
        out += ", \"kind\": \"load\", \"max_load\": " + fmt(b.max_load) +
               ", \"shed_cost_slope\": " + fmt(b.shed_cost_slope);
        break;
      case BusKind::Junction:
        out += ", \"kind\": \"junction\"";
        break;
    }
    out += (i + 1 < sys.bus_count()) ? "},\n" : "}\n";
  }
  out += "  ],\n  \"lines\": [\n";
  for (int i = 0; i < sys.line_count(); ++i) {
    const Line& l = sys.lines[i];
    out += "    {\"from\": " + fmt(l.from) + ", \"to\": " + fmt(l.to) +
           ", \"susceptance\": " + fmt(l.susceptance) +
           ", \"capacity\": " + fmt(l.capacity) +
           ", \"pre_flow\": " + fmt(l.pre_flow);
    out += (i + 1 < sys.line_count()) ? "},\n" : "}\n";
  }
  out += "  ],\n  \"refs\": " + int_array(refs);
  if (weights != nullptr) {
    out += ",\n  \"weights\": {\"alpha\": [";
    for (int i = 0; i < 6; ++i) {
      if (i) out += ", ";
      out += fmt(weights->alpha[i]);
    }
    out += "], \"beta\": " + fmt(weights->beta) + ", \"gamma\": " + fmt(weights->gamma) +
           ", \"epsilon\": " + fmt(weights->epsilon) + ", \"Z\": " + fmt(weights->z_offset) + "}";
  }
  if (coherence != nullptr) {
    out += ",\n  \"coherence_matrix\": [\n";
    for (int r = 0; r < coherence->rows(); ++r) {
      std::vector<double> row(coherence->cols());
      for (int c = 0; c < coherence->cols(); ++c) row[c] = (*coherence)(r, c);
      out += "    " + double_array(row);
      out += (r + 1 < coherence->rows()) ? ",\n" : "\n";
    }
    out += "  ]";
  }
  out += "\n}\n";
  return out;
}

}  // namespace gridsplit
