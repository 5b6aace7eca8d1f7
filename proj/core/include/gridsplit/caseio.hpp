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

#ifndef GRIDSPLIT_CASEIO_HPP
#define GRIDSPLIT_CASEIO_HPP

#include <span>
#include <string>

#include "gridsplit/model.hpp"
#include "gridsplit/numerics.hpp"
#include "gridsplit/objectives.hpp"
#include "gridsplit/search.hpp"

namespace gridsplit {

/// A parsed, validated case: the system, the coherence matrix (taken from
/// the file or derived from the swing model) and the objective weights with
/// file overrides applied.
struct LoadedCase {
  ValidatedSystem system;
  DenseMatrix coherence;
  ObjectiveWeights weights;
};

/// Reads a schema_version "1" case file. Missing line flows are filled by
/// the linearized power flow at full load with capacity-proportional
/// generation; flows given in the file must satisfy conservation under the
/// full pre-islanding load within 1e-6 MW. Parse failures carry the line
/// and field; validation failures propagate from validate_system.
LoadedCase load_case(const std::string& path);
LoadedCase load_case_from_text(const std::string& text,
                               const std::string& origin = "<string>");

enum class PlanFormat { Json, Dot };

/// Serializes a solve result. JSON plans have a stable key order and numbers
/// printed with 17 significant digits, so identical results are
/// byte-identical files; DOT output colors each island, dashes tripped lines
/// red and paints buses outside every island black.
std::string export_plan(const ValidatedSystem& vsys, const IslandingResult& result,
                        PlanFormat format);

/// Case serialization (same number formatting as plans). The coherence
/// matrix and weight block are optional.
std::string case_to_json(const PowerSystem& sys, std::span<const int> refs,
                         const ObjectiveWeights* weights = nullptr,
                         const DenseMatrix* coherence = nullptr);

}  // namespace gridsplit

#endif  // GRIDSPLIT_CASEIO_HPP
