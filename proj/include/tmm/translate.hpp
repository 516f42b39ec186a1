/*
 * Copyright 2026 The tmm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TMM_TRANSLATE_HPP_
#define TMM_TRANSLATE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmm/ambient.hpp"
#include "tmm/model.hpp"

namespace tmm {

/// Label of the membrane that wraps a translated process.
inline constexpr const char* kAmbientSkin = "@skin";

/// Object spelling of a capability: in.m, out.m and their co-objects.
Symbol capability_symbol(CapKind kind, const std::string& target);

/// Capabilities become objects in the enclosing region (prefix order is
/// dropped), ambients become membranes, tags are dropped.
Configuration translate(const Process& p);

/// Endo and exo rules for every ambient n and capability target m that names
/// an ambient. `strict` keeps the mover's timer unchanged.
std::vector<Rule> generate_rules(const Process& p, bool strict);

/// translate + generate_rules as a timed system.
System translate_system(const Process& p, bool strict);

/// Canonical key used to compare translated configurations: timers erased
/// unless `exact`.
std::string comparison_key(const Configuration& config, bool exact);

/// Processes Q with translate(Q) equal to `config` (under comparison_key with
/// `exact`). Each region's capabilities form one prefix chain in every possible
/// order. At most `limit` results, sorted by key.
std::vector<Process> preimages(const Configuration& config, bool exact, std::size_t limit = 10000);

struct CorrespondenceMiss {
  std::string from;  // ambient P
  std::string to;    // ambient Q
  std::string expected;  // key of translate(Q)
};

struct CorrespondenceReport {
  bool pass = true;
  std::size_t edges_checked = 0;
  std::vector<CorrespondenceMiss> misses;
};

/// Every non-time ambient edge reachable within `depth` steps of `p` has a
/// matching single-application edge from the translation of its source.
CorrespondenceReport check_correspondence_pq(const Process& p, std::size_t depth, bool strict);

struct RemarkReport {
  bool pass = false;
  bool degenerate = false;  // no reordered preimage exists
  std::string n_key;        // the membrane configuration reached
  std::string reduct;       // the ambient step that reaches it
  std::string reordered;    // a preimage that is not a reduct
  std::vector<std::string> preimages;
};

/// One-step check that the translation forgets prefix order: a membrane
/// successor of translate(p) has a preimage that p cannot reach in one step.
/// Runs in strict mode so timers compare exactly.
RemarkReport check_remark(const Process& p);

}  // namespace tmm

#endif  // TMM_TRANSLATE_HPP_
