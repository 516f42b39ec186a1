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

#ifndef TMM_ENGINE_HPP_
#define TMM_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmm/model.hpp"

namespace tmm {

/// One applicable use of a rule. Bindings list the bound occurrence class for
/// every left-hand position of each side, in rule order. Within a run of
/// positions that share a symbol and carry status the classes are sorted, so
/// instances that only differ by permuting equal-typed occurrences coincide.
struct RuleInstance {
  std::size_t rule = 0;
  /// Moving membrane, or the host membrane of a rewrite.
  std::uint64_t active = 0;
  /// 0 for rewrites.
  std::uint64_t passive = 0;
  std::vector<TimedObject> active_binding;
  std::vector<TimedObject> passive_binding;

  auto operator<=>(const RuleInstance&) const = default;
};

/// Sorted multiset of instances.
struct StepChoice {
  std::vector<RuleInstance> instances;

  auto operator<=>(const StepChoice&) const = default;
};

/// Per-step bookkeeping used by the conservation audit and the corpus checks.
struct StepEvents {
  std::size_t objects_expired = 0;     // removed at timer zero
  std::size_t membranes_dissolved = 0; // via delta, timer-driven or produced
  std::size_t objects_consumed = 0;    // bound by rule instances
  std::size_t objects_produced = 0;    // right-hand sides (delta excluded)
};

struct StepResult {
  Configuration config;
  /// Membranes that left the skin this step; they no longer evolve.
  std::vector<Membrane> detached;
  StepEvents events;
};

/// Every instance whose structural and timer preconditions hold, exhaustive up
/// to binding equivalence. Rewrites are included.
std::vector<RuleInstance> find_instances(const System& system);

/// Conflict-free, maximal step choices. Mobility rules are chosen first and
/// rewrites fill the residue, so every choice is also maximal over the union.
/// Returns {empty choice} when nothing applies.
std::vector<StepChoice> maximal_choices(const System& system);

/// Runs one global step: rule application, then (timed systems only) object
/// dissolution, object ticking, membrane dissolution and membrane ticking.
/// Throws InvalidChoice for a choice that does not fit the configuration.
StepResult apply_step(const System& system, const StepChoice& choice);

/// Instances still applicable after removing the choice's bound objects and
/// occupied membranes from the pre-step configuration. Empty for maximal
/// choices.
std::vector<RuleInstance> residual_instances(const System& system,
                                             const StepChoice& choice);

struct Successor {
  StepChoice choice;
  StepResult result;
  std::string key;
};

/// apply_step over every maximal choice, deduplicated by canonical key.
std::vector<Successor> successors(const System& system);

/// Applies any nonempty conflict-free set of instances (no maximality) without
/// the time-passing phases. This is the single-application relation used for
/// the ambient correspondence; deduplicated by canonical key.
std::vector<Successor> rule_applications(const System& system);

struct TraceStep {
  std::size_t step = 0;
  StepChoice choice;
  Configuration config;
  std::string key;
  std::vector<Membrane> detached;
  bool halted = false;
};

struct Trace {
  std::vector<TraceStep> steps;  // steps[0] is the initial configuration
  bool halted = false;
};

struct Selector {
  enum class Kind { First, Seeded } kind = Kind::First;
  std::uint64_t seed = 0;

  static Selector first() { return {}; }
  static Selector seeded(std::uint64_t seed) { return {Kind::Seeded, seed}; }
};

/// Repeatedly applies one maximal choice. Stops early once the only successor
/// is the current configuration.
Trace run(const System& system, std::size_t steps, Selector selector);

std::string describe(const RuleInstance& instance);
std::string describe(const StepChoice& choice);

}  // namespace tmm

#endif  // TMM_ENGINE_HPP_
