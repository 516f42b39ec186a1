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

// Independent reference implementations used as test oracles. They share no
// code with the engine beyond the data model and instance enumeration.

#ifndef TMM_TESTS_REFERENCE_HPP_
#define TMM_TESTS_REFERENCE_HPP_

#include <set>
#include <string>
#include <vector>

#include "tmm/engine.hpp"
#include "tmm/model.hpp"

namespace ref {

/// True when the instances can fire together: bound objects never exceed the
/// available copies, each mover moves once, and no endo target also moves.
bool conflict_free(const tmm::System& system, const std::vector<tmm::RuleInstance>& choice);

/// Every step choice built by exhaustive search over instance multisets and
/// filtered by the two-tier maximality condition. Choices come back sorted.
std::set<std::vector<tmm::RuleInstance>> brute_force_maximal(const tmm::System& system);

/// Instances of find_instances that could still be added to `choice`.
std::vector<tmm::RuleInstance> addable(const tmm::System& system,
                                       const std::vector<tmm::RuleInstance>& choice);

/// Straightforward step interpreter: rules, then the timed phases.
tmm::Configuration apply(const tmm::System& system, const std::vector<tmm::RuleInstance>& choice);

/// Canonical keys of apply() over brute_force_maximal().
std::set<std::string> successor_keys(const tmm::System& system);

}  // namespace ref

#endif  // TMM_TESTS_REFERENCE_HPP_
