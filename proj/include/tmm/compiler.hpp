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

#ifndef TMM_COMPILER_HPP_
#define TMM_COMPILER_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tmm/model.hpp"

namespace tmm {

// Counter objects are plain symbols spelled b$<base>$<count>. The base is the
// object's spelling (co-objects keep their ~) or @<label> for a membrane.

Symbol object_counter(const Symbol& base, std::uint32_t count);
Symbol membrane_counter(const std::string& label, std::uint32_t count);
bool is_counter(const Symbol& sym);

struct CounterInfo {
  bool membrane = false;
  Symbol base;        // object counters
  std::string label;  // membrane counters
  std::uint32_t count = 0;
};
std::optional<CounterInfo> parse_counter(const Symbol& sym);

/// Largest timer `x` is ever given: initial occurrences and fresh right-hand
/// sides. Throws CompileError when `x` only occurs with timer inf or not at all.
std::uint32_t lifetime(const Symbol& x, const System& system);

/// Untimed system -> timed system with every timer set to inf.
System embed_infinite(const System& untimed);

/// Symbols and membrane labels whose timers are all inf. Their time never
/// passes, so the compilation gives them no counters.
struct Untracked {
  std::set<Symbol> objects;
  std::set<std::string> labels;
};

/// Throws CompileError when a symbol or label mixes finite and inf timers.
Untracked untracked(const System& timed);

/// Timed system -> untimed system that tracks elapsed time with counter
/// objects. Each symbol and label must be consistently finite or inf; rewrite
/// rules in the input are rejected.
System eliminate_timers(const System& timed);

/// Drops counter objects and erases every timer (set to inf). Idempotent.
Configuration project(const Configuration& config);

/// Problems with the counter bookkeeping of a compiled configuration: each
/// tracked object needs exactly one counter in its membrane and every tracked
/// non-skin membrane exactly one membrane counter.
std::vector<std::string> counter_violations(const Configuration& compiled,
                                            const Untracked& untracked = {});

}  // namespace tmm

#endif  // TMM_COMPILER_HPP_
