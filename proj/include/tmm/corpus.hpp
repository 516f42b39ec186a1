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

#ifndef TMM_CORPUS_HPP_
#define TMM_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tmm/ambient.hpp"
#include "tmm/model.hpp"

namespace tmm {

/// Shape limits for generated systems. Fixed so corpora are reproducible.
struct CorpusLimits {
  std::size_t max_membranes = 4;  // skin included
  std::size_t max_objects = 6;
  std::size_t max_rules = 4;
  std::uint32_t max_timer = 3;
};

/// Seeded random system. Timed systems use finite timers (skin aside) and only
/// endo/exo rules, so they are always accepted by eliminate_timers. Untimed
/// systems may also contain rewrites.
System random_system(std::uint64_t seed, bool timed, const CorpusLimits& limits = {});

/// Seeded random process over a small name set, for syntax round trips.
Process random_process(std::uint64_t seed);

/// Seeded random process whose moving ambients stay elementary for at least
/// two steps: movers hold only in/out capabilities, targets only
/// co-capabilities or further ambients.
Process random_mobile_process(std::uint64_t seed);

struct NamedProcess {
  std::string name;
  std::string text;
};

/// Ten hand-written processes: entries, exits, nesting, co-actions only,
/// expired capabilities and expiring ambients.
std::vector<NamedProcess> hand_processes();

/// The prefix-order counterexample.
inline constexpr const char* kRemarkProcess = "n:4[ in:1 m . in:2 k . out:3 s ] | m:6[ ~in:5 m ]";

}  // namespace tmm

#endif  // TMM_CORPUS_HPP_
