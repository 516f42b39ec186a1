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

#ifndef TMM_AMBIENT_HPP_
#define TMM_AMBIENT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tmm/model.hpp"

namespace tmm {

enum class CapKind { In, Out, CoIn, CoOut };

struct Capability {
  CapKind kind = CapKind::In;
  std::string target;
  Timer timer;

  auto operator<=>(const Capability&) const = default;
};

/// "in", "out", "~in", "~out".
std::string cap_keyword(CapKind kind);

enum class Tag { Active, Passive };

/// Timed safe ambient process. `parts` holds the continuation of a Prefix, the
/// body of an Amb (one element each) or the components of a Par.
struct Process {
  enum class Kind { Zero, Prefix, Amb, Par };

  Kind kind = Kind::Zero;
  Capability cap;    // Prefix
  std::string name;  // Amb
  Timer timer;       // Amb
  Tag tag = Tag::Active;
  std::vector<Process> parts;

  bool operator==(const Process&) const = default;
};

Process zero();
Process prefix(Capability cap, Process cont);
Process ambient(std::string name, Timer timer, Process body, Tag tag = Tag::Active);
Process parallel(std::vector<Process> parts);

/// Flattens Par, drops Zero components, collapses singleton Par and sorts the
/// components by key. Recursive.
Process normalize(const Process& p);

/// Parallel components of a normalized process: {} for Zero, the parts of a
/// Par, {p} otherwise.
std::vector<Process> components(const Process& p);

/// Ambient names: a letter or '_' followed by letters, digits, '_', '$', '\''.
/// The keywords in, out and inf are excluded.
bool is_ambient_name(std::string_view name);

/// Parses the concrete syntax. The result is normalized and fully active.
/// Throws ParseError.
Process parse_ambient(std::string_view text);

/// Concrete syntax; parse_ambient(to_string(p)) == normalize(p) with tags reset.
std::string to_string(const Process& p);

/// Like to_string but marks passive ambients with ^p. Used as the state key.
std::string key(const Process& p);

bool congruent(const Process& p, const Process& q);

/// Every tag set to active.
Process erase_tags(const Process& p);

/// One global clock tick.
Process phi_delta(const Process& p);

/// A reduction site. `region` is the chain of component indices leading from
/// the root to the parallel context that contains the redex: each index selects
/// an ambient among the components of the current level, and the next level is
/// that ambient's body. For In, `mover` and `target` are sibling components of
/// the region. For Out, `target` is a component of the region and `mover` a
/// component of the target's body. `cap` indexes the mover's body, `cocap` the
/// target's body.
struct Redex {
  CapKind kind = CapKind::In;
  std::vector<std::size_t> region;
  std::size_t mover = 0;
  std::size_t target = 0;
  std::size_t cap = 0;
  std::size_t cocap = 0;

  auto operator<=>(const Redex&) const = default;
};

std::string describe(const Redex& r, const Process& p);

/// All (R-In) and (R-Out) sites of a normalized process: the mover is active,
/// and both ambients and both capabilities have positive timers.
std::vector<Redex> redexes(const Process& p);

/// Whether two redexes touch disjoint parts of the tree and can fire together.
bool independent(const Redex& a, const Redex& b);

/// Fires a pairwise independent set simultaneously; the result is normalized.
Process fire(const Process& p, const std::vector<Redex>& set);

struct AmbientSuccessor {
  std::string label;  // redex descriptions, or "time"
  bool time = false;
  Process process;
  std::string key;
};

/// Every nonempty independent subset of redexes fired at once, deduplicated by
/// key; the single time step when no redex exists.
std::vector<AmbientSuccessor> ambient_successors(const Process& p);

std::vector<Process> reduce_step(const Process& p);

}  // namespace tmm

#endif  // TMM_AMBIENT_HPP_
