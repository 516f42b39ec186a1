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

#ifndef TMM_EXPLORER_HPP_
#define TMM_EXPLORER_HPP_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tmm/ambient.hpp"
#include "tmm/engine.hpp"
#include "tmm/model.hpp"

namespace tmm {

inline constexpr std::size_t kDefaultNodeCap = 100000;

struct GraphNode {
  std::string key;
  std::size_t depth = 0;     // first seen, breadth-first
  bool expanded = false;
  bool halted = false;       // only successor is itself
  Configuration config;      // membrane graphs
  Process process;           // ambient graphs
};

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string label;
  bool time = false;         // ambient time step
  StepEvents events;         // membrane steps
};

/// Deduplicated transition graph. Node 0 is the root. Nodes are numbered in
/// breadth-first discovery order, which is deterministic because successor
/// lists are sorted by key.
struct ReachGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::map<std::string, std::size_t> index;
  std::size_t depth_bound = 0;
  bool truncated = false;    // node cap reached; the graph is partial

  std::vector<std::size_t> successors_of(std::size_t node) const;
};

/// Expands every node first seen at depth < `depth`.
ReachGraph explore_membranes(const System& system, std::size_t depth,
                             std::size_t node_cap = kDefaultNodeCap);
ReachGraph explore_ambients(const Process& p, std::size_t depth,
                            std::size_t node_cap = kDefaultNodeCap);

/// layers[k] = nodes reachable by walks of exactly k edges, k = 0..depth_bound.
std::vector<std::set<std::size_t>> layers(const ReachGraph& g);

/// Shortest-path depth of every node, recomputed independently of BFS order.
std::vector<std::size_t> shortest_depths(const ReachGraph& g);

enum class Outcome { Pass, Fail, Inconclusive };
std::string outcome_name(Outcome o);

struct Verdict {
  std::string property;
  Outcome outcome = Outcome::Pass;
  std::vector<std::string> witnesses;  // failures
  std::vector<std::string> notes;      // informative findings
  std::map<std::string, std::size_t> stats;

  bool pass() const { return outcome == Outcome::Pass; }
  void fail(std::string witness);
  /// Combines another verdict into this one (fail > inconclusive > pass).
  void absorb(const Verdict& other, const std::string& prefix = "");
};

/// Compares two membrane graphs whose node keys are erased with `project`:
/// erased node sets, erased edge sets, per-depth layers and per-depth output
/// readings. Symmetric in its arguments.
Verdict compare_erased(const ReachGraph& a, const ReachGraph& b, const std::string& property);

/// Untimed system versus its embedding with infinite timers.
Verdict check_prop1(const System& untimed, std::size_t depth, std::size_t node_cap = kDefaultNodeCap);

/// Timed system versus its counter compilation: per-depth projected sets,
/// membrane counts, counter bookkeeping.
Verdict check_prop2(const System& timed, std::size_t depth, std::size_t node_cap = kDefaultNodeCap);

/// Ambient graph versus single rule applications on the translation. The
/// forward direction fails on a missing membrane edge. The backward direction
/// fails when a membrane successor has no preimage and notes preimages that are
/// not ambient successors.
Verdict check_prop45(const Process& p, std::size_t depth, bool strict,
                     std::size_t node_cap = kDefaultNodeCap);

}  // namespace tmm

#endif  // TMM_EXPLORER_HPP_
