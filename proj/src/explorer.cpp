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

#include "tmm/explorer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "tmm/compiler.hpp"
#include "tmm/error.hpp"
#include "tmm/translate.hpp"

namespace tmm {

std::vector<std::size_t> ReachGraph::successors_of(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges)
    if (e.from == node) out.push_back(e.to);
  return out;
}

namespace {

/// Generic breadth-first driver. `expand(node)` returns (key, edge, node)
/// triples for the successors of a node.
template <class Expand>
void bfs(ReachGraph& g, std::size_t depth, std::size_t node_cap, Expand&& expand) {
  g.depth_bound = depth;
  std::deque<std::size_t> queue{0};
  while (!queue.empty() && !g.truncated) {
    const std::size_t id = queue.front();
    queue.pop_front();
    if (g.nodes[id].depth >= depth) continue;
    auto succ = expand(g.nodes[id]);
    bool only_self = !succ.empty();
    for (auto& [node, edge] : succ) {
      auto it = g.index.find(node.key);
      std::size_t to;
      if (it == g.index.end()) {
        if (g.nodes.size() >= node_cap) {
          g.truncated = true;
          break;
        }
        to = g.nodes.size();
        node.depth = g.nodes[id].depth + 1;
        g.index.emplace(node.key, to);
        g.nodes.push_back(std::move(node));
        queue.push_back(to);
      } else {
        to = it->second;
      }
      if (to != id) only_self = false;
      edge.from = id;
      edge.to = to;
      g.edges.push_back(std::move(edge));
    }
    g.nodes[id].expanded = !g.truncated;
    g.nodes[id].halted = !g.truncated && only_self;
  }
}

}  // namespace

ReachGraph explore_membranes(const System& system, std::size_t depth, std::size_t node_cap) {
  ReachGraph g;
  GraphNode root;
  root.config = system.config;
  assign_uids(root.config);
  root.key = canonicalize(root.config);
  g.index.emplace(root.key, 0);
  g.nodes.push_back(std::move(root));
  System scratch = system;
  bfs(g, depth, node_cap, [&](const GraphNode& n) {
    scratch.config = n.config;
    std::vector<std::pair<GraphNode, GraphEdge>> out;
    for (auto& s : successors(scratch)) {
      GraphNode node;
      node.key = s.key;
      node.config = std::move(s.result.config);
      assign_uids(node.config);
      GraphEdge edge;
      edge.label = describe(s.choice);
      edge.events = s.result.events;
      out.emplace_back(std::move(node), std::move(edge));
    }
    return out;
  });
  return g;
}

ReachGraph explore_ambients(const Process& p, std::size_t depth, std::size_t node_cap) {
  ReachGraph g;
  GraphNode root;
  root.process = normalize(p);
  root.key = key(root.process);
  g.index.emplace(root.key, 0);
  g.nodes.push_back(std::move(root));
  bfs(g, depth, node_cap, [&](const GraphNode& n) {
    std::vector<std::pair<GraphNode, GraphEdge>> out;
    for (auto& s : ambient_successors(n.process)) {
      GraphNode node;
      node.key = s.key;
      node.process = std::move(s.process);
      GraphEdge edge;
      edge.label = s.label;
      edge.time = s.time;
      out.emplace_back(std::move(node), std::move(edge));
    }
    return out;
  });
  return g;
}

std::vector<std::set<std::size_t>> layers(const ReachGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  for (const auto& e : g.edges) adj[e.from].push_back(e.to);
  std::vector<std::set<std::size_t>> out{{0}};
  for (std::size_t k = 1; k <= g.depth_bound; ++k) {
    std::set<std::size_t> next;
    for (std::size_t n : out.back())
      for (std::size_t m : adj[n]) next.insert(m);
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<std::size_t> shortest_depths(const ReachGraph& g) {
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.nodes.size(), kUnseen);
  if (g.nodes.empty()) return dist;
  dist[0] = 0;
  // Bellman-Ford style relaxation; independent of the queue discipline.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : g.edges)
      if (dist[e.from] != kUnseen && dist[e.from] + 1 < dist[e.to]) {
        dist[e.to] = dist[e.from] + 1;
        changed = true;
      }
  }
  return dist;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

void Verdict::fail(std::string witness) {
  outcome = Outcome::Fail;
  witnesses.push_back(std::move(witness));
}

void Verdict::absorb(const Verdict& other, const std::string& prefix) {
  if (other.outcome == Outcome::Fail) outcome = Outcome::Fail;
  if (other.outcome == Outcome::Inconclusive && outcome == Outcome::Pass)
    outcome = Outcome::Inconclusive;
  for (const auto& w : other.witnesses) witnesses.push_back(prefix + w);
  for (const auto& n : other.notes) notes.push_back(prefix + n);
  for (const auto& [k, v] : other.stats) stats[k] += v;
}

namespace {

std::string erased_key(const Configuration& c) { return canonicalize(project(c)); }

std::string reading_key(const Configuration& c) {
  std::string out;
  for (const auto& [sym, n] : output_reading(c)) out += sym.to_string() + "*" + std::to_string(n) + ",";
  return out;
}

struct ErasedView {
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;
  std::vector<std::set<std::string>> layer_keys;
  std::vector<std::set<std::string>> layer_readings;
};

ErasedView erase(const ReachGraph& g) {
  ErasedView v;
  std::vector<std::string> keys;
  keys.reserve(g.nodes.size());
  for (const auto& n : g.nodes) {
    keys.push_back(erased_key(n.config));
    v.nodes.insert(keys.back());
  }
  for (const auto& e : g.edges) v.edges.emplace(keys[e.from], keys[e.to]);
  for (const auto& layer : layers(g)) {
    std::set<std::string> ks, rs;
    for (std::size_t n : layer) {
      ks.insert(keys[n]);
      rs.insert(reading_key(g.nodes[n].config));
    }
    v.layer_keys.push_back(std::move(ks));
    v.layer_readings.push_back(std::move(rs));
  }
  return v;
}

template <class T>
void diff_sets(const std::set<T>& a, const std::set<T>& b, const std::string& what,
               const std::function<std::string(const T&)>& show, Verdict& v) {
  for (const auto& x : a)
    if (!b.count(x)) {
      v.fail(what + " only in first: " + show(x));
      return;
    }
  for (const auto& x : b)
    if (!a.count(x)) {
      v.fail(what + " only in second: " + show(x));
      return;
    }
}

}  // namespace

Verdict compare_erased(const ReachGraph& a, const ReachGraph& b, const std::string& property) {
  Verdict v;
  v.property = property;
  v.stats["nodes_first"] = a.nodes.size();
  v.stats["nodes_second"] = b.nodes.size();
  v.stats["edges_first"] = a.edges.size();
  v.stats["edges_second"] = b.edges.size();
  if (a.truncated || b.truncated) {
    v.outcome = Outcome::Inconclusive;
    v.notes.push_back("node cap reached");
    return v;
  }
  const ErasedView ea = erase(a), eb = erase(b);
  const std::function<std::string(const std::string&)> id = [](const std::string& s) { return s; };
  const std::function<std::string(const std::pair<std::string, std::string>&)> arrow =
      [](const std::pair<std::string, std::string>& e) { return e.first + " -> " + e.second; };
  diff_sets(ea.nodes, eb.nodes, "node", id, v);
  diff_sets(ea.edges, eb.edges, "edge", arrow, v);
  const std::size_t depth = std::max(ea.layer_keys.size(), eb.layer_keys.size());
  for (std::size_t k = 0; k < depth; ++k) {
    static const std::set<std::string> none;
    const auto& ka = k < ea.layer_keys.size() ? ea.layer_keys[k] : none;
    const auto& kb = k < eb.layer_keys.size() ? eb.layer_keys[k] : none;
    diff_sets(ka, kb, "depth " + std::to_string(k) + " configuration", id, v);
    const auto& ra = k < ea.layer_readings.size() ? ea.layer_readings[k] : none;
    const auto& rb = k < eb.layer_readings.size() ? eb.layer_readings[k] : none;
    diff_sets(ra, rb, "depth " + std::to_string(k) + " output reading", id, v);
  }
  return v;
}

Verdict check_prop1(const System& untimed, std::size_t depth, std::size_t node_cap) {
  if (untimed.timed) {
    Verdict v;
    v.property = "prop1";
    v.fail("input system is timed");
    return v;
  }
  const ReachGraph a = explore_membranes(untimed, depth, node_cap);
  const ReachGraph b = explore_membranes(embed_infinite(untimed), depth, node_cap);
  return compare_erased(a, b, "prop1");
}

Verdict check_prop2(const System& timed, std::size_t depth, std::size_t node_cap) {
  Verdict v;
  v.property = "prop2";
  const System compiled = eliminate_timers(timed);
  const ReachGraph a = explore_membranes(timed, depth, node_cap);
  const ReachGraph b = explore_membranes(compiled, depth, node_cap);
  v.stats["nodes_timed"] = a.nodes.size();
  v.stats["nodes_compiled"] = b.nodes.size();
  v.stats["compiled_rules"] = compiled.rules.size();
  if (a.truncated || b.truncated) {
    v.outcome = Outcome::Inconclusive;
    v.notes.push_back("node cap reached");
    return v;
  }
  const Untracked skip = untracked(timed);
  for (const auto& n : b.nodes)
    for (const auto& problem : counter_violations(n.config, skip)) v.fail("counter bookkeeping: " + problem);
  const auto la = layers(a), lb = layers(b);
  const std::function<std::string(const std::string&)> id = [](const std::string& s) { return s; };
  const std::function<std::string(const std::size_t&)> num = [](const std::size_t& n) { return std::to_string(n); };
  for (std::size_t k = 0; k < la.size(); ++k) {
    std::set<std::string> ka, kb;
    std::set<std::size_t> ca, cb;
    for (std::size_t n : la[k]) {
      ka.insert(erased_key(a.nodes[n].config));
      ca.insert(membrane_count(a.nodes[n].config));
    }
    for (std::size_t n : lb[k]) {
      kb.insert(erased_key(b.nodes[n].config));
      cb.insert(membrane_count(b.nodes[n].config));
    }
    diff_sets(ka, kb, "depth " + std::to_string(k) + " projected configuration", id, v);
    diff_sets(ca, cb, "depth " + std::to_string(k) + " membrane count", num, v);
  }
  return v;
}

namespace {

Process erase_timers(const Process& p) {
  Process out = erase_tags(p);
  std::function<void(Process&)> walk = [&](Process& q) {
    q.timer = Timer::infinite();
    q.cap.timer = Timer::infinite();
    for (auto& part : q.parts) walk(part);
  };
  walk(out);
  return normalize(out);
}

}  // namespace

Verdict check_prop45(const Process& p, std::size_t depth, bool strict, std::size_t node_cap) {
  Verdict v;
  v.property = "prop45";
  const ReachGraph g = explore_ambients(p, depth, node_cap);
  v.stats["ambient_nodes"] = g.nodes.size();
  if (g.truncated) {
    v.outcome = Outcome::Inconclusive;
    v.notes.push_back("node cap reached");
    return v;
  }
  auto same_process = [&](const Process& x) { return strict ? key(erase_tags(x)) : key(erase_timers(x)); };
  std::size_t forward = 0, backward = 0, unreachable = 0;
  for (std::size_t id = 0; id < g.nodes.size(); ++id) {
    const GraphNode& node = g.nodes[id];
    if (!node.expanded) continue;
    const System sys = translate_system(node.process, strict);
    const auto apps = rule_applications(sys);
    std::set<std::string> app_keys;
    for (const auto& a : apps) app_keys.insert(comparison_key(a.result.config, strict));
    std::set<std::string> reducts;
    for (const auto& e : g.edges) {
      if (e.from != id || e.time) continue;
      const Process& q = g.nodes[e.to].process;
      reducts.insert(same_process(q));
      ++forward;
      const std::string want = comparison_key(translate(q), strict);
      if (!app_keys.count(want))
        v.fail("ambient step " + node.key + " => " + g.nodes[e.to].key + " has no membrane step to " + want);
    }
    for (const auto& a : apps) {
      ++backward;
      const auto pre = preimages(a.result.config, strict);
      const std::string n_key = comparison_key(a.result.config, strict);
      if (pre.empty()) {
        v.fail("membrane step from " + node.key + " to " + n_key + " has no preimage");
        continue;
      }
      for (const auto& q : pre)
        if (!reducts.count(same_process(q))) {
          ++unreachable;
          v.notes.push_back("preimage " + key(q) + " of " + n_key + " is not a one-step reduct of " + node.key);
        }
    }
  }
  v.stats["ambient_edges_checked"] = forward;
  v.stats["membrane_edges_checked"] = backward;
  v.stats["unreachable_preimages"] = unreachable;
  return v;
}

}  // namespace tmm
