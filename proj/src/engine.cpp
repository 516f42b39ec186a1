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

#include "tmm/engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <utility>

#include "tmm/error.hpp"

namespace tmm {

namespace {

struct NodeInfo {
  const Membrane* membrane = nullptr;
  std::uint64_t parent = 0;  // 0 for the skin
};

using Index = std::unordered_map<std::uint64_t, NodeInfo>;

void build_index(const Membrane& m, std::uint64_t parent, Index& index) {
  index[m.uid] = NodeInfo{&m, parent};
  for (const auto& child : m.children) build_index(child, m.uid, index);
}

Index build_index(const Configuration& config) {
  Index index;
  build_index(config.skin, 0, index);
  return index;
}

Membrane* find_membrane(Membrane& root, std::uint64_t uid) {
  if (root.uid == uid) return &root;
  for (auto& child : root.children)
    if (Membrane* found = find_membrane(child, uid)) return found;
  return nullptr;
}

bool usable(const Timer& t, bool timed) { return !timed || t.positive(); }

std::vector<bool> carried_positions(std::size_t lhs_size, const std::vector<RhsItem>& rhs) {
  std::vector<bool> carried(lhs_size, false);
  for (const auto& item : rhs)
    if (item.timer.kind == RhsTimer::Kind::Carry && item.timer.carry_position < lhs_size)
      carried[item.timer.carry_position] = true;
  return carried;
}

/// All assignments of occurrence classes to the left-hand positions, one per
/// binding-equivalence class: positions sharing (symbol, carried) draw a
/// non-decreasing sequence of classes.
std::vector<std::vector<TimedObject>> enumerate_bindings(const std::vector<Symbol>& lhs,
                                                         const std::vector<bool>& carried,
                                                         const ObjectMultiset& content,
                                                         bool timed) {
  std::map<std::pair<Symbol, bool>, std::vector<std::size_t>> group_map;
  for (std::size_t i = 0; i < lhs.size(); ++i) group_map[{lhs[i], carried[i]}].push_back(i);
  struct Group {
    std::vector<std::size_t> positions;
    std::vector<TimedObject> classes;
  };
  std::vector<Group> groups;
  for (auto& [key, positions] : group_map) {
    Group g;
    g.positions = positions;
    for (const auto& [obj, n] : content)
      if (obj.sym == key.first && usable(obj.timer, timed)) g.classes.push_back(obj);
    if (g.classes.empty()) return {};
    groups.push_back(std::move(g));
  }

  std::map<TimedObject, std::size_t> remaining;
  for (const auto& [obj, n] : content) remaining[obj] = n;

  std::vector<std::vector<TimedObject>> out;
  std::vector<TimedObject> binding(lhs.size());
  std::function<void(std::size_t, std::size_t, std::size_t)> fill =
      [&](std::size_t g, std::size_t j, std::size_t min_class) {
        if (g == groups.size()) {
          out.push_back(binding);
          return;
        }
        const Group& group = groups[g];
        if (j == group.positions.size()) {
          fill(g + 1, 0, 0);
          return;
        }
        for (std::size_t c = min_class; c < group.classes.size(); ++c) {
          auto& left = remaining[group.classes[c]];
          if (left == 0) continue;
          --left;
          binding[group.positions[j]] = group.classes[c];
          fill(g, j + 1, c);
          ++left;
        }
      };
  fill(0, 0, 0);
  return out;
}

bool context_present(const Rule& rule, const Membrane& passive) {
  std::map<Symbol, std::size_t> need;
  for (const auto& s : rule.context) ++need[s];
  for (const auto& [s, n] : need)
    if (passive.content.count_symbol(s) < n) return false;
  return true;
}

void add_pair_instances(std::size_t r, const Rule& rule, const Membrane& active,
                        const Membrane& passive, bool timed,
                        std::vector<RuleInstance>& out) {
  if (!context_present(rule, passive)) return;
  const auto a_lhs = rule.active_lhs();
  const auto p_lhs = rule.passive_lhs();
  const auto a_bind =
      enumerate_bindings(a_lhs, carried_positions(a_lhs.size(), rule.w), active.content, timed);
  if (a_bind.empty()) return;
  const auto p_bind = enumerate_bindings(
      p_lhs, carried_positions(p_lhs.size(), rule.w_passive), passive.content, timed);
  for (const auto& ab : a_bind)
    for (const auto& pb : p_bind)
      out.push_back(RuleInstance{r, active.uid, passive.uid, ab, pb});
}

// ---------------------------------------------------------------------------
// Conflict bookkeeping shared by choice enumeration, validation and audits.

using Resource = std::pair<std::uint64_t, TimedObject>;

struct Demand {
  std::vector<std::pair<Resource, std::size_t>> objects;
  bool mobile = false;
  bool endo = false;
  std::uint64_t active = 0;
  std::uint64_t passive = 0;
};

Demand demand_of(const RuleInstance& inst, const Rule& rule) {
  std::map<Resource, std::size_t> counts;
  for (const auto& o : inst.active_binding) ++counts[{inst.active, o}];
  for (const auto& o : inst.passive_binding) ++counts[{inst.passive, o}];
  Demand d;
  d.objects.assign(counts.begin(), counts.end());
  d.mobile = rule.kind != RuleKind::Rewrite;
  d.endo = rule.kind == RuleKind::Endo;
  d.active = inst.active;
  d.passive = inst.passive;
  return d;
}

class ConflictState {
 public:
  explicit ConflictState(const Configuration& config) { load(config.skin); }

  /// How many more copies of the instance fit.
  std::size_t capacity(const Demand& d) const {
    if (d.mobile) {
      if (actives_.count(d.active) || endo_passives_.count(d.active)) return 0;
      if (d.endo && actives_.count(d.passive)) return 0;
    }
    if (d.objects.empty() && !d.mobile) return 0;
    std::size_t cap = d.mobile ? 1 : std::numeric_limits<std::size_t>::max();
    for (const auto& [res, n] : d.objects) {
      auto it = available_.find(res);
      const std::size_t have = it == available_.end() ? 0 : it->second;
      cap = std::min(cap, have / n);
    }
    return cap;
  }

  void take(const Demand& d, std::size_t k) {
    if (k == 0) return;
    for (const auto& [res, n] : d.objects) available_[res] -= n * k;
    if (d.mobile) {
      actives_.insert(d.active);
      if (d.endo) endo_passives_.insert(d.passive);
    }
  }

  void give(const Demand& d, std::size_t k) {
    if (k == 0) return;
    for (const auto& [res, n] : d.objects) available_[res] += n * k;
    if (d.mobile) {
      actives_.erase(d.active);
      if (d.endo) {
        auto it = endo_passives_.find(d.passive);
        if (it != endo_passives_.end()) endo_passives_.erase(it);
      }
    }
  }

 private:
  void load(const Membrane& m) {
    for (const auto& [obj, n] : m.content) available_[{m.uid, obj}] = n;
    for (const auto& child : m.children) load(child);
  }

  std::map<Resource, std::size_t> available_;
  std::set<std::uint64_t> actives_;
  std::multiset<std::uint64_t> endo_passives_;
};

bool any_fits(const std::vector<Demand>& demands, const ConflictState& state) {
  for (const auto& d : demands)
    if (state.capacity(d) > 0) return true;
  return false;
}

/// Enumerates multiplicity vectors over `demands`; calls `leaf` at every
/// complete assignment. Multiplicities are tried from high to low so the
/// first leaves are the greedy ones.
void enumerate_multisets(const std::vector<Demand>& demands, ConflictState& state,
                         std::vector<std::size_t>& mult,
                         const std::function<void()>& leaf, std::size_t i = 0) {
  if (i == demands.size()) {
    leaf();
    return;
  }
  const std::size_t cap = state.capacity(demands[i]);
  for (std::size_t k = cap + 1; k-- > 0;) {
    state.take(demands[i], k);
    mult[i] = k;
    enumerate_multisets(demands, state, mult, leaf, i + 1);
    state.give(demands[i], k);
  }
  mult[i] = 0;
}

StepChoice make_choice(const std::vector<const RuleInstance*>& instances,
                       const std::vector<std::size_t>& mult) {
  StepChoice choice;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t k = 0; k < mult[i]; ++k) choice.instances.push_back(*instances[i]);
  std::sort(choice.instances.begin(), choice.instances.end());
  return choice;
}

void subtract_bindings(Configuration& config, const StepChoice& choice) {
  for (const auto& inst : choice.instances) {
    Membrane* a = find_membrane(config.skin, inst.active);
    for (const auto& o : inst.active_binding) a->content.remove(o);
    if (inst.passive != 0) {
      Membrane* p = find_membrane(config.skin, inst.passive);
      for (const auto& o : inst.passive_binding) p->content.remove(o);
    }
  }
}

TimedObject produce(const RhsItem& item, const std::vector<TimedObject>& binding) {
  if (item.timer.kind == RhsTimer::Kind::Fresh) return TimedObject{item.sym, item.timer.fresh};
  const Timer bound = binding.at(item.timer.carry_position).timer;
  return TimedObject{item.sym, bound.positive() ? bound.decremented() : bound};
}

void tick_objects(Membrane& m, StepEvents& events) {
  ObjectMultiset next;
  for (const auto& [obj, n] : m.content) {
    if (!obj.timer.positive()) {
      events.objects_expired += n;
      continue;
    }
    next.add(TimedObject{obj.sym, obj.timer.decremented()}, n);
  }
  m.content = std::move(next);
  for (auto& child : m.children) tick_objects(child, events);
}

void mark_expired_membranes(Membrane& m, const std::set<std::uint64_t>& actives) {
  for (auto& child : m.children) {
    if (!child.timer.positive() && !actives.count(child.uid))
      child.content.add(TimedObject{delta_symbol(), Timer::infinite()});
    mark_expired_membranes(child, actives);
  }
}

bool remove_delta(ObjectMultiset& content) {
  bool found = false;
  std::vector<TimedObject> deltas;
  for (const auto& [obj, n] : content)
    if (obj.sym == delta_symbol()) deltas.push_back(obj);
  for (const auto& d : deltas) {
    content.remove(d, content.count(d));
    found = true;
  }
  return found;
}

void dissolve_marked(Membrane& m, StepEvents& events) {
  for (auto& child : m.children) dissolve_marked(child, events);
  std::vector<Membrane> kept;
  kept.reserve(m.children.size());
  std::vector<Membrane> spilled;
  for (auto& child : m.children) {
    if (remove_delta(child.content)) {
      ++events.membranes_dissolved;
      m.content += child.content;
      for (auto& grandchild : child.children) spilled.push_back(std::move(grandchild));
    } else {
      kept.push_back(std::move(child));
    }
  }
  for (auto& s : spilled) kept.push_back(std::move(s));
  m.children = std::move(kept);
}

void tick_membranes(Membrane& m, const std::set<std::uint64_t>& actives, bool is_skin) {
  if (!is_skin && !actives.count(m.uid) && m.timer.positive()) m.timer = m.timer.decremented();
  for (auto& child : m.children) tick_membranes(child, actives, false);
}

void check_choice(const System& system, const StepChoice& choice) {
  const auto instances = find_instances(system);
  const std::set<RuleInstance> known(instances.begin(), instances.end());
  ConflictState state(system.config);
  for (const auto& inst : choice.instances) {
    if (!known.count(inst))
      throw InvalidChoice("instance not applicable to this configuration: " + describe(inst));
    const Demand d = demand_of(inst, system.rules[inst.rule]);
    if (state.capacity(d) == 0)
      throw InvalidChoice("conflicting instances in choice: " + describe(inst));
    state.take(d, 1);
  }
}

/// Phase one: consume bindings, emit right-hand sides, move membranes.
/// Returns the uids of the active membranes.
std::set<std::uint64_t> apply_rules(const System& system, const StepChoice& choice,
                                    Configuration& next, std::vector<Membrane>& detached,
                                    StepEvents& events,
                                    std::map<std::uint64_t, ObjectMultiset>& produced) {
  const Index pre = build_index(system.config);
  subtract_bindings(next, choice);

  std::set<std::uint64_t> actives;
  for (const auto& inst : choice.instances) {
    const Rule& rule = system.rules[inst.rule];
    events.objects_consumed += inst.active_binding.size() + inst.passive_binding.size();
    for (const auto& item : rule.w) {
      produced[inst.active].add(produce(item, inst.active_binding));
      if (item.sym != delta_symbol()) ++events.objects_produced;
    }
    for (const auto& item : rule.w_passive) {
      produced[inst.passive].add(produce(item, inst.passive_binding));
      if (item.sym != delta_symbol()) ++events.objects_produced;
    }
    if (rule.kind == RuleKind::Rewrite) continue;
    actives.insert(inst.active);
    if (system.timed && !rule.hold) {
      Membrane* a = find_membrane(next.skin, inst.active);
      a->timer = a->timer.decremented();
    }
  }

  // Detach every mover, then attach at its destination. Destinations never
  // move in the same step (an endo target is never also active).
  std::map<std::uint64_t, Membrane> moving;
  for (const auto& inst : choice.instances) {
    if (system.rules[inst.rule].kind == RuleKind::Rewrite) continue;
    Membrane* parent = find_membrane(next.skin, pre.at(inst.active).parent);
    auto it = std::find_if(parent->children.begin(), parent->children.end(),
                           [&](const Membrane& c) { return c.uid == inst.active; });
    moving.emplace(inst.active, std::move(*it));
    parent->children.erase(it);
  }
  for (const auto& inst : choice.instances) {
    const Rule& rule = system.rules[inst.rule];
    if (rule.kind == RuleKind::Rewrite) continue;
    Membrane mover = std::move(moving.at(inst.active));
    if (rule.kind == RuleKind::Endo) {
      find_membrane(next.skin, inst.passive)->children.push_back(std::move(mover));
      continue;
    }
    const std::uint64_t outer = pre.at(inst.passive).parent;
    if (outer == 0) {
      // Left the system: keep its own right-hand side, then freeze it.
      if (auto p = produced.find(mover.uid); p != produced.end()) {
        mover.content += p->second;
        produced.erase(p);
      }
      detached.push_back(std::move(mover));
    } else {
      find_membrane(next.skin, outer)->children.push_back(std::move(mover));
    }
  }
  return actives;
}

void merge_produced(Configuration& next, const std::map<std::uint64_t, ObjectMultiset>& produced) {
  for (const auto& [uid, objs] : produced)
    if (Membrane* m = find_membrane(next.skin, uid)) m->content += objs;
}

std::vector<Demand> demands_of(const System& system, const std::vector<const RuleInstance*>& insts) {
  std::vector<Demand> out;
  out.reserve(insts.size());
  for (const auto* inst : insts) out.push_back(demand_of(*inst, system.rules[inst->rule]));
  return out;
}

}  // namespace

std::vector<RuleInstance> find_instances(const System& system) {
  const Index index = build_index(system.config);
  // Deterministic membrane order: preorder by uid.
  std::vector<std::uint64_t> uids;
  uids.reserve(index.size());
  for (const auto& [uid, info] : index) uids.push_back(uid);
  std::sort(uids.begin(), uids.end());

  std::vector<RuleInstance> out;
  const bool timed = system.timed;
  for (std::size_t r = 0; r < system.rules.size(); ++r) {
    const Rule& rule = system.rules[r];
    for (const auto uid : uids) {
      const NodeInfo& info = index.at(uid);
      const Membrane& m = *info.membrane;
      if (m.label != rule.active_label || !usable(m.timer, timed)) continue;
      if (rule.kind == RuleKind::Rewrite) {
        const auto lhs = rule.active_lhs();
        for (auto& b : enumerate_bindings(lhs, carried_positions(lhs.size(), rule.w), m.content,
                                          timed))
          out.push_back(RuleInstance{r, m.uid, 0, std::move(b), {}});
        continue;
      }
      if (!m.elementary() || info.parent == 0) continue;
      const Membrane& parent = *index.at(info.parent).membrane;
      if (rule.kind == RuleKind::Endo) {
        for (const auto& sibling : parent.children) {
          if (sibling.uid == m.uid || sibling.label != rule.passive_label ||
              !usable(sibling.timer, timed))
            continue;
          add_pair_instances(r, rule, m, sibling, timed, out);
        }
      } else if (parent.label == rule.passive_label && usable(parent.timer, timed)) {
        add_pair_instances(r, rule, m, parent, timed, out);
      }
    }
  }
  return out;
}

std::vector<StepChoice> maximal_choices(const System& system) {
  const auto instances = find_instances(system);
  std::vector<const RuleInstance*> mobile, rewrites;
  for (const auto& inst : instances)
    (system.rules[inst.rule].kind == RuleKind::Rewrite ? rewrites : mobile).push_back(&inst);
  const auto mobile_d = demands_of(system, mobile);
  const auto rewrite_d = demands_of(system, rewrites);

  std::vector<StepChoice> out;
  ConflictState state(system.config);
  std::vector<std::size_t> mobile_mult(mobile.size(), 0), rewrite_mult(rewrites.size(), 0);
  enumerate_multisets(mobile_d, state, mobile_mult, [&] {
    if (any_fits(mobile_d, state)) return;
    enumerate_multisets(rewrite_d, state, rewrite_mult, [&] {
      if (any_fits(rewrite_d, state)) return;
      StepChoice a = make_choice(mobile, mobile_mult);
      StepChoice b = make_choice(rewrites, rewrite_mult);
      a.instances.insert(a.instances.end(), b.instances.begin(), b.instances.end());
      std::sort(a.instances.begin(), a.instances.end());
      out.push_back(std::move(a));
    });
  });
  return out;
}

std::vector<RuleInstance> residual_instances(const System& system, const StepChoice& choice) {
  ConflictState state(system.config);
  for (const auto& inst : choice.instances)
    state.take(demand_of(inst, system.rules[inst.rule]), 1);
  std::vector<RuleInstance> out;
  for (const auto& inst : find_instances(system))
    if (state.capacity(demand_of(inst, system.rules[inst.rule])) > 0) out.push_back(inst);
  return out;
}

StepResult apply_step(const System& system, const StepChoice& choice) {
  check_choice(system, choice);

  StepResult result;
  result.config = system.config;
  std::map<std::uint64_t, ObjectMultiset> produced;
  const auto actives =
      apply_rules(system, choice, result.config, result.detached, result.events, produced);

  if (system.timed) tick_objects(result.config.skin, result.events);
  merge_produced(result.config, produced);
  if (system.timed) mark_expired_membranes(result.config.skin, actives);
  dissolve_marked(result.config.skin, result.events);
  remove_delta(result.config.skin.content);
  if (system.timed) tick_membranes(result.config.skin, actives, true);
  return result;
}

std::vector<Successor> successors(const System& system) {
  std::vector<Successor> out;
  std::set<std::string> seen;
  for (auto& choice : maximal_choices(system)) {
    StepResult result = apply_step(system, choice);
    std::string key = canonicalize(result.config);
    if (!seen.insert(key).second) continue;
    out.push_back(Successor{std::move(choice), std::move(result), std::move(key)});
  }
  return out;
}

std::vector<Successor> rule_applications(const System& system) {
  const auto instances = find_instances(system);
  std::vector<const RuleInstance*> all;
  for (const auto& inst : instances) all.push_back(&inst);
  const auto demands = demands_of(system, all);

  std::vector<Successor> out;
  std::set<std::string> seen;
  ConflictState state(system.config);
  std::vector<std::size_t> mult(all.size(), 0);
  enumerate_multisets(demands, state, mult, [&] {
    StepChoice choice = make_choice(all, mult);
    if (choice.instances.empty()) return;
    StepResult result;
    result.config = system.config;
    std::map<std::uint64_t, ObjectMultiset> produced;
    apply_rules(system, choice, result.config, result.detached, result.events, produced);
    merge_produced(result.config, produced);
    std::string key = canonicalize(result.config);
    if (!seen.insert(key).second) return;
    out.push_back(Successor{std::move(choice), std::move(result), std::move(key)});
  });
  return out;
}

Trace run(const System& system, std::size_t steps, Selector selector) {
  Trace trace;
  std::mt19937_64 rng(selector.seed);
  System current = system;
  TraceStep initial;
  initial.config = current.config;
  initial.key = canonicalize(current.config);
  trace.steps.push_back(std::move(initial));

  for (std::size_t step = 1; step <= steps; ++step) {
    auto succ = successors(current);
    if (succ.size() == 1 && succ.front().key == trace.steps.back().key) {
      trace.halted = true;
      trace.steps.back().halted = true;
      break;
    }
    std::size_t pick = 0;
    if (selector.kind == Selector::Kind::Seeded) pick = static_cast<std::size_t>(rng() % succ.size());
    Successor& chosen = succ[pick];
    TraceStep ts;
    ts.step = step;
    ts.choice = std::move(chosen.choice);
    ts.config = chosen.result.config;
    ts.key = std::move(chosen.key);
    ts.detached = std::move(chosen.result.detached);
    current.config = std::move(chosen.result.config);
    trace.steps.push_back(std::move(ts));
  }
  return trace;
}

std::string describe(const RuleInstance& instance) {
  std::string out = "r" + std::to_string(instance.rule) + " " + std::to_string(instance.active);
  if (instance.passive != 0) out += "->" + std::to_string(instance.passive);
  out += " [";
  for (std::size_t i = 0; i < instance.active_binding.size(); ++i) {
    if (i) out += ' ';
    out += instance.active_binding[i].to_string();
  }
  if (instance.passive != 0) {
    out += " |";
    for (const auto& o : instance.passive_binding) out += " " + o.to_string();
  }
  out += "]";
  return out;
}

std::string describe(const StepChoice& choice) {
  if (choice.instances.empty()) return "tick";
  std::string out;
  for (const auto& inst : choice.instances) {
    if (!out.empty()) out += ", ";
    out += describe(inst);
  }
  return out;
}

}  // namespace tmm
