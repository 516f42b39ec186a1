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

#include "tmm/compiler.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tmm/error.hpp"

namespace tmm {

namespace {

constexpr std::string_view kCounterPrefix = "b$";

template <class F>
void for_each_membrane(const Membrane& m, F&& f) {
  f(m);
  for (const auto& child : m.children) for_each_membrane(child, f);
}

template <class F>
void for_each_membrane_mut(Membrane& m, F&& f) {
  f(m);
  for (auto& child : m.children) for_each_membrane_mut(child, f);
}

}  // namespace

Symbol object_counter(const Symbol& base, std::uint32_t count) {
  return Symbol{std::string(kCounterPrefix) + base.to_string() + "$" + std::to_string(count),
                false};
}

Symbol membrane_counter(const std::string& label, std::uint32_t count) {
  return Symbol{std::string(kCounterPrefix) + "@" + label + "$" + std::to_string(count), false};
}

bool is_counter(const Symbol& sym) {
  return !sym.co && sym.name.compare(0, kCounterPrefix.size(), kCounterPrefix) == 0;
}

std::optional<CounterInfo> parse_counter(const Symbol& sym) {
  if (!is_counter(sym)) return std::nullopt;
  const std::string body = sym.name.substr(kCounterPrefix.size());
  const auto dollar = body.rfind('$');
  if (dollar == std::string::npos || dollar == 0 || dollar + 1 == body.size())
    return std::nullopt;
  const std::string base = body.substr(0, dollar);
  const std::string digits = body.substr(dollar + 1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  CounterInfo info;
  info.count = static_cast<std::uint32_t>(std::stoul(digits));
  if (base[0] == '@') {
    info.membrane = true;
    info.label = base.substr(1);
  } else if (base[0] == '~') {
    info.base = Symbol{base.substr(1), true};
  } else {
    info.base = Symbol{base, false};
  }
  return info;
}

namespace {

struct TimerScan {
  bool finite = false;
  bool infinite = false;
  std::uint32_t best = 0;
};

TimerScan scan_symbol(const Symbol& x, const System& system) {
  TimerScan scan;
  auto note = [&](const Timer& t) {
    if (t.is_infinite()) {
      scan.infinite = true;
      return;
    }
    scan.finite = true;
    scan.best = std::max(scan.best, t.value());
  };
  for_each_membrane(system.config.skin, [&](const Membrane& m) {
    for (const auto& [obj, n] : m.content)
      if (obj.sym == x) note(obj.timer);
  });
  for (const auto& rule : system.rules) {
    for (const auto* side : {&rule.w, &rule.w_passive})
      for (const auto& item : *side)
        if (item.sym == x && item.timer.kind == RhsTimer::Kind::Fresh) note(item.timer.fresh);
  }
  return scan;
}

}  // namespace

std::uint32_t lifetime(const Symbol& x, const System& system) {
  const TimerScan scan = scan_symbol(x, system);
  if (!scan.finite && !scan.infinite)
    throw CompileError("symbol " + x.to_string() + " never occurs with a timer");
  if (scan.infinite) throw CompileError("infinite lifetime for " + x.to_string());
  return scan.best;
}

System embed_infinite(const System& untimed) {
  System out = untimed;
  out.timed = true;
  out.compiled = false;
  for_each_membrane_mut(out.config.skin, [](Membrane& m) {
    m.timer = Timer::infinite();
    ObjectMultiset content;
    for (const auto& [obj, n] : m.content) content.add(TimedObject{obj.sym, Timer::infinite()}, n);
    m.content = std::move(content);
  });
  for (auto& rule : out.rules)
    for (auto* side : {&rule.w, &rule.w_passive})
      for (auto& item : *side) item.timer = RhsTimer::make_fresh(Timer::infinite());
  return out;
}

namespace {

struct Lifetimes {
  std::map<Symbol, std::uint32_t> objects;         // finite symbols
  std::map<std::string, std::uint32_t> membranes;  // finite non-skin labels
  Untracked untracked;                            // everything that stays inf
  std::set<std::string> labels;                    // every label, skin included
  std::string skin_label;
};

Lifetimes collect_lifetimes(const System& system) {
  Lifetimes lt;
  lt.skin_label = system.config.skin.label;
  std::set<Symbol> symbols;
  std::set<std::string> finite_labels;
  for_each_membrane(system.config.skin, [&](const Membrane& m) {
    lt.labels.insert(m.label);
    if (&m != &system.config.skin) {
      if (m.label == lt.skin_label)
        throw CompileError("label " + m.label + " is used by the skin and an inner membrane");
      if (m.timer.is_infinite()) {
        lt.untracked.labels.insert(m.label);
      } else {
        finite_labels.insert(m.label);
        auto& best = lt.membranes[m.label];
        best = std::max(best, m.timer.value());
      }
    }
    for (const auto& [obj, n] : m.content) symbols.insert(obj.sym);
  });
  for (const auto& label : lt.untracked.labels)
    if (finite_labels.count(label))
      throw CompileError("label " + label + " has both finite and inf timers");
  for (const auto& rule : system.rules)
    for (const auto* side : {&rule.w, &rule.w_passive})
      for (const auto& item : *side)
        if (item.timer.kind == RhsTimer::Kind::Fresh) symbols.insert(item.sym);
  symbols.erase(delta_symbol());
  for (const auto& s : symbols) {
    const TimerScan scan = scan_symbol(s, system);
    if (scan.finite && scan.infinite)
      throw CompileError("symbol " + s.to_string() + " has both finite and inf timers");
    if (scan.infinite)
      lt.untracked.objects.insert(s);
    else
      lt.objects[s] = scan.best;
  }
  return lt;
}

void check_reserved(const System& system) {
  auto check = [](const Symbol& s) {
    if (s.name.compare(0, kCounterPrefix.size(), kCounterPrefix) == 0)
      throw CompileError("symbol " + s.to_string() + " collides with counter spelling");
  };
  for_each_membrane(system.config.skin, [&](const Membrane& m) {
    for (const auto& [obj, n] : m.content) check(obj.sym);
  });
  for (const auto& rule : system.rules) {
    if (rule.kind == RuleKind::Rewrite)
      throw CompileError("rewrite rules cannot be compiled; only endo/exo systems are supported");
    for (const auto& s : rule.active_lhs()) check(s);
    for (const auto& s : rule.passive_lhs()) check(s);
    for (const auto& s : rule.context) check(s);
    for (const auto* side : {&rule.w, &rule.w_passive})
      for (const auto& item : *side) check(item.sym);
  }
}

RhsItem plain(const Symbol& s) { return RhsItem{s, RhsTimer::make_fresh(Timer::infinite())}; }

Rule rewrite(const std::string& at, std::vector<Symbol> lhs, std::vector<Symbol> rhs) {
  Rule r;
  r.kind = RuleKind::Rewrite;
  r.active_label = at;
  r.u = std::move(lhs);
  for (auto& s : rhs) r.w.push_back(plain(s));
  return r;
}

/// Odometer over per-position ranges [0, bound_i).
bool next_vector(std::vector<std::uint32_t>& v, const std::vector<std::uint32_t>& bounds) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < bounds[i]) return true;
    v[i] = 0;
  }
  return false;
}

/// Counter values bound at each left-hand position; empty for untracked
/// symbols.
using BoundCounts = std::vector<std::optional<std::uint32_t>>;

std::vector<RhsItem> compile_rhs(const std::vector<RhsItem>& rhs, const BoundCounts& bound,
                                 const Lifetimes& lt) {
  std::vector<RhsItem> out;
  for (const auto& item : rhs) {
    out.push_back(plain(item.sym));
    if (item.sym == delta_symbol() || lt.untracked.objects.count(item.sym)) continue;
    std::uint32_t count = 0;
    if (item.timer.kind == RhsTimer::Kind::Carry) {
      count = *bound.at(item.timer.carry_position) + 1;
    } else {
      if (item.timer.fresh.is_infinite())
        throw CompileError("fresh timer inf for " + item.sym.to_string());
      count = lt.objects.at(item.sym) - item.timer.fresh.value();
    }
    out.push_back(plain(object_counter(item.sym, count)));
  }
  return out;
}

Rule sorted_rule(Rule r) {
  // Untimed compiled rules have no carries, so position order is irrelevant.
  auto by_sym = [](std::vector<Symbol>& v) { std::sort(v.begin(), v.end()); };
  auto by_item = [](std::vector<RhsItem>& v) { std::sort(v.begin(), v.end()); };
  by_sym(r.u);
  by_sym(r.v);
  by_sym(r.v_passive);
  by_sym(r.context);
  by_item(r.w);
  by_item(r.w_passive);
  return r;
}

void compile_mobility(const Rule& rule, const Lifetimes& lt, std::vector<Rule>& out,
                      std::set<std::string>& seen) {
  if (rule.active_label == lt.skin_label) return;  // the skin never moves
  const bool active_tracked = lt.membranes.count(rule.active_label) > 0;
  if (!active_tracked && !lt.untracked.labels.count(rule.active_label)) return;
  if (!lt.labels.count(rule.passive_label)) return;
  const auto a_lhs = rule.active_lhs();
  const auto p_lhs = rule.passive_lhs();

  // One odometer position per tracked left-hand object, then the active and
  // passive membrane counters when those are tracked.
  std::vector<std::uint32_t> bounds;
  std::vector<std::optional<std::size_t>> slot;  // lhs position -> odometer index
  for (const auto* lhs : {&a_lhs, &p_lhs})
    for (const auto& s : *lhs) {
      if (lt.untracked.objects.count(s)) {
        slot.push_back(std::nullopt);
        continue;
      }
      auto it = lt.objects.find(s);
      if (it == lt.objects.end() || it->second == 0) return;  // never bindable
      slot.push_back(bounds.size());
      bounds.push_back(it->second);
    }
  std::optional<std::size_t> active_slot, passive_slot;
  if (active_tracked) {
    const std::uint32_t life = lt.membranes.at(rule.active_label);
    if (life == 0) return;
    active_slot = bounds.size();
    bounds.push_back(life);
  }
  if (lt.membranes.count(rule.passive_label)) {
    const std::uint32_t life = lt.membranes.at(rule.passive_label);
    if (life == 0) return;
    passive_slot = bounds.size();
    bounds.push_back(life);
  }

  std::vector<std::uint32_t> counts(bounds.size(), 0);
  do {
    BoundCounts a_counts, p_counts;
    for (std::size_t i = 0; i < slot.size(); ++i) {
      std::optional<std::uint32_t> c;
      if (slot[i]) c = counts[*slot[i]];
      (i < a_lhs.size() ? a_counts : p_counts).push_back(c);
    }

    Rule c;
    c.kind = rule.kind;
    c.active_label = rule.active_label;
    c.passive_label = rule.passive_label;
    c.u = rule.u;
    c.v = rule.v;
    for (std::size_t i = 0; i < a_lhs.size(); ++i)
      if (a_counts[i]) c.v.push_back(object_counter(a_lhs[i], *a_counts[i]));
    c.v_passive = rule.v_passive;
    for (std::size_t i = 0; i < p_lhs.size(); ++i)
      if (p_counts[i]) c.v_passive.push_back(object_counter(p_lhs[i], *p_counts[i]));
    for (const auto& s : rule.context) c.context.push_back(s);
    if (passive_slot) c.context.push_back(membrane_counter(rule.passive_label, counts[*passive_slot]));
    c.w = compile_rhs(rule.w, a_counts, lt);
    c.w_passive = compile_rhs(rule.w_passive, p_counts, lt);
    if (active_slot) {
      const std::uint32_t t = counts[*active_slot];
      c.v.push_back(membrane_counter(rule.active_label, t));
      c.w.push_back(plain(membrane_counter(rule.active_label, rule.hold ? t : t + 1)));
    }
    c = sorted_rule(std::move(c));
    if (seen.insert(describe(c)).second) out.push_back(std::move(c));
  } while (next_vector(counts, bounds));
}

}  // namespace

Untracked untracked(const System& timed) { return collect_lifetimes(timed).untracked; }

System eliminate_timers(const System& timed) {
  if (!timed.timed) throw CompileError("input system is already untimed");
  check_reserved(timed);
  const Lifetimes lt = collect_lifetimes(timed);

  System out;
  out.timed = false;
  out.compiled = true;
  out.config = timed.config;
  for_each_membrane_mut(out.config.skin, [&](Membrane& m) {
    ObjectMultiset content;
    for (const auto& [obj, n] : m.content) {
      content.add(TimedObject{obj.sym, Timer::infinite()}, n);
      if (lt.untracked.objects.count(obj.sym)) continue;
      content.add(TimedObject{object_counter(obj.sym, lt.objects.at(obj.sym) - obj.timer.value()),
                              Timer::infinite()},
                  n);
    }
    if (&m != &out.config.skin && !lt.untracked.labels.count(m.label))
      content.add(TimedObject{membrane_counter(m.label, lt.membranes.at(m.label) - m.timer.value()),
                              Timer::infinite()});
    m.content = std::move(content);
    m.timer = Timer::infinite();
  });

  // Object time: tick and kill, in every region an object can reach.
  for (const auto& label : lt.labels) {
    for (const auto& [sym, life] : lt.objects) {
      for (std::uint32_t t = 0; t < life; ++t)
        out.rules.push_back(rewrite(label, {sym, object_counter(sym, t)},
                                    {sym, object_counter(sym, t + 1)}));
      out.rules.push_back(rewrite(label, {sym, object_counter(sym, life)}, {}));
    }
  }
  // Mobility rules over all admissible counter vectors.
  std::set<std::string> seen;
  for (const auto& rule : timed.rules) compile_mobility(rule, lt, out.rules, seen);
  // Membrane time: tick, then mark for dissolution.
  for (const auto& [label, life] : lt.membranes) {
    for (std::uint32_t t = 0; t < life; ++t)
      out.rules.push_back(rewrite(label, {membrane_counter(label, t)}, {membrane_counter(label, t + 1)}));
    out.rules.push_back(rewrite(label, {membrane_counter(label, life)}, {delta_symbol()}));
  }
  return out;
}

Configuration project(const Configuration& config) {
  Configuration out = config;
  for_each_membrane_mut(out.skin, [](Membrane& m) {
    ObjectMultiset content;
    for (const auto& [obj, n] : m.content)
      if (!is_counter(obj.sym)) content.add(TimedObject{obj.sym, Timer::infinite()}, n);
    m.content = std::move(content);
    m.timer = Timer::infinite();
  });
  return out;
}

std::vector<std::string> counter_violations(const Configuration& compiled,
                                            const Untracked& untracked) {
  std::vector<std::string> out;
  const Membrane* skin = &compiled.skin;
  for_each_membrane(compiled.skin, [&](const Membrane& m) {
    std::map<Symbol, std::size_t> objects, counters;
    std::size_t own = 0;
    for (const auto& [obj, n] : m.content) {
      if (auto info = parse_counter(obj.sym)) {
        if (info->membrane) {
          if (info->label != m.label)
            out.push_back("membrane " + m.label + " holds counter of " + info->label);
          own += n;
        } else {
          counters[info->base] += n;
        }
      } else if (obj.sym != delta_symbol() && !untracked.objects.count(obj.sym)) {
        objects[obj.sym] += n;
      }
    }
    std::set<Symbol> all;
    for (const auto& [s, n] : objects) all.insert(s);
    for (const auto& [s, n] : counters) all.insert(s);
    for (const auto& s : all) {
      const auto a = objects.count(s) ? objects.at(s) : 0;
      const auto b = counters.count(s) ? counters.at(s) : 0;
      if (a != b)
        out.push_back("membrane " + m.label + ": " + std::to_string(a) + " x " + s.to_string() +
                      " but " + std::to_string(b) + " counters");
    }
    const std::size_t expected = &m == skin || untracked.labels.count(m.label) ? 0 : 1;
    if (own != expected)
      out.push_back("membrane " + m.label + " has " + std::to_string(own) + " membrane counters");
  });
  return out;
}

}  // namespace tmm
