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

#include "tmm/translate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tmm/compiler.hpp"
#include "tmm/engine.hpp"

namespace tmm {

Symbol capability_symbol(CapKind kind, const std::string& target) {
  switch (kind) {
    case CapKind::In:
      return Symbol{"in." + target, false};
    case CapKind::Out:
      return Symbol{"out." + target, false};
    case CapKind::CoIn:
      return Symbol{"in." + target, true};
    case CapKind::CoOut:
      return Symbol{"out." + target, true};
  }
  return {};
}

namespace {

std::optional<Capability> capability_of(const TimedObject& obj) {
  const std::string& n = obj.sym.name;
  Capability cap;
  cap.timer = obj.timer;
  if (n.rfind("in.", 0) == 0) {
    cap.kind = obj.sym.co ? CapKind::CoIn : CapKind::In;
    cap.target = n.substr(3);
  } else if (n.rfind("out.", 0) == 0) {
    cap.kind = obj.sym.co ? CapKind::CoOut : CapKind::Out;
    cap.target = n.substr(4);
  } else {
    return std::nullopt;
  }
  if (!is_ambient_name(cap.target)) return std::nullopt;
  return cap;
}

void fill(const Process& p, Membrane& region) {
  switch (p.kind) {
    case Process::Kind::Zero:
      return;
    case Process::Kind::Prefix:
      region.content.add(TimedObject{capability_symbol(p.cap.kind, p.cap.target), p.cap.timer});
      fill(p.parts[0], region);
      return;
    case Process::Kind::Amb: {
      Membrane child;
      child.label = p.name;
      child.timer = p.timer;
      fill(p.parts[0], child);
      region.children.push_back(std::move(child));
      return;
    }
    case Process::Kind::Par:
      for (const auto& part : p.parts) fill(part, region);
      return;
  }
}

void scan(const Process& p, std::map<std::string, std::size_t>& names, std::set<std::string>& targets) {
  if (p.kind == Process::Kind::Amb) ++names[p.name];
  if (p.kind == Process::Kind::Prefix && (p.cap.kind == CapKind::In || p.cap.kind == CapKind::Out))
    targets.insert(p.cap.target);
  for (const auto& part : p.parts) scan(part, names, targets);
}

}  // namespace

Configuration translate(const Process& p) {
  Configuration config;
  config.skin.label = kAmbientSkin;
  config.skin.timer = Timer::infinite();
  config.output_label = kAmbientSkin;
  fill(p, config.skin);
  assign_uids(config);
  return config;
}

std::vector<Rule> generate_rules(const Process& p, bool strict) {
  std::map<std::string, std::size_t> names;
  std::set<std::string> targets;
  scan(p, names, targets);
  std::vector<Rule> rules;
  for (const auto& x : targets) {
    auto it = names.find(x);
    if (it == names.end()) continue;  // capability towards a missing ambient is inert
    for (const auto& [n, count] : names) {
      if (n == x && count < 2) continue;
      for (RuleKind kind : {RuleKind::Endo, RuleKind::Exo}) {
        Rule r;
        r.kind = kind;
        r.active_label = n;
        r.passive_label = x;
        r.u = {capability_symbol(kind == RuleKind::Endo ? CapKind::In : CapKind::Out, x)};
        r.hold = strict;
        rules.push_back(std::move(r));
      }
    }
  }
  return rules;
}

System translate_system(const Process& p, bool strict) {
  System s;
  s.config = translate(p);
  s.rules = generate_rules(p, strict);
  s.timed = true;
  return s;
}

std::string comparison_key(const Configuration& config, bool exact) {
  return exact ? canonicalize(config) : canonicalize(project(config));
}

namespace {

Process chain(const std::vector<TimedObject>& order) {
  Process p = zero();
  for (auto it = order.rbegin(); it != order.rend(); ++it) p = prefix(*capability_of(*it), std::move(p));
  return p;
}

/// Alternatives for the contents of one region; empty when some object is not
/// a capability.
std::vector<Process> region_preimages(const Membrane& m, std::size_t limit) {
  std::vector<TimedObject> objects;
  for (const auto& [obj, n] : m.content) {
    if (!capability_of(obj)) return {};
    objects.insert(objects.end(), n, obj);
  }
  std::vector<Process> chains;
  std::sort(objects.begin(), objects.end());
  do {
    chains.push_back(chain(objects));
  } while (chains.size() < limit && std::next_permutation(objects.begin(), objects.end()));

  std::vector<std::vector<Process>> partial;
  for (auto& c : chains) partial.push_back({std::move(c)});
  for (const auto& child : m.children) {
    if (!is_ambient_name(child.label)) return {};
    const auto bodies = region_preimages(child, limit);
    if (bodies.empty()) return {};
    std::vector<std::vector<Process>> next;
    for (const auto& base : partial)
      for (const auto& body : bodies) {
        if (next.size() >= limit) break;
        auto extended = base;
        extended.push_back(ambient(child.label, child.timer, body));
        next.push_back(std::move(extended));
      }
    partial = std::move(next);
  }
  std::vector<Process> out;
  for (auto& parts : partial) out.push_back(normalize(parallel(std::move(parts))));
  return out;
}

std::set<std::string> application_keys(const Process& p, bool strict) {
  std::set<std::string> out;
  for (const auto& s : rule_applications(translate_system(p, strict)))
    out.insert(comparison_key(s.result.config, strict));
  return out;
}

}  // namespace

std::vector<Process> preimages(const Configuration& config, bool exact, std::size_t limit) {
  std::map<std::string, Process> found;
  const std::string want = comparison_key(config, exact);
  for (auto& q : region_preimages(config.skin, limit)) {
    Configuration t = translate(q);
    t.output_label = config.output_label;
    if (comparison_key(t, exact) != want) continue;
    found.emplace(key(q), std::move(q));
  }
  std::vector<Process> out;
  for (auto& [k, q] : found) out.push_back(std::move(q));
  return out;
}

CorrespondenceReport check_correspondence_pq(const Process& p, std::size_t depth, bool strict) {
  CorrespondenceReport report;
  std::set<std::string> seen;
  std::deque<std::pair<Process, std::size_t>> queue;
  const Process root = normalize(p);
  seen.insert(key(root));
  queue.emplace_back(root, 0);
  while (!queue.empty()) {
    auto [cur, d] = std::move(queue.front());
    queue.pop_front();
    if (d >= depth) continue;
    const auto succ = ambient_successors(cur);
    std::set<std::string> membrane;
    bool computed = false;
    for (const auto& s : succ) {
      if (!s.time) {
        if (!computed) membrane = application_keys(cur, strict), computed = true;
        ++report.edges_checked;
        const std::string expected = comparison_key(translate(s.process), strict);
        if (!membrane.count(expected)) {
          report.pass = false;
          report.misses.push_back({key(cur), s.key, expected});
        }
      }
      if (seen.insert(s.key).second) queue.emplace_back(s.process, d + 1);
    }
  }
  return report;
}

RemarkReport check_remark(const Process& input) {
  RemarkReport report;
  const Process p = normalize(input);
  const System sys = translate_system(p, true);
  const auto apps = rule_applications(sys);
  std::set<std::string> reduct_keys;
  std::vector<Process> reducts;
  for (const auto& s : ambient_successors(p)) {
    if (s.time) continue;
    reduct_keys.insert(key(erase_tags(s.process)));
    reducts.push_back(s.process);
  }
  for (const auto& q : reducts) {
    const std::string want = comparison_key(translate(q), true);
    const Successor* hit = nullptr;
    for (const auto& a : apps)
      if (comparison_key(a.result.config, true) == want) hit = &a;
    if (!hit) continue;
    report.n_key = want;
    report.reduct = key(q);
    report.preimages.clear();
    for (const auto& pre : preimages(hit->result.config, true)) {
      report.preimages.push_back(key(pre));
      if (report.reordered.empty() && !reduct_keys.count(key(pre))) report.reordered = key(pre);
    }
    if (!report.reordered.empty()) {
      report.pass = true;
      return report;
    }
  }
  report.degenerate = !report.n_key.empty();
  return report;
}

}  // namespace tmm
