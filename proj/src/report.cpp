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

#include "tmm/report.hpp"

#include <json.hpp>

#include "tmm/format.hpp"

namespace tmm {

using nlohmann::json;

namespace {

json binding_json(const std::vector<TimedObject>& objects) {
  json out = json::array();
  for (const auto& o : objects) out.push_back(o.to_string());
  return out;
}

json instance_json(const RuleInstance& inst) {
  json j;
  j["rule"] = inst.rule;
  j["active"] = inst.active;
  if (inst.passive)
    j["passive"] = inst.passive;
  else
    j["passive"] = nullptr;
  j["active_binding"] = binding_json(inst.active_binding);
  j["passive_binding"] = binding_json(inst.passive_binding);
  return j;
}

}  // namespace

std::string trace_jsonl(const Trace& trace, bool timed) {
  std::string out;
  for (const auto& step : trace.steps) {
    json j;
    j["step"] = step.step;
    j["instances"] = json::array();
    for (const auto& inst : step.choice.instances) j["instances"].push_back(instance_json(inst));
    j["key"] = step.key;
    j["config"] = print_membrane(step.config.skin, timed);
    j["halt"] = step.halted;
    j["detached"] = json::array();
    for (const auto& m : step.detached) j["detached"].push_back(print_membrane(m, timed));
    out += j.dump() + "\n";
  }
  return out;
}

std::string graph_json(const ReachGraph& g, bool ambient, bool timed) {
  json j;
  j["kind"] = ambient ? "ambient" : "membrane";
  j["depth_bound"] = g.depth_bound;
  j["truncated"] = g.truncated;
  j["nodes"] = json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    json node;
    node["id"] = i;
    node["key"] = n.key;
    node["depth"] = n.depth;
    node["expanded"] = n.expanded;
    node["halted"] = n.halted;
    node["render"] = ambient ? key(n.process) : print_membrane(n.config.skin, timed);
    j["nodes"].push_back(std::move(node));
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges) {
    json edge;
    edge["from"] = e.from;
    edge["to"] = e.to;
    edge["label"] = e.label;
    if (ambient) {
      edge["time"] = e.time;
    } else {
      edge["objects_expired"] = e.events.objects_expired;
      edge["membranes_dissolved"] = e.events.membranes_dissolved;
    }
    j["edges"].push_back(std::move(edge));
  }
  return j.dump(2);
}

std::string verdict_json(const Verdict& v) {
  json j;
  j["property"] = v.property;
  j["outcome"] = outcome_name(v.outcome);
  j["witnesses"] = v.witnesses;
  j["notes"] = v.notes;
  j["stats"] = json::object();
  for (const auto& [k, n] : v.stats) j["stats"][k] = n;
  return j.dump(2);
}

std::string remark_json(const RemarkReport& r) {
  json j;
  j["property"] = "remark";
  j["outcome"] = r.pass ? "pass" : "fail";
  j["degenerate"] = r.degenerate;
  j["reached"] = r.n_key;
  j["reduct"] = r.reduct;
  j["reordered_preimage"] = r.reordered;
  j["preimages"] = r.preimages;
  return j.dump(2);
}

std::string reading_json(const SymbolMultiset& reading) {
  json j = json::object();
  for (const auto& [sym, n] : reading) j[sym.to_string()] = n;
  return j.dump();
}

}  // namespace tmm
