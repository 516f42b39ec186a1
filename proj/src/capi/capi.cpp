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

#include "tmm/tmm.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>

#include "tmm/compiler.hpp"
#include "tmm/corpus.hpp"
#include "tmm/error.hpp"
#include "tmm/explorer.hpp"
#include "tmm/format.hpp"
#include "tmm/report.hpp"
#include "tmm/translate.hpp"

struct tmm_system {
  tmm::System value;
};

struct tmm_process {
  tmm::Process value;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tmm_status set_error(tmm_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

/// Runs `body`, mapping exceptions to status codes.
template <class F>
tmm_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const tmm::ParseError& e) {
    return set_error(TMM_ERR_PARSE, e.what());
  } catch (const tmm::CompileError& e) {
    return set_error(TMM_ERR_COMPILE, e.what());
  } catch (const tmm::InvalidChoice& e) {
    return set_error(TMM_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(TMM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(TMM_ERR_INTERNAL, e.what());
  }
}

tmm_status null_argument() { return set_error(TMM_ERR_ARGUMENT, "null argument"); }

tmm_outcome to_c(tmm::Outcome o) {
  switch (o) {
    case tmm::Outcome::Pass:
      return TMM_PASS;
    case tmm::Outcome::Fail:
      return TMM_FAIL;
    case tmm::Outcome::Inconclusive:
      return TMM_INCONCLUSIVE;
  }
  return TMM_FAIL;
}

tmm_status emit_verdict(const tmm::Verdict& v, char** out_json, tmm_outcome* out) {
  *out_json = dup(tmm::verdict_json(v));
  *out = to_c(v.outcome);
  return TMM_OK;
}

tmm_status reject_invalid(const tmm::System& s) {
  const auto problems = tmm::validate(s);
  if (problems.empty()) return TMM_OK;
  std::string what = "invalid system:";
  for (const auto& p : problems) what += " " + p.what + ";";
  return set_error(TMM_ERR_INVALID, what);
}

}  // namespace

extern "C" {

const char* tmm_version(void) { return "1.0.0"; }

const char* tmm_last_error(void) { return g_last_error.c_str(); }

void tmm_string_free(char* s) { std::free(s); }

tmm_status tmm_system_parse(const char* text, tmm_system** out) {
  if (!text || !out) return null_argument();
  return guarded([&] {
    auto sys = tmm::parse_system(text);
    *out = new tmm_system{std::move(sys)};
    return TMM_OK;
  });
}

void tmm_system_free(tmm_system* s) { delete s; }

tmm_status tmm_system_print(const tmm_system* s, char** out) {
  if (!s || !out) return null_argument();
  return guarded([&] {
    *out = dup(tmm::print_system(s->value));
    return TMM_OK;
  });
}

int tmm_system_is_timed(const tmm_system* s) { return s && s->value.timed ? 1 : 0; }

tmm_status tmm_system_validate(const tmm_system* s, char** out_json) {
  if (!s || !out_json) return null_argument();
  return guarded([&] {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : tmm::validate(s->value)) j.push_back(v.what);
    *out_json = dup(j.dump());
    return TMM_OK;
  });
}

tmm_status tmm_system_compile(const tmm_system* s, tmm_system** out) {
  if (!s || !out) return null_argument();
  return guarded([&] {
    if (auto st = reject_invalid(s->value); st != TMM_OK) return st;
    auto compiled = tmm::eliminate_timers(s->value);
    *out = new tmm_system{std::move(compiled)};
    return TMM_OK;
  });
}

tmm_status tmm_system_embed(const tmm_system* s, tmm_system** out) {
  if (!s || !out) return null_argument();
  return guarded([&] {
    if (s->value.timed) return set_error(TMM_ERR_INVALID, "embedding needs an untimed system");
    *out = new tmm_system{tmm::embed_infinite(s->value)};
    return TMM_OK;
  });
}

tmm_status tmm_system_random(uint64_t seed, int timed, tmm_system** out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = new tmm_system{tmm::random_system(seed, timed != 0)};
    return TMM_OK;
  });
}

tmm_status tmm_system_run(const tmm_system* s, size_t steps, int seeded, uint64_t seed,
                          char** out_jsonl, int* out_halted) {
  if (!s || !out_jsonl) return null_argument();
  return guarded([&] {
    if (auto st = reject_invalid(s->value); st != TMM_OK) return st;
    const auto selector = seeded ? tmm::Selector::seeded(seed) : tmm::Selector::first();
    const auto trace = tmm::run(s->value, steps, selector);
    *out_jsonl = dup(tmm::trace_jsonl(trace, s->value.timed));
    if (out_halted) *out_halted = trace.halted ? 1 : 0;
    return TMM_OK;
  });
}

tmm_status tmm_system_output(const tmm_system* s, size_t steps, char** out_json) {
  if (!s || !out_json) return null_argument();
  return guarded([&] {
    if (auto st = reject_invalid(s->value); st != TMM_OK) return st;
    const auto trace = tmm::run(s->value, steps, tmm::Selector::first());
    const auto& last = trace.steps.back().config;
    nlohmann::json j;
    j["output_label"] = last.output_label;
    j["steps"] = trace.steps.size() - 1;
    j["halted"] = trace.halted;
    j["reading"] = nlohmann::json::parse(tmm::reading_json(tmm::output_reading(last)));
    j["per_membrane"] = nlohmann::json::array();
    for (const auto& r : tmm::output_readings_per_membrane(last))
      j["per_membrane"].push_back(nlohmann::json::parse(tmm::reading_json(r)));
    *out_json = dup(j.dump());
    return TMM_OK;
  });
}

tmm_status tmm_system_explore(const tmm_system* s, size_t depth, size_t node_cap, char** out_graph_json,
                              size_t* out_nodes, int* out_truncated) {
  if (!s) return null_argument();
  return guarded([&] {
    if (auto st = reject_invalid(s->value); st != TMM_OK) return st;
    const auto g = tmm::explore_membranes(s->value, depth, node_cap ? node_cap : tmm::kDefaultNodeCap);
    if (out_graph_json) *out_graph_json = dup(tmm::graph_json(g, false, s->value.timed));
    if (out_nodes) *out_nodes = g.nodes.size();
    if (out_truncated) *out_truncated = g.truncated ? 1 : 0;
    return TMM_OK;
  });
}

tmm_status tmm_process_parse(const char* text, tmm_process** out) {
  if (!text || !out) return null_argument();
  return guarded([&] {
    *out = new tmm_process{tmm::parse_ambient(text)};
    return TMM_OK;
  });
}

void tmm_process_free(tmm_process* p) { delete p; }

tmm_status tmm_process_print(const tmm_process* p, char** out) {
  if (!p || !out) return null_argument();
  return guarded([&] {
    *out = dup(tmm::to_string(p->value));
    return TMM_OK;
  });
}

tmm_status tmm_process_translate(const tmm_process* p, int strict, tmm_system** out) {
  if (!p || !out) return null_argument();
  return guarded([&] {
    *out = new tmm_system{tmm::translate_system(p->value, strict != 0)};
    return TMM_OK;
  });
}

tmm_status tmm_process_explore(const tmm_process* p, size_t depth, size_t node_cap, char** out_graph_json,
                               size_t* out_nodes, int* out_truncated) {
  if (!p) return null_argument();
  return guarded([&] {
    const auto g = tmm::explore_ambients(p->value, depth, node_cap ? node_cap : tmm::kDefaultNodeCap);
    if (out_graph_json) *out_graph_json = dup(tmm::graph_json(g, true, true));
    if (out_nodes) *out_nodes = g.nodes.size();
    if (out_truncated) *out_truncated = g.truncated ? 1 : 0;
    return TMM_OK;
  });
}

tmm_status tmm_check_prop1(const tmm_system* s, size_t depth, char** out_json, tmm_outcome* out) {
  if (!s || !out_json || !out) return null_argument();
  return guarded([&] {
    if (auto st = reject_invalid(s->value); st != TMM_OK) return st;
    return emit_verdict(tmm::check_prop1(s->value, depth), out_json, out);
  });
}

tmm_status tmm_check_prop2(const tmm_system* s, size_t depth, char** out_json, tmm_outcome* out) {
  if (!s || !out_json || !out) return null_argument();
  return guarded([&] {
    if (auto st = reject_invalid(s->value); st != TMM_OK) return st;
    return emit_verdict(tmm::check_prop2(s->value, depth), out_json, out);
  });
}

tmm_status tmm_check_prop45(const tmm_process* p, size_t depth, int strict, char** out_json,
                            tmm_outcome* out) {
  if (!p || !out_json || !out) return null_argument();
  return guarded([&] { return emit_verdict(tmm::check_prop45(p->value, depth, strict != 0), out_json, out); });
}

tmm_status tmm_check_remark(const tmm_process* p, char** out_json, tmm_outcome* out) {
  if (!p || !out_json || !out) return null_argument();
  return guarded([&] {
    const auto r = tmm::check_remark(p->value);
    *out_json = dup(tmm::remark_json(r));
    *out = r.pass ? TMM_PASS : TMM_FAIL;
    return TMM_OK;
  });
}

tmm_status tmm_check_corpus(const char* property, uint64_t seed, size_t count, size_t depth, int strict,
                            char** out_json, tmm_outcome* out) {
  if (!property || !out_json || !out) return null_argument();
  const std::string prop = property;
  if (prop != "prop1" && prop != "prop2" && prop != "prop45")
    return set_error(TMM_ERR_ARGUMENT, "unknown property '" + prop + "'");
  return guarded([&] {
    tmm::Verdict total;
    total.property = prop + " corpus";
    for (size_t i = 0; i < count; ++i) {
      const uint64_t s = seed + i;
      const std::string tag = "seed " + std::to_string(s) + ": ";
      tmm::Verdict v;
      if (prop == "prop1")
        v = tmm::check_prop1(tmm::random_system(s, false), depth);
      else if (prop == "prop2")
        v = tmm::check_prop2(tmm::random_system(s, true), depth);
      else
        v = tmm::check_prop45(tmm::random_mobile_process(s), depth, strict != 0);
      total.absorb(v, tag);
    }
    total.stats["inputs"] = count;
    return emit_verdict(total, out_json, out);
  });
}

}  // extern "C"
