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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "tmm/compiler.hpp"
#include "tmm/corpus.hpp"
#include "tmm/engine.hpp"
#include "tmm/error.hpp"
#include "tmm/explorer.hpp"
#include "tmm/format.hpp"

using namespace tmm;

namespace {

const char* kFinite =
    "system v1 timed output h\n"
    "skin:inf[ h:3[ a:2 b:5 ] m:5[ ~a:4 ] ]\n"
    "rules\n"
    "endo h m : a | , ~a | => c:+7 |\n";

std::size_t count_symbol(const Membrane& m, const Symbol& s) {
  std::size_t n = m.content.count_symbol(s);
  for (const auto& c : m.children) n += count_symbol(c, s);
  return n;
}

}  // namespace

TEST_CASE("counter spellings parse back") {
  const auto oc = object_counter(Symbol{"a", true}, 3);
  CHECK(oc.name == "b$~a$3");
  const auto info = parse_counter(oc);
  REQUIRE(info);
  CHECK_FALSE(info->membrane);
  CHECK(info->base == Symbol{"a", true});
  CHECK(info->count == 3);

  const auto mc = parse_counter(membrane_counter("h", 0));
  REQUIRE(mc);
  CHECK(mc->membrane);
  CHECK(mc->label == "h");
  CHECK_FALSE(parse_counter(Symbol{"a"}));
  CHECK_FALSE(parse_counter(Symbol{"b$a$x"}));
}

TEST_CASE("lifetime is the largest timer an object is ever given") {
  const auto s = parse_system(kFinite);
  CHECK(lifetime(Symbol{"a"}, s) == 2);
  CHECK(lifetime(Symbol{"b"}, s) == 5);
  CHECK(lifetime(Symbol{"c"}, s) == 7);
  CHECK(lifetime(Symbol{"a", true}, s) == 4);
  CHECK_THROWS_AS(lifetime(Symbol{"zz"}, s), CompileError);
  const auto inf = parse_system("system v1 timed output h\nskin:inf[ a:inf ]\n");
  CHECK_THROWS_AS(lifetime(Symbol{"a"}, inf), CompileError);
}

TEST_CASE("embedding sets every timer to infinity") {
  const auto u = parse_system("system v1 untimed output h\nskin[ h[ a ] m[ ~a ] ]\nrules\nendo h m : a | , ~a | => c |\n");
  const auto e = embed_infinite(u);
  CHECK(e.timed);
  CHECK(e.rules.size() == 1);
  REQUIRE(e.rules[0].w.size() == 1);
  CHECK(e.rules[0].w[0].timer.kind == RhsTimer::Kind::Fresh);
  CHECK(e.rules[0].w[0].timer.fresh.is_infinite());
  CHECK(e.config.skin.children[0].timer.is_infinite());
  CHECK(canonicalize(e.config) == canonicalize(u.config));
}

TEST_CASE("compiled initial configuration carries elapsed-time counters") {
  const auto c = eliminate_timers(parse_system(kFinite));
  CHECK_FALSE(c.timed);
  CHECK(c.compiled);
  CHECK(counter_violations(c.config).empty());
  const Membrane& h = c.config.skin.children[0];
  CHECK(h.content.count_symbol(object_counter(Symbol{"a"}, 0)) == 1);  // 2 - 2
  CHECK(h.content.count_symbol(object_counter(Symbol{"b"}, 0)) == 1);  // 5 - 5
  CHECK(h.content.count_symbol(membrane_counter("h", 0)) == 1);
  const Membrane& m = c.config.skin.children[1];
  CHECK(m.content.count_symbol(membrane_counter("m", 0)) == 1);  // lifetime 5, timer 5
  CHECK(c.config.skin.content.empty());
}

TEST_CASE("compiled rule inventory") {
  const auto c = eliminate_timers(parse_system(kFinite));
  // Tick and kill: for every label (skin, h, m) and symbol (a:2, ~a:4, b:5,
  // c:7) there are lifetime + 1 rewrites.
  const std::size_t object_rules = 3 * ((2 + 1) + (4 + 1) + (5 + 1) + (7 + 1));
  // Membranes h (3) and m (5): lifetime ticks plus one delta rule each.
  const std::size_t membrane_rules = (3 + 1) + (5 + 1);
  // One endo per counter vector: a in [0,2), ~a in [0,4), h in [0,3), m in [0,5).
  const std::size_t endo_rules = 2 * 4 * 3 * 5;
  CHECK(c.rules.size() == object_rules + membrane_rules + endo_rules);

  std::set<std::string> text;
  for (const auto& r : c.rules) text.insert(describe(r, false));
  CHECK(text.count("rw h : a b$a$0 => a b$a$1"));
  CHECK(text.count("rw h : a b$a$2 =>"));
  CHECK(text.count("rw m : b$@m$5 => delta"));
  CHECK(text.count("endo h m : a | b$@h$1 b$a$1 , ~a | b$~a$2 when b$@m$4 => b$@h$2 b$c$0 c |"));
  CHECK(validate(c).empty());
}

TEST_CASE("inputs the construction cannot take are refused") {
  CHECK_THROWS_AS(eliminate_timers(parse_system("system v1 untimed output h\nskin[ ]\n")), CompileError);
  CHECK_THROWS_AS(
      eliminate_timers(parse_system("system v1 timed output h\nskin:inf[ h:inf[ a:1 ] h:2[ ] ]\n")),
      CompileError);
  CHECK_THROWS_AS(eliminate_timers(parse_system("system v1 timed output h\nskin:inf[ a:inf a:2 ]\n")),
                  CompileError);
  CHECK_THROWS_AS(
      eliminate_timers(parse_system("system v1 timed output h\nskin:inf[ h:2[ a:1 ] ]\nrules\nrw h : a => b:+1\n")),
      CompileError);
  CHECK_THROWS_AS(eliminate_timers(parse_system("system v1 timed output h\nskin:inf[ h:2[ b$a$1:1 ] ]\n")),
                  CompileError);
  CHECK_THROWS_AS(eliminate_timers(parse_system("system v1 timed output h\nskin:inf[ skin:2[ a:1 ] ]\n")),
                  CompileError);
}

TEST_CASE("projection drops counters and timers and is idempotent") {
  const auto c = eliminate_timers(parse_system(kFinite));
  const auto p = project(c.config);
  CHECK(count_symbol(p.skin, object_counter(Symbol{"a"}, 0)) == 0);
  CHECK(canonicalize(project(p)) == canonicalize(p));
  const auto timed = parse_system(kFinite);
  CHECK(canonicalize(project(timed.config)) == canonicalize(p));
}

TEST_CASE("counter bookkeeping problems are reported") {
  auto c = eliminate_timers(parse_system(kFinite)).config;
  c.skin.children[0].content.add(TimedObject{Symbol{"a"}, Timer::infinite()});
  CHECK(counter_violations(c).size() == 1);
  c.skin.children[1].content.remove(TimedObject{membrane_counter("m", 0), Timer::infinite()});
  CHECK(counter_violations(c).size() == 2);
}

TEST_CASE("compiled and timed runs project to the same states step by step") {
  // Both systems have a single successor at every step here, so the runs can
  // be compared pointwise.
  const auto timed = parse_system(kFinite);
  const auto compiled = eliminate_timers(timed);
  const auto a = run(timed, 12, Selector::first());
  const auto b = run(compiled, 12, Selector::first());
  REQUIRE(a.steps.size() >= 9);
  for (std::size_t i = 0; i < a.steps.size() && i < b.steps.size(); ++i) {
    INFO("step " << i);
    CHECK(canonicalize(project(a.steps[i].config)) == canonicalize(project(b.steps[i].config)));
    CHECK(membrane_count(a.steps[i].config) == membrane_count(b.steps[i].config));
    CHECK(counter_violations(b.steps[i].config).empty());
  }
}

TEST_CASE("infinite symbols and labels get no counters") {
  const auto timed = parse_system(
      "system v1 timed output h\nskin:inf[ h:3[ a:2 b:5 ] m:inf[ ~a:4 g:inf ] ]\nrules\n"
      "endo h m : a | , ~a | when g => c:+7 |\n");
  const auto skip = untracked(timed);
  CHECK(skip.labels == std::set<std::string>{"m"});
  CHECK(skip.objects == std::set<Symbol>{Symbol{"g"}});
  const auto c = eliminate_timers(timed);
  const Membrane& m = c.config.skin.children[1];
  CHECK(m.content.total() == 3);  // ~a, its counter and g
  CHECK(counter_violations(c.config, skip).empty());
  CHECK_FALSE(counter_violations(c.config).empty());
  std::set<std::string> text;
  for (const auto& r : c.rules) text.insert(describe(r, false));
  CHECK(text.count("endo h m : a | b$@h$0 b$a$1 , ~a | b$~a$3 when g => b$@h$1 b$c$0 c |"));
  CHECK(check_prop2(timed, 5).pass());
}

TEST_CASE("a context guard is kept and enforced") {
  const auto timed = parse_system(
      "system v1 timed output h\nskin:inf[ h:3[ a:3 ] m:4[ ~a:4 g:1 ] ]\nrules\n"
      "endo h m : a | , ~a | when g => |\n");
  const auto c = eliminate_timers(timed);
  for (const auto& r : c.rules)
    if (r.kind == RuleKind::Endo) CHECK(std::count(r.context.begin(), r.context.end(), Symbol{"g"}) == 1);
  CHECK(check_prop2(timed, 5).pass());
}

TEST_CASE("hold and context guards survive compilation") {
  const auto timed = parse_system(
      "system v1 timed output h\nskin:inf[ h:2[ a:2 ] m:3[ ~a:3 g:3 ] ]\nrules\n"
      "endo h m hold : a | , ~a | when g => |\n");
  CHECK(check_prop2(timed, 5).pass());
}

TEST_CASE("compiled corpus satisfies the step correspondence") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto v = check_prop2(random_system(seed, true), 3);
    INFO("seed " << seed);
    for (const auto& w : v.witnesses) INFO(w);
    CHECK(v.pass());
  }
}
