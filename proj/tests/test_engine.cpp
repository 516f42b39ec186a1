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

#include "support/reference.hpp"
#include "tmm/corpus.hpp"
#include "tmm/engine.hpp"
#include "tmm/error.hpp"
#include "tmm/format.hpp"

using namespace tmm;

namespace {

const char* kS1 =
    "system v1 timed output h\n"
    "skin:inf[ h:3[ a:2 b:5 ] m:inf[ ~a:4 ] ]\n"
    "rules\n"
    "endo h m : a | , ~a | => c:+7 |\n";

std::string key_of(const std::string& text) { return canonicalize(parse_system(text).config); }

/// The single successor of a system with exactly one maximal choice.
Configuration only_step(const System& s) {
  const auto choices = maximal_choices(s);
  REQUIRE(choices.size() == 1);
  return apply_step(s, choices.front()).config;
}

std::string header(bool timed = true) {
  return timed ? "system v1 timed output h\n" : "system v1 untimed output h\n";
}

}  // namespace

TEST_CASE("instances of the running example") {
  const auto s = parse_system(kS1);
  const auto inst = find_instances(s);
  REQUIRE(inst.size() == 1);
  CHECK(inst[0].rule == 0);
  CHECK(inst[0].active == s.config.skin.children[0].uid);
  CHECK(inst[0].passive == s.config.skin.children[1].uid);

  auto expired = parse_system(std::string(kS1).replace(std::string(kS1).find("a:2"), 3, "a:0"));
  CHECK(find_instances(expired).empty());

  auto nested = parse_system(header() + "skin:inf[ h:3[ a:2 b:5 k:1[ ] ] m:inf[ ~a:4 ] ]\nrules\n" +
                             "endo h m : a | , ~a | => c:+7 |\n");
  CHECK(find_instances(nested).empty());
}

TEST_CASE("membrane timers gate instances") {
  auto s = parse_system(header() + "skin:inf[ h:0[ a:2 ] m:3[ ~a:4 ] ]\nrules\nendo h m : a | , ~a | => |\n");
  CHECK(find_instances(s).empty());
  s = parse_system(header() + "skin:inf[ h:2[ a:2 ] m:0[ ~a:4 ] ]\nrules\nendo h m : a | , ~a | => |\n");
  CHECK(find_instances(s).empty());
}

TEST_CASE("equal occurrences give one instance, distinct timers give two") {
  auto same = parse_system(header() + "skin:inf[ h:3[ a:2 a:2 ] m:inf[ ~a:4 ] ]\nrules\n" +
                           "endo h m : a | , ~a | => |\n");
  CHECK(find_instances(same).size() == 1);
  auto differ = parse_system(header() + "skin:inf[ h:3[ a:2 a:5 ] m:inf[ ~a:4 ] ]\nrules\n" +
                             "endo h m : a | , ~a | => |\n");
  CHECK(find_instances(differ).size() == 2);
}

TEST_CASE("context objects must be present but are not bound") {
  const std::string rules = "rules\nendo h m : a | , ~a | when g => |\n";
  CHECK(find_instances(parse_system(header() + "skin:inf[ h:3[ a:2 ] m:4[ ~a:4 ] ]\n" + rules)).empty());
  const auto s = parse_system(header() + "skin:inf[ h:3[ a:2 ] m:4[ ~a:4 g:1 ] ]\n" + rules);
  const auto inst = find_instances(s);
  REQUIRE(inst.size() == 1);
  CHECK(inst[0].passive_binding.size() == 1);
}

TEST_CASE("maximal choices of small systems") {
  CHECK(maximal_choices(parse_system(kS1)).size() == 1);

  const auto shared = parse_system(header() + "skin:inf[ h:3[ a:2 ] h:3[ a:2 ] m:inf[ ~a:4 ~a:4 ] ]\n" +
                                   "rules\nendo h m : a | , ~a | => |\n");
  const auto choices = maximal_choices(shared);
  REQUIRE(choices.size() == 1);
  CHECK(choices[0].instances.size() == 2);
  CHECK(choices[0].instances[0].passive == choices[0].instances[1].passive);

  const auto idle = parse_system(header() + "skin:inf[ h:3[ a:2 ] ]\n");
  const auto none = maximal_choices(idle);
  REQUIRE(none.size() == 1);
  CHECK(none[0].instances.empty());
}

TEST_CASE("one passive copy forces a choice between two movers") {
  const auto s = parse_system(header() + "skin:inf[ h:3[ a:2 ] k:3[ a:2 ] m:inf[ ~a:4 ] ]\n" +
                              "rules\nendo h m : a | , ~a | => |\nendo k m : a | , ~a | => |\n");
  const auto choices = maximal_choices(s);
  CHECK(choices.size() == 2);
  for (const auto& c : choices) CHECK(c.instances.size() == 1);
}

TEST_CASE("an endo target cannot move in the same step") {
  // h may enter m or m may enter k, never both.
  const auto s = parse_system(header() + "skin:inf[ h:3[ a:2 ] m:3[ ~a:4 b:1 ] k:3[ ~b:1 ] ]\n" +
                              "rules\nendo h m : a | , ~a | => |\nendo m k : b | , ~b | => |\n");
  const auto choices = maximal_choices(s);
  CHECK(choices.size() == 2);
  CHECK(ref::brute_force_maximal(s).size() == 2);
}

TEST_CASE("rewrites fill what mobility leaves over") {
  const auto s = parse_system(header(false) + "skin[ h[ a a ] m[ ~a ] ]\nrules\n" +
                              "endo h m : a | , ~a | => |\nrw h : a => b\n");
  const auto choices = maximal_choices(s);
  REQUIRE(choices.size() == 1);
  CHECK(choices[0].instances.size() == 2);  // the move plus one rewrite of the spare a
}

TEST_CASE("maximal choices agree with exhaustive search") {
  std::size_t compared = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    System s = random_system(seed, seed % 2 == 1);
    // Walk a few steps so the comparison also sees later configurations.
    for (int k = 0; k < 3; ++k) {
      std::set<std::vector<RuleInstance>> engine;
      for (const auto& c : maximal_choices(s)) engine.insert(c.instances);
      CHECK(engine == ref::brute_force_maximal(s));
      ++compared;
      const auto succ = successors(s);
      s.config = succ.back().result.config;
    }
  }
  CHECK(compared == 180);
}

TEST_CASE("successors agree with the reference interpreter") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    System s = random_system(seed, seed % 2 == 0);
    for (int k = 0; k < 3; ++k) {
      std::set<std::string> engine;
      for (const auto& x : successors(s)) engine.insert(x.key);
      CHECK(engine == ref::successor_keys(s));
      s.config = successors(s).front().result.config;
    }
  }
}

TEST_CASE("the running example steps to h inside m") {
  const auto s = parse_system(kS1);
  CHECK(canonicalize(only_step(s)) ==
        key_of("system v1 timed output h\nskin:inf[ m:inf[ h:2[ c:7 b:4 ] ] ]\n"));
  CHECK(canonicalize(ref::apply(s, maximal_choices(s)[0].instances)) ==
        canonicalize(only_step(s)));
  CHECK(successors(s).size() == 1);
}

TEST_CASE("an expired membrane releases its contents") {
  const auto s2 = parse_system("system v1 timed output skin\nskin:inf[ h:0[ a:1 ] ]\n");
  const auto r = apply_step(s2, StepChoice{});
  CHECK(canonicalize(r.config) == key_of("system v1 timed output skin\nskin:inf[ a:0 ]\n"));
  CHECK(r.events.membranes_dissolved == 1);
}

TEST_CASE("rule forms one at a time") {
  SUBCASE("object time-passing") {
    const auto s = parse_system(header() + "skin:inf[ h:inf[ a:3 ] ]\n");
    CHECK(canonicalize(only_step(s)) == key_of(header() + "skin:inf[ h:inf[ a:2 ] ]\n"));
  }
  SUBCASE("object dissolution") {
    const auto s = parse_system("system v1 timed output skin\nskin:inf[ a:0 ]\n");
    const auto r = apply_step(s, StepChoice{});
    CHECK(canonicalize(r.config) == key_of("system v1 timed output skin\nskin:inf[ ]\n"));
    CHECK(r.events.objects_expired == 1);
  }
  SUBCASE("endocytosis decrements the active membrane only") {
    const auto s = parse_system(header() + "skin:inf[ h:3[ a:2 ] m:5[ ~a:4 ] ]\nrules\n" +
                                "endo h m : a | , ~a | => |\n");
    const auto apps = rule_applications(s);
    REQUIRE(apps.size() == 1);
    CHECK(apps[0].key == key_of(header() + "skin:inf[ m:5[ h:2[ ] ] ]\n"));
    // Full step: the passive membrane then ages by the end-of-step tick.
    CHECK(canonicalize(only_step(s)) == key_of(header() + "skin:inf[ m:4[ h:2[ ] ] ]\n"));
  }
  SUBCASE("exocytosis decrements the active membrane only") {
    const auto s = parse_system(header() + "skin:inf[ m:5[ ~a:4 h:3[ a:2 ] ] ]\nrules\n" +
                                "exo h m : a | , ~a | => |\n");
    const auto apps = rule_applications(s);
    REQUIRE(apps.size() == 1);
    CHECK(apps[0].key == key_of(header() + "skin:inf[ m:5[ ] h:2[ ] ]\n"));
    CHECK(canonicalize(only_step(s)) == key_of(header() + "skin:inf[ m:4[ ] h:2[ ] ]\n"));
  }
  SUBCASE("membrane time-passing") {
    const auto s = parse_system(header() + "skin:inf[ h:3[ k:1[ ] ] ]\n");
    CHECK(canonicalize(only_step(s)) == key_of(header() + "skin:inf[ h:2[ k:0[ ] ] ]\n"));
  }
  SUBCASE("membrane dissolution hands objects and children up") {
    const auto s = parse_system(header() + "skin:inf[ m:4[ h:0[ a:3 k:2[ b:1 ] ] ] ]\n");
    CHECK(canonicalize(only_step(s)) == key_of(header() + "skin:inf[ m:3[ a:2 k:1[ b:0 ] ] ]\n"));
  }
  SUBCASE("infinity minus one") {
    const auto s = parse_system(header() + "skin:inf[ h:inf[ a:inf ] ]\n");
    CHECK(canonicalize(only_step(s)) == canonicalize(s.config));
    const auto succ = successors(s);
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].key == canonicalize(s.config));
  }
}

TEST_CASE("right-hand timers: carries lose one, fresh values are installed") {
  const auto s = parse_system(header() + "skin:inf[ h:3[ a:4 b:2 ] m:inf[ ~a:4 ] ]\nrules\n" +
                              "endo h m : a | , ~a | => a:- c:+3 | ~a:+9\n");
  // b ages, the produced a, c and ~a do not.
  CHECK(canonicalize(only_step(s)) ==
        key_of(header() + "skin:inf[ m:inf[ ~a:9 h:2[ a:3 c:3 b:1 ] ] ]\n"));
}

TEST_CASE("hold keeps the mover's timer") {
  const auto s = parse_system(header() + "skin:inf[ h:3[ a:2 ] m:5[ ~a:4 ] ]\nrules\n" +
                              "endo h m hold : a | , ~a | => |\n");
  CHECK(canonicalize(only_step(s)) == key_of(header() + "skin:inf[ m:4[ h:3[ ] ] ]\n"));
}

TEST_CASE("leaving through the skin detaches the membrane") {
  const auto s = parse_system("system v1 timed output skin\nskin:inf[ ~a:4 h:3[ a:2 b:2 ] ]\nrules\n"
                              "exo h skin : a | , ~a | => d:+1 |\n");
  const auto r = apply_step(s, maximal_choices(s).at(0));
  CHECK(r.config.skin.children.empty());
  REQUIRE(r.detached.size() == 1);
  CHECK(r.detached[0].label == "h");
  CHECK(r.detached[0].content.count_symbol(Symbol{"d"}) == 1);
}

TEST_CASE("untimed systems do not age and dissolve on delta") {
  const auto s = parse_system("system v1 untimed output skin\nskin[ h[ a b k[ c ] ] ]\nrules\nrw h : a => delta\n");
  CHECK(canonicalize(only_step(s)) == key_of("system v1 untimed output skin\nskin[ b k[ c ] ]\n"));
}

TEST_CASE("state-equal choices collapse to one successor") {
  // Two h membranes with identical contents: entering with either gives the
  // same state.
  const auto s = parse_system(header() + "skin:inf[ h:3[ a:2 ] h:3[ a:2 ] m:inf[ ~a:4 ] ]\nrules\n" +
                              "endo h m : a | , ~a | => |\n");
  CHECK(maximal_choices(s).size() == 2);
  CHECK(successors(s).size() == 1);
}

TEST_CASE("foreign or conflicting choices are rejected") {
  const auto s = parse_system(kS1);
  auto choice = maximal_choices(s).at(0);
  choice.instances.push_back(choice.instances[0]);
  CHECK_THROWS_AS(apply_step(s, choice), InvalidChoice);
  StepChoice stale;
  stale.instances.push_back(RuleInstance{0, 77, 78, {}, {}});
  CHECK_THROWS_AS(apply_step(s, stale), InvalidChoice);
}

TEST_CASE("runs: zero steps, replay and halting") {
  const auto s = parse_system(kS1);
  const auto t0 = run(s, 0, Selector::first());
  REQUIRE(t0.steps.size() == 1);
  CHECK(t0.steps[0].key == canonicalize(s.config));

  const auto t1 = run(s, 1, Selector::seeded(3));
  REQUIRE(t1.steps.size() == 2);
  CHECK(t1.steps[1].key == canonicalize(only_step(s)));

  const auto halting = parse_system(header() + "skin:inf[ h:inf[ a:inf ] ]\n");
  const auto th = run(halting, 10, Selector::first());
  CHECK(th.halted);
  CHECK(th.steps.size() == 1);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sys = random_system(seed, true);
    const auto a = run(sys, 20, Selector::seeded(seed));
    const auto b = run(sys, 20, Selector::seeded(seed));
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) CHECK(a.steps[i].key == b.steps[i].key);
  }
}

TEST_CASE("soak: every executed step is maximal, conserving and tree-shaped") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    System s = random_system(seed, seed % 3 != 0);
    const auto trace = run(s, 25, Selector::seeded(seed ^ 0x5eed));
    for (std::size_t i = 1; i < trace.steps.size(); ++i) {
      System before = s;
      before.config = trace.steps[i - 1].config;
      const auto& choice = trace.steps[i].choice;
      CHECK(residual_instances(before, choice).empty());
      CHECK(ref::addable(before, choice.instances).empty());

      const auto r = apply_step(before, choice);
      CHECK(canonicalize(r.config) == trace.steps[i].key);
      CHECK(r.config.skin.timer.is_infinite());
      CHECK(r.config.skin.label == s.config.skin.label);

      // Objects: every change is accounted for by rules, expiry or departure.
      auto total = [](const Membrane& m, auto&& self) -> std::size_t {
        std::size_t n = 0;
        for (const auto& [o, k] : m.content)
          if (!(o.sym == delta_symbol())) n += k;
        for (const auto& c : m.children) n += self(c, self);
        return n;
      };
      std::size_t left = 0;
      for (const auto& d : r.detached) left += total(d, total);
      CHECK(total(before.config.skin, total) + r.events.objects_produced ==
            total(r.config.skin, total) + left + r.events.objects_consumed + r.events.objects_expired);
    }
  }
}
