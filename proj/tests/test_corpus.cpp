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

#include <set>

#include "tmm/compiler.hpp"
#include "tmm/corpus.hpp"
#include "tmm/engine.hpp"
#include "tmm/explorer.hpp"
#include "tmm/format.hpp"

using namespace tmm;

namespace {

struct Shape {
  std::size_t membranes = 0;
  std::size_t objects = 0;
  std::uint32_t max_timer = 0;
  bool finite = true;
};

void measure(const Membrane& m, bool skin, Shape& s) {
  ++s.membranes;
  s.objects += m.content.total();
  if (!skin) {
    if (m.timer.is_infinite()) s.finite = false;
    else s.max_timer = std::max(s.max_timer, m.timer.value());
  }
  for (const auto& [o, n] : m.content) {
    if (o.timer.is_infinite()) s.finite = false;
    else s.max_timer = std::max(s.max_timer, o.timer.value());
  }
  for (const auto& c : m.children) measure(c, false, s);
}

}  // namespace

TEST_CASE("generated systems respect the shape limits") {
  const CorpusLimits limits;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    for (bool timed : {false, true}) {
      const auto s = random_system(seed, timed);
      Shape shape;
      measure(s.config.skin, true, shape);
      CHECK(shape.membranes <= limits.max_membranes);
      CHECK(shape.membranes >= 2);
      CHECK(shape.objects <= limits.max_objects);
      CHECK(s.rules.size() <= limits.max_rules);
      CHECK_FALSE(s.rules.empty());
      CHECK(validate(s).empty());
      CHECK(s.timed == timed);
      if (timed) {
        CHECK(shape.finite);
        CHECK(shape.max_timer <= limits.max_timer);
        CHECK_NOTHROW(eliminate_timers(s));
      }
    }
  }
}

TEST_CASE("generation is a function of the seed") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK(print_system(random_system(seed, true)) == print_system(random_system(seed, true)));
    CHECK(to_string(random_process(seed)) == to_string(random_process(seed)));
    CHECK(to_string(random_mobile_process(seed)) == to_string(random_mobile_process(seed)));
  }
  CHECK(print_system(random_system(1, true)) != print_system(random_system(2, true)));
}

TEST_CASE("generated systems actually move") {
  std::size_t moving = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    if (!find_instances(random_system(seed, true)).empty()) ++moving;
  CHECK(moving >= 8);
}

TEST_CASE("the timed corpus exercises dissolution and expiry") {
  std::size_t dissolving = 0, expiring = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = explore_membranes(random_system(seed, true), 4);
    bool d = false, e = false;
    for (const auto& edge : g.edges) {
      d = d || edge.events.membranes_dissolved > 0;
      e = e || edge.events.objects_expired > 0;
    }
    dissolving += d;
    expiring += e;
  }
  CHECK(dissolving >= 3);
  CHECK(expiring >= 3);
}

TEST_CASE("hand processes parse and are distinct") {
  const auto hp = hand_processes();
  CHECK(hp.size() == 10);
  std::set<std::string> names, keys;
  for (const auto& p : hp) {
    names.insert(p.name);
    keys.insert(key(parse_ambient(p.text)));
  }
  CHECK(names.size() == 10);
  CHECK(keys.size() == 10);
}

TEST_CASE("mobile processes keep movers elementary") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = random_mobile_process(seed);
    // Every ambient holding an in/out capability has no ambient children.
    auto check = [](const Process& q, auto&& self) -> void {
      if (q.kind == Process::Kind::Amb) {
        bool mover = false, nested = false;
        for (const auto& c : components(q.parts[0])) {
          if (c.kind == Process::Kind::Prefix &&
              (c.cap.kind == CapKind::In || c.cap.kind == CapKind::Out))
            mover = true;
          if (c.kind == Process::Kind::Amb) nested = true;
        }
        CHECK_FALSE((mover && nested));
      }
      for (const auto& part : q.parts) self(part, self);
    };
    check(p, check);
  }
}
