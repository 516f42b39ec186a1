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

#include "tmm/ambient.hpp"
#include "tmm/corpus.hpp"
#include "tmm/error.hpp"

using namespace tmm;

namespace {

Process P(const char* text) { return parse_ambient(text); }

std::set<std::string> keys(const std::vector<Process>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(key(p));
  return out;
}

bool has_passive(const Process& p) {
  if (p.kind == Process::Kind::Amb && p.tag == Tag::Passive) return true;
  return std::any_of(p.parts.begin(), p.parts.end(), has_passive);
}

}  // namespace

TEST_CASE("parsing the concrete syntax") {
  const auto p = P(kRemarkProcess);
  REQUIRE(p.kind == Process::Kind::Par);
  REQUIRE(p.parts.size() == 2);
  CHECK(key(p) == "m:6[ ~in:5 m ] | n:4[ in:1 m . in:2 k . out:3 s ]");

  CHECK(P("0").kind == Process::Kind::Zero);
  const auto a = P("a:inf[ 0 ] | 0");
  REQUIRE(a.kind == Process::Kind::Amb);
  CHECK(a.name == "a");
  CHECK(a.timer.is_infinite());
  CHECK(a.parts.at(0).kind == Process::Kind::Zero);

  CHECK(congruent(P("in:1 m . 0"), P("in:1 m")));
  CHECK(congruent(P("(n:1[ 0 ] | k:2[ 0 ]) | 0"), P("k:2[ 0 ] | n:1[ 0 ]")));
}

TEST_CASE("malformed processes are rejected with positions") {
  CHECK_THROWS_AS(P("n:1[ in:2 m "), ParseError);
  CHECK_THROWS_AS(P("n[ 0 ]"), ParseError);
  CHECK_THROWS_AS(P("in:-1 m"), ParseError);
  CHECK_THROWS_AS(P("open:1 m"), ParseError);
  CHECK_THROWS_AS(P("in:1 inf"), ParseError);
  CHECK_THROWS_AS(P("n:1[ 0 ] |"), ParseError);
  CHECK_THROWS_AS(P("n:99999999999[ 0 ]"), ParseError);
}

TEST_CASE("structural congruence") {
  const auto p = P("n:1[ in:2 m ]");
  const auto q = P("m:3[ ~in:1 m ]");
  CHECK(congruent(parallel({p, q}), parallel({q, p})));
  CHECK(congruent(parallel({p, zero()}), p));
  CHECK_FALSE(congruent(P("n:1[ 0 ]"), P("n:2[ 0 ]")));
  CHECK_FALSE(congruent(P("in:1 m . in:2 k"), P("in:2 k . in:1 m")));
}

TEST_CASE("time progress, clause by clause") {
  CHECK(key(phi_delta(P("in:3 m . 0"))) == "in:2 m");
  CHECK(key(phi_delta(P("in:0 m . n:1[ 0 ]"))) == "n:1[ 0 ]");
  const auto passive = ambient("n", Timer(1), P("in:2 m . 0"), Tag::Passive);
  const auto ticked = phi_delta(passive);
  CHECK(key(passive) == "n:1[ in:2 m ]^p");
  CHECK(key(ticked) == "n:0[ in:1 m ]");
  CHECK(ticked.tag == Tag::Active);
  // An expired ambient releases its body without ageing it.
  CHECK(key(phi_delta(P("n:0[ in:2 m | k:3[ 0 ] ]"))) == "in:2 m | k:3[ 0 ]");
  CHECK(key(phi_delta(P("n:2[ 0 ] | in:1 k"))) == "in:0 k | n:1[ 0 ]");
  CHECK(phi_delta(zero()).kind == Process::Kind::Zero);
  CHECK(key(phi_delta(P("n:inf[ in:inf m ]"))) == "n:inf[ in:inf m ]");
}

TEST_CASE("ageing an all-infinite process only resets tags") {
  const auto p = ambient("n", Timer::infinite(), P("k:inf[ 0 ]"), Tag::Passive);
  CHECK(phi_delta(p) == erase_tags(p));
}

TEST_CASE("redex detection") {
  const auto remark = P(kRemarkProcess);
  const auto rs = redexes(remark);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == CapKind::In);
  CHECK(redexes(zero()).empty());

  // The same site with the mover passive is not a redex.
  auto comps = components(remark);
  for (auto& c : comps)
    if (c.name == "n") c.tag = Tag::Passive;
  CHECK(redexes(normalize(parallel(comps))).empty());

  CHECK(redexes(P("n:3[ in:2 m ] | m:4[ ~in:3 k ]")).empty());       // co-capability names another
  CHECK(redexes(P("n:3[ in:0 m ] | m:4[ ~in:3 m ]")).empty());       // capability expired
  CHECK(redexes(P("n:0[ in:2 m ] | m:4[ ~in:3 m ]")).empty());       // mover expired
  CHECK(redexes(P("n:3[ in:2 m ] | m:0[ ~in:3 m ]")).empty());       // target expired
  CHECK(redexes(P("m:5[ n:3[ out:2 m ] | ~out:2 m ]")).size() == 1);
  CHECK(redexes(P("m:5[ n:3[ out:2 k ] | ~out:2 m ]")).empty());
  CHECK(redexes(P("m:4[ k:3[ ~in:2 k ] | n:2[ in:1 k ] ]")).size() == 1);
}

TEST_CASE("one reduction step") {
  const auto remark = P(kRemarkProcess);
  CHECK(keys(reduce_step(remark)) ==
        std::set<std::string>{"m:6[ n:4[ in:2 k . out:3 s ]^p ]"});

  const auto out = reduce_step(P("m:5[ n:3[ out:2 m . in:1 k ] | ~out:2 m ]"));
  CHECK(keys(out) == std::set<std::string>{"m:5[ 0 ] | n:3[ in:1 k ]^p"});

  CHECK(keys(reduce_step(P("n:2[ 0 ]"))) == std::set<std::string>{"n:1[ 0 ]"});
  const auto succ = ambient_successors(P("n:2[ 0 ]"));
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].time);
}

TEST_CASE("disjoint redexes fire alone or together") {
  const auto p = P("a:2[ in:1 b ] | b:3[ ~in:1 b ] | c:2[ in:2 d ] | d:2[ ~in:2 d ]");
  const auto rs = redexes(p);
  REQUIRE(rs.size() == 2);
  CHECK(independent(rs[0], rs[1]));
  // Oracle: every nonempty subset of the two.
  const std::set<std::string> expected{key(fire(p, {rs[0]})), key(fire(p, {rs[1]})),
                                       key(fire(p, {rs[0], rs[1]}))};
  CHECK(expected.size() == 3);
  CHECK(keys(reduce_step(p)) == expected);
}

TEST_CASE("redexes sharing a target cannot fire together") {
  const auto p = P("n:3[ in:2 m ] | k:3[ in:2 m ] | m:4[ ~in:3 m | ~in:2 m ]");
  // Either mover with either co-capability; the co-capabilities differ in
  // their timers, so all four reducts are distinct.
  const auto rs = redexes(p);
  CHECK(rs.size() == 4);
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j) CHECK_FALSE(independent(rs[i], rs[j]));
  CHECK(reduce_step(p).size() == 4);
}

TEST_CASE("simultaneous firing equals firing in sequence") {
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    // Two generated soups side by side give plenty of disjoint sites.
    const auto p = normalize(parallel({random_mobile_process(seed), random_mobile_process(seed + 5000)}));
    const auto rs = redexes(p);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i + 1; j < rs.size(); ++j) {
        if (!independent(rs[i], rs[j])) continue;
        ++pairs;
        const auto both = key(fire(p, {rs[i], rs[j]}));
        const auto first = fire(p, {rs[i]});
        std::set<std::string> then;
        for (const auto& r : redexes(first)) then.insert(key(fire(first, {r})));
        CHECK(then.count(both) == 1);
      }
  }
  CHECK(pairs > 0);
}

TEST_CASE("tags after reaction and time steps") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = random_mobile_process(seed);
    for (const auto& s : ambient_successors(p)) {
      if (s.time)
        CHECK_FALSE(has_passive(s.process));
      else
        CHECK(has_passive(s.process));
    }
  }
}

TEST_CASE("print then parse is the identity on generated processes") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = random_process(seed);
    const auto text = to_string(p);
    const auto back = parse_ambient(text);
    CHECK(back == normalize(erase_tags(p)));
    CHECK(to_string(back) == text);
  }
}
