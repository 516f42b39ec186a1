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

#include "tmm/corpus.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <random>

namespace tmm {

namespace {

// rng() % n rather than a distribution: distributions are not specified
// bit-for-bit across standard libraries, and corpora must be portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(std::size_t num, std::size_t den) { return pick(den) < num; }

 private:
  std::mt19937_64 gen_;
};

const char* const kLabels[] = {"h", "m", "k"};
const char* const kSymbols[] = {"a", "b", "c"};

struct Slot {
  Membrane* m;
  Membrane* parent;
};

void slots(Membrane& m, Membrane* parent, std::vector<Slot>& out) {
  out.push_back({&m, parent});
  for (auto& c : m.children) slots(c, &m, out);
}

}  // namespace

System random_system(std::uint64_t seed, bool timed, const CorpusLimits& limits) {
  Rng rng(seed);
  auto timer = [&](bool allow_zero) {
    if (!timed) return Timer::infinite();
    const std::uint32_t lo = allow_zero ? 0 : 1;
    return Timer(lo + static_cast<std::uint32_t>(rng.pick(limits.max_timer + 1 - lo)));
  };
  System sys;
  sys.timed = timed;
  sys.config.skin.label = "skin";
  sys.config.skin.timer = Timer::infinite();

  // Membrane tree: each inner membrane hangs below a random earlier one.
  const std::size_t inner = 1 + rng.pick(limits.max_membranes - 1);
  std::vector<std::vector<std::size_t>> path_of{{}};
  for (std::size_t i = 0; i < inner; ++i) {
    const auto parent_path = path_of[rng.pick(path_of.size())];
    Membrane* parent = &sys.config.skin;
    for (std::size_t k : parent_path) parent = &parent->children[k];
    Membrane child;
    child.label = kLabels[rng.pick(3)];
    child.timer = timer(false);
    if (timed && rng.chance(1, 8)) child.timer = Timer(0);
    parent->children.push_back(std::move(child));
    auto p = parent_path;
    p.push_back(parent->children.size() - 1);
    path_of.push_back(std::move(p));
  }

  std::vector<Slot> all;
  slots(sys.config.skin, nullptr, all);
  std::size_t budget = limits.max_objects;
  // Objects seeded to match a rule start alive; the rest may be expired.
  auto place = [&](Membrane& m, const Symbol& s, bool alive = false) {
    if (budget == 0) return;
    --budget;
    m.content.add(TimedObject{s, timer(!alive)});
  };
  const std::size_t initial = 1 + rng.pick(std::max<std::size_t>(1, budget / 2));
  for (std::size_t i = 0; i < initial; ++i) {
    Symbol s{kSymbols[rng.pick(3)], rng.chance(1, 3)};
    // Inner membranes first: they are the ones that can move.
    Slot& slot = all[1 + rng.pick(all.size() - 1)];
    place(*slot.m, s);
  }

  const std::size_t rule_count = 1 + rng.pick(limits.max_rules);
  for (std::size_t r = 0; r < rule_count; ++r) {
    Rule rule;
    const bool rewrite = !timed && rng.chance(1, 4);
    // Mostly elementary movers: rules on other membranes never fire.
    std::vector<std::size_t> leaves;
    for (std::size_t i = 1; i < all.size(); ++i)
      if (all[i].m->elementary()) leaves.push_back(i);
    const std::size_t pick = !rewrite && !leaves.empty() && rng.chance(3, 4)
                                 ? leaves[rng.pick(leaves.size())]
                                 : 1 + rng.pick(all.size() - 1);
    Slot& slot = all[pick];
    Symbol s{kSymbols[rng.pick(3)], rng.chance(1, 4)};
    if (!slot.m->content.empty() && rng.chance(3, 4)) {
      auto it = slot.m->content.begin();
      std::advance(it, rng.pick(slot.m->content.entries().size()));
      s = it->first.sym;
    } else if (rng.chance(1, 2)) {
      place(*slot.m, s, true);
    }
    rule.active_label = slot.m->label;
    rule.u = {s};
    if (rewrite) {
      rule.kind = RuleKind::Rewrite;
      if (rng.chance(1, 3)) rule.u.push_back(Symbol{kSymbols[rng.pick(3)], false});
      const std::size_t n = rng.pick(3);
      for (std::size_t k = 0; k < n; ++k)
        rule.w.push_back({Symbol{kSymbols[rng.pick(3)], rng.chance(1, 4)}, RhsTimer::make_fresh(Timer::infinite())});
    } else {
      std::vector<Membrane*> siblings;
      for (auto& c : slot.parent->children)
        if (&c != slot.m) siblings.push_back(&c);
      // Endo needs a sibling; without one the rule becomes an exo.
      const bool endo = !siblings.empty() && rng.chance(1, 2);
      rule.kind = endo ? RuleKind::Endo : RuleKind::Exo;
      Membrane* passive = endo ? siblings[rng.pick(siblings.size())] : slot.parent;
      rule.passive_label = passive->label;
      // Give the rule a chance to fire: seed the dual into the passive side.
      if (rng.chance(3, 4)) place(*passive, s.dual(), true);
      if (rng.chance(1, 3)) {
        rule.v.push_back(Symbol{kSymbols[rng.pick(3)], false});
        if (rng.chance(1, 2)) place(*slot.m, rule.v.back(), true);
      }
      if (rng.chance(1, 4)) {
        rule.v_passive.push_back(Symbol{kSymbols[rng.pick(3)], false});
        if (rng.chance(1, 2)) place(*passive, rule.v_passive.back(), true);
      }
      auto items = [&](const std::vector<Symbol>& lhs, std::size_t max) {
        std::vector<RhsItem> out;
        const std::size_t n = rng.pick(max + 1);
        for (std::size_t k = 0; k < n; ++k) {
          if (timed && !lhs.empty() && rng.chance(1, 2)) {
            const Symbol& carried = lhs[rng.pick(lhs.size())];
            out.push_back({carried, RhsTimer::make_carry(0)});
          } else {
            out.push_back({Symbol{kSymbols[rng.pick(3)], rng.chance(1, 4)}, RhsTimer::make_fresh(timer(false))});
          }
        }
        return out;
      };
      rule.w = items(rule.active_lhs(), 2);
      rule.w_passive = items(rule.passive_lhs(), 1);
      // A carried occurrence may appear at most once.
      for (auto* side : {&rule.w, &rule.w_passive}) {
        const auto lhs = side == &rule.w ? rule.active_lhs() : rule.passive_lhs();
        std::map<Symbol, std::size_t> avail, used;
        for (const auto& x : lhs) ++avail[x];
        for (auto& item : *side)
          if (item.timer.kind == RhsTimer::Kind::Carry && ++used[item.sym] > avail[item.sym])
            item.timer = RhsTimer::make_fresh(timer(false));
      }
    }
    normalize_carries(rule);
    sys.rules.push_back(std::move(rule));
  }

  std::vector<std::string> labels{"skin"};
  for (std::size_t i = 1; i < all.size(); ++i) labels.push_back(all[i].m->label);
  sys.config.output_label = labels[rng.pick(labels.size())];
  assign_uids(sys.config);
  return sys;
}

namespace {

const char* const kNames[] = {"n", "m", "k", "s"};

Timer process_timer(Rng& rng) {
  if (rng.chance(1, 6)) return Timer::infinite();
  return Timer(static_cast<std::uint32_t>(rng.pick(6)));
}

Capability random_cap(Rng& rng) {
  Capability c;
  c.kind = static_cast<CapKind>(rng.pick(4));
  c.target = kNames[rng.pick(4)];
  c.timer = process_timer(rng);
  return c;
}

Process grow(Rng& rng, std::size_t depth) {
  const std::size_t choice = depth == 0 ? rng.pick(2) : rng.pick(4);
  switch (choice) {
    case 0:
      return zero();
    case 1:
      return prefix(random_cap(rng), depth == 0 ? zero() : grow(rng, depth - 1));
    case 2:
      return ambient(kNames[rng.pick(4)], process_timer(rng), grow(rng, depth - 1));
    default: {
      std::vector<Process> parts;
      const std::size_t n = 2 + rng.pick(2);
      for (std::size_t k = 0; k < n; ++k) parts.push_back(grow(rng, depth - 1));
      return parallel(std::move(parts));
    }
  }
}

}  // namespace

Process random_process(std::uint64_t seed) {
  Rng rng(seed);
  return normalize(grow(rng, 3));
}

Process random_mobile_process(std::uint64_t seed) {
  Rng rng(seed);
  const char* const names[] = {"n", "m", "k"};
  auto finite = [&](std::uint32_t lo, std::uint32_t hi) {
    return Timer(lo + static_cast<std::uint32_t>(rng.pick(hi - lo + 1)));
  };
  auto chain = [&](bool mover, const std::string& self) {
    Process p = zero();
    const std::size_t n = 1 + rng.pick(3);
    for (std::size_t k = 0; k < n; ++k) {
      Capability c;
      if (mover) {
        c.kind = rng.chance(2, 3) ? CapKind::In : CapKind::Out;
        c.target = names[rng.pick(3)];
      } else {
        c.kind = rng.chance(2, 3) ? CapKind::CoIn : CapKind::CoOut;
        c.target = self;
      }
      c.timer = finite(1, 3);
      p = prefix(c, std::move(p));
    }
    return p;
  };
  std::vector<Process> top;
  const std::size_t count = 2 + rng.pick(2);
  for (std::size_t i = 0; i < count; ++i) {
    const std::string name = names[rng.pick(3)];
    const std::size_t role = rng.pick(3);
    if (role == 0) {
      top.push_back(ambient(name, finite(2, 4), chain(true, name)));
    } else if (role == 1) {
      top.push_back(ambient(name, finite(2, 4), chain(false, name)));
    } else {
      const std::string inner = names[rng.pick(3)];
      Process child = ambient(inner, finite(2, 4), chain(true, inner));
      top.push_back(ambient(name, finite(2, 4), parallel({chain(false, name), std::move(child)})));
    }
  }
  return normalize(parallel(std::move(top)));
}

std::vector<NamedProcess> hand_processes() {
  return {
      {"enter", "n:3[ in:2 m ] | m:4[ ~in:3 m ]"},
      {"exit", "m:5[ n:3[ out:2 m ] | ~out:2 m ]"},
      {"enter-then-exit", "n:3[ in:1 m . out:2 m ] | m:5[ ~in:2 m . ~out:3 m ]"},
      {"two-movers-one-target", "n:3[ in:2 m ] | k:3[ in:2 m ] | m:4[ ~in:3 m | ~in:2 m ]"},
      {"disjoint-pairs", "a:2[ in:1 b ] | b:3[ ~in:1 b ] | c:2[ in:2 d ] | d:2[ ~in:2 d ]"},
      {"nested-site", "m:4[ k:3[ ~in:2 k ] | n:2[ in:1 k ] ]"},
      {"expired-capability", "n:1[ in:0 m ] | m:2[ ~in:1 m ]"},
      {"co-actions-only", "m:3[ ~in:2 m . ~out:1 m ]"},
      {"expiring-ambient", "n:0[ in:2 m ] | m:3[ ~in:2 m ]"},
      {"crowded-target", "n:3[ in:2 m ] | m:3[ ~in:2 m | k:2[ 0 ] ]"},
  };
}

}  // namespace tmm
