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

#ifndef TMM_MODEL_HPP_
#define TMM_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tmm {

/// Remaining lifetime of an object or membrane: a natural number or infinity.
/// Infinity compares greater than every finite value.
class Timer {
 public:
  constexpr Timer() = default;
  constexpr explicit Timer(std::uint32_t value) : value_(value) {}

  static constexpr Timer infinite() { return Timer(kInfinite); }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr bool positive() const { return value_ > 0; }
  constexpr std::uint32_t value() const { return value_; }

  /// inf - 1 = inf. Decrementing zero is a caller bug.
  Timer decremented() const;

  std::string to_string() const;

  constexpr auto operator<=>(const Timer&) const = default;

 private:
  static constexpr std::uint32_t kInfinite =
      std::numeric_limits<std::uint32_t>::max();
  std::uint32_t value_ = 0;
};

/// An object name, or its co-object when `co` is set.
struct Symbol {
  std::string name;
  bool co = false;

  Symbol dual() const { return Symbol{name, !co}; }
  std::string to_string() const { return co ? "~" + name : name; }

  auto operator<=>(const Symbol&) const = default;
};

/// Dissolution marker. Lives only inside a step.
const Symbol& delta_symbol();

/// Identifier rule shared by symbols and labels in the membrane file format.
bool is_identifier(std::string_view name);

struct TimedObject {
  Symbol sym;
  Timer timer;

  std::string to_string() const { return sym.to_string() + ":" + timer.to_string(); }

  auto operator<=>(const TimedObject&) const = default;
};

/// Counted multiset of timed objects. Entries with count zero are never stored.
class ObjectMultiset {
 public:
  using Map = std::map<TimedObject, std::size_t>;

  ObjectMultiset() = default;
  ObjectMultiset(std::initializer_list<TimedObject> objects);

  void add(const TimedObject& object, std::size_t count = 1);
  /// Throws std::logic_error when fewer than `count` copies are present.
  void remove(const TimedObject& object, std::size_t count = 1);

  std::size_t count(const TimedObject& object) const;
  /// Copies of `sym` regardless of timer.
  std::size_t count_symbol(const Symbol& sym) const;
  bool contains(const ObjectMultiset& other) const;
  bool empty() const { return entries_.empty(); }
  std::size_t total() const;

  ObjectMultiset& operator+=(const ObjectMultiset& other);
  /// Requires containment.
  ObjectMultiset& operator-=(const ObjectMultiset& other);

  const Map& entries() const { return entries_; }
  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  bool operator==(const ObjectMultiset&) const = default;

 private:
  Map entries_;
};

ObjectMultiset operator+(ObjectMultiset lhs, const ObjectMultiset& rhs);
ObjectMultiset operator-(ObjectMultiset lhs, const ObjectMultiset& rhs);

struct Membrane {
  std::string label;
  Timer timer = Timer::infinite();
  ObjectMultiset content;
  std::vector<Membrane> children;
  /// Engine-assigned identity; ignored by canonicalization.
  std::uint64_t uid = 0;

  bool elementary() const { return children.empty(); }
};

struct Configuration {
  Membrane skin;
  std::string output_label;
};

/// Renumbers every membrane in preorder starting at 1.
void assign_uids(Configuration& config);
std::size_t membrane_count(const Configuration& config);

/// Byte string equal for two configurations iff they agree up to sibling order
/// and multiset entry order. uids are not part of the key.
std::string canonicalize(const Configuration& config);
std::string canonicalize(const Membrane& membrane);

using SymbolMultiset = std::map<Symbol, std::size_t>;

/// Timer-erased content of every membrane labelled with the output label.
SymbolMultiset output_reading(const Configuration& config);
/// One reading per output-labelled membrane, sorted.
std::vector<SymbolMultiset> output_readings_per_membrane(const Configuration& config);

/// Timer written on a right-hand-side object: either a fresh value, or the
/// timer of a bound left-hand-side occurrence decremented by one.
struct RhsTimer {
  enum class Kind { Fresh, Carry };
  Kind kind = Kind::Fresh;
  Timer fresh = Timer::infinite();
  /// Position in the side's left-hand list (u then v, or dual(u) then v').
  std::size_t carry_position = 0;

  static RhsTimer make_fresh(Timer t) { return {Kind::Fresh, t, 0}; }
  static RhsTimer make_carry(std::size_t position) {
    return {Kind::Carry, Timer::infinite(), position};
  }

  auto operator<=>(const RhsTimer&) const = default;
};

struct RhsItem {
  Symbol sym;
  RhsTimer timer;

  auto operator<=>(const RhsItem&) const = default;
};

enum class RuleKind { Endo, Exo, Rewrite };

/// Mutual endocytosis / exocytosis, or a local rewrite inside one membrane.
///
/// Endo: [u v]_h [~u v']_m -> [[w]_h w']_m, h a sibling of m.
/// Exo:  [~u v' [u v]_h]_m -> [w]_h [w']_m, h a child of m.
/// Rewrite: [lhs]_at -> [rhs]_at, with lhs stored in `u` and rhs in `w`.
///
/// `context` lists objects that must be present in the passive membrane but
/// are neither consumed nor exclusive. `hold` keeps the active membrane's timer
/// unchanged instead of decrementing it.
struct Rule {
  RuleKind kind = RuleKind::Endo;
  std::string active_label;
  std::string passive_label;
  std::vector<Symbol> u;
  std::vector<Symbol> v;
  std::vector<Symbol> v_passive;
  std::vector<Symbol> context;
  std::vector<RhsItem> w;
  std::vector<RhsItem> w_passive;
  bool hold = false;

  std::vector<Symbol> active_lhs() const;
  std::vector<Symbol> passive_lhs() const;

  bool operator==(const Rule&) const = default;
};

/// Rewrites carry positions so that the k-th carry of a symbol on a side refers
/// to the k-th occurrence of that symbol on the left. Carries are
/// interchangeable among equal symbols, so this does not change behaviour.
void normalize_carries(Rule& rule);

/// One rule in the file grammar. Untimed rules print no right-hand timers.
std::string describe(const Rule& rule, bool timed = true);

struct System {
  Configuration config;
  std::vector<Rule> rules;
  /// Untimed systems follow the timer-free semantics; their timers are stored
  /// as infinity and ignored.
  bool timed = true;
  /// Produced by timer elimination.
  bool compiled = false;
};

struct Violation {
  std::string what;
  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate(const Configuration& config,
                                const std::vector<Rule>& rules);
inline std::vector<Violation> validate(const System& system) {
  return validate(system.config, system.rules);
}

}  // namespace tmm

#endif  // TMM_MODEL_HPP_
