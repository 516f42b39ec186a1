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

#include "tmm/model.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tmm {

Timer Timer::decremented() const {
  if (is_infinite()) return *this;
  assert(value_ > 0);
  if (value_ == 0) throw std::logic_error("decrement of a zero timer");
  return Timer(value_ - 1);
}

std::string Timer::to_string() const {
  return is_infinite() ? "inf" : std::to_string(value_);
}

const Symbol& delta_symbol() {
  static const Symbol delta{"delta", false};
  return delta;
}

namespace {

bool identifier_char(char c, bool first) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))
    return true;
  switch (c) {
    case '_':
    case '$':
    case '@':
    case '.':
    case '\'':
      return true;
    case '~':
      return !first;
    default:
      return false;
  }
}

}  // namespace

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  for (std::size_t i = 0; i < name.size(); ++i)
    if (!identifier_char(name[i], i == 0)) return false;
  return true;
}

ObjectMultiset::ObjectMultiset(std::initializer_list<TimedObject> objects) {
  for (const auto& o : objects) add(o);
}

void ObjectMultiset::add(const TimedObject& object, std::size_t count) {
  if (count == 0) return;
  entries_[object] += count;
}

void ObjectMultiset::remove(const TimedObject& object, std::size_t count) {
  if (count == 0) return;
  auto it = entries_.find(object);
  if (it == entries_.end() || it->second < count)
    throw std::logic_error("multiset difference without containment: " +
                           object.to_string());
  it->second -= count;
  if (it->second == 0) entries_.erase(it);
}

std::size_t ObjectMultiset::count(const TimedObject& object) const {
  auto it = entries_.find(object);
  return it == entries_.end() ? 0 : it->second;
}

std::size_t ObjectMultiset::count_symbol(const Symbol& sym) const {
  std::size_t n = 0;
  for (auto it = entries_.lower_bound(TimedObject{sym, Timer(0)});
       it != entries_.end() && it->first.sym == sym; ++it)
    n += it->second;
  return n;
}

bool ObjectMultiset::contains(const ObjectMultiset& other) const {
  for (const auto& [obj, n] : other.entries_)
    if (count(obj) < n) return false;
  return true;
}

std::size_t ObjectMultiset::total() const {
  std::size_t n = 0;
  for (const auto& [obj, c] : entries_) n += c;
  return n;
}

ObjectMultiset& ObjectMultiset::operator+=(const ObjectMultiset& other) {
  for (const auto& [obj, n] : other.entries_) add(obj, n);
  return *this;
}

ObjectMultiset& ObjectMultiset::operator-=(const ObjectMultiset& other) {
  if (!contains(other))
    throw std::logic_error("multiset difference without containment");
  for (const auto& [obj, n] : other.entries_) remove(obj, n);
  return *this;
}

ObjectMultiset operator+(ObjectMultiset lhs, const ObjectMultiset& rhs) {
  lhs += rhs;
  return lhs;
}

ObjectMultiset operator-(ObjectMultiset lhs, const ObjectMultiset& rhs) {
  lhs -= rhs;
  return lhs;
}

namespace {

void assign_uids(Membrane& m, std::uint64_t& next) {
  m.uid = next++;
  for (auto& child : m.children) assign_uids(child, next);
}

std::size_t count_membranes(const Membrane& m) {
  std::size_t n = 1;
  for (const auto& child : m.children) n += count_membranes(child);
  return n;
}

void collect_readings(const Membrane& m, const std::string& label,
                      std::vector<SymbolMultiset>& out) {
  if (m.label == label) {
    SymbolMultiset reading;
    for (const auto& [obj, n] : m.content) reading[obj.sym] += n;
    out.push_back(std::move(reading));
  }
  for (const auto& child : m.children) collect_readings(child, label, out);
}

}  // namespace

void assign_uids(Configuration& config) {
  std::uint64_t next = 1;
  assign_uids(config.skin, next);
}

std::size_t membrane_count(const Configuration& config) {
  return count_membranes(config.skin);
}

std::string canonicalize(const Membrane& membrane) {
  std::string key = "(";
  key += membrane.label;
  key += ':';
  key += membrane.timer.to_string();
  key += '{';
  for (const auto& [obj, n] : membrane.content) {
    key += obj.to_string();
    key += '*';
    key += std::to_string(n);
    key += ',';
  }
  key += '}';
  std::vector<std::string> children;
  children.reserve(membrane.children.size());
  for (const auto& child : membrane.children) children.push_back(canonicalize(child));
  std::sort(children.begin(), children.end());
  for (const auto& c : children) key += c;
  key += ')';
  return key;
}

std::string canonicalize(const Configuration& config) {
  return config.output_label + "#" + canonicalize(config.skin);
}

SymbolMultiset output_reading(const Configuration& config) {
  SymbolMultiset total;
  for (const auto& reading : output_readings_per_membrane(config))
    for (const auto& [sym, n] : reading) total[sym] += n;
  return total;
}

std::vector<SymbolMultiset> output_readings_per_membrane(const Configuration& config) {
  std::vector<SymbolMultiset> out;
  collect_readings(config.skin, config.output_label, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Symbol> Rule::active_lhs() const {
  std::vector<Symbol> lhs = u;
  lhs.insert(lhs.end(), v.begin(), v.end());
  return lhs;
}

std::vector<Symbol> Rule::passive_lhs() const {
  std::vector<Symbol> lhs;
  lhs.reserve(u.size() + v_passive.size());
  for (const auto& s : u) lhs.push_back(s.dual());
  lhs.insert(lhs.end(), v_passive.begin(), v_passive.end());
  return lhs;
}

namespace {

void normalize_side(const std::vector<Symbol>& lhs, std::vector<RhsItem>& rhs) {
  std::map<Symbol, std::size_t> used;
  for (auto& item : rhs) {
    if (item.timer.kind != RhsTimer::Kind::Carry) continue;
    std::size_t skip = used[item.sym]++;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (lhs[i] != item.sym) continue;
      if (skip == 0) {
        item.timer.carry_position = i;
        break;
      }
      --skip;
    }
  }
}

std::string join(const std::vector<Symbol>& syms) {
  std::string out;
  for (const auto& s : syms) {
    if (!out.empty()) out += ' ';
    out += s.to_string();
  }
  return out;
}

std::string join(const std::vector<RhsItem>& items, bool timed) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ' ';
    out += item.sym.to_string();
    if (!timed) continue;
    if (item.timer.kind == RhsTimer::Kind::Carry)
      out += ":-";
    else
      out += ":+" + item.timer.fresh.to_string();
  }
  return out;
}

/// "a | b" with the separator kept when either side is empty.
std::string sides(const std::string& left, const std::string& right) {
  std::string out = left.empty() ? "|" : left + " |";
  if (!right.empty()) out += " " + right;
  return out;
}

const char* kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Endo:
      return "endo";
    case RuleKind::Exo:
      return "exo";
    case RuleKind::Rewrite:
      return "rw";
  }
  return "?";
}

}  // namespace

void normalize_carries(Rule& rule) {
  normalize_side(rule.active_lhs(), rule.w);
  if (rule.kind != RuleKind::Rewrite) normalize_side(rule.passive_lhs(), rule.w_passive);
}

std::string describe(const Rule& rule, bool timed) {
  std::string out = kind_name(rule.kind);
  out += ' ' + rule.active_label;
  if (rule.kind == RuleKind::Rewrite) {
    out += " : " + join(rule.u) + " =>";
    const std::string rhs = join(rule.w, timed);
    return rhs.empty() ? out : out + " " + rhs;
  }
  out += ' ' + rule.passive_label;
  if (rule.hold) out += " hold";
  std::vector<Symbol> co;
  for (const auto& s : rule.u) co.push_back(s.dual());
  out += " : " + sides(join(rule.u), join(rule.v)) + " , " + sides(join(co), join(rule.v_passive));
  if (!rule.context.empty()) out += " when " + join(rule.context);
  out += " => " + sides(join(rule.w, timed), join(rule.w_passive, timed));
  return out;
}

namespace {

bool contains_delta(const Membrane& m) {
  if (m.content.count_symbol(delta_symbol()) > 0) return true;
  for (const auto& child : m.children)
    if (contains_delta(child)) return true;
  return false;
}

void check_carries(const std::vector<Symbol>& lhs, const std::vector<RhsItem>& rhs,
                   const std::string& where, std::size_t rule_index,
                   std::vector<Violation>& out) {
  std::vector<std::size_t> uses(lhs.size(), 0);
  for (const auto& item : rhs) {
    if (item.timer.kind != RhsTimer::Kind::Carry) continue;
    const auto pos = item.timer.carry_position;
    if (pos >= lhs.size() || lhs[pos] != item.sym) {
      out.push_back({"rule " + std::to_string(rule_index) + ": dangling carry of " +
                     item.sym.to_string() + " in " + where});
      continue;
    }
    if (++uses[pos] > 1)
      out.push_back({"rule " + std::to_string(rule_index) + ": occurrence of " +
                     item.sym.to_string() + " carried twice in " + where});
  }
}

}  // namespace

std::vector<Violation> validate(const Configuration& config,
                                const std::vector<Rule>& rules) {
  std::vector<Violation> out;
  if (!config.skin.timer.is_infinite()) out.push_back({"skin must be inf"});
  if (contains_delta(config.skin))
    out.push_back({"dissolution marker present between steps"});
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    if (r.u.empty())
      out.push_back({"rule " + std::to_string(i) + ": " +
                     (r.kind == RuleKind::Rewrite ? std::string("empty left-hand side")
                                                  : std::string("u must be nonempty"))});
    check_carries(r.active_lhs(), r.w, "w", i, out);
    if (r.kind != RuleKind::Rewrite) check_carries(r.passive_lhs(), r.w_passive, "w'", i, out);
    for (const auto& s : r.active_lhs())
      if (s == delta_symbol())
        out.push_back({"rule " + std::to_string(i) + ": delta on a left-hand side"});
  }
  return out;
}

}  // namespace tmm
