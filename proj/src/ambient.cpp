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

#include "tmm/ambient.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "tmm/error.hpp"

namespace tmm {

std::string cap_keyword(CapKind kind) {
  switch (kind) {
    case CapKind::In:
      return "in";
    case CapKind::Out:
      return "out";
    case CapKind::CoIn:
      return "~in";
    case CapKind::CoOut:
      return "~out";
  }
  return "?";
}

Process zero() { return Process{}; }

Process prefix(Capability cap, Process cont) {
  Process p;
  p.kind = Process::Kind::Prefix;
  p.cap = std::move(cap);
  p.parts.push_back(std::move(cont));
  return p;
}

Process ambient(std::string name, Timer timer, Process body, Tag tag) {
  Process p;
  p.kind = Process::Kind::Amb;
  p.name = std::move(name);
  p.timer = timer;
  p.tag = tag;
  p.parts.push_back(std::move(body));
  return p;
}

Process parallel(std::vector<Process> parts) {
  Process p;
  p.kind = Process::Kind::Par;
  p.parts = std::move(parts);
  return p;
}

namespace {

void render(const Process& p, bool tags, std::string& out);

void render_wrapped(const Process& p, bool tags, std::string& out) {
  if (p.kind == Process::Kind::Par) {
    out += '(';
    render(p, tags, out);
    out += ')';
  } else {
    render(p, tags, out);
  }
}

void render(const Process& p, bool tags, std::string& out) {
  switch (p.kind) {
    case Process::Kind::Zero:
      out += '0';
      return;
    case Process::Kind::Prefix:
      out += cap_keyword(p.cap.kind) + ":" + p.cap.timer.to_string() + " " + p.cap.target;
      if (p.parts[0].kind != Process::Kind::Zero) {
        out += " . ";
        render_wrapped(p.parts[0], tags, out);
      }
      return;
    case Process::Kind::Amb:
      out += p.name + ":" + p.timer.to_string() + "[ ";
      render(p.parts[0], tags, out);
      out += " ]";
      if (tags && p.tag == Tag::Passive) out += "^p";
      return;
    case Process::Kind::Par:
      for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) out += " | ";
        render_wrapped(p.parts[i], tags, out);
      }
      return;
  }
}

void flatten_into(const Process& p, std::vector<Process>& out) {
  if (p.kind == Process::Kind::Zero) return;
  if (p.kind == Process::Kind::Par) {
    for (const auto& part : p.parts) flatten_into(part, out);
    return;
  }
  out.push_back(p);
}

}  // namespace

std::string to_string(const Process& p) {
  std::string out;
  render(p, false, out);
  return out;
}

std::string key(const Process& p) {
  std::string out;
  render(p, true, out);
  return out;
}

Process normalize(const Process& p) {
  switch (p.kind) {
    case Process::Kind::Zero:
      return p;
    case Process::Kind::Prefix:
      return prefix(p.cap, normalize(p.parts[0]));
    case Process::Kind::Amb:
      return ambient(p.name, p.timer, normalize(p.parts[0]), p.tag);
    case Process::Kind::Par:
      break;
  }
  std::vector<Process> flat;
  for (const auto& part : p.parts) flatten_into(normalize(part), flat);
  if (flat.empty()) return zero();
  if (flat.size() == 1) return flat[0];
  std::vector<std::pair<std::string, Process>> keyed;
  keyed.reserve(flat.size());
  for (auto& f : flat) keyed.emplace_back(key(f), std::move(f));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Process> sorted;
  sorted.reserve(keyed.size());
  for (auto& [k, f] : keyed) sorted.push_back(std::move(f));
  return parallel(std::move(sorted));
}

std::vector<Process> components(const Process& p) {
  if (p.kind == Process::Kind::Zero) return {};
  if (p.kind == Process::Kind::Par) return p.parts;
  return {p};
}

bool congruent(const Process& p, const Process& q) { return key(normalize(p)) == key(normalize(q)); }

Process erase_tags(const Process& p) {
  Process out = p;
  out.tag = Tag::Active;
  for (auto& part : out.parts) part = erase_tags(part);
  return out;
}

bool is_ambient_name(std::string_view name) {
  if (name.empty()) return false;
  const char c0 = name[0];
  if (!((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z') || c0 == '_')) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '$' || c == '\'';
    if (!ok) return false;
  }
  return name != "in" && name != "out" && name != "inf";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class AmbientParser {
 public:
  explicit AmbientParser(std::string_view text) : text_(text) {}

  Process parse() {
    Process p = parse_par();
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return normalize(p);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    advance();
  }

  static bool word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '$' || c == '\'';
  }

  std::string word() {
    skip();
    std::string out;
    while (pos_ < text_.size() && word_char(text_[pos_])) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  Timer timer() {
    skip();
    if (peek('-')) fail("negative timer");
    const std::string w = word();
    if (w == "inf") return Timer::infinite();
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail("expected a timer");
    if (w.size() > 9) fail("timer out of range");
    return Timer(static_cast<std::uint32_t>(std::stoul(w)));
  }

  std::string name() {
    const std::string w = word();
    if (!is_ambient_name(w)) fail(w.empty() ? "expected an ambient name" : "bad ambient name '" + w + "'");
    return w;
  }

  Process parse_par() {
    std::vector<Process> parts;
    parts.push_back(parse_seq());
    while (peek('|')) {
      advance();
      parts.push_back(parse_seq());
    }
    return parts.size() == 1 ? std::move(parts[0]) : parallel(std::move(parts));
  }

  Process parse_seq() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (peek('(')) {
      advance();
      Process p = parse_par();
      expect(')');
      return p;
    }
    bool co = false;
    if (peek('~')) {
      advance();
      co = true;
    }
    const std::size_t line = line_, col = col_;
    const std::string w = word();
    if (w.empty()) fail("expected a process");
    if (w == "in" || w == "out") {
      Capability cap;
      cap.kind = w == "in" ? (co ? CapKind::CoIn : CapKind::In) : (co ? CapKind::CoOut : CapKind::Out);
      expect(':');
      cap.timer = timer();
      cap.target = name();
      Process cont = zero();
      if (peek('.')) {
        advance();
        cont = parse_seq();
      }
      return prefix(std::move(cap), std::move(cont));
    }
    if (co) throw ParseError("expected in or out after '~'", line, col);
    if (w == "0") return zero();
    if (!is_ambient_name(w)) throw ParseError("bad ambient name '" + w + "'", line, col);
    expect(':');
    const Timer t = timer();
    expect('[');
    Process body = zero();
    if (!peek(']')) body = parse_par();
    expect(']');
    return ambient(w, t, std::move(body));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Process parse_ambient(std::string_view text) { return AmbientParser(text).parse(); }

// ---------------------------------------------------------------------------
// Time

namespace {

Process phi(const Process& p) {
  switch (p.kind) {
    case Process::Kind::Zero:
      return p;
    case Process::Kind::Prefix: {
      if (!p.cap.timer.positive()) return p.parts[0];
      Capability cap = p.cap;
      cap.timer = cap.timer.decremented();
      return prefix(std::move(cap), p.parts[0]);
    }
    case Process::Kind::Amb:
      // An expired ambient releases its body untouched.
      if (!p.timer.positive()) return p.parts[0];
      return ambient(p.name, p.timer.decremented(), phi(p.parts[0]), Tag::Active);
    case Process::Kind::Par: {
      std::vector<Process> parts;
      for (const auto& part : p.parts) parts.push_back(phi(part));
      return parallel(std::move(parts));
    }
  }
  return p;
}

}  // namespace

Process phi_delta(const Process& p) { return normalize(phi(p)); }

// ---------------------------------------------------------------------------
// Reduction

namespace {

bool live_cap(const Process& p, CapKind kind, const std::string& target) {
  return p.kind == Process::Kind::Prefix && p.cap.kind == kind && p.cap.target == target &&
         p.cap.timer.positive();
}

bool live_amb(const Process& p) { return p.kind == Process::Kind::Amb && p.timer.positive(); }

void collect(const Process& level, std::vector<std::size_t>& region, std::vector<Redex>& out) {
  const auto comps = components(level);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Process& n = comps[i];
    if (!live_amb(n) || n.tag != Tag::Active) continue;
    const auto nb = components(n.parts[0]);
    for (std::size_t ci = 0; ci < nb.size(); ++ci) {
      if (nb[ci].kind != Process::Kind::Prefix || nb[ci].cap.kind != CapKind::In) continue;
      if (!nb[ci].cap.timer.positive()) continue;
      const std::string& x = nb[ci].cap.target;
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (j == i || !live_amb(comps[j]) || comps[j].name != x) continue;
        const auto mb = components(comps[j].parts[0]);
        for (std::size_t cj = 0; cj < mb.size(); ++cj)
          if (live_cap(mb[cj], CapKind::CoIn, x)) out.push_back(Redex{CapKind::In, region, i, j, ci, cj});
      }
    }
  }
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const Process& m = comps[j];
    if (!live_amb(m)) continue;
    const auto mb = components(m.parts[0]);
    for (std::size_t i = 0; i < mb.size(); ++i) {
      if (!live_amb(mb[i]) || mb[i].tag != Tag::Active) continue;
      const auto nb = components(mb[i].parts[0]);
      for (std::size_t ci = 0; ci < nb.size(); ++ci) {
        if (!live_cap(nb[ci], CapKind::Out, m.name)) continue;
        for (std::size_t cj = 0; cj < mb.size(); ++cj)
          if (live_cap(mb[cj], CapKind::CoOut, m.name))
            out.push_back(Redex{CapKind::Out, region, i, j, ci, cj});
      }
    }
  }
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (comps[k].kind != Process::Kind::Amb) continue;
    region.push_back(k);
    collect(comps[k].parts[0], region, out);
    region.pop_back();
  }
}

std::vector<std::vector<std::size_t>> footprint(const Redex& r) {
  auto at = [&](std::size_t k) {
    auto path = r.region;
    path.push_back(k);
    return path;
  };
  if (r.kind == CapKind::In) return {at(r.mover), at(r.target)};
  return {at(r.target)};
}

bool is_prefix(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

/// Body components with the capability at `index` replaced by its continuation.
std::vector<Process> consume(std::vector<Process> body, std::size_t index) {
  Process cont = body[index].parts[0];
  body.erase(body.begin() + static_cast<std::ptrdiff_t>(index));
  for (auto& c : components(cont)) body.push_back(std::move(c));
  return body;
}

Process rebuild(const Process& level, std::vector<std::size_t>& path, const std::vector<Redex>& set) {
  auto comps = components(level);
  std::vector<bool> removed(comps.size(), false);
  std::vector<bool> touched(comps.size(), false);
  std::vector<Process> extra;
  for (const auto& r : set) {
    if (r.region != path) continue;
    if (r.kind == CapKind::In) {
      const Process& n = comps[r.mover];
      const Process& m = comps[r.target];
      Process moved = ambient(n.name, n.timer, parallel(consume(components(n.parts[0]), r.cap)), Tag::Passive);
      std::vector<Process> mb = components(m.parts[0]);
      Process rest = mb[r.cocap].parts[0];
      mb[r.cocap] = std::move(rest);
      mb.push_back(std::move(moved));
      comps[r.target] = ambient(m.name, m.timer, parallel(std::move(mb)), m.tag);
      removed[r.mover] = true;
      touched[r.target] = true;
    } else {
      const Process& m = comps[r.target];
      const auto mb = components(m.parts[0]);
      const Process& n = mb[r.mover];
      extra.push_back(
          ambient(n.name, n.timer, parallel(consume(components(n.parts[0]), r.cap)), Tag::Passive));
      std::vector<Process> rest;
      for (std::size_t k = 0; k < mb.size(); ++k) {
        if (k == r.mover) continue;
        rest.push_back(k == r.cocap ? mb[k].parts[0] : mb[k]);
      }
      comps[r.target] = ambient(m.name, m.timer, parallel(std::move(rest)), m.tag);
      touched[r.target] = true;
    }
  }
  std::vector<Process> out;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (removed[k]) continue;
    if (!touched[k] && comps[k].kind == Process::Kind::Amb) {
      path.push_back(k);
      const bool below = std::any_of(set.begin(), set.end(), [&](const Redex& r) { return is_prefix(path, r.region); });
      if (below) {
        const Process& a = comps[k];
        comps[k] = ambient(a.name, a.timer, rebuild(a.parts[0], path, set), a.tag);
      }
      path.pop_back();
    }
    out.push_back(std::move(comps[k]));
  }
  for (auto& e : extra) out.push_back(std::move(e));
  return parallel(std::move(out));
}

const Process& at_region(const Process& p, const std::vector<std::size_t>& region,
                         std::vector<Process>& storage) {
  // Follows the region path; `storage` keeps the component vectors alive.
  const Process* cur = &p;
  for (std::size_t k : region) {
    storage.push_back(components(*cur)[k]);
    cur = &storage.back().parts[0];
  }
  return *cur;
}

}  // namespace

std::vector<Redex> redexes(const Process& p) {
  std::vector<Redex> out;
  std::vector<std::size_t> region;
  collect(p, region, out);
  return out;
}

bool independent(const Redex& a, const Redex& b) {
  for (const auto& x : footprint(a))
    for (const auto& y : footprint(b))
      if (is_prefix(x, y) || is_prefix(y, x)) return false;
  return true;
}

Process fire(const Process& p, const std::vector<Redex>& set) {
  std::vector<std::size_t> path;
  return normalize(rebuild(p, path, set));
}

std::string describe(const Redex& r, const Process& p) {
  std::vector<Process> storage;
  storage.reserve(r.region.size());
  const Process& level = at_region(p, r.region, storage);
  const auto comps = components(level);
  std::string mover, target;
  if (r.kind == CapKind::In) {
    mover = comps[r.mover].name;
    target = comps[r.target].name;
  } else {
    target = comps[r.target].name;
    mover = components(comps[r.target].parts[0])[r.mover].name;
  }
  std::string where;
  for (std::size_t k : r.region) where += "/" + std::to_string(k);
  return cap_keyword(r.kind) + " " + mover + " " + target + " @" + (where.empty() ? "/" : where);
}

std::vector<AmbientSuccessor> ambient_successors(const Process& input) {
  const Process p = normalize(input);
  const auto rs = redexes(p);
  if (rs.empty()) {
    Process q = phi_delta(p);
    std::string k = key(q);
    return {AmbientSuccessor{"time", true, std::move(q), std::move(k)}};
  }
  std::map<std::string, AmbientSuccessor> seen;
  std::vector<Redex> chosen;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == rs.size()) {
      if (chosen.empty()) return;
      Process q = fire(p, chosen);
      std::string k = key(q);
      if (seen.count(k)) return;
      std::string label;
      for (const auto& r : chosen) {
        if (!label.empty()) label += ", ";
        label += describe(r, p);
      }
      seen.emplace(k, AmbientSuccessor{std::move(label), false, std::move(q), k});
      return;
    }
    walk(i + 1);
    if (std::all_of(chosen.begin(), chosen.end(), [&](const Redex& r) { return independent(r, rs[i]); })) {
      chosen.push_back(rs[i]);
      walk(i + 1);
      chosen.pop_back();
    }
  };
  walk(0);
  std::vector<AmbientSuccessor> out;
  out.reserve(seen.size());
  for (auto& [k, s] : seen) out.push_back(std::move(s));
  return out;
}

std::vector<Process> reduce_step(const Process& p) {
  std::vector<Process> out;
  for (auto& s : ambient_successors(p)) out.push_back(std::move(s.process));
  return out;
}

}  // namespace tmm
