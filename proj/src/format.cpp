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

#include "tmm/format.hpp"

#include <algorithm>
#include <vector>

#include "tmm/error.hpp"

namespace tmm {

namespace {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '$' || c == '@' || c == '.' || c == '\'' || c == '~';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      out.push_back({std::string(text.substr(i, j - i)), line, col});
      bump(j - i);
    } else if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({"=>", line, col});
      bump(2);
    } else if (std::string_view(":[],;|+-").find(c) != std::string_view::npos) {
      out.push_back({std::string(1, c), line, col});
      bump(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  return out;
}

class SystemParser {
 public:
  explicit SystemParser(std::string_view text) : tokens_(lex(text)) {
    if (tokens_.empty()) {
      end_line_ = 1;
      end_col_ = 1;
    } else {
      end_line_ = tokens_.back().line;
      end_col_ = tokens_.back().column + tokens_.back().text.size();
    }
  }

  System parse() {
    System sys;
    header(sys);
    timed_ = sys.timed;
    sys.config.skin = membrane();
    if (!at_end()) {
      if (peek().text != "rules") fail("expected 'rules' or end of input");
      next();
      while (!at_end()) sys.rules.push_back(rule());
    }
    for (auto& r : sys.rules) normalize_carries(r);
    assign_uids(sys.config);
    sys.config.output_label = output_;
    return sys;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    if (at_end()) throw ParseError(what, end_line_, end_col_);
    throw ParseError(what, peek().line, peek().column);
  }

  const Token& next() {
    if (at_end()) fail("unexpected end of input");
    return tokens_[pos_++];
  }

  bool check(const std::string& text) const { return !at_end() && peek().text == text; }

  void expect(const std::string& text) {
    if (!check(text)) fail("expected '" + text + "'");
    ++pos_;
  }

  std::string identifier(const char* what) {
    if (at_end() || !is_identifier(peek().text)) fail(std::string("expected ") + what);
    return next().text;
  }

  void header(System& sys) {
    if (!check("system")) fail("missing header 'system v1 ...'");
    next();
    expect("v1");
    if (check("timed")) {
      sys.timed = true;
    } else if (check("untimed")) {
      sys.timed = false;
    } else {
      fail("expected 'timed' or 'untimed'");
    }
    next();
    if (check("compiled")) {
      next();
      sys.compiled = true;
    }
    expect("output");
    output_ = identifier("output label");
  }

  Timer timer() {
    if (check("-")) fail("negative timer");
    if (at_end()) fail("expected a timer");
    const Token& t = peek();
    if (t.text == "inf") {
      next();
      return Timer::infinite();
    }
    if (t.text.empty() || t.text.size() > 9 ||
        !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail("expected a timer");
    next();
    return Timer(static_cast<std::uint32_t>(std::stoul(t.text)));
  }

  Symbol symbol() {
    if (at_end()) fail("expected a symbol");
    const Token& t = peek();
    Symbol s;
    std::string name = t.text;
    if (!name.empty() && name[0] == '~') {
      s.co = true;
      name.erase(0, 1);
    }
    if (!is_identifier(name)) fail("bad symbol '" + t.text + "'");
    if (name == "hold" || name == "when" || name == "rules") fail("reserved word '" + name + "'");
    s.name = std::move(name);
    next();
    return s;
  }

  Membrane membrane() {
    if (at_end()) fail("missing skin membrane");
    Membrane m;
    m.label = identifier("membrane label");
    if (timed_) {
      expect(":");
      m.timer = timer();
    }
    body(m);
    return m;
  }

  void body(Membrane& m) {
    expect("[");
    while (!check("]")) {
      if (at_end()) fail("unterminated membrane '" + m.label + "'");
      if (check(",") || check(";")) {
        next();
        continue;
      }
      const std::size_t start = pos_;
      const Symbol s = symbol();
      Timer t = Timer::infinite();
      if (timed_) {
        expect(":");
        t = timer();
      }
      if (check("[")) {
        if (s.co) {
          pos_ = start;
          fail("membrane label cannot start with '~'");
        }
        Membrane child;
        child.label = s.name;
        child.timer = t;
        body(child);
        m.children.push_back(std::move(child));
      } else {
        m.content.add(TimedObject{s, t});
      }
    }
    next();
  }

  bool list_end(std::size_t line) const {
    return at_end() || peek().line != line || check("|") || check(",") || check("=>") || check("when");
  }

  std::vector<Symbol> symbols(std::size_t line) {
    std::vector<Symbol> out;
    while (!list_end(line)) out.push_back(symbol());
    return out;
  }

  std::vector<RhsItem> items(std::size_t line) {
    std::vector<RhsItem> out;
    while (!list_end(line)) {
      RhsItem item;
      item.sym = symbol();
      if (timed_) {
        expect(":");
        if (check("+")) {
          next();
          item.timer = RhsTimer::make_fresh(timer());
        } else if (check("-")) {
          next();
          item.timer = RhsTimer::make_carry(0);
        } else {
          fail("expected '+timer' or '-'");
        }
      } else {
        if (check(":")) fail("untimed rules take no timers");
        item.timer = RhsTimer::make_fresh(Timer::infinite());
      }
      out.push_back(std::move(item));
    }
    return out;
  }

  void expect_on(const std::string& text, std::size_t line) {
    if (at_end() || peek().line != line) fail("expected '" + text + "' before end of rule");
    expect(text);
  }

  Rule rule() {
    const Token head = next();
    const std::size_t line = head.line;
    Rule r;
    if (head.text == "rw") {
      r.kind = RuleKind::Rewrite;
      r.active_label = identifier("label");
      expect_on(":", line);
      r.u = symbols(line);
      expect_on("=>", line);
      r.w = items(line);
    } else if (head.text == "endo" || head.text == "exo") {
      r.kind = head.text == "endo" ? RuleKind::Endo : RuleKind::Exo;
      r.active_label = identifier("active label");
      r.passive_label = identifier("passive label");
      if (check("hold") && peek().line == line) {
        next();
        r.hold = true;
      }
      expect_on(":", line);
      r.u = symbols(line);
      expect_on("|", line);
      r.v = symbols(line);
      expect_on(",", line);
      const std::size_t co_pos = pos_;
      const auto co = symbols(line);
      std::vector<Symbol> want;
      for (const auto& s : r.u) want.push_back(s.dual());
      if (co != want) {
        pos_ = co_pos;
        fail("passive side must start with the duals of u");
      }
      expect_on("|", line);
      r.v_passive = symbols(line);
      if (check("when") && peek().line == line) {
        next();
        r.context = symbols(line);
      }
      expect_on("=>", line);
      r.w = items(line);
      expect_on("|", line);
      r.w_passive = items(line);
    } else {
      pos_--;
      fail("expected endo, exo or rw");
    }
    if (!at_end() && peek().line == line) fail("unexpected '" + peek().text + "'");
    return r;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t end_line_ = 1;
  std::size_t end_col_ = 1;
  bool timed_ = true;
  std::string output_;
};

}  // namespace

System parse_system(std::string_view text) { return SystemParser(text).parse(); }

std::string print_membrane(const Membrane& m, bool timed) {
  std::string out = m.label;
  if (timed) out += ":" + m.timer.to_string();
  out += "[";
  bool first = true;
  for (const auto& [obj, n] : m.content)
    for (std::size_t k = 0; k < n; ++k) {
      out += first ? " " : ", ";
      first = false;
      out += timed ? obj.to_string() : obj.sym.to_string();
    }
  if (!m.children.empty()) {
    if (!first) out += " ;";
    for (const auto& child : m.children) out += " " + print_membrane(child, timed);
  }
  out += " ]";
  return out;
}

std::string print_system(const System& system) {
  std::string out = "system v1 ";
  out += system.timed ? "timed" : "untimed";
  if (system.compiled) out += " compiled";
  out += " output " + system.config.output_label + "\n";
  out += print_membrane(system.config.skin, system.timed) + "\n";
  out += "rules\n";
  for (const auto& r : system.rules) out += describe(r, system.timed) + "\n";
  return out;
}

}  // namespace tmm
