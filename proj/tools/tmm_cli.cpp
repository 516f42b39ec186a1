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

// tmm command-line front end. Talks to the library only through tmm.h.
//
// Exit codes: 0 pass / success, 1 check failed, 2 inconclusive,
// 3 usage, parse or input error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "tmm/tmm.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct UsageError {
  std::string what;
};

struct SystemDeleter {
  void operator()(tmm_system* s) const { tmm_system_free(s); }
};
struct ProcessDeleter {
  void operator()(tmm_process* p) const { tmm_process_free(p); }
};
using SystemPtr = std::unique_ptr<tmm_system, SystemDeleter>;
using ProcessPtr = std::unique_ptr<tmm_process, ProcessDeleter>;

/// Owns a library string.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { tmm_string_free(ptr_); }
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

void ok(tmm_status st, const std::string& context) {
  if (st != TMM_OK) throw UsageError{context + ": " + tmm_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError{"cannot write " + path};
  out << text;
}

bool is_ambient_file(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".amb") == 0;
}

SystemPtr load_system(const std::string& path) {
  const std::string text = read_file(path);
  tmm_system* s = nullptr;
  ok(tmm_system_parse(text.c_str(), &s), path);
  return SystemPtr(s);
}

ProcessPtr load_process(const std::string& path) {
  const std::string text = read_file(path);
  tmm_process* p = nullptr;
  ok(tmm_process_parse(text.c_str(), &p), path);
  return ProcessPtr(p);
}

int exit_for(tmm_outcome o) {
  switch (o) {
    case TMM_PASS:
      return kExitPass;
    case TMM_FAIL:
      return kExitFail;
    case TMM_INCONCLUSIVE:
      return kExitInconclusive;
  }
  return kExitFail;
}

/// "seed,count"
std::pair<std::uint64_t, std::size_t> parse_corpus(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw UsageError{"--corpus expects seed,count"};
  try {
    return {std::stoull(spec.substr(0, comma)), std::stoull(spec.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError{"--corpus expects seed,count"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and compiler for mobile membranes with timers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tmm_version()));

  // sim
  std::string sim_file, sim_trace;
  std::size_t sim_steps = 10;
  std::optional<std::uint64_t> sim_seed;
  auto* sim = app.add_subcommand("sim", "Run the maximally parallel semantics");
  sim->add_option("file", sim_file, "membrane system (.mms)")->required();
  sim->add_option("--steps", sim_steps, "step budget");
  sim->add_option("--seed", sim_seed, "seeded random choice (default: first choice)");
  sim->add_option("--trace", sim_trace, "write the JSON-lines trace here (default: stdout)");

  // compile
  std::string compile_file, compile_out;
  auto* compile = app.add_subcommand("compile", "Eliminate timers from a timed system");
  compile->add_option("file", compile_file, "timed system")->required();
  compile->add_option("-o,--output", compile_out, "untimed system (default: stdout)");

  // embed
  std::string embed_file, embed_out;
  auto* embed = app.add_subcommand("embed", "Give every timer of an untimed system the value inf");
  embed->add_option("file", embed_file, "untimed system")->required();
  embed->add_option("-o,--output", embed_out, "timed system (default: stdout)");

  // translate
  std::string translate_file, translate_out;
  bool translate_strict = false;
  auto* translate = app.add_subcommand("translate", "Translate an ambient process into a membrane system");
  translate->add_option("file", translate_file, "ambient process (.amb)")->required();
  translate->add_option("-o,--output", translate_out, "membrane system (default: stdout)");
  translate->add_flag("--strict-def4", translate_strict, "moving membranes keep their timer");

  // explore
  std::string explore_file, explore_graph;
  std::size_t explore_depth = 3, explore_cap = 0;
  auto* explore = app.add_subcommand("explore", "Bounded breadth-first exploration");
  explore->add_option("file", explore_file, "system (.mms) or process (.amb)")->required();
  explore->add_option("--depth", explore_depth, "depth bound");
  explore->add_option("--node-cap", explore_cap, "node cap (default 100000)");
  explore->add_option("--graph", explore_graph, "write the graph as JSON here");

  // check
  std::string check_prop, check_file, check_corpus;
  std::size_t check_depth = 4;
  bool check_strict = false;
  auto* check = app.add_subcommand("check", "Check a correspondence property");
  check->add_option("property", check_prop, "prop1, prop2, prop45 or remark")
      ->required()
      ->check(CLI::IsMember({"prop1", "prop2", "prop45", "remark"}));
  check->add_option("file", check_file, "input file (optional with --corpus)");
  check->add_option("--depth", check_depth, "depth bound");
  check->add_option("--corpus", check_corpus, "seed,count of generated inputs");
  check->add_flag("--strict-def4", check_strict, "prop45: exact timers, moving membranes keep their timer");

  // output
  std::string output_file;
  std::size_t output_steps = 100;
  auto* output = app.add_subcommand("output", "Output reading after halting or the step budget");
  output->add_option("file", output_file, "membrane system")->required();
  output->add_option("--steps", output_steps, "step budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sim) {
      auto s = load_system(sim_file);
      LibString trace;
      int halted = 0;
      ok(tmm_system_run(s.get(), sim_steps, sim_seed.has_value(), sim_seed.value_or(0), trace.out(), &halted),
         "sim");
      write_output(sim_trace, trace.str());
      if (!sim_trace.empty()) std::cerr << (halted ? "halted" : "step budget used") << "\n";
      return kExitPass;
    }
    if (*compile) {
      auto s = load_system(compile_file);
      tmm_system* c = nullptr;
      ok(tmm_system_compile(s.get(), &c), "compile");
      SystemPtr compiled(c);
      LibString text;
      ok(tmm_system_print(compiled.get(), text.out()), "compile");
      write_output(compile_out, text.str());
      return kExitPass;
    }
    if (*embed) {
      auto s = load_system(embed_file);
      tmm_system* e = nullptr;
      ok(tmm_system_embed(s.get(), &e), "embed");
      SystemPtr embedded(e);
      LibString text;
      ok(tmm_system_print(embedded.get(), text.out()), "embed");
      write_output(embed_out, text.str());
      return kExitPass;
    }
    if (*translate) {
      auto p = load_process(translate_file);
      tmm_system* t = nullptr;
      ok(tmm_process_translate(p.get(), translate_strict, &t), "translate");
      SystemPtr translated(t);
      LibString text;
      ok(tmm_system_print(translated.get(), text.out()), "translate");
      write_output(translate_out, text.str());
      return kExitPass;
    }
    if (*explore) {
      LibString graph;
      std::size_t nodes = 0;
      int truncated = 0;
      if (is_ambient_file(explore_file)) {
        auto p = load_process(explore_file);
        ok(tmm_process_explore(p.get(), explore_depth, explore_cap, graph.out(), &nodes, &truncated), "explore");
      } else {
        auto s = load_system(explore_file);
        ok(tmm_system_explore(s.get(), explore_depth, explore_cap, graph.out(), &nodes, &truncated), "explore");
      }
      if (explore_graph.empty())
        std::cout << graph.str() << "\n";
      else
        write_output(explore_graph, graph.str() + "\n");
      std::cerr << nodes << " nodes" << (truncated ? " (truncated)" : "") << "\n";
      return truncated ? kExitInconclusive : kExitPass;
    }
    if (*check) {
      LibString verdict;
      tmm_outcome outcome = TMM_FAIL;
      if (!check_corpus.empty()) {
        if (check_prop == "remark") throw UsageError{"remark takes a process file, not a corpus"};
        const auto [seed, count] = parse_corpus(check_corpus);
        ok(tmm_check_corpus(check_prop.c_str(), seed, count, check_depth, check_strict, verdict.out(), &outcome),
           "check");
      } else {
        if (check_file.empty()) throw UsageError{"check needs a file or --corpus"};
        if (check_prop == "prop45" || check_prop == "remark") {
          auto p = load_process(check_file);
          if (check_prop == "prop45")
            ok(tmm_check_prop45(p.get(), check_depth, check_strict, verdict.out(), &outcome), "check");
          else
            ok(tmm_check_remark(p.get(), verdict.out(), &outcome), "check");
        } else {
          auto s = load_system(check_file);
          if (check_prop == "prop1")
            ok(tmm_check_prop1(s.get(), check_depth, verdict.out(), &outcome), "check");
          else
            ok(tmm_check_prop2(s.get(), check_depth, verdict.out(), &outcome), "check");
        }
      }
      std::cout << verdict.str() << "\n";
      return exit_for(outcome);
    }
    if (*output) {
      auto s = load_system(output_file);
      LibString reading;
      ok(tmm_system_output(s.get(), output_steps, reading.out()), "output");
      std::cout << reading.str() << "\n";
      return kExitPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "tmm: " << e.what << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
