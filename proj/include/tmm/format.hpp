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

#ifndef TMM_FORMAT_HPP_
#define TMM_FORMAT_HPP_

#include <string>
#include <string_view>

#include "tmm/model.hpp"

namespace tmm {

// Membrane system files (.mms):
//
//   system v1 timed|untimed [compiled] output <label>
//   skin:inf[ a:2, ~b:1 ; h:3[ a:1 ] m:inf[ ] ]
//   rules
//   endo h m : a | , ~a | => c:+7 |
//   exo h m hold : a | b , ~a | when c => a:- | d:+2
//   rw h : a b => c:+1
//
// Untimed files drop every ":timer" and right-hand ":+t" / ":-". The words
// hold, when and rules are reserved; '#' starts a comment.

/// Throws ParseError with line and column.
System parse_system(std::string_view text);

/// Inverse of parse_system on systems with normalized carries.
std::string print_system(const System& system);

std::string print_membrane(const Membrane& m, bool timed);

}  // namespace tmm

#endif  // TMM_FORMAT_HPP_
