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

#ifndef TMM_REPORT_HPP_
#define TMM_REPORT_HPP_

#include <string>

#include "tmm/engine.hpp"
#include "tmm/explorer.hpp"
#include "tmm/translate.hpp"

namespace tmm {

// JSON renderings. Schemas are documented in docs/formats.md.

/// One JSON object per line, step 0 first.
std::string trace_jsonl(const Trace& trace, bool timed);

/// Membrane graphs render configurations, ambient graphs processes.
std::string graph_json(const ReachGraph& g, bool ambient, bool timed);

std::string verdict_json(const Verdict& v);

std::string remark_json(const RemarkReport& r);

/// {"symbol": count, ...}
std::string reading_json(const SymbolMultiset& reading);

}  // namespace tmm

#endif  // TMM_REPORT_HPP_
