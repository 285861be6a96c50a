// Copyright 2026 The Model Transparency Kit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MTK_EFFECTS_H_
#define MTK_EFFECTS_H_

#include <atomic>
#include <cstdint>

namespace mtk {

// Process-wide counters of externally visible side effects. Calls to the
// emulated identity provider and CA count as network calls.
struct EffectCounters {
  std::atomic<uint64_t> log_writes{0};
  std::atomic<uint64_t> network_calls{0};
};

inline EffectCounters& Effects() {
  static EffectCounters counters;
  return counters;
}

}  // namespace mtk

#endif  // MTK_EFFECTS_H_
