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

#ifndef MTK_RANDOM_H_
#define MTK_RANDOM_H_

#include <array>
#include <cstdint>
#include <span>

#include "mtk/bytes.h"

namespace mtk {

// Initializes libsodium once per process. Safe to call repeatedly and from
// multiple threads.
void InitCrypto();

class Rng {
 public:
  virtual ~Rng() = default;
  virtual void Fill(std::span<uint8_t> out) = 0;

  uint64_t NextU64();
  // Uniform in [0, bound). bound must be nonzero.
  uint64_t Uniform(uint64_t bound);
  Bytes RandomBytes(size_t n);
};

// Operating-system CSPRNG (libsodium randombytes).
class SystemRng final : public Rng {
 public:
  void Fill(std::span<uint8_t> out) override;
};

// Deterministic ChaCha20 keystream. For reproducible benchmarks, synthetic
// data and tests; never for key material in production paths.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(uint64_t seed);
  void Fill(std::span<uint8_t> out) override;

 private:
  void Refill();

  std::array<uint8_t, 32> key_{};
  uint64_t counter_ = 0;
  std::array<uint8_t, 4096> buf_{};
  size_t pos_ = buf_.size();
};

}  // namespace mtk

#endif  // MTK_RANDOM_H_
