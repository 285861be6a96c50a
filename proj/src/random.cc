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

#include "mtk/random.h"

#include <sodium.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>

namespace mtk {

void InitCrypto() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) std::abort();
}

uint64_t Rng::NextU64() {
  std::array<uint8_t, 8> b;
  Fill(b);
  uint64_t v;
  std::memcpy(&v, b.data(), sizeof(v));
  return v;
}

uint64_t Rng::Uniform(uint64_t bound) {
  // Rejection sampling to avoid modulo bias.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return v % bound;
}

Bytes Rng::RandomBytes(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

void SystemRng::Fill(std::span<uint8_t> out) {
  InitCrypto();
  randombytes_buf(out.data(), out.size());
}

SeededRng::SeededRng(uint64_t seed) {
  InitCrypto();
  std::array<uint8_t, 8> s;
  for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(seed >> (8 * i));
  crypto_generichash(key_.data(), key_.size(), s.data(), s.size(), nullptr, 0);
}

void SeededRng::Refill() {
  static constexpr std::array<uint8_t, crypto_stream_chacha20_NONCEBYTES> kNonce{};
  std::fill(buf_.begin(), buf_.end(), 0);
  // 64-byte blocks; advance the block counter by the buffer size.
  crypto_stream_chacha20_xor_ic(buf_.data(), buf_.data(), buf_.size(),
                                kNonce.data(), counter_, key_.data());
  counter_ += buf_.size() / 64;
  pos_ = 0;
}

void SeededRng::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buf_.size()) Refill();
    size_t n = std::min(out.size() - done, buf_.size() - pos_);
    std::memcpy(out.data() + done, buf_.data() + pos_, n);
    pos_ += n;
    done += n;
  }
}

}  // namespace mtk
