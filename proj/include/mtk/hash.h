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

#ifndef MTK_HASH_H_
#define MTK_HASH_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "mtk/bytes.h"

namespace mtk {

inline constexpr size_t kDigestSize = 32;
using Digest = std::array<uint8_t, kDigestSize>;

enum class HashAlg { kSha256, kBlake2b256 };

// "sha256" / "blake2b256". These identifiers are serialized into manifests,
// signing payloads and bundles.
std::string_view HashAlgName(HashAlg alg);
absl::StatusOr<HashAlg> ParseHashAlg(std::string_view name);

// Streaming hasher. SHA-256 goes through OpenSSL (hardware accelerated where
// available); BLAKE2b-256 is the parameterized 32-byte BLAKE2b from libsodium,
// not a truncation of BLAKE2b-512.
class Hasher {
 public:
  explicit Hasher(HashAlg alg);
  ~Hasher();
  Hasher(Hasher&&) noexcept;
  Hasher& operator=(Hasher&&) noexcept;
  Hasher(const Hasher&) = delete;
  Hasher& operator=(const Hasher&) = delete;

  Hasher& Update(ByteSpan data);
  Hasher& Update(std::string_view s) { return Update(AsBytes(s)); }
  // Finalizes; the hasher must not be updated afterwards.
  Digest Finish();

  HashAlg alg() const { return alg_; }

 private:
  struct State;
  HashAlg alg_;
  std::unique_ptr<State> state_;
};

Digest HashBytes(HashAlg alg, ByteSpan data);
inline Digest Sha256(ByteSpan data) { return HashBytes(HashAlg::kSha256, data); }
inline Digest Sha256(std::string_view s) { return Sha256(AsBytes(s)); }

std::string DigestHex(const Digest& d);
absl::StatusOr<Digest> DigestFromHex(std::string_view hex);
absl::StatusOr<Digest> DigestFromBytes(ByteSpan b);

}  // namespace mtk

#endif  // MTK_HASH_H_
